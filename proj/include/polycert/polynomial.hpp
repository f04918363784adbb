#pragma once

// Sparse multivariate polynomials over the reals, with the homogeneous
// decomposition h = sum_k phi_k and the restriction t -> h(t d) to a ray.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace polycert {

/// Degree reported for the zero polynomial / empty decomposition.
inline constexpr int kNegativeInfinityDegree = std::numeric_limits<int>::min();

/// Default cap on the number of terms produced by expansion.
inline constexpr std::size_t kDefaultTermCap = 100000;

using Exponents = std::vector<std::uint32_t>;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(Exponents exponents);

  /// x_var^power in dimension n.
  static Monomial variable(std::size_t dimension, std::size_t var,
                           std::uint32_t power = 1);
  static Monomial one(std::size_t dimension);

  const Exponents& exponents() const noexcept { return exponents_; }
  std::size_t dimension() const noexcept { return exponents_.size(); }
  int degree() const noexcept { return degree_; }

  Monomial operator*(const Monomial& other) const;

  /// Product of x_j^{e_j}, each power formed by repeated multiplication.
  double evaluate(std::span<const double> x) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exponents_ == b.exponents_;
  }

 private:
  Exponents exponents_;
  int degree_ = 0;
};

/// Graded-lexicographic "a comes before b": higher total degree first, then
/// lexicographically larger exponent vector first (x1 > x2 > ...).
bool graded_lex_before(const Monomial& a, const Monomial& b);

struct Term {
  Monomial monomial;
  double coefficient = 0.0;
};

/// Immutable sparse polynomial. Terms are unique, nonzero and kept in
/// graded-lexicographic order, so structural equality is term-set equality.
class Polynomial {
 public:
  /// Zero polynomial in `dimension` variables.
  explicit Polynomial(std::size_t dimension);

  /// Combines like terms and drops coefficients that are exactly zero.
  /// Throws InputError on dimension mismatch or non-finite coefficients.
  Polynomial(std::size_t dimension, std::vector<Term> terms);

  static Polynomial constant(std::size_t dimension, double value);
  static Polynomial variable(std::size_t dimension, std::size_t var);

  std::size_t dimension() const noexcept { return dimension_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Total degree, or kNegativeInfinityDegree for the zero polynomial.
  int degree() const noexcept;

  /// Sum of |coefficient|.
  double coefficient_l1_norm() const noexcept;

  double evaluate(std::span<const double> x) const;
  std::vector<double> gradient(std::span<const double> x) const;

  Polynomial operator-() const;
  Polynomial scaled(double factor) const;

  /// Canonical text form, parseable back into the identical term set.
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void check_point(std::span<const double> x) const;

  std::size_t dimension_;
  std::vector<Term> terms_;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);

/// Product with a cap on the number of resulting terms (ResourceError).
Polynomial multiply(const Polynomial& a, const Polynomial& b,
                    std::size_t term_cap = kDefaultTermCap);

/// base^exponent by repeated squaring, same cap semantics as multiply().
Polynomial power(const Polynomial& base, std::uint32_t exponent,
                 std::size_t term_cap = kDefaultTermCap);

/// Degree-indexed homogeneous parts phi_k of a polynomial.
class HomogeneousDecomposition {
 public:
  explicit HomogeneousDecomposition(std::size_t dimension)
      : dimension_(dimension) {}

  std::size_t dimension() const noexcept { return dimension_; }
  bool empty() const noexcept { return parts_.empty(); }

  /// Largest stored degree, or kNegativeInfinityDegree when empty.
  int max_degree() const noexcept;

  const std::map<int, Polynomial>& parts() const noexcept { return parts_; }

  /// nullptr when phi_k is identically zero.
  const Polynomial* part(int degree) const;

  /// Sum of all parts; equals the decomposed polynomial.
  Polynomial reassemble() const;

 private:
  friend HomogeneousDecomposition decompose(const Polynomial& p);

  std::size_t dimension_;
  std::map<int, Polynomial> parts_;
};

HomogeneousDecomposition decompose(const Polynomial& p);

/// Number of decompose() calls made by this process so far.
std::uint64_t decomposition_count() noexcept;

/// Ray coefficients c_0..c_p with c_k = phi_k(d), so h(t d) = sum_k c_k t^k.
/// Empty for the zero polynomial. Throws InputError if d is zero.
std::vector<double> restrict_to_ray(const HomogeneousDecomposition& dec,
                                    std::span<const double> d);

/// Horner evaluation of sum_k c_k t^k.
double evaluate_univariate(std::span<const double> coefficients, double t);

}  // namespace polycert
