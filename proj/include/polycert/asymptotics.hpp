#pragma once

// Asymptotic behavior of a polynomial h along a direction d.
//
// With h = sum_k phi_k and mu(d) the largest k with phi_k(d) != 0, the ray
// restriction is h(t d) = sum_{k <= mu} phi_k(d) t^k, hence
//
//   h_inf(d) = -inf        if mu >= 2 and phi_mu(d) < 0
//            = phi_1(d)    if mu == 1
//            = +inf        if mu >= 2 and phi_mu(d) > 0
//            = 0           if mu <= 0.
//
// "phi_k(d) != 0" is decided under a Tolerance: for unit d every monomial is
// bounded by 1 in magnitude, so |phi_k(d)| <= abs + rel * ||coeffs(phi_k)||_1
// is declared zero.
//
// A declared zero can still be a genuine small value, e.g. c x2^6 with d2 near
// 0. The certificate therefore also rejects d when a declared-zero c_k above mu
// is positive beyond the evaluation-noise band rel * s_k(d), with
// s_k(d) = sum_a |c_a d^a|: such a term eventually dominates h(t d).

#include <cstddef>
#include <span>
#include <vector>

#include "polycert/polynomial.hpp"
#include "polycert/problem.hpp"

namespace polycert {

struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-10;

  /// Throws InputError when either component is negative or non-finite.
  void validate() const;
};

/// Declared-zero threshold for a part with the given coefficient 1-norm.
inline double zero_threshold(const Tolerance& tol, double coefficient_l1) {
  return tol.abs + tol.rel * coefficient_l1;
}

/// True when a declared-zero coefficient c with term magnitude s may hide a
/// positive value: c > rel * s.
inline bool hidden_positive(const Tolerance& tol, double c, double magnitude) {
  return c > tol.rel * magnitude;
}

/// s_k(d) = sum_a |c_a d^a| for a homogeneous part, with each term formed
/// exactly as Polynomial::evaluate forms it.
double term_magnitude(const Polynomial& part, std::span<const double> d);

enum class SignKind { NegInfinity, Finite, PosInfinity };

struct AsymptoticSign {
  SignKind kind = SignKind::Finite;
  double value = 0.0;  // meaningful for Finite only

  static AsymptoticSign neg_infinity() { return {SignKind::NegInfinity, 0.0}; }
  static AsymptoticSign pos_infinity() { return {SignKind::PosInfinity, 0.0}; }
  static AsymptoticSign finite(double v) { return {SignKind::Finite, v}; }

  friend bool operator==(const AsymptoticSign&, const AsymptoticSign&) = default;
};

/// A coefficient declared zero whose magnitude was within a factor 10 of the
/// threshold, i.e. threshold / 10 < |c_k| <= threshold.
struct NearThreshold {
  int degree = 0;
  double magnitude = 0.0;
  double threshold = 0.0;
};

struct DirectionalProfile {
  int mu = kNegativeInfinityDegree;
  double leading_value = 0.0;
  std::vector<double> ray_coefficients;
  std::vector<double> term_magnitudes;  // s_k(d), same indexing
  AsymptoticSign sign;
  std::vector<NearThreshold> near_threshold;
};

/// Requires | ||d|| - 1 | <= 1e-12 (InputError otherwise).
DirectionalProfile classify(const HomogeneousDecomposition& dec,
                            std::span<const double> d,
                            const Tolerance& tol = {});

/// True iff every profile is NegInfinity or Finite(v) with v < -tol.abs, and
/// no profile has a hidden positive coefficient above mu.
/// profiles[0] is the objective, the rest the constraints.
bool certificate_check(std::span<const DirectionalProfile> profiles,
                       const Tolerance& tol = {});

/// Cauchy root bound T = 1 + max_{k<mu} |c_k / c_mu| (at least 1): the ray
/// restriction is strictly negative for every t >= T. Throws ContractError
/// unless the profile's sign is NegInfinity or Finite(v < 0).
double witness_threshold(const DirectionalProfile& profile);

/// Returns d / ||d||; InputError for the zero vector or non-finite entries.
std::vector<double> normalized(std::span<const double> d);

/// Problem with every polynomial decomposed once and flattened for repeated
/// evaluation along many directions. Immutable and shareable across threads.
class CompiledProblem {
 public:
  explicit CompiledProblem(const Problem& problem);

  std::size_t dimension() const noexcept { return dimension_; }
  /// m + 1.
  std::size_t polynomial_count() const noexcept { return polys_.size(); }
  const HomogeneousDecomposition& decomposition(std::size_t i) const {
    return decompositions_.at(i);
  }
  /// deg(g_i), kNegativeInfinityDegree for a zero polynomial.
  int full_degree(std::size_t i) const { return polys_.at(i).degree; }
  /// phi_{i,p_i} as a polynomial (zero polynomial when g_i == 0).
  const Polynomial& top_form(std::size_t i) const { return top_forms_.at(i); }

  /// Scratch buffers for the allocation-free check. One per thread.
  struct Workspace {
    std::vector<double> powers;
  };
  Workspace make_workspace() const;

  struct Flag {
    std::size_t polynomial = 0;
    NearThreshold detail;
  };

  /// Same decision as certificate_check(profiles(d, tol), tol), stopping at
  /// the first failing polynomial (constraints first, then the objective).
  /// Near-threshold zero declarations seen on the way are appended to
  /// `flags` when non-null. d must be a unit vector (not re-checked).
  bool certifies(std::span<const double> d, const Tolerance& tol,
                 Workspace& ws, std::vector<Flag>* flags = nullptr) const;

  /// classify() for every g_i at d.
  std::vector<DirectionalProfile> profiles(std::span<const double> d,
                                           const Tolerance& tol) const;

  /// phi_{i,p_i}(d), evaluated like the fast path.
  double top_form_value(std::size_t i, std::span<const double> d,
                        Workspace& ws) const;

  /// Declared-zero threshold for phi_{i,k}.
  double threshold(std::size_t i, int k, const Tolerance& tol) const;

 private:
  struct Factor {
    std::uint32_t var;
    std::uint32_t exponent;
  };
  struct FlatTerm {
    double coefficient;
    std::uint32_t first_factor;
    std::uint32_t factor_count;
  };
  struct FlatPart {
    std::uint32_t first_term = 0;
    std::uint32_t term_count = 0;
    double l1 = 0.0;
  };
  struct PartValue {
    double value = 0.0;
    double magnitude = 0.0;
  };
  struct FlatPolynomial {
    int degree = kNegativeInfinityDegree;
    std::vector<FlatPart> parts;  // indexed by degree, 0..degree
  };

  void fill_powers(std::span<const double> d, Workspace& ws) const;
  PartValue eval_part(const FlatPart& part, const Workspace& ws) const;

  std::size_t dimension_;
  int max_degree_ = 0;
  std::vector<HomogeneousDecomposition> decompositions_;
  std::vector<Polynomial> top_forms_;
  std::vector<FlatPolynomial> polys_;
  std::vector<FlatTerm> terms_;
  std::vector<Factor> factors_;
};

}  // namespace polycert
