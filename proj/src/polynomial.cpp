#include "polycert/polynomial.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <numeric>
#include <utility>

#include "polycert/errors.hpp"

namespace polycert {

namespace {

std::atomic<std::uint64_t> g_decompositions{0};

double ipow(double x, std::uint32_t e) {
  double r = 1.0;
  for (std::uint32_t i = 0; i < e; ++i) r *= x;
  return r;
}

std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

struct ExponentLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    return a < b;
  }
};

}  // namespace

Monomial::Monomial(Exponents exponents) : exponents_(std::move(exponents)) {
  degree_ = static_cast<int>(
      std::accumulate(exponents_.begin(), exponents_.end(), std::uint64_t{0}));
}

Monomial Monomial::variable(std::size_t dimension, std::size_t var,
                            std::uint32_t power) {
  if (var >= dimension) throw InputError("variable index out of range");
  Exponents e(dimension, 0);
  e[var] = power;
  return Monomial(std::move(e));
}

Monomial Monomial::one(std::size_t dimension) {
  return Monomial(Exponents(dimension, 0));
}

Monomial Monomial::operator*(const Monomial& other) const {
  Exponents e(exponents_);
  for (std::size_t j = 0; j < e.size(); ++j) e[j] += other.exponents_[j];
  return Monomial(std::move(e));
}

double Monomial::evaluate(std::span<const double> x) const {
  double prod = 1.0;
  for (std::size_t j = 0; j < exponents_.size(); ++j) {
    if (exponents_[j] != 0) prod *= ipow(x[j], exponents_[j]);
  }
  return prod;
}

bool graded_lex_before(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return a.exponents() > b.exponents();
}

Polynomial::Polynomial(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw InputError("polynomial dimension must be positive");
}

Polynomial::Polynomial(std::size_t dimension, std::vector<Term> terms)
    : dimension_(dimension) {
  if (dimension == 0) throw InputError("polynomial dimension must be positive");
  std::map<Exponents, double, ExponentLess> combined;
  for (auto& t : terms) {
    if (t.monomial.dimension() != dimension) {
      throw InputError("term exponent vector has length " +
                       std::to_string(t.monomial.dimension()) +
                       ", expected " + std::to_string(dimension));
    }
    if (!std::isfinite(t.coefficient)) {
      throw InputError("non-finite polynomial coefficient");
    }
    combined[t.monomial.exponents()] += t.coefficient;
  }
  terms_.reserve(combined.size());
  for (auto& [exps, coeff] : combined) {
    if (coeff != 0.0) terms_.push_back(Term{Monomial(exps), coeff});
  }
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    return graded_lex_before(a.monomial, b.monomial);
  });
}

Polynomial Polynomial::constant(std::size_t dimension, double value) {
  return Polynomial(dimension, {Term{Monomial::one(dimension), value}});
}

Polynomial Polynomial::variable(std::size_t dimension, std::size_t var) {
  return Polynomial(dimension, {Term{Monomial::variable(dimension, var), 1.0}});
}

int Polynomial::degree() const noexcept {
  return terms_.empty() ? kNegativeInfinityDegree
                        : terms_.front().monomial.degree();
}

double Polynomial::coefficient_l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coefficient);
  return s;
}

void Polynomial::check_point(std::span<const double> x) const {
  if (x.size() != dimension_) {
    throw InputError("point has length " + std::to_string(x.size()) +
                     ", polynomial dimension is " + std::to_string(dimension_));
  }
}

double Polynomial::evaluate(std::span<const double> x) const {
  check_point(x);
  double sum = 0.0;
  for (const auto& t : terms_) sum += t.coefficient * t.monomial.evaluate(x);
  return sum;
}

std::vector<double> Polynomial::gradient(std::span<const double> x) const {
  check_point(x);
  std::vector<double> g(dimension_, 0.0);
  for (const auto& t : terms_) {
    const auto& e = t.monomial.exponents();
    for (std::size_t j = 0; j < dimension_; ++j) {
      if (e[j] == 0) continue;
      double prod = t.coefficient * static_cast<double>(e[j]) * ipow(x[j], e[j] - 1);
      for (std::size_t k = 0; k < dimension_; ++k) {
        if (k != j && e[k] != 0) prod *= ipow(x[k], e[k]);
      }
      g[j] += prod;
    }
  }
  return g;
}

Polynomial Polynomial::operator-() const { return scaled(-1.0); }

Polynomial Polynomial::scaled(double factor) const {
  std::vector<Term> out(terms_.begin(), terms_.end());
  for (auto& t : out) t.coefficient *= factor;
  return Polynomial(dimension_, std::move(out));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    double c = t.coefficient;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    const double mag = std::abs(c);
    std::string factors;
    const auto& e = t.monomial.exponents();
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += "x" + std::to_string(j + 1);
      if (e[j] > 1) factors += "^" + std::to_string(e[j]);
    }
    if (factors.empty()) {
      out += format_real(mag);
    } else if (mag == 1.0) {
      out += factors;
    } else {
      out += format_real(mag) + "*" + factors;
    }
  }
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.dimension_ != b.dimension_ || a.terms_.size() != b.terms_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].monomial == b.terms_[i].monomial) ||
        a.terms_[i].coefficient != b.terms_[i].coefficient) {
      return false;
    }
  }
  return true;
}

namespace {

void require_same_dimension(const Polynomial& a, const Polynomial& b) {
  if (a.dimension() != b.dimension()) {
    throw InputError("polynomial dimension mismatch");
  }
}

}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_dimension(a, b);
  std::vector<Term> terms(a.terms().begin(), a.terms().end());
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return Polynomial(a.dimension(), std::move(terms));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + (-b);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  return multiply(a, b, std::numeric_limits<std::size_t>::max());
}

Polynomial multiply(const Polynomial& a, const Polynomial& b,
                    std::size_t term_cap) {
  require_same_dimension(a, b);
  std::map<Exponents, double, ExponentLess> acc;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      Monomial m = ta.monomial * tb.monomial;
      acc[m.exponents()] += ta.coefficient * tb.coefficient;
      if (acc.size() > term_cap) {
        throw ResourceError("expansion exceeds the term cap of " +
                            std::to_string(term_cap));
      }
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [e, c] : acc) terms.push_back(Term{Monomial(e), c});
  return Polynomial(a.dimension(), std::move(terms));
}

Polynomial power(const Polynomial& base, std::uint32_t exponent,
                 std::size_t term_cap) {
  Polynomial result = Polynomial::constant(base.dimension(), 1.0);
  Polynomial square = base;
  while (exponent > 0) {
    if (exponent & 1u) result = multiply(result, square, term_cap);
    exponent >>= 1;
    if (exponent > 0) square = multiply(square, square, term_cap);
  }
  return result;
}

int HomogeneousDecomposition::max_degree() const noexcept {
  return parts_.empty() ? kNegativeInfinityDegree : parts_.rbegin()->first;
}

const Polynomial* HomogeneousDecomposition::part(int degree) const {
  auto it = parts_.find(degree);
  return it == parts_.end() ? nullptr : &it->second;
}

Polynomial HomogeneousDecomposition::reassemble() const {
  std::vector<Term> terms;
  for (const auto& [k, p] : parts_) {
    terms.insert(terms.end(), p.terms().begin(), p.terms().end());
  }
  return Polynomial(dimension_, std::move(terms));
}

HomogeneousDecomposition decompose(const Polynomial& p) {
  g_decompositions.fetch_add(1, std::memory_order_relaxed);
  HomogeneousDecomposition dec(p.dimension());
  std::map<int, std::vector<Term>> grouped;
  for (const auto& t : p.terms()) grouped[t.monomial.degree()].push_back(t);
  for (auto& [k, terms] : grouped) {
    dec.parts_.emplace(k, Polynomial(p.dimension(), std::move(terms)));
  }
  return dec;
}

std::uint64_t decomposition_count() noexcept {
  return g_decompositions.load(std::memory_order_relaxed);
}

std::vector<double> restrict_to_ray(const HomogeneousDecomposition& dec,
                                    std::span<const double> d) {
  if (d.size() != dec.dimension()) {
    throw InputError("direction has length " + std::to_string(d.size()) +
                     ", expected " + std::to_string(dec.dimension()));
  }
  if (std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; })) {
    throw InputError("direction must be nonzero");
  }
  if (dec.empty()) return {};
  std::vector<double> c(static_cast<std::size_t>(dec.max_degree()) + 1, 0.0);
  for (const auto& [k, part] : dec.parts()) {
    c[static_cast<std::size_t>(k)] = part.evaluate(d);
  }
  return c;
}

double evaluate_univariate(std::span<const double> coefficients, double t) {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * t + *it;
  }
  return acc;
}

}  // namespace polycert
