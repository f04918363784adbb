#include "polycert/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polycert/errors.hpp"

namespace polycert {

void Tolerance::validate() const {
  if (!(std::isfinite(abs) && abs >= 0.0)) {
    throw InputError("tolerance abs must be finite and >= 0");
  }
  if (!(std::isfinite(rel) && rel >= 0.0)) {
    throw InputError("tolerance rel must be finite and >= 0");
  }
}

namespace {

AsymptoticSign sign_for(int mu, double leading) {
  if (mu <= 0) return AsymptoticSign::finite(0.0);
  if (mu == 1) return AsymptoticSign::finite(leading);
  return leading < 0 ? AsymptoticSign::neg_infinity()
                     : AsymptoticSign::pos_infinity();
}

bool sign_certifies(const AsymptoticSign& s, const Tolerance& tol) {
  switch (s.kind) {
    case SignKind::NegInfinity:
      return true;
    case SignKind::Finite:
      return s.value < -tol.abs;
    case SignKind::PosInfinity:
      return false;
  }
  return false;
}

void require_unit(std::span<const double> d) {
  double sq = 0.0;
  for (double v : d) sq += v * v;
  if (!(std::abs(std::sqrt(sq) - 1.0) <= 1e-12)) {
    throw InputError("direction must be a unit vector (norm " +
                     std::to_string(std::sqrt(sq)) + ")");
  }
}

}  // namespace

std::vector<double> normalized(std::span<const double> d) {
  double sq = 0.0;
  for (double v : d) {
    if (!std::isfinite(v)) throw InputError("direction has non-finite entries");
    sq += v * v;
  }
  if (sq == 0.0) throw InputError("direction must be nonzero");
  const double norm = std::sqrt(sq);
  std::vector<double> out(d.begin(), d.end());
  for (double& v : out) v /= norm;
  return out;
}

double term_magnitude(const Polynomial& part, std::span<const double> d) {
  double s = 0.0;
  for (const auto& t : part.terms()) s += std::abs(t.coefficient * t.monomial.evaluate(d));
  return s;
}

DirectionalProfile classify(const HomogeneousDecomposition& dec,
                            std::span<const double> d, const Tolerance& tol) {
  if (d.size() != dec.dimension()) {
    throw InputError("direction has length " + std::to_string(d.size()) +
                     ", expected " + std::to_string(dec.dimension()));
  }
  require_unit(d);
  tol.validate();

  DirectionalProfile out;
  if (dec.empty()) {
    out.sign = AsymptoticSign::finite(0.0);
    return out;
  }
  out.ray_coefficients = restrict_to_ray(dec, d);
  out.term_magnitudes.assign(out.ray_coefficients.size(), 0.0);
  for (const auto& [k, part] : dec.parts()) {
    out.term_magnitudes[static_cast<std::size_t>(k)] = term_magnitude(part, d);
  }
  for (int k = dec.max_degree(); k >= 0; --k) {
    const Polynomial* part = dec.part(k);
    const double thr = zero_threshold(tol, part ? part->coefficient_l1_norm() : 0.0);
    const double c = out.ray_coefficients[static_cast<std::size_t>(k)];
    if (std::abs(c) > thr) {
      out.mu = k;
      out.leading_value = c;
      break;
    }
    if (part && std::abs(c) > thr / 10.0) {
      out.near_threshold.push_back(NearThreshold{k, std::abs(c), thr});
    }
  }
  out.sign = sign_for(out.mu, out.leading_value);
  return out;
}

bool certificate_check(std::span<const DirectionalProfile> profiles,
                       const Tolerance& tol) {
  return std::all_of(profiles.begin(), profiles.end(), [&](const DirectionalProfile& p) {
    if (!sign_certifies(p.sign, tol)) return false;
    const auto& c = p.ray_coefficients;
    for (std::size_t k = c.size(); k-- > 0 && static_cast<int>(k) > p.mu;) {
      const double s = k < p.term_magnitudes.size() ? p.term_magnitudes[k] : 0.0;
      if (hidden_positive(tol, c[k], s)) return false;
    }
    return true;
  });
}

double witness_threshold(const DirectionalProfile& profile) {
  const bool negative =
      profile.sign.kind == SignKind::NegInfinity ||
      (profile.sign.kind == SignKind::Finite && profile.sign.value < 0.0 &&
       profile.mu >= 1);
  if (!negative) {
    throw ContractError(
        "witness_threshold requires a profile diverging to -infinity or with "
        "negative finite slope");
  }
  const double lead = profile.ray_coefficients.at(static_cast<std::size_t>(profile.mu));
  double ratio = 0.0;
  for (int k = 0; k < profile.mu; ++k) {
    ratio = std::max(
        ratio, std::abs(profile.ray_coefficients[static_cast<std::size_t>(k)] / lead));
  }
  return 1.0 + ratio;
}

CompiledProblem::CompiledProblem(const Problem& problem)
    : dimension_(problem.dimension()) {
  const auto& polys = problem.polynomials();
  decompositions_.reserve(polys.size());
  polys_.reserve(polys.size());
  for (const auto& p : polys) {
    decompositions_.push_back(decompose(p));
    const auto& dec = decompositions_.back();
    FlatPolynomial flat;
    flat.degree = dec.max_degree();
    if (!dec.empty()) {
      max_degree_ = std::max(max_degree_, flat.degree);
      flat.parts.resize(static_cast<std::size_t>(flat.degree) + 1);
      for (const auto& [k, part] : dec.parts()) {
        FlatPart& fp = flat.parts[static_cast<std::size_t>(k)];
        fp.first_term = static_cast<std::uint32_t>(terms_.size());
        fp.term_count = static_cast<std::uint32_t>(part.size());
        fp.l1 = part.coefficient_l1_norm();
        for (const auto& t : part.terms()) {
          FlatTerm ft{t.coefficient, static_cast<std::uint32_t>(factors_.size()), 0};
          const auto& e = t.monomial.exponents();
          for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] == 0) continue;
            factors_.push_back(Factor{static_cast<std::uint32_t>(j), e[j]});
            ++ft.factor_count;
          }
          terms_.push_back(ft);
        }
      }
      top_forms_.push_back(*dec.part(flat.degree));
    } else {
      top_forms_.emplace_back(dimension_);
    }
    polys_.push_back(std::move(flat));
  }
}

CompiledProblem::Workspace CompiledProblem::make_workspace() const {
  Workspace ws;
  ws.powers.assign(dimension_ * (static_cast<std::size_t>(max_degree_) + 1), 1.0);
  return ws;
}

void CompiledProblem::fill_powers(std::span<const double> d,
                                  Workspace& ws) const {
  const std::size_t stride = static_cast<std::size_t>(max_degree_) + 1;
  if (ws.powers.size() != dimension_ * stride) ws = make_workspace();
  for (std::size_t j = 0; j < dimension_; ++j) {
    double* row = ws.powers.data() + j * stride;
    row[0] = 1.0;
    for (std::size_t e = 1; e < stride; ++e) row[e] = row[e - 1] * d[j];
  }
}

CompiledProblem::PartValue CompiledProblem::eval_part(const FlatPart& part,
                                                     const Workspace& ws) const {
  const std::size_t stride = static_cast<std::size_t>(max_degree_) + 1;
  double sum = 0.0;
  double magnitude = 0.0;
  const FlatTerm* t = terms_.data() + part.first_term;
  for (std::uint32_t i = 0; i < part.term_count; ++i, ++t) {
    double prod = 1.0;
    const Factor* f = factors_.data() + t->first_factor;
    for (std::uint32_t j = 0; j < t->factor_count; ++j, ++f) {
      prod *= ws.powers[f->var * stride + f->exponent];
    }
    const double term = t->coefficient * prod;
    sum += term;
    magnitude += std::abs(term);
  }
  return {sum, magnitude};
}

bool CompiledProblem::certifies(std::span<const double> d, const Tolerance& tol,
                                Workspace& ws, std::vector<Flag>* flags) const {
  fill_powers(d, ws);
  const std::size_t count = polys_.size();
  for (std::size_t step = 0; step < count; ++step) {
    // constraints 1..m first, objective last
    const std::size_t i = (step + 1) % count;
    const FlatPolynomial& p = polys_[i];
    bool decided = false;
    for (int k = p.degree; k >= 0; --k) {
      const FlatPart& part = p.parts[static_cast<std::size_t>(k)];
      const PartValue pv = part.term_count ? eval_part(part, ws) : PartValue{};
      const double thr = zero_threshold(tol, part.l1);
      const double c = pv.value;
      if (std::abs(c) > thr) {
        if (!sign_certifies(sign_for(k, c), tol)) return false;
        decided = true;
        break;
      }
      if (flags && part.term_count && std::abs(c) > thr / 10.0) {
        flags->push_back(Flag{i, NearThreshold{k, std::abs(c), thr}});
      }
      if (hidden_positive(tol, c, pv.magnitude)) return false;
    }
    if (!decided) return false;  // h_inf(d) = 0
  }
  return true;
}

std::vector<DirectionalProfile> CompiledProblem::profiles(
    std::span<const double> d, const Tolerance& tol) const {
  std::vector<DirectionalProfile> out;
  out.reserve(decompositions_.size());
  for (const auto& dec : decompositions_) out.push_back(classify(dec, d, tol));
  return out;
}

double CompiledProblem::top_form_value(std::size_t i, std::span<const double> d,
                                       Workspace& ws) const {
  const FlatPolynomial& p = polys_.at(i);
  if (p.degree == kNegativeInfinityDegree) return 0.0;
  fill_powers(d, ws);
  return eval_part(p.parts[static_cast<std::size_t>(p.degree)], ws).value;
}

double CompiledProblem::threshold(std::size_t i, int k,
                                  const Tolerance& tol) const {
  const FlatPolynomial& p = polys_.at(i);
  if (k < 0 || k > p.degree) return zero_threshold(tol, 0.0);
  return zero_threshold(tol, p.parts[static_cast<std::size_t>(k)].l1);
}

}  // namespace polycert
