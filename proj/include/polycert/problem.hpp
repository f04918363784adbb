#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polycert/polynomial.hpp"

namespace polycert {

/// minimize objective(x) subject to constraints[i](x) <= 0.
///
/// Polynomials are addressed by index in [m]+ = {0, 1, ..., m}: index 0 is
/// the objective, index i >= 1 is constraints[i - 1].
class Problem {
 public:
  /// Throws InputError if any polynomial's dimension differs from n.
  Problem(std::size_t dimension, Polynomial objective,
          std::vector<Polynomial> constraints = {},
          std::optional<std::string> name = std::nullopt);

  std::size_t dimension() const noexcept { return dimension_; }
  const Polynomial& objective() const noexcept { return polynomials_.front(); }
  std::size_t constraint_count() const noexcept {
    return polynomials_.size() - 1;
  }
  const Polynomial& constraint(std::size_t i) const {
    return polynomials_.at(i + 1);
  }
  /// g_0 = f, g_1..g_m.
  const std::vector<Polynomial>& polynomials() const noexcept {
    return polynomials_;
  }
  const std::optional<std::string>& name() const noexcept { return name_; }

 private:
  std::size_t dimension_;
  std::vector<Polynomial> polynomials_;
  std::optional<std::string> name_;
};

}  // namespace polycert
