#ifndef TORUSPEC_SYSTEM_HPP
#define TORUSPEC_SYSTEM_HPP

#include "toruspec/exact_real.hpp"
#include "toruspec/trig_poly.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace toruspec {

struct NotClosedError : std::runtime_error {
  NotClosedError() : std::runtime_error("coefficient form is not closed (nonzero bracket)") {}
};

/// The system X_j = d_{t_j} + a_j(t) d_x on T^{n+1}: n trig-poly coefficients,
/// optionally shifted by tagged exact constants (irrational averages).
struct SystemSpec {
  int n = 0;
  std::vector<TrigPoly> coefficients;
  std::optional<std::vector<ExactReal>> constant_part;

  void validate() const;

  /// Mean of the trig-poly part of a_j over t_j (may depend on the other
  /// variables when the system has a finite-type point).
  TrigPoly mean_poly(int j) const { return mean_in_variable(coefficients[j - 1], j); }

  const ExactReal* constant_of(int j) const {
    if (!constant_part) return nullptr;
    return &(*constant_part)[j - 1];
  }

  bool means_constant() const;

  /// The constant alpha_j = mean of a_j, defined when means_constant().
  ExactReal alpha(int j) const;

  /// a_{j0}(t) evaluated at a grid point (trig part + tagged constant).
  double mean_value_at(int j, std::span<const double> t) const;

  /// Convenience constructors.
  static SystemSpec constants(std::vector<ExactReal> alphas);
  static SystemSpec polys(std::vector<TrigPoly> coeffs);
};

struct FiniteTypeReport {
  bool exists = false;
  std::optional<std::vector<double>> witness_point;
  std::optional<std::pair<int, int>> witness_pair;  // 1-based (j, l)
  std::optional<TrigPoly> bracket;
  std::optional<double> reciprocal_sup_bound;
};

/// Searches every pair bracket for a point of finite type. The witness point
/// maximizes |bracket| over a uniform grid of 4*(bandwidth+1) points per axis;
/// the reciprocal bound is taken over the sublevel set {|bracket| >= max/2}.
FiniteTypeReport finite_type_exists(const SystemSpec& sys);

/// The global primitive A with d_{t_j} A = a_j - alpha_j for all j, built by
/// telescoping integrals. Requires all brackets to vanish.
TrigPoly global_primitive_A(const SystemSpec& sys);

/// A_j for one coefficient (primitive of a_j minus its t_j-mean).
inline TrigPoly primitive_A_j(const TrigPoly& a, int j) { return primitive_in_variable(a, j); }

}  // namespace toruspec

#endif
