#ifndef TORUSPEC_MODE_SOLVER_HPP
#define TORUSPEC_MODE_SOLVER_HPP

#include "toruspec/field_ops.hpp"

#include <map>
#include <string>
#include <vector>

namespace toruspec {

struct ResonanceError : std::runtime_error {
  std::int64_t xi;
  explicit ResonanceError(std::int64_t x)
      : std::runtime_error("resonant mode xi = " + std::to_string(x) +
                           " (divisor vanishes: a_{j0} xi in Z)"),
        xi(x) {}
};

struct DivisorTooSmallError : std::runtime_error {
  std::int64_t xi;
  double divisor;
  DivisorTooSmallError(std::int64_t x, double d)
      : std::runtime_error("divisor " + std::to_string(d) + " below floor at xi = " +
                           std::to_string(x)),
        xi(x),
        divisor(d) {}
};

struct SolveOptions {
  double divisor_floor = 1e-8;
};

/// Solves (d_{t_j} + i a_j(t) xi) u-hat(., xi) = f-hat(., xi) through the
/// averaging formula: conjugate by S_j, divide by i(m + a_{j0} xi) in the
/// mixed (t-grid x t_j-coefficient) representation, conjugate back.
/// Returns the coefficient block together with its t-window.
std::pair<Eigen::VectorXcd, int> solve_mode(const PartialFourierField& f, const SystemSpec& sys,
                                            int j, std::int64_t xi,
                                            const SolveOptions& opts = {});

/// min over the t-grid of |e^{2 pi i a_{j0}(t) xi} - 1|.
double divisor_min(const SystemSpec& sys, int j, std::int64_t xi);

/// Exact resonance test (a_{j0} xi in Z) for constant means with exact tags;
/// nullopt when the tag cannot decide.
std::optional<bool> exact_resonance(const SystemSpec& sys, int j, std::int64_t xi);

struct SolveObstruction {
  std::int64_t xi;
  std::string kind;  // "resonance" | "divisor-too-small" | "zero-mode-mean"
  double divisor;
};

struct SolveReport {
  std::vector<SolveObstruction> obstructions;
  std::map<std::int64_t, int> chosen_j;
  std::map<std::int64_t, double> mode_residual;  // sup-grid residual, max over j
  bool compatibility_checked = false;
  double compatibility_residual = 0.0;
};

/// Mode-by-mode solve of X_j u = f_j; per xi the j with the largest divisor
/// wins (ties to the smallest j). Obstructed modes are skipped and reported.
std::pair<PartialFourierField, SolveReport> solve_system(
    std::span<const PartialFourierField> f_list, const SystemSpec& sys, FrequencyWindow window,
    const SolveOptions& opts = {});

}  // namespace toruspec

#endif
