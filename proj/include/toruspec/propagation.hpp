#ifndef TORUSPEC_PROPAGATION_HPP
#define TORUSPEC_PROPAGATION_HPP

#include "toruspec/decay.hpp"
#include "toruspec/field_ops.hpp"

namespace toruspec {

struct HypothesisFailedError : std::runtime_error {
  enum Which { RhsDecay, BasePointDecay } which;
  explicit HypothesisFailedError(Which w)
      : std::runtime_error(w == RhsDecay
                               ? "hypothesis failed: right-hand sides are not rapidly decaying"
                               : "hypothesis failed: no rapid decay at the base point"),
        which(w) {}
};

struct PropagationInput {
  PartialFourierField u;
  std::vector<double> base_point;
  std::vector<PartialFourierField> smooth_rhs;  // f_j = X_j u
};

/// Per-xi record of the numeric sweep mirroring the proof: grid points split
/// into the good set A (some divisor large) and the cells B_tau, bounds
/// propagated from the base point along coordinate segments.
struct SweepRow {
  std::int64_t xi;
  double frac_A;            // fraction of grid points with a usable divisor
  int max_chain_steps;      // coordinate replacements used (capped at n)
  bool cap_bound;           // true when some chain used all n replacements
  double measured_constant; // sup_t of chain bound * (1+|xi|)^k
  double chain_slack;       // max of |u-hat(t)| / chain bound (<= 1 + tol expected)
};

struct PropagationResult {
  bool holds = false;
  DecayReport u_decay;
  DecayReport base_decay;
  double growth_order = 0.0;  // measured M-hat of u
  std::vector<SweepRow> sweep;
  std::string detail;
};

/// Numeric propagation-of-regularity check: validates the input consistency,
/// the rhs decay at threshold 2k + M-hat and the base-point decay at k, runs
/// the A/B sweep, and reports Holds when sup_t decay of u fits RapidDecay(k).
PropagationResult propagation_check(const PropagationInput& input, const SystemSpec& sys,
                                    double k);

}  // namespace toruspec

#endif
