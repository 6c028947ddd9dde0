#ifndef TORUSPEC_COUNTEREXAMPLE_HPP
#define TORUSPEC_COUNTEREXAMPLE_HPP

#include "toruspec/decay.hpp"
#include "toruspec/field_ops.hpp"
#include "toruspec/witness.hpp"

namespace toruspec {

struct WitnessInvalidError : std::runtime_error {
  explicit WitnessInvalidError(const std::string& why)
      : std::runtime_error("witness does not validate: " + why) {}
};

/// Per-level data of the singular solution u = S^{-1} v: the slice at xi^nu
/// is e^{-iA(t) xi^nu} e^{i tau^nu . t}, so sup_t |u-hat| = 1 while each
/// |X_j u-hat| equals |tau_j^nu + alpha_j xi^nu|, bounded by the witness.
struct CounterexampleLevel {
  int nu;
  Int xi;
  std::vector<Int> tau;
  double sup_u;                  // measured on the t-grid
  std::vector<double> xju_sup;   // certified upper bounds per j
  bool in_field;                 // slice materialized in the returned field
};

struct CounterexampleResult {
  PartialFourierField u;
  std::vector<CounterexampleLevel> levels;
  DecayReport u_decay;
  std::vector<DecayReport> xju_decay;
};

/// Builds the non-smooth u with every X_j u rapidly decaying, from a
/// validated witness on a closed system. Levels whose frequencies exceed the
/// window are kept in the report (their slice data is analytic) but not in
/// the dense field.
CounterexampleResult build_counterexample(const WitnessSequence& witness, const SystemSpec& sys,
                                          int depth, FrequencyWindow window);

}  // namespace toruspec

#endif
