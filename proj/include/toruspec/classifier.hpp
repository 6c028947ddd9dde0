#ifndef TORUSPEC_CLASSIFIER_HPP
#define TORUSPEC_CLASSIFIER_HPP

#include "toruspec/counterexample.hpp"
#include "toruspec/diophantine.hpp"
#include "toruspec/propagation.hpp"
#include "toruspec/system.hpp"

#include <array>

namespace toruspec {

enum class Property { GH_X, GH_P, GH_X0, GS_X, GS_P, GS_X0, AGH_X, AGH_P, AGH_X0 };
enum class Status { Holds, Fails, Undetermined };

const char* property_name(Property p);
const char* status_name(Status s);

struct Verdict {
  Property property;
  Status status = Status::Undetermined;
  /// Ordered (theorem tag, certificate reference) pairs.
  std::vector<std::pair<std::string, std::string>> reasons;
  std::optional<FiniteTypeReport> finite_type;
  std::optional<SaVerdict> sa;
  std::optional<GsVerdict> gs;
};

struct ClassifyResult {
  std::array<Verdict, 9> verdicts;

  const Verdict& get(Property p) const { return verdicts[static_cast<int>(p)]; }
  Verdict& get(Property p) { return verdicts[static_cast<int>(p)]; }
};

/// Theorem-level decision tree:
///  - a finite-type point makes GH/GS/AGH hold for the system and its sum of
///    squares; the constant-coefficient family is judged from its own alphas
///    (sampled from the range at quarter-grid points when a mean varies);
///  - with no finite-type point the means are constants and the Diophantine
///    certificates decide everything.
/// GH(X)=GH(P) and GS(X)=GS(P)=AGH(X)=AGH(P) are derived, never re-decided.
ClassifyResult classify(const SystemSpec& sys, const Int& xi_max);

/// Independent re-check of the equivalence closure; throws on violation.
void assert_equivalence_closure(const ClassifyResult& r);

struct InconsistentVerdictError : std::runtime_error {
  explicit InconsistentVerdictError(const std::string& what)
      : std::runtime_error("verdict inconsistency: " + what) {}
};

struct CrossValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CrossValidationReport {
  std::vector<CrossValidationCheck> checks;
  bool ok = true;
};

/// Exercises the verdicts numerically: SA failures are confirmed by the
/// counterexample dichotomy, finite-type successes by the propagation check.
/// Mismatches raise InconsistentVerdictError.
CrossValidationReport cross_validate(const SystemSpec& sys, FrequencyWindow window,
                                     const Int& xi_max, unsigned seed = 1);

}  // namespace toruspec

#endif
