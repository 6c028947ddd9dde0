#ifndef TORUSPEC_DIOPHANTINE_HPP
#define TORUSPEC_DIOPHANTINE_HPP

#include "toruspec/exact_real.hpp"
#include "toruspec/witness.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace toruspec {

struct DepthTooSmallError : std::runtime_error {
  DepthTooSmallError() : std::runtime_error("fewer than 3 witness entries can be certified") {}
};

/// One scan row: m(xi) = max_j dist(alpha_j xi, Z), minimized over integer
/// tau per coordinate. Exact (lo == hi) for rational tags, a certified
/// enclosure otherwise.
struct ScanRow {
  Int xi;
  Rational m_lo;
  Rational m_hi;
  bool exact = false;
};

struct ScanTable {
  std::vector<ScanRow> rows;
  double rho_hat = 0.0;      // least-squares exponent of -log m against log(1+xi)
  int fit_points = 0;
};

ScanTable sa_scan(std::span<const ExactReal> alphas, const Int& xi_max);

enum class SaStatus { SA, NotSA, Undetermined };

struct LowerBoundCert {
  Rational C;
  Rational rho;
  std::string proof_tag;
};

struct SaVerdict {
  SaStatus status = SaStatus::Undetermined;
  std::optional<WitnessSequence> witness;   // for SA
  std::optional<LowerBoundCert> bound;      // for NotSA
  ScanTable scan;
  std::string note;
};

/// Decides simultaneous approximability for tagged exact tuples:
///  (a) all rational            -> SA with an exact resonance witness;
///  (b) any quadratic coordinate -> NotSA via the conjugate-product bound;
///  (c) factorial-Liouville coordinates sharing one base (others rational)
///                               -> SA with a partial-sum witness;
///  (d) otherwise                -> Undetermined with scan evidence.
SaVerdict classify_sa(std::span<const ExactReal> alphas, const Int& xi_max);

/// Builds n structurally-linked factorial-Liouville numbers together with a
/// witness certified to `depth` entries (exact rational verification).
std::pair<std::vector<ExactReal>, WitnessSequence> liouville_tuple(int n, const Int& base,
                                                                   int depth);

enum class GsStatus { Holds, Fails, Undetermined };

struct GsVerdict {
  GsStatus status = GsStatus::Undetermined;
  std::optional<LowerBoundCert> bound;            // for Holds
  std::optional<WitnessSequence> violating;       // for Fails
  std::string gamma_description;
  ScanTable scan;
  std::string xi_zero_note;
};

/// The global-solvability Diophantine condition: a lower bound
/// max_j |tau_j + alpha_j xi| >= C (1+|xi|)^{-rho} off the resonance set
/// Gamma = {(tau,xi) : tau_j + alpha_j xi = 0 for all j}.
GsVerdict gs_condition_check(std::span<const ExactReal> alphas, const Int& xi_max);

struct ExpLowerBoundResult {
  bool hypothesis_holds = false;
  bool conclusion_holds = false;
};

/// hypothesis: dist(alpha xi, Z) >= (1+|xi|)^{-ell};
/// conclusion: |e^{2 pi i alpha xi} - 1| >= (1+|xi|)^{-ell}.
/// The implication hypothesis => conclusion always holds (checked internally).
ExpLowerBoundResult exp_lower_bound_check(const ExactReal& alpha, const Int& xi, int ell);

/// Peetre's inequality (1+|z|)^s <= (1+|z'|)^s (1+|z-z'|)^{|s|} for lattice
/// points, evaluated with a 1e-12 relative slack.
bool peetre_holds(std::span<const long> zeta, std::span<const long> zeta_prime, int sigma);

}  // namespace toruspec

#endif
