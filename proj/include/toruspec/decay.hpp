#ifndef TORUSPEC_DECAY_HPP
#define TORUSPEC_DECAY_HPP

#include "toruspec/fourier_field.hpp"

#include <optional>
#include <vector>

namespace toruspec {

struct InsufficientBandsError : std::runtime_error {
  InsufficientBandsError() : std::runtime_error("fewer than 3 dyadic bands populated") {}
};

/// Effectively-infinite decay exponent reported for all-zero data.
inline constexpr double kInfiniteExponent = 1e6;

enum class DecayVerdict { RapidDecay, PolynomialGrowth, Inconclusive };

struct DecayBand {
  int m;             // band [2^m, 2^{m+1})
  double log1p_xi;   // log(1 + 2^m), the band representative
  double sup;        // max over the band of sup_t |u-hat(t, xi)|
};

struct DecayReport {
  std::vector<DecayBand> bands;
  double k_hat = 0.0;
  double c_hat = 0.0;
  std::optional<double> m_hat;  // growth order in the polynomial regime
  DecayVerdict verdict = DecayVerdict::Inconclusive;
  double fit_residual = 0.0;    // RMS deviation from the isotonic (monotone) profile
  double ls_residual = 0.0;     // RMS residual of the least-squares line
  bool all_zero = false;
  double threshold = 0.0;
};

struct DecayMode {
  enum Kind { SupT, AtPoint } kind = SupT;
  std::vector<double> point;  // base point for AtPoint

  static DecayMode sup_t() { return {SupT, {}}; }
  static DecayMode at_point(std::vector<double> s) { return {AtPoint, std::move(s)}; }
};

/// Log-log decay classification over dyadic |xi| bands. RapidDecay requires
/// the least-squares exponent to reach `threshold` and the band sups to be
/// monotone within 0.15 in log scale.
DecayReport decay_report(const PartialFourierField& u, const DecayMode& mode,
                         double threshold = 8.0);

/// Same fit over explicit (log(1+|xi|), sup) samples; used where frequencies
/// exceed any dense window (witness-mode data) and for cone-restricted fits.
DecayReport decay_report_from_samples(std::vector<DecayBand> bands, double threshold);

}  // namespace toruspec

#endif
