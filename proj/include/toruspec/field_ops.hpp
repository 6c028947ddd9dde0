#ifndef TORUSPEC_FIELD_OPS_HPP
#define TORUSPEC_FIELD_OPS_HPP

#include "toruspec/fourier_field.hpp"
#include "toruspec/system.hpp"

namespace toruspec {

/// Complex-double multiplier spectrum of a trig polynomial, optionally with a
/// constant added at frequency zero.
using Spectrum = std::map<std::vector<int>, std::complex<double>>;
Spectrum spectrum_of(const TrigPoly& p, double extra_constant = 0.0);

/// X_j u per mode: d_{t_j} u-hat + i xi (a * u-hat), the convolution exact at
/// coefficient level; the t-window grows by a's bandwidth.
PartialFourierField apply_vector_field(const PartialFourierField& u, const TrigPoly& a, int j,
                                       double extra_constant = 0.0);
PartialFourierField apply_vector_field(const PartialFourierField& u, const SystemSpec& sys, int j);

/// P = sum_j X_j^2, applied as the composition summed.
PartialFourierField apply_sum_of_squares(const PartialFourierField& u, const SystemSpec& sys);

/// The conjugation automorphism: multiplies each slice by e^{sign i A(t) xi}
/// through grid evaluation on the phase-enlarged grid (t_window + |xi| bw(A)
/// per slice). Marks the result lossy when |xi| bw(A) exceeds the t-window.
PartialFourierField conjugate(const PartialFourierField& u, const TrigPoly& A, int sign);

/// sup-grid norm of (d_{t_j} + i a_{j0} xi) S_j u - S_j X_j u.
double intertwining_residual(const PartialFourierField& u, const SystemSpec& sys, int j);

struct EnergyIdentityRow {
  std::int64_t xi;
  double lhs;  // sum_j ||X_j u hat(.,xi)||^2
  double rhs;  // |<P u hat(.,xi), u hat(.,xi)>|
  double rel_residual;
};

/// Mode-wise energy identity of the skew-adjoint mode operators.
std::vector<EnergyIdentityRow> mode_energy_identity(const PartialFourierField& u,
                                                    const SystemSpec& sys);

/// sup over the common grid of |a - b| (windows harmonized by zero padding).
double field_sup_difference(const PartialFourierField& a, const PartialFourierField& b);

}  // namespace toruspec

#endif
