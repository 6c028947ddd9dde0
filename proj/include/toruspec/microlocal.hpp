#ifndef TORUSPEC_MICROLOCAL_HPP
#define TORUSPEC_MICROLOCAL_HPP

#include "toruspec/decay.hpp"
#include "toruspec/field_ops.hpp"

#include <functional>

namespace toruspec {

struct OutOfClassError : std::runtime_error {
  explicit OutOfClassError(const std::string& why)
      : std::runtime_error("symbol is out of class: " + why) {}
};

struct AssertionFailureError : std::runtime_error {
  explicit AssertionFailureError(const std::string& why) : std::runtime_error(why) {}
};

struct NoConeFoundError : std::runtime_error {
  NoConeFoundError() : std::runtime_error("no t-elliptic cone found down to c = 1/window") {}
};

/// Full-Fourier field on T^N: dense coefficients over |xi|_inf <= window.
class FourierField {
 public:
  FourierField(int N, int window) : N_(N), W_(window) {
    if (N < 1 || window < 1) throw std::invalid_argument("bad field shape");
    coeffs_ = Eigen::VectorXcd::Zero(count());
  }

  int N() const { return N_; }
  int window() const { return W_; }
  long count() const {
    long c = 1;
    for (int i = 0; i < N_; ++i) c *= (2L * W_ + 1);
    return c;
  }
  long index_of(std::span<const int> xi) const;
  std::vector<int> xi_of(long idx) const;

  std::complex<double> coeff(std::span<const int> xi) const { return coeffs_(index_of(xi)); }
  void set_coeff(std::span<const int> xi, std::complex<double> v) { coeffs_(index_of(xi)) = v; }
  void add_coeff(std::span<const int> xi, std::complex<double> v) { coeffs_(index_of(xi)) += v; }
  const Eigen::VectorXcd& coeffs() const { return coeffs_; }
  Eigen::VectorXcd& coeffs() { return coeffs_; }

 private:
  int N_;
  int W_;
  Eigen::VectorXcd coeffs_;
};

/// Circular open cone: angle(xi, axis) < aperture, xi != 0; optionally
/// restricted to |xi| >= inner_radius.
struct Cone {
  Eigen::VectorXd axis;   // unit vector
  double aperture = 0.5;  // radians, in (0, pi)
  double inner_radius = 0.0;

  static Cone around(std::vector<double> dir, double aperture, double inner_radius = 0.0);
  bool contains(std::span<const int> xi) const;
  bool contains_dir(std::span<const double> xi) const;
  /// Closed-subcone relation for coaxial-or-not circular cones:
  /// angle(axes) + aperture' < aperture.
  bool compactly_contains(const Cone& inner) const;
};

/// Discrete symbol with a finite x-spectrum: a(x, xi) = sum_kappa
/// e^{i kappa x} a_kappa(xi). Covers the whole catalogue (x-independent
/// multipliers, modulated multipliers) while keeping the action exact.
struct DiscreteSymbol {
  int N = 1;
  double order = 0.0;
  std::string name;
  std::vector<std::pair<std::vector<int>, std::function<std::complex<double>(std::span<const double>)>>>
      components;

  std::complex<double> value(std::span<const double> x, std::span<const double> xi) const;
  int x_bandwidth() const;
};

struct SeminormCheck {
  bool in_class = true;
  /// (|alpha|, |beta|) -> measured constant sup |D^alpha_x Delta^beta a| /
  /// (1+|xi|)^{m-|alpha|}, split by inner/outer dyadic shells.
  struct Row {
    int alpha_total, beta_total;
    double inner_max, outer_max;
  };
  std::vector<Row> rows;
  std::string violation;
};

/// Measures the S^m_{1,0} finite-difference seminorms over the window for
/// |alpha|, |beta| <= 2; flags blow-up (outer shell growing past the inner).
SeminormCheck symbol_class_check(const DiscreteSymbol& a, int window);

/// Catalogue: "one", "sobolev1", "sobolev2", "laplacian", "dt2", "dx1",
/// "modulation", "cone_cutoff", "exp_growth" (the out-of-class specimen).
DiscreteSymbol make_catalogue_symbol(const std::string& name, int N);

/// Tabulates an x-independent classical symbol and runs the class check;
/// throws OutOfClassError when the measured seminorms blow up.
DiscreteSymbol restrict_classical_symbol(const std::string& name, int N, int window);

/// a(x, D) u via multiplier application per x-harmonic (window grows by the
/// symbol's x-bandwidth).
FourierField apply_symbol(const DiscreteSymbol& a, const FourierField& u);

/// ( sum_{xi in Gamma} (1+|xi|)^{2s} |u-hat(xi)|^2 )^{1/2}.
double cone_sobolev_norm(const FourierField& u, double s, const Cone& gamma);

/// Dyadic-band decay fit restricted to a cone.
DecayReport cone_decay_fit(const FourierField& u, const Cone& gamma, double threshold);

struct DirectionEntry {
  std::vector<double> axis;
  double k_hat = 0.0;
  bool singular = false;
};

struct SingularDirectionReport {
  std::vector<DirectionEntry> directions;
  std::vector<std::vector<double>> singular_axes;  // the measured s(u)
};

SingularDirectionReport singular_directions(const FourierField& u, int fan_resolution,
                                            double k_max);

struct EllipticityResult {
  bool elliptic = false;
  double constant = 0.0;  // measured inf of |a| / (1+|xi|)^m over the cone
};

/// Definition-level directional ellipticity, measured over the window.
EllipticityResult elliptic_in_direction(const DiscreteSymbol& a, std::span<const double> xi0,
                                        const Cone& gamma, double radius, int window);

struct InclusionReport {
  double exponent_in = 0.0;   // fitted decay of u inside Gamma
  double exponent_out = 0.0;  // fitted decay of a(x,D)u inside Gamma'
  bool symbol_vanishes_on_cone = false;
  bool holds = false;
};

/// Microlocal inclusion: decay of a(x,D)u in Gamma' keeps u's exponent up to
/// the symbol order (fit tolerance 0.5). When a vanishes on Gamma, the output
/// must be rapidly decaying in Gamma' regardless of u.
InclusionReport verify_microlocal_inclusion(const DiscreteSymbol& a, const FourierField& u,
                                            const Cone& gamma, const Cone& gamma_prime,
                                            double k_max = 8.0);

struct TEllipticConeReport {
  double c = 0.0;
  DecayReport cone_decay;
  DecayReport pu_decay;
};

/// Largest c <= 1 (dyadic search) with RapidDecay(k_max) of the full-Fourier
/// coefficients on {|xi| <= c |tau|}; throws NoConeFoundError below 1/window.
TEllipticConeReport t_elliptic_cone_decay(const SystemSpec& sys, const PartialFourierField& u,
                                          double k_max);

/// Embeds partial-Fourier data as a full-Fourier field on T^{n+1} with a
/// square window (last coordinate = x-frequency).
FourierField embed_full(const PartialFourierField& u, int window);

/// Measured constants of the kernel decay |a-hat(eta, xi)| <=
/// D_k (1+|eta|)^{-k} (1+|xi|)^m, one row per x-harmonic of the symbol.
struct KernelDecayRow {
  std::vector<int> kappa;
  int k;
  double d_k;
};
std::vector<KernelDecayRow> measured_kernel_decay(const DiscreteSymbol& a, int window, int k_max);

}  // namespace toruspec

#endif
