#ifndef TORUSPEC_FOURIER_FIELD_HPP
#define TORUSPEC_FOURIER_FIELD_HPP

#include "toruspec/trig_poly.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace toruspec {

struct WindowTooSmallError : std::runtime_error {
  WindowTooSmallError() : std::runtime_error("mode does not fit the frequency window") {}
};

struct WindowOverflowError : std::runtime_error {
  explicit WindowOverflowError(const std::string& what) : std::runtime_error(what) {}
};

struct FrequencyWindow {
  std::int64_t xi = 1;  // |xi| bound
  int t = 1;            // |tau|_inf bound

  void validate() const {
    if (xi < 1 || t < 1) throw std::invalid_argument("window bounds must be positive");
  }
};

/// Pairwise (cascade) summation; the reduction order every norm uses.
double pairwise_sum(std::span<const double> xs);

/// Partial-Fourier representation of a distribution on T^{n+1}: for each
/// present x-frequency xi, the dense block of t-Fourier coefficients over
/// |tau|_inf <= t_window. Absent slices are zero; xi keys may be large, only
/// materialized slices cost memory.
class PartialFourierField {
 public:
  PartialFourierField(int n, std::int64_t xi_window, int t_window)
      : n_(n), xi_window_(xi_window), t_window_(t_window) {
    if (n < 1) throw std::invalid_argument("t-dimension must be >= 1");
    if (xi_window < 1 || t_window < 1) throw std::invalid_argument("window must be positive");
    if (tau_count() > (1L << 26)) throw WindowOverflowError("t-window too large");
  }

  int n() const { return n_; }
  std::int64_t xi_window() const { return xi_window_; }
  int t_window() const { return t_window_; }
  bool real_flag() const { return real_flag_; }
  void set_real_flag(bool v) { real_flag_ = v; }
  bool lossy() const { return lossy_; }
  void mark_lossy() { lossy_ = true; }

  long tau_count() const {
    long c = 1;
    for (int i = 0; i < n_; ++i) c *= (2L * t_window_ + 1);
    return c;
  }

  long index_of(std::span<const int> tau) const;
  std::vector<int> tau_of(long idx) const;

  const std::map<std::int64_t, Eigen::VectorXcd>& slices() const { return slices_; }
  const Eigen::VectorXcd* slice(std::int64_t xi) const;
  Eigen::VectorXcd& mutable_slice(std::int64_t xi);

  void set_coeff(std::span<const int> tau, std::int64_t xi, std::complex<double> v);
  std::complex<double> coeff(std::span<const int> tau, std::int64_t xi) const;

  /// Drops slices whose coefficients are all below eps in modulus.
  void prune(double eps = 0.0);

  double max_abs_coeff() const;
  /// Parseval l2 norm over all stored coefficients (pairwise reduction).
  double l2_norm() const;

  /// Verifies coeff(-tau, -xi) == conj(coeff(tau, xi)) within tol.
  bool check_real_symmetry(double tol = 1e-12) const;

 private:
  int n_;
  std::int64_t xi_window_;
  int t_window_;
  bool real_flag_ = false;
  bool lossy_ = false;
  std::map<std::int64_t, Eigen::VectorXcd> slices_;
};

/// One term of a closed-form test function: amp * e^{i(<tau,t> + xi x)},
/// optionally modulated by a trig polynomial in t.
struct ModeTerm {
  std::vector<int> tau;
  std::int64_t xi = 0;
  std::complex<double> amp{1.0, 0.0};
  std::optional<TrigPoly> modulation;
};

/// Exact coefficient placement; throws WindowTooSmallError on aliasing.
PartialFourierField synthesize(int n, std::span<const ModeTerm> terms, FrequencyWindow window);

// --- dense grid transforms (uniform grid, G points per axis) ---------------

/// Values on the grid (2pi g / G per axis) of a coefficient block with
/// |tau|_inf <= W. Exact (to rounding) for G >= 2W+1.
Eigen::VectorXcd synthesize_grid(const Eigen::VectorXcd& coeffs, int n, int W, int G);

/// Inverse of synthesize_grid for band-limited data (no aliasing when the
/// grid function is supported on |tau|_inf <= W and G >= 2W+1).
Eigen::VectorXcd analyze_grid(const Eigen::VectorXcd& grid, int n, int W, int G);

/// Coefficient block of `src` (window Ws) zero-padded to window Wd >= Ws.
Eigen::VectorXcd pad_block(const Eigen::VectorXcd& src, int n, int Ws, int Wd);

/// sup over the natural grid of |slice values|; zero for absent slices.
double slice_sup_grid(const PartialFourierField& u, std::int64_t xi);

/// max over present slices of slice_sup_grid.
double field_sup_grid(const PartialFourierField& u);

/// Direct evaluation of the slice at an arbitrary t point.
std::complex<double> eval_slice_at(const PartialFourierField& u, std::int64_t xi,
                                   std::span<const double> t);

}  // namespace toruspec

#endif
