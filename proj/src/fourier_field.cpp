#include "toruspec/fourier_field.hpp"

#include <cmath>
#include <numbers>

namespace toruspec {

double pairwise_sum(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  if (xs.size() == 1) return xs[0];
  if (xs.size() == 2) return xs[0] + xs[1];
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

long PartialFourierField::index_of(std::span<const int> tau) const {
  if (static_cast<int>(tau.size()) != n_) throw std::invalid_argument("tau dimension mismatch");
  long idx = 0;
  const long width = 2L * t_window_ + 1;
  for (int i = 0; i < n_; ++i) {
    if (std::abs(tau[i]) > t_window_) throw WindowTooSmallError();
    idx = idx * width + (tau[i] + t_window_);
  }
  return idx;
}

std::vector<int> PartialFourierField::tau_of(long idx) const {
  std::vector<int> tau(n_);
  const long width = 2L * t_window_ + 1;
  for (int i = n_ - 1; i >= 0; --i) {
    tau[i] = static_cast<int>(idx % width) - t_window_;
    idx /= width;
  }
  return tau;
}

const Eigen::VectorXcd* PartialFourierField::slice(std::int64_t xi) const {
  auto it = slices_.find(xi);
  return it == slices_.end() ? nullptr : &it->second;
}

Eigen::VectorXcd& PartialFourierField::mutable_slice(std::int64_t xi) {
  if (std::abs(xi) > xi_window_) throw WindowTooSmallError();
  auto it = slices_.find(xi);
  if (it == slices_.end())
    it = slices_.emplace(xi, Eigen::VectorXcd::Zero(tau_count())).first;
  return it->second;
}

void PartialFourierField::set_coeff(std::span<const int> tau, std::int64_t xi,
                                    std::complex<double> v) {
  mutable_slice(xi)(index_of(tau)) = v;
}

std::complex<double> PartialFourierField::coeff(std::span<const int> tau, std::int64_t xi) const {
  const Eigen::VectorXcd* s = slice(xi);
  if (!s) return {0.0, 0.0};
  return (*s)(index_of(tau));
}

void PartialFourierField::prune(double eps) {
  for (auto it = slices_.begin(); it != slices_.end();) {
    if (it->second.cwiseAbs().maxCoeff() <= eps)
      it = slices_.erase(it);
    else
      ++it;
  }
}

double PartialFourierField::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [xi, s] : slices_)
    if (s.size() > 0) m = std::max(m, s.cwiseAbs().maxCoeff());
  return m;
}

double PartialFourierField::l2_norm() const {
  std::vector<double> sq;
  for (const auto& [xi, s] : slices_)
    for (long i = 0; i < s.size(); ++i) sq.push_back(std::norm(s(i)));
  return std::sqrt(pairwise_sum(sq));
}

bool PartialFourierField::check_real_symmetry(double tol) const {
  std::vector<int> neg(n_);
  for (const auto& [xi, s] : slices_) {
    for (long i = 0; i < s.size(); ++i) {
      const std::vector<int> tau = tau_of(i);
      for (int k = 0; k < n_; ++k) neg[k] = -tau[k];
      const std::complex<double> mirrored = coeff(neg, -xi);
      if (std::abs(mirrored - std::conj(s(i))) > tol) return false;
    }
  }
  return true;
}

PartialFourierField synthesize(int n, std::span<const ModeTerm> terms, FrequencyWindow window) {
  window.validate();
  PartialFourierField f(n, window.xi, window.t);
  for (const ModeTerm& m : terms) {
    if (static_cast<int>(m.tau.size()) != n) throw std::invalid_argument("tau dimension mismatch");
    if (std::abs(m.xi) > window.xi) throw WindowTooSmallError();
    if (!m.modulation) {
      f.set_coeff(m.tau, m.xi, f.coeff(m.tau, m.xi) + m.amp);
      continue;
    }
    if (m.modulation->dim() != n) throw std::invalid_argument("modulation dimension mismatch");
    for (const auto& [k, c] : m.modulation->terms()) {
      std::vector<int> tau(m.tau);
      for (int i = 0; i < n; ++i) tau[i] += k[i];
      for (int v : tau)
        if (std::abs(v) > window.t) throw WindowTooSmallError();
      f.set_coeff(tau, m.xi, f.coeff(tau, m.xi) + m.amp * c.to_complex());
    }
  }
  return f;
}

namespace {

/// Applies a (rows x cols) matrix along one axis of a row-major tensor whose
/// axes all have size `cols` except possibly earlier-transformed ones; dims
/// carries the current per-axis sizes.
Eigen::VectorXcd apply_axis(const Eigen::VectorXcd& in, std::vector<long>& dims, int axis,
                            const Eigen::MatrixXcd& M) {
  const long rows = M.rows(), cols = M.cols();
  long outer = 1, inner = 1;
  for (int i = 0; i < axis; ++i) outer *= dims[i];
  for (std::size_t i = axis + 1; i < dims.size(); ++i) inner *= dims[i];
  if (dims[axis] != cols) throw std::logic_error("axis size mismatch");

  Eigen::VectorXcd out(outer * rows * inner);
  for (long o = 0; o < outer; ++o) {
    for (long i = 0; i < inner; ++i) {
      Eigen::VectorXcd v(cols);
      for (long c = 0; c < cols; ++c) v(c) = in((o * cols + c) * inner + i);
      const Eigen::VectorXcd w = M * v;
      for (long r = 0; r < rows; ++r) out((o * rows + r) * inner + i) = w(r);
    }
  }
  dims[axis] = rows;
  return out;
}

Eigen::MatrixXcd synthesis_matrix(int W, int G) {
  Eigen::MatrixXcd M(G, 2 * W + 1);
  const double h = 2.0 * std::numbers::pi / G;
  for (int g = 0; g < G; ++g)
    for (int w = -W; w <= W; ++w) M(g, w + W) = std::polar(1.0, h * g * w);
  return M;
}

Eigen::MatrixXcd analysis_matrix(int W, int G) {
  Eigen::MatrixXcd M(2 * W + 1, G);
  const double h = 2.0 * std::numbers::pi / G;
  const double inv = 1.0 / G;
  for (int w = -W; w <= W; ++w)
    for (int g = 0; g < G; ++g) M(w + W, g) = inv * std::polar(1.0, -h * g * w);
  return M;
}

}  // namespace

Eigen::VectorXcd synthesize_grid(const Eigen::VectorXcd& coeffs, int n, int W, int G) {
  if (G < 2 * W + 1) throw std::invalid_argument("grid too coarse for the window");
  std::vector<long> dims(n, 2L * W + 1);
  Eigen::VectorXcd data = coeffs;
  const Eigen::MatrixXcd M = synthesis_matrix(W, G);
  for (int a = 0; a < n; ++a) data = apply_axis(data, dims, a, M);
  return data;
}

Eigen::VectorXcd analyze_grid(const Eigen::VectorXcd& grid, int n, int W, int G) {
  if (G < 2 * W + 1) throw std::invalid_argument("grid too coarse for the window");
  std::vector<long> dims(n, G);
  Eigen::VectorXcd data = grid;
  const Eigen::MatrixXcd M = analysis_matrix(W, G);
  for (int a = 0; a < n; ++a) data = apply_axis(data, dims, a, M);
  return data;
}

Eigen::VectorXcd pad_block(const Eigen::VectorXcd& src, int n, int Ws, int Wd) {
  if (Wd < Ws) throw std::invalid_argument("cannot pad to a smaller window");
  if (Wd == Ws) return src;
  const long ws = 2L * Ws + 1, wd = 2L * Wd + 1;
  long total_d = 1;
  for (int i = 0; i < n; ++i) total_d *= wd;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(total_d);
  long total_s = src.size();
  std::vector<int> tau(n);
  for (long idx = 0; idx < total_s; ++idx) {
    long rem = idx;
    for (int i = n - 1; i >= 0; --i) {
      tau[i] = static_cast<int>(rem % ws) - Ws;
      rem /= ws;
    }
    long d = 0;
    for (int i = 0; i < n; ++i) d = d * wd + (tau[i] + Wd);
    out(d) = src(idx);
  }
  return out;
}

double slice_sup_grid(const PartialFourierField& u, std::int64_t xi) {
  const Eigen::VectorXcd* s = u.slice(xi);
  if (!s) return 0.0;
  const int G = 2 * u.t_window() + 1;
  return synthesize_grid(*s, u.n(), u.t_window(), G).cwiseAbs().maxCoeff();
}

double field_sup_grid(const PartialFourierField& u) {
  double m = 0.0;
  for (const auto& [xi, s] : u.slices()) m = std::max(m, slice_sup_grid(u, xi));
  return m;
}

std::complex<double> eval_slice_at(const PartialFourierField& u, std::int64_t xi,
                                   std::span<const double> t) {
  const Eigen::VectorXcd* s = u.slice(xi);
  if (!s) return {0.0, 0.0};
  std::complex<double> acc(0.0, 0.0);
  for (long i = 0; i < s->size(); ++i) {
    if ((*s)(i) == std::complex<double>(0.0, 0.0)) continue;
    const std::vector<int> tau = u.tau_of(i);
    double phase = 0.0;
    for (int k = 0; k < u.n(); ++k) phase += tau[k] * t[k];
    acc += (*s)(i)*std::polar(1.0, phase);
  }
  return acc;
}

}  // namespace toruspec
