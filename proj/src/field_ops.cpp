#include "toruspec/field_ops.hpp"

#include <cmath>
#include <numbers>

namespace toruspec {

namespace {
constexpr int kMaxTWindow = 4096;

int checked_t_window(long w) {
  if (w > kMaxTWindow) throw WindowOverflowError("t-window exceeds " + std::to_string(kMaxTWindow));
  return static_cast<int>(w);
}
}  // namespace

Spectrum spectrum_of(const TrigPoly& p, double extra_constant) {
  Spectrum s;
  for (const auto& [k, c] : p.terms()) s[k] = c.to_complex();
  if (extra_constant != 0.0) {
    std::vector<int> zero(p.dim(), 0);
    s[zero] += extra_constant;
  }
  return s;
}

PartialFourierField apply_vector_field(const PartialFourierField& u, const TrigPoly& a, int j,
                                       double extra_constant) {
  if (a.dim() != u.n()) throw std::invalid_argument("coefficient dimension mismatch");
  if (j < 1 || j > u.n()) throw std::out_of_range("vector field index out of range");
  const Spectrum spec = spectrum_of(a, extra_constant);
  const int w_out = checked_t_window(u.t_window() + a.bandwidth());

  PartialFourierField out(u.n(), u.xi_window(), w_out);
  out.set_real_flag(false);
  if (u.lossy()) out.mark_lossy();

  for (const auto& [xi, s] : u.slices()) {
    Eigen::VectorXcd& dst = out.mutable_slice(xi);
    const std::complex<double> ixi(0.0, static_cast<double>(xi));
    std::vector<int> tau_shift(u.n());
    for (long idx = 0; idx < s.size(); ++idx) {
      const std::complex<double> c = s(idx);
      if (c == std::complex<double>(0.0, 0.0)) continue;
      const std::vector<int> tau = u.tau_of(idx);
      // derivative part: i tau_j
      dst(out.index_of(tau)) += std::complex<double>(0.0, static_cast<double>(tau[j - 1])) * c;
      // i xi (a * u): spectral convolution with a's finitely many terms
      for (const auto& [k, ak] : spec) {
        for (int i = 0; i < u.n(); ++i) tau_shift[i] = tau[i] + k[i];
        dst(out.index_of(tau_shift)) += ixi * ak * c;
      }
    }
  }
  out.prune();
  return out;
}

PartialFourierField apply_vector_field(const PartialFourierField& u, const SystemSpec& sys, int j) {
  sys.validate();
  const ExactReal* c = sys.constant_of(j);
  return apply_vector_field(u, sys.coefficients[j - 1], j, c ? c->to_double() : 0.0);
}

PartialFourierField apply_sum_of_squares(const PartialFourierField& u, const SystemSpec& sys) {
  sys.validate();
  if (sys.n != u.n()) throw std::invalid_argument("system dimension mismatch");
  std::optional<PartialFourierField> acc;
  for (int j = 1; j <= sys.n; ++j) {
    PartialFourierField xxj = apply_vector_field(apply_vector_field(u, sys, j), sys, j);
    if (!acc) {
      acc = std::move(xxj);
      continue;
    }
    // windows agree: both grew by 2*bandwidth of the same system
    PartialFourierField merged(u.n(), u.xi_window(), std::max(acc->t_window(), xxj.t_window()));
    for (const auto& [xi, s] : acc->slices())
      merged.mutable_slice(xi) += pad_block(s, u.n(), acc->t_window(), merged.t_window());
    for (const auto& [xi, s] : xxj.slices())
      merged.mutable_slice(xi) += pad_block(s, u.n(), xxj.t_window(), merged.t_window());
    acc = std::move(merged);
  }
  acc->prune();
  return std::move(*acc);
}

PartialFourierField conjugate(const PartialFourierField& u, const TrigPoly& A, int sign) {
  if (A.dim() != u.n()) throw std::invalid_argument("phase dimension mismatch");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
  const int bw = A.bandwidth();
  if (A.is_zero()) return u;
  if (bw == 0) {
    // Constant phase per slice: e^{sign i c xi}.
    const double c0 = to_double(A.constant_term());
    PartialFourierField out(u.n(), u.xi_window(), u.t_window());
    out.set_real_flag(u.real_flag());
    if (u.lossy()) out.mark_lossy();
    for (const auto& [xi, s] : u.slices())
      out.mutable_slice(xi) = s * std::polar(1.0, sign * c0 * static_cast<double>(xi));
    return out;
  }

  long w_needed = u.t_window();
  for (const auto& [xi, s] : u.slices())
    w_needed = std::max<long>(w_needed, u.t_window() + std::abs(xi) * static_cast<long>(bw));
  const int w_out = checked_t_window(w_needed);

  PartialFourierField out(u.n(), u.xi_window(), w_out);
  out.set_real_flag(u.real_flag());
  if (u.lossy()) out.mark_lossy();

  for (const auto& [xi, s] : u.slices()) {
    if (xi == 0) {  // phase identically 1
      out.mutable_slice(0) = pad_block(s, u.n(), u.t_window(), w_out);
      continue;
    }
    const int w_xi = checked_t_window(u.t_window() + std::abs(xi) * static_cast<long>(bw));
    if (std::abs(xi) * static_cast<long>(bw) > u.t_window()) out.mark_lossy();
    const int G = 2 * w_xi + 1;
    const Eigen::VectorXcd grid =
        synthesize_grid(pad_block(s, u.n(), u.t_window(), w_xi), u.n(), w_xi, G);

    Eigen::VectorXcd prod(grid.size());
    std::vector<double> t(u.n());
    const double h = 2.0 * std::numbers::pi / G;
    for (long g = 0; g < grid.size(); ++g) {
      long rem = g;
      for (int i = u.n() - 1; i >= 0; --i) {
        t[i] = h * static_cast<double>(rem % G);
        rem /= G;
      }
      const double phase = static_cast<double>(sign) * A.eval(t) * static_cast<double>(xi);
      prod(g) = grid(g) * std::polar(1.0, phase);
    }
    out.mutable_slice(xi) =
        pad_block(analyze_grid(prod, u.n(), w_xi, G), u.n(), w_xi, w_out);
  }
  out.prune();
  return out;
}

double field_sup_difference(const PartialFourierField& a, const PartialFourierField& b) {
  if (a.n() != b.n()) throw std::invalid_argument("dimension mismatch");
  const int W = std::max(a.t_window(), b.t_window());
  const int G = 2 * W + 1;
  std::map<std::int64_t, bool> xis;
  for (const auto& [xi, s] : a.slices()) xis[xi] = true;
  for (const auto& [xi, s] : b.slices()) xis[xi] = true;
  long count = 1;
  for (int i = 0; i < a.n(); ++i) count *= (2L * W + 1);
  double sup = 0.0;
  for (const auto& [xi, unused] : xis) {
    Eigen::VectorXcd ca = Eigen::VectorXcd::Zero(count);
    if (const auto* s = a.slice(xi)) ca = pad_block(*s, a.n(), a.t_window(), W);
    Eigen::VectorXcd cb = Eigen::VectorXcd::Zero(ca.size());
    if (const auto* s = b.slice(xi)) cb = pad_block(*s, b.n(), b.t_window(), W);
    const Eigen::VectorXcd diff = ca - cb;
    if (diff.cwiseAbs().maxCoeff() == 0.0) continue;
    sup = std::max(sup, synthesize_grid(diff, a.n(), W, G).cwiseAbs().maxCoeff());
  }
  return sup;
}

double intertwining_residual(const PartialFourierField& u, const SystemSpec& sys, int j) {
  sys.validate();
  if (sys.n != u.n()) throw std::invalid_argument("system dimension mismatch");
  const TrigPoly a_j = sys.coefficients[j - 1];
  const TrigPoly A_j = primitive_A_j(a_j, j);
  const TrigPoly mean_j = mean_in_variable(a_j, j);
  const ExactReal* c = sys.constant_of(j);
  const double cval = c ? c->to_double() : 0.0;

  const PartialFourierField Su = conjugate(u, A_j, +1);
  const PartialFourierField lhs = apply_vector_field(Su, mean_j, j, cval);
  const PartialFourierField rhs = conjugate(apply_vector_field(u, a_j, j, cval), A_j, +1);
  return field_sup_difference(lhs, rhs);
}

std::vector<EnergyIdentityRow> mode_energy_identity(const PartialFourierField& u,
                                                    const SystemSpec& sys) {
  sys.validate();
  std::vector<PartialFourierField> xu;
  xu.reserve(sys.n);
  for (int j = 1; j <= sys.n; ++j) xu.push_back(apply_vector_field(u, sys, j));
  const PartialFourierField pu = apply_sum_of_squares(u, sys);

  std::vector<EnergyIdentityRow> rows;
  for (const auto& [xi, s] : u.slices()) {
    EnergyIdentityRow row{xi, 0.0, 0.0, 0.0};
    std::vector<double> sq;
    for (const PartialFourierField& f : xu) {
      if (const auto* fs = f.slice(xi))
        for (long i = 0; i < fs->size(); ++i) sq.push_back(std::norm((*fs)(i)));
    }
    row.lhs = pairwise_sum(sq);

    std::complex<double> inner(0.0, 0.0);
    if (const auto* ps = pu.slice(xi)) {
      const Eigen::VectorXcd upad = pad_block(s, u.n(), u.t_window(), pu.t_window());
      std::vector<double> re, im;
      for (long i = 0; i < ps->size(); ++i) {
        const std::complex<double> term = (*ps)(i)*std::conj(upad(i));
        re.push_back(term.real());
        im.push_back(term.imag());
      }
      inner = {pairwise_sum(re), pairwise_sum(im)};
    }
    row.rhs = std::abs(inner);
    row.rel_residual = std::abs(row.lhs - row.rhs) / std::max(row.lhs, 1e-300);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace toruspec
