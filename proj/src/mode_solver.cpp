#include "toruspec/mode_solver.hpp"

#include <cmath>
#include <numbers>

namespace toruspec {

namespace {

/// Applies the synthesis matrix along every axis except `skip` (0-based).
Eigen::VectorXcd to_mixed(const Eigen::VectorXcd& coeffs, int n, int W, int skip) {
  const int G = 2 * W + 1;
  Eigen::MatrixXcd M(G, G);
  const double h = 2.0 * std::numbers::pi / G;
  for (int g = 0; g < G; ++g)
    for (int w = -W; w <= W; ++w) M(g, w + W) = std::polar(1.0, h * g * w);

  std::vector<long> dims(n, G);
  Eigen::VectorXcd data = coeffs;
  for (int a = 0; a < n; ++a) {
    if (a == skip) continue;
    long outer = 1, inner = 1;
    for (int i = 0; i < a; ++i) outer *= dims[i];
    for (int i = a + 1; i < n; ++i) inner *= dims[i];
    Eigen::VectorXcd out(data.size());
    for (long o = 0; o < outer; ++o)
      for (long i = 0; i < inner; ++i) {
        Eigen::VectorXcd v(G);
        for (long c = 0; c < G; ++c) v(c) = data((o * G + c) * inner + i);
        const Eigen::VectorXcd w = M * v;
        for (long r = 0; r < G; ++r) out((o * G + r) * inner + i) = w(r);
      }
    data = out;
  }
  return data;
}

Eigen::VectorXcd from_mixed(const Eigen::VectorXcd& mixed, int n, int W, int skip) {
  const int G = 2 * W + 1;
  Eigen::MatrixXcd M(G, G);
  const double h = 2.0 * std::numbers::pi / G;
  const double inv = 1.0 / G;
  for (int w = -W; w <= W; ++w)
    for (int g = 0; g < G; ++g) M(w + W, g) = inv * std::polar(1.0, -h * g * w);

  std::vector<long> dims(n, G);
  Eigen::VectorXcd data = mixed;
  for (int a = 0; a < n; ++a) {
    if (a == skip) continue;
    long outer = 1, inner = 1;
    for (int i = 0; i < a; ++i) outer *= dims[i];
    for (int i = a + 1; i < n; ++i) inner *= dims[i];
    Eigen::VectorXcd out(data.size());
    for (long o = 0; o < outer; ++o)
      for (long i = 0; i < inner; ++i) {
        Eigen::VectorXcd v(G);
        for (long c = 0; c < G; ++c) v(c) = data((o * G + c) * inner + i);
        const Eigen::VectorXcd w = M * v;
        for (long r = 0; r < G; ++r) out((o * G + r) * inner + i) = w(r);
      }
    data = out;
  }
  return data;
}

}  // namespace

std::optional<bool> exact_resonance(const SystemSpec& sys, int j, std::int64_t xi) {
  const TrigPoly m = sys.mean_poly(j);
  if (!m.is_constant()) return std::nullopt;
  ExactReal alpha = ExactReal(m.constant_term());
  if (const ExactReal* c = sys.constant_of(j)) alpha = c->plus_rational(m.constant_term());
  if (alpha.has_exact_rational_value())
    return den(alpha.exact_rational_value() * Rational(Int(xi))) == 1;
  return false;  // quadratic / factorial tags are irrational: never resonant
}

double divisor_min(const SystemSpec& sys, int j, std::int64_t xi) {
  const TrigPoly mean = sys.mean_poly(j);
  const ExactReal* c = sys.constant_of(j);
  const double cval = c ? c->to_double() : 0.0;
  if (mean.is_constant()) {
    const double theta = (to_double(mean.constant_term()) + cval) * static_cast<double>(xi);
    return 2.0 * std::abs(std::sin(std::numbers::pi * theta));
  }
  const int per_axis = 4 * (mean.bandwidth() + 1);
  const double h = 2.0 * std::numbers::pi / per_axis;
  long total = 1;
  for (int i = 0; i < sys.n; ++i) total *= per_axis;
  double mn = std::numeric_limits<double>::infinity();
  std::vector<double> t(sys.n, 0.0);
  for (long g = 0; g < total; ++g) {
    long rem = g;
    for (int i = sys.n - 1; i >= 0; --i) {
      t[i] = h * static_cast<double>(rem % per_axis);
      rem /= per_axis;
    }
    const double theta = (mean.eval(t) + cval) * static_cast<double>(xi);
    mn = std::min(mn, 2.0 * std::abs(std::sin(std::numbers::pi * theta)));
  }
  return mn;
}

std::pair<Eigen::VectorXcd, int> solve_mode(const PartialFourierField& f, const SystemSpec& sys,
                                            int j, std::int64_t xi, const SolveOptions& opts) {
  sys.validate();
  if (sys.n != f.n()) throw std::invalid_argument("system dimension mismatch");
  if (j < 1 || j > sys.n) throw std::out_of_range("vector field index out of range");

  if (const auto exact = exact_resonance(sys, j, xi); exact && *exact) throw ResonanceError(xi);
  const double dmin = divisor_min(sys, j, xi);
  if (dmin < 1e-14) throw ResonanceError(xi);
  if (dmin < opts.divisor_floor) throw DivisorTooSmallError(xi, dmin);

  const int n = f.n();
  const TrigPoly a_j = sys.coefficients[j - 1];
  const TrigPoly A_j = primitive_A_j(a_j, j);
  const TrigPoly mean = sys.mean_poly(j);
  const ExactReal* cpart = sys.constant_of(j);
  const double cval = cpart ? cpart->to_double() : 0.0;

  // Work on a single-slice view of f.
  PartialFourierField fslice(n, f.xi_window(), f.t_window());
  if (const auto* s = f.slice(xi)) fslice.mutable_slice(xi) = *s;
  const PartialFourierField Sf = conjugate(fslice, A_j, +1);

  const int W = Sf.t_window();
  const int G = 2 * W + 1;
  Eigen::VectorXcd block = Eigen::VectorXcd::Zero(Sf.tau_count());
  if (const auto* s = Sf.slice(xi)) block = *s;

  // Mixed representation: grid on the other axes, coefficients m along t_j.
  Eigen::VectorXcd mixed = to_mixed(block, n, W, j - 1);

  // theta(t) = a_{j0}(t) xi; a_{j0} does not depend on t_j, so evaluate with
  // t_j = 0 at each grid point of the remaining axes.
  const double h = 2.0 * std::numbers::pi / G;
  std::vector<long> strides(n, 1);
  for (int i = n - 2; i >= 0; --i) strides[i] = strides[i + 1] * G;
  std::vector<double> t(n, 0.0);
  for (long idx = 0; idx < mixed.size(); ++idx) {
    long rem = idx;
    int m_j = 0;
    for (int i = 0; i < n; ++i) {
      const long pos = rem / strides[i];
      rem %= strides[i];
      if (i == j - 1) {
        m_j = static_cast<int>(pos) - W;
        t[i] = 0.0;
      } else {
        t[i] = h * static_cast<double>(pos);
      }
    }
    const double theta = (mean.eval(t) + cval) * static_cast<double>(xi);
    mixed(idx) /= std::complex<double>(0.0, static_cast<double>(m_j) + theta);
  }

  const Eigen::VectorXcd su = from_mixed(mixed, n, W, j - 1);

  PartialFourierField su_field(n, f.xi_window(), W);
  su_field.mutable_slice(xi) = su;
  PartialFourierField u = conjugate(su_field, A_j, -1);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(u.tau_count());
  if (const auto* s = u.slice(xi)) out = *s;
  return {out, u.t_window()};
}

std::pair<PartialFourierField, SolveReport> solve_system(
    std::span<const PartialFourierField> f_list, const SystemSpec& sys, FrequencyWindow window,
    const SolveOptions& opts) {
  sys.validate();
  if (static_cast<int>(f_list.size()) != sys.n)
    throw std::invalid_argument("need one right-hand side per vector field");
  window.validate();
  SolveReport report;

  // Compatibility: commuting systems must satisfy X_j f_l = X_l f_j.
  bool commuting = true;
  for (int j = 1; j <= sys.n && commuting; ++j)
    for (int l = j + 1; l <= sys.n && commuting; ++l)
      if (!commutator_bracket(sys.coefficients[j - 1], sys.coefficients[l - 1], j, l).is_zero())
        commuting = false;
  if (commuting && sys.n > 1) {
    report.compatibility_checked = true;
    for (int j = 1; j <= sys.n; ++j)
      for (int l = j + 1; l <= sys.n; ++l) {
        const PartialFourierField lhs = apply_vector_field(f_list[l - 1], sys, j);
        const PartialFourierField rhs = apply_vector_field(f_list[j - 1], sys, l);
        report.compatibility_residual =
            std::max(report.compatibility_residual, field_sup_difference(lhs, rhs));
      }
  }

  std::map<std::int64_t, bool> xis;
  for (const PartialFourierField& f : f_list)
    for (const auto& [xi, s] : f.slices()) xis[xi] = true;

  int t_out = window.t;
  for (const auto& [xi, unused] : xis)
    if (xi != 0) {
      // final window after both conjugations
      int bw = 0;
      for (int j = 1; j <= sys.n; ++j) bw = std::max(bw, sys.coefficients[j - 1].bandwidth());
      t_out = std::max<int>(t_out, static_cast<int>(std::min<long>(
                                       4096, window.t + 2 * std::abs(xi) * static_cast<long>(bw))));
    }
  PartialFourierField u(sys.n, window.xi, t_out);

  for (const auto& [xi, unused] : xis) {
    if (xi == 0) {
      // Zero mode: d_{t_j} u-hat(., 0) = f_j-hat(., 0); solve per tau with any
      // j having tau_j != 0. The tau = 0 coefficient is an obstruction unless
      // every mean vanishes.
      Eigen::VectorXcd& dst = u.mutable_slice(0);
      double mean_mass = 0.0;
      for (int j = 1; j <= sys.n; ++j) {
        const auto* s = f_list[j - 1].slice(0);
        if (!s) continue;
        for (long i = 0; i < s->size(); ++i) {
          const std::vector<int> tau = f_list[j - 1].tau_of(i);
          const bool zero_tau =
              std::all_of(tau.begin(), tau.end(), [](int v) { return v == 0; });
          if (zero_tau) {
            mean_mass = std::max(mean_mass, std::abs((*s)(i)));
            continue;
          }
          if (tau[j - 1] == 0) continue;
          dst(u.index_of(tau)) =
              (*s)(i) / std::complex<double>(0.0, static_cast<double>(tau[j - 1]));
        }
      }
      if (mean_mass > 1e-12)
        report.obstructions.push_back(SolveObstruction{0, "zero-mode-mean", 0.0});
      continue;
    }

    // Largest divisor wins; ties broken by the smallest j.
    int best_j = 0;
    double best_d = -1.0;
    for (int j = 1; j <= sys.n; ++j) {
      const double d = divisor_min(sys, j, xi);
      if (d > best_d + 1e-15) {
        best_d = d;
        best_j = j;
      }
    }
    const auto res = exact_resonance(sys, best_j, xi);
    if ((res && *res) || best_d < 1e-14) {
      report.obstructions.push_back(SolveObstruction{xi, "resonance", best_d});
      continue;
    }
    if (best_d < opts.divisor_floor) {
      report.obstructions.push_back(SolveObstruction{xi, "divisor-too-small", best_d});
      continue;
    }
    report.chosen_j[xi] = best_j;
    auto [block, w] = solve_mode(f_list[best_j - 1], sys, best_j, xi, opts);
    u.mutable_slice(xi) = pad_block(block, sys.n, w, u.t_window());
  }
  u.prune();

  // Residuals: sup-grid per mode of X_j u - f_j, maximized over j.
  for (int j = 1; j <= sys.n; ++j) {
    const PartialFourierField xu = apply_vector_field(u, sys, j);
    for (const auto& [xi, unused] : xis) {
      const bool skipped =
          std::any_of(report.obstructions.begin(), report.obstructions.end(),
                      [&](const SolveObstruction& o) { return o.xi == xi; });
      if (skipped) continue;
      PartialFourierField a(sys.n, u.xi_window(), xu.t_window());
      if (const auto* s = xu.slice(xi)) a.mutable_slice(xi) = *s;
      PartialFourierField b(sys.n, u.xi_window(), f_list[j - 1].t_window());
      if (const auto* s = f_list[j - 1].slice(xi)) b.mutable_slice(xi) = *s;
      const double r = field_sup_difference(a, b);
      auto it = report.mode_residual.find(xi);
      if (it == report.mode_residual.end() || it->second < r) report.mode_residual[xi] = r;
    }
  }
  return {std::move(u), std::move(report)};
}

}  // namespace toruspec
