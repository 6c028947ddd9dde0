#include "toruspec/microlocal.hpp"

#include <cmath>
#include <numbers>

namespace toruspec {

long FourierField::index_of(std::span<const int> xi) const {
  if (static_cast<int>(xi.size()) != N_) throw std::invalid_argument("frequency dimension mismatch");
  long idx = 0;
  for (int i = 0; i < N_; ++i) {
    if (std::abs(xi[i]) > W_) throw WindowTooSmallError();
    idx = idx * (2L * W_ + 1) + (xi[i] + W_);
  }
  return idx;
}

std::vector<int> FourierField::xi_of(long idx) const {
  std::vector<int> xi(N_);
  for (int i = N_ - 1; i >= 0; --i) {
    xi[i] = static_cast<int>(idx % (2L * W_ + 1)) - W_;
    idx /= (2L * W_ + 1);
  }
  return xi;
}

Cone Cone::around(std::vector<double> dir, double aperture, double inner_radius) {
  Cone c;
  c.axis = Eigen::Map<Eigen::VectorXd>(dir.data(), dir.size());
  const double n = c.axis.norm();
  if (n == 0) throw std::invalid_argument("cone axis must be nonzero");
  c.axis /= n;
  if (aperture <= 0 || aperture >= std::numbers::pi)
    throw std::invalid_argument("aperture must lie in (0, pi)");
  c.aperture = aperture;
  c.inner_radius = inner_radius;
  return c;
}

bool Cone::contains_dir(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != axis.size()) throw std::invalid_argument("dimension mismatch");
  double nn = 0, dot = 0;
  for (int i = 0; i < axis.size(); ++i) {
    nn += xi[i] * xi[i];
    dot += xi[i] * axis(i);
  }
  if (nn == 0) return false;
  const double r = std::sqrt(nn);
  if (r < inner_radius) return false;
  const double cosang = std::clamp(dot / r, -1.0, 1.0);
  return std::acos(cosang) < aperture;
}

bool Cone::contains(std::span<const int> xi) const {
  std::vector<double> d(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) d[i] = static_cast<double>(xi[i]);
  return contains_dir(d);
}

bool Cone::compactly_contains(const Cone& inner) const {
  double dot = 0;
  for (int i = 0; i < axis.size(); ++i) dot += axis(i) * inner.axis(i);
  const double angle = std::acos(std::clamp(dot, -1.0, 1.0));
  return angle + inner.aperture < aperture;
}

std::complex<double> DiscreteSymbol::value(std::span<const double> x,
                                           std::span<const double> xi) const {
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [kappa, fn] : components) {
    double phase = 0.0;
    for (std::size_t i = 0; i < kappa.size(); ++i) phase += kappa[i] * x[i];
    acc += std::polar(1.0, phase) * fn(xi);
  }
  return acc;
}

int DiscreteSymbol::x_bandwidth() const {
  int bw = 0;
  for (const auto& [kappa, fn] : components)
    for (int k : kappa) bw = std::max(bw, std::abs(k));
  return bw;
}

namespace {

double norm2(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// C^2 smoothstep on [0,1].
double smooth01(double u) {
  u = std::clamp(u, 0.0, 1.0);
  return u * u * u * (u * (6.0 * u - 15.0) + 10.0);
}

using MultFn = std::function<std::complex<double>(std::span<const double>)>;

MultFn radial(const std::function<double(double)>& f) {
  return [f](std::span<const double> xi) { return std::complex<double>(f(norm2(xi)), 0.0); };
}

}  // namespace

DiscreteSymbol make_catalogue_symbol(const std::string& name, int N) {
  DiscreteSymbol s;
  s.N = N;
  s.name = name;
  const std::vector<int> zero(N, 0);
  if (name == "one") {
    s.order = 0;
    s.components.emplace_back(zero, radial([](double) { return 1.0; }));
  } else if (name == "sobolev1") {
    s.order = 1;
    s.components.emplace_back(zero, radial([](double r) { return std::sqrt(1.0 + r * r); }));
  } else if (name == "sobolev2") {
    s.order = 2;
    s.components.emplace_back(zero, radial([](double r) { return 1.0 + r * r; }));
  } else if (name == "laplacian") {
    s.order = 2;
    s.components.emplace_back(zero, radial([](double r) { return r * r; }));
  } else if (name == "dt2") {
    s.order = 2;
    s.components.emplace_back(zero, MultFn([](std::span<const double> xi) {
                                return std::complex<double>(xi[0] * xi[0], 0.0);
                              }));
  } else if (name == "dx1") {
    s.order = 1;
    s.components.emplace_back(zero, MultFn([](std::span<const double> xi) {
                                return std::complex<double>(0.0, xi[0]);
                              }));
  } else if (name == "modulation") {
    s.order = 0;
    std::vector<int> e1(N, 0);
    e1[0] = 1;
    s.components.emplace_back(e1, radial([](double) { return 1.0; }));
  } else if (name == "cone_cutoff") {
    s.order = 0;
    s.components.emplace_back(zero, MultFn([N](std::span<const double> xi) {
                                const double r = norm2(xi);
                                if (r == 0.0) return std::complex<double>(0.0, 0.0);
                                const double cosang = xi[0] / r;
                                // 1 inside angle pi/6, 0 outside pi/3
                                const double c_in = std::cos(std::numbers::pi / 6);
                                const double c_out = std::cos(std::numbers::pi / 3);
                                const double ang = smooth01((cosang - c_out) / (c_in - c_out));
                                const double rad = smooth01(r - 1.0);
                                return std::complex<double>(ang * rad, 0.0);
                              }));
  } else if (name == "exp_growth") {
    s.order = 2;
    s.components.emplace_back(zero, radial([](double r) { return std::exp(r); }));
  } else {
    throw std::invalid_argument("unknown catalogue symbol: " + name);
  }
  return s;
}

namespace {

/// Forward finite difference of the multiplier along axis `ax`.
std::complex<double> delta_value(const MultFn& fn, std::vector<double> xi, int ax) {
  std::vector<double> shifted = xi;
  shifted[ax] += 1.0;
  return fn(shifted) - fn(xi);
}

std::complex<double> delta2_value(const MultFn& fn, std::vector<double> xi, int ax1, int ax2) {
  std::vector<double> a = xi, b = xi, c = xi;
  a[ax1] += 1.0;
  a[ax2] += 1.0;
  b[ax1] += 1.0;
  c[ax2] += 1.0;
  return fn(a) - fn(b) - fn(c) + fn(xi);
}

}  // namespace

SeminormCheck symbol_class_check(const DiscreteSymbol& a, int window) {
  SeminormCheck out;
  const int N = a.N;
  const double m = a.order;

  // alpha multi-indices with |alpha| <= 2, encoded as lists of axes.
  std::vector<std::vector<int>> alphas = {{}};
  for (int i = 0; i < N; ++i) alphas.push_back({i});
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) alphas.push_back({i, j});

  for (const std::vector<int>& alpha : alphas) {
    for (int beta_total = 0; beta_total <= 2; ++beta_total) {
      SeminormCheck::Row row{static_cast<int>(alpha.size()), beta_total, 0.0, 0.0};
      // sup over x of |d_x^beta (...)|: bound by the sum over components of
      // |kappa|^beta |a_kappa|; exact since the x-spectrum is finite.
      long total = 1;
      for (int i = 0; i < N; ++i) total *= (2L * window + 1);
      std::vector<double> xi(N);
      for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        double ninf = 0;
        for (int i = N - 1; i >= 0; --i) {
          xi[i] = static_cast<double>(rem % (2 * window + 1) - window);
          ninf = std::max(ninf, std::abs(xi[i]));
          rem /= (2 * window + 1);
        }
        double mag = 0.0;
        for (const auto& [kappa, fn] : a.components) {
          double kfac = 1.0;
          double kn = 0;
          for (int k : kappa) kn += static_cast<double>(k) * k;
          kfac = std::pow(std::sqrt(kn) > 0 ? std::sqrt(kn) : (beta_total ? 0.0 : 1.0),
                          beta_total);
          std::complex<double> v;
          if (alpha.empty())
            v = fn(xi);
          else if (alpha.size() == 1)
            v = delta_value(fn, xi, alpha[0]);
          else
            v = delta2_value(fn, xi, alpha[0], alpha[1]);
          mag += kfac * std::abs(v);
        }
        const double weight =
            std::pow(1.0 + norm2(xi), m - static_cast<double>(alpha.size()));
        const double ratio = mag / weight;
        if (ninf <= window / 2)
          row.inner_max = std::max(row.inner_max, ratio);
        else
          row.outer_max = std::max(row.outer_max, ratio);
      }
      if (row.outer_max > 2.0 * row.inner_max + 1e-9) {
        out.in_class = false;
        out.violation = "seminorm (|alpha|=" + std::to_string(row.alpha_total) +
                        ", |beta|=" + std::to_string(row.beta_total) +
                        ") grows across shells: inner " + std::to_string(row.inner_max) +
                        " outer " + std::to_string(row.outer_max);
      }
      out.rows.push_back(row);
    }
  }
  return out;
}

DiscreteSymbol restrict_classical_symbol(const std::string& name, int N, int window) {
  DiscreteSymbol s = make_catalogue_symbol(name, N);
  const SeminormCheck chk = symbol_class_check(s, window);
  if (!chk.in_class) throw OutOfClassError(s.name + ": " + chk.violation);
  return s;
}

FourierField apply_symbol(const DiscreteSymbol& a, const FourierField& u) {
  if (a.N != u.N()) throw std::invalid_argument("symbol dimension mismatch");
  const int W_out = u.window() + a.x_bandwidth();
  if (W_out > 1024) throw WindowOverflowError("symbol application exceeds window budget");
  FourierField out(u.N(), W_out);
  std::vector<double> xid(u.N());
  std::vector<int> shifted(u.N());
  for (long idx = 0; idx < u.count(); ++idx) {
    const std::complex<double> c = u.coeffs()(idx);
    if (c == std::complex<double>(0.0, 0.0)) continue;
    const std::vector<int> xi = u.xi_of(idx);
    for (int i = 0; i < u.N(); ++i) xid[i] = static_cast<double>(xi[i]);
    for (const auto& [kappa, fn] : a.components) {
      for (int i = 0; i < u.N(); ++i) shifted[i] = xi[i] + kappa[i];
      out.add_coeff(shifted, fn(xid) * c);
    }
  }
  return out;
}

double cone_sobolev_norm(const FourierField& u, double s, const Cone& gamma) {
  std::vector<double> terms;
  std::vector<double> xid(u.N());
  for (long idx = 0; idx < u.count(); ++idx) {
    const std::complex<double> c = u.coeffs()(idx);
    if (c == std::complex<double>(0.0, 0.0)) continue;
    const std::vector<int> xi = u.xi_of(idx);
    if (!gamma.contains(xi)) continue;
    for (int i = 0; i < u.N(); ++i) xid[i] = static_cast<double>(xi[i]);
    terms.push_back(std::pow(1.0 + norm2(xid), 2.0 * s) * std::norm(c));
  }
  return std::sqrt(pairwise_sum(terms));
}

DecayReport cone_decay_fit(const FourierField& u, const Cone& gamma, double threshold) {
  std::map<int, DecayBand> bands;
  std::vector<double> xid(u.N());
  double cone_mass = 0.0;
  for (long idx = 0; idx < u.count(); ++idx) {
    const std::vector<int> xi = u.xi_of(idx);
    if (!gamma.contains(xi)) continue;
    for (int i = 0; i < u.N(); ++i) xid[i] = static_cast<double>(xi[i]);
    const double r = norm2(xid);
    if (r < 1.0) continue;
    const int m = static_cast<int>(std::floor(std::log2(r)));
    if ((2 << m) > u.window()) continue;  // only fully-covered dyadic shells
    const double v = std::abs(u.coeffs()(idx));
    cone_mass += v;
    auto it = bands.find(m);
    if (it == bands.end())
      bands.emplace(m, DecayBand{m, std::log1p(std::pow(2.0, m)), v});
    else
      it->second.sup = std::max(it->second.sup, v);
  }
  std::vector<DecayBand> list;
  for (const auto& [m, b] : bands) list.push_back(b);
  if (list.size() < 3) {
    if (cone_mass < 1e-250) {
      DecayReport vacuous;
      vacuous.all_zero = true;
      vacuous.k_hat = kInfiniteExponent;
      vacuous.verdict = DecayVerdict::RapidDecay;
      vacuous.threshold = threshold;
      return vacuous;
    }
    throw InsufficientBandsError();
  }
  return decay_report_from_samples(std::move(list), threshold);
}

SingularDirectionReport singular_directions(const FourierField& u, int fan_resolution,
                                            double k_max) {
  if (u.window() < 32) throw std::invalid_argument("window must be >= 2^5");
  SingularDirectionReport rep;
  std::vector<std::vector<double>> axes;
  if (u.N() == 1) {
    axes = {{1.0}, {-1.0}};
  } else if (u.N() == 2) {
    for (int i = 0; i < fan_resolution; ++i) {
      const double ang = 2.0 * std::numbers::pi * i / fan_resolution;
      axes.push_back({std::cos(ang), std::sin(ang)});
    }
  } else {
    throw std::invalid_argument("direction fan supported for N <= 2");
  }
  const double aperture =
      u.N() == 1 ? 0.5 : 1.25 * std::numbers::pi / static_cast<double>(fan_resolution);
  for (const auto& ax : axes) {
    const Cone c = Cone::around(ax, aperture);
    const DecayReport r = cone_decay_fit(u, c, k_max);
    DirectionEntry e;
    e.axis = ax;
    e.k_hat = r.k_hat;
    e.singular = r.verdict != DecayVerdict::RapidDecay;
    if (e.singular) rep.singular_axes.push_back(ax);
    rep.directions.push_back(std::move(e));
  }
  return rep;
}

EllipticityResult elliptic_in_direction(const DiscreteSymbol& a, std::span<const double> xi0,
                                        const Cone& gamma, double radius, int window) {
  if (!gamma.contains_dir(xi0)) throw std::invalid_argument("xi0 must lie in the cone");
  EllipticityResult out;
  const int N = a.N;
  // x-grid dense enough for the finite x-spectrum
  const int xg = 4 * (a.x_bandwidth() + 1);
  long xtotal = 1;
  for (int i = 0; i < N; ++i) xtotal *= xg;
  const double h = 2.0 * std::numbers::pi / xg;

  double inf_ratio = std::numeric_limits<double>::infinity();
  bool any = false;
  long total = 1;
  for (int i = 0; i < N; ++i) total *= (2L * window + 1);
  std::vector<double> xi(N), x(N);
  std::vector<int> xii(N);
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    for (int i = N - 1; i >= 0; --i) {
      xii[i] = static_cast<int>(rem % (2 * window + 1)) - window;
      xi[i] = static_cast<double>(xii[i]);
      rem /= (2 * window + 1);
    }
    if (!gamma.contains(xii)) continue;
    const double r = norm2(xi);
    if (r < radius) continue;
    any = true;
    const double weight = std::pow(1.0 + r, a.order);
    for (long xg_idx = 0; xg_idx < xtotal; ++xg_idx) {
      long xr = xg_idx;
      for (int i = N - 1; i >= 0; --i) {
        x[i] = h * static_cast<double>(xr % xg);
        xr /= xg;
      }
      inf_ratio = std::min(inf_ratio, std::abs(a.value(x, xi)) / weight);
    }
  }
  if (!any) return out;
  out.constant = inf_ratio;
  out.elliptic = inf_ratio > 1e-12;
  return out;
}

InclusionReport verify_microlocal_inclusion(const DiscreteSymbol& a, const FourierField& u,
                                            const Cone& gamma, const Cone& gamma_prime,
                                            double k_max) {
  if (!gamma.compactly_contains(gamma_prime))
    throw std::invalid_argument("gamma' must be compactly contained in gamma");

  InclusionReport rep;
  // Does the symbol vanish on the outer cone?
  double sup_a = 0.0;
  {
    const int N = a.N;
    long total = 1;
    for (int i = 0; i < N; ++i) total *= (2L * u.window() + 1);
    std::vector<int> xii(N);
    std::vector<double> xid(N);
    const std::vector<double> x0(N, 0.0);
    for (long idx = 0; idx < total; ++idx) {
      long rem = idx;
      for (int i = N - 1; i >= 0; --i) {
        xii[i] = static_cast<int>(rem % (2 * u.window() + 1)) - u.window();
        xid[i] = static_cast<double>(xii[i]);
        rem /= (2 * u.window() + 1);
      }
      if (!gamma.contains(xii)) continue;
      for (const auto& [kappa, fn] : a.components) sup_a = std::max(sup_a, std::abs(fn(xid)));
    }
  }
  rep.symbol_vanishes_on_cone = sup_a == 0.0;

  const FourierField au = apply_symbol(a, u);
  const DecayReport out_fit = cone_decay_fit(au, gamma_prime, k_max);
  rep.exponent_out = out_fit.k_hat;

  if (rep.symbol_vanishes_on_cone) {
    // Lemma-level claim: output is rapidly decaying in gamma' no matter u.
    rep.holds = out_fit.verdict == DecayVerdict::RapidDecay;
    if (!rep.holds)
      throw AssertionFailureError("vanishing-symbol output fails RapidDecay in gamma': k_hat = " +
                                  std::to_string(out_fit.k_hat));
    return rep;
  }

  const DecayReport in_fit = cone_decay_fit(u, gamma, k_max);
  rep.exponent_in = in_fit.k_hat;
  if (in_fit.all_zero) {
    rep.holds = out_fit.all_zero || out_fit.k_hat >= k_max;
  } else {
    rep.holds = rep.exponent_out >= rep.exponent_in - std::max(a.order, 0.0) - 0.5;
  }
  if (!rep.holds)
    throw AssertionFailureError(
        "inclusion exponent drop too large: in " + std::to_string(rep.exponent_in) + ", out " +
        std::to_string(rep.exponent_out) + ", order " + std::to_string(a.order));
  return rep;
}

FourierField embed_full(const PartialFourierField& u, int window) {
  FourierField out(u.n() + 1, window);
  std::vector<int> full(u.n() + 1);
  for (const auto& [xi, s] : u.slices()) {
    if (std::abs(xi) > window) continue;
    for (long idx = 0; idx < s.size(); ++idx) {
      if (s(idx) == std::complex<double>(0.0, 0.0)) continue;
      const std::vector<int> tau = u.tau_of(idx);
      bool fits = true;
      for (int v : tau) fits = fits && std::abs(v) <= window;
      if (!fits) continue;
      for (int i = 0; i < u.n(); ++i) full[i] = tau[i];
      full[u.n()] = static_cast<int>(xi);
      out.add_coeff(full, s(idx));
    }
  }
  return out;
}

TEllipticConeReport t_elliptic_cone_decay(const SystemSpec& sys, const PartialFourierField& u,
                                          double k_max) {
  TEllipticConeReport rep;
  rep.pu_decay = decay_report(apply_sum_of_squares(u, sys), DecayMode::sup_t(), k_max);

  const int W = u.t_window();
  // Collect (log1p |(tau,xi)|, |coeff|, |tau|, |xi|) samples once.
  struct Sample {
    double tau_norm, xi_abs, total, mag;
  };
  std::vector<Sample> samples;
  for (const auto& [xi, s] : u.slices()) {
    if (std::abs(xi) > W) continue;  // outside the square window
    for (long idx = 0; idx < s.size(); ++idx) {
      const double mag = std::abs(s(idx));
      if (mag == 0.0) continue;
      const std::vector<int> tau = u.tau_of(idx);
      double tn = 0;
      for (int v : tau) tn += static_cast<double>(v) * v;
      Sample smp;
      smp.tau_norm = std::sqrt(tn);
      smp.xi_abs = std::abs(static_cast<double>(xi));
      smp.total = std::sqrt(tn + smp.xi_abs * smp.xi_abs);
      smp.mag = mag;
      samples.push_back(smp);
    }
  }

  for (double c = 1.0; c >= 1.0 / W; c /= 2.0) {
    std::map<int, DecayBand> bands;
    double mass = 0.0;
    for (const Sample& s : samples) {
      if (s.xi_abs > c * s.tau_norm) continue;
      if (s.total < 1.0) continue;
      const int m = static_cast<int>(std::floor(std::log2(s.total)));
      if ((2 << m) > W) continue;
      mass += s.mag;
      auto it = bands.find(m);
      if (it == bands.end())
        bands.emplace(m, DecayBand{m, std::log1p(std::pow(2.0, m)), s.mag});
      else
        it->second.sup = std::max(it->second.sup, s.mag);
    }
    DecayReport fit;
    if (bands.size() < 3) {
      if (mass >= 1e-250) continue;  // data present but unfittable: shrink c
      fit.all_zero = true;
      fit.k_hat = kInfiniteExponent;
      fit.verdict = DecayVerdict::RapidDecay;
      fit.threshold = k_max;
    } else {
      std::vector<DecayBand> list;
      for (const auto& [m, b] : bands) list.push_back(b);
      fit = decay_report_from_samples(std::move(list), k_max);
    }
    if (fit.verdict == DecayVerdict::RapidDecay) {
      rep.c = c;
      rep.cone_decay = fit;
      return rep;
    }
  }
  throw NoConeFoundError();
}

std::vector<KernelDecayRow> measured_kernel_decay(const DiscreteSymbol& a, int window, int k_max) {
  std::vector<KernelDecayRow> rows;
  long total = 1;
  for (int i = 0; i < a.N; ++i) total *= (2L * window + 1);
  for (const auto& [kappa, fn] : a.components) {
    double kn = 0;
    for (int k : kappa) kn += static_cast<double>(k) * k;
    const double eta_norm = std::sqrt(kn);
    for (int k = 0; k <= k_max; ++k) {
      double dk = 0.0;
      std::vector<double> xi(a.N);
      for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        for (int i = a.N - 1; i >= 0; --i) {
          xi[i] = static_cast<double>(rem % (2 * window + 1) - window);
          rem /= (2 * window + 1);
        }
        const double num = std::abs(fn(xi)) * std::pow(1.0 + eta_norm, k);
        dk = std::max(dk, num / std::pow(1.0 + norm2(xi), a.order));
      }
      rows.push_back(KernelDecayRow{kappa, k, dk});
    }
  }
  return rows;
}

}  // namespace toruspec
