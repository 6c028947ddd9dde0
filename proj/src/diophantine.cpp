#include "toruspec/diophantine.hpp"

#include <algorithm>
#include <cmath>

namespace toruspec {

namespace {

Int lcm_int(const Int& a, const Int& b) { return a / boost::multiprecision::gcd(a, b) * b; }

Int factorial(int k) {
  Int f(1);
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

std::pair<double, int> fit_rho(const std::vector<ScanRow>& rows) {
  // Least squares of -log m(xi) against log(1 + xi), over rows with m > 0.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (const ScanRow& r : rows) {
    if (!(r.m_lo > 0)) continue;
    const double x = std::log1p(to_double(r.xi));
    const double y = -std::log(to_double((r.m_lo + r.m_hi) / 2));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 2) return {0.0, cnt};
  const double denom = cnt * sxx - sx * sx;
  if (denom == 0) return {0.0, cnt};
  return {(cnt * sxy - sx * sy) / denom, cnt};
}

/// Enclosure of m(xi) = max_j dist(alpha_j xi, Z).
std::pair<RatInterval, bool> m_of_xi(std::span<const ExactReal> alphas, const Int& xi,
                                     unsigned bits) {
  RatInterval acc{Rational(0), Rational(0)};
  bool exact = true;
  bool first = true;
  for (const ExactReal& a : alphas) {
    RatInterval d = a.dist_int_times(xi, bits);
    if (!a.is_rational()) exact = false;
    if (first) {
      acc = d;
      first = false;
    } else {
      acc = RatInterval{std::max(acc.lo, d.lo), std::max(acc.hi, d.hi)};
    }
  }
  return {acc, exact};
}

WitnessSequence rational_resonance_witness(std::span<const ExactReal> alphas, int length) {
  Int q(1);
  for (const ExactReal& a : alphas) q = lcm_int(q, den(a.exact_rational_value()));
  WitnessSequence w;
  for (int nu = 1; nu <= length; ++nu) {
    WitnessEntry e;
    e.nu = nu;
    e.xi = q * factorial(nu);
    for (const ExactReal& a : alphas) {
      const Rational t = a.exact_rational_value() * Rational(e.xi);
      e.tau.push_back(-num(t));  // exact integer: q kills every denominator
    }
    w.entries.push_back(std::move(e));
  }
  return w;
}

/// Witness for factorial-Liouville tuples (plus rational coordinates):
/// entry nu uses xi = D * base^{(nu+s)!} with the start shift s chosen so
/// every entry certifies exactly; D clears rational denominators.
std::optional<WitnessSequence> liouville_witness(std::span<const ExactReal> alphas,
                                                 const Int& base, int length) {
  Int d_clear(1);
  for (const ExactReal& a : alphas) {
    if (a.is_rational()) d_clear = lcm_int(d_clear, den(a.exact_rational_value()));
    if (a.is_liouville())
      d_clear = lcm_int(d_clear, den(std::get<FactorialLiouville>(a.storage()).offset));
  }
  for (int shift = 0; shift <= 4; ++shift) {
    WitnessSequence w;
    for (int nu = 1; nu <= length; ++nu) {
      WitnessEntry e;
      e.nu = nu;
      const Int f = factorial(nu + shift);
      if (f > 100000) return std::nullopt;  // depth out of sane range
      e.xi = d_clear * pow_int(base, f.convert_to<unsigned long>());
      for (const ExactReal& a : alphas) e.tau.push_back(-a.nearest_int_times(e.xi));
      w.entries.push_back(std::move(e));
    }
    if (validate_witness(w, alphas).valid) return w;
  }
  return std::nullopt;
}

/// Conjugate-product lower bound for a quadratic irrational a + b sqrt(d):
/// |tau + alpha xi| >= C / (1 + |xi|) for every tau and xi != 0.
LowerBoundCert quadratic_lower_bound(const QuadIrr& q) {
  const Rational qq(den(q.a));
  const Rational ss(den(q.b));
  const Rational two_b_sqrt_d = 2 * abs_rat(q.b) * sqrt_upper(q.d, 32);
  const Rational M = std::max(Rational(1), two_b_sqrt_d);
  LowerBoundCert cert;
  cert.C = Rational(1) / (qq * qq * ss * ss * M);
  cert.rho = Rational(1);
  cert.proof_tag = "quadratic-conjugate-product";
  return cert;
}

/// Certifies m(xi) >= C (1+|xi|)^{-rho} for every scanned row (refining the
/// enclosure where needed). Returns false only on a certified violation.
bool verify_bound_on_scan(std::span<const ExactReal> alphas, ScanTable& scan,
                          const LowerBoundCert& cert,
                          const std::function<bool(const Int&)>& in_gamma) {
  for (ScanRow& r : scan.rows) {
    if (in_gamma(r.xi)) continue;
    const Rational bound =
        cert.C / pow_rat(Rational(1) + Rational(r.xi), cert.rho.convert_to<unsigned>());
    if (r.m_lo >= bound) continue;
    bool decided = false;
    for (unsigned bits = 128; bits <= 1024; bits *= 2) {
      auto [mi, ex] = m_of_xi(alphas, r.xi, bits);
      r.m_lo = mi.lo;
      r.m_hi = mi.hi;
      if (mi.lo >= bound) {
        decided = true;
        break;
      }
      if (mi.hi < bound) return false;
    }
    if (!decided) return false;
  }
  return true;
}

}  // namespace

ScanTable sa_scan(std::span<const ExactReal> alphas, const Int& xi_max) {
  if (alphas.empty()) throw std::invalid_argument("empty alpha list");
  if (xi_max < 2) throw std::invalid_argument("xi_max must be >= 2");
  ScanTable out;
  for (Int xi(1); xi <= xi_max; ++xi) {
    auto [mi, exact] = m_of_xi(alphas, xi, 96);
    out.rows.push_back(ScanRow{xi, mi.lo, mi.hi, exact});
  }
  const auto [rho, cnt] = fit_rho(out.rows);
  out.rho_hat = rho;
  out.fit_points = cnt;
  return out;
}

SaVerdict classify_sa(std::span<const ExactReal> alphas, const Int& xi_max) {
  if (alphas.empty()) throw std::invalid_argument("empty alpha list");
  SaVerdict v;
  v.scan = sa_scan(alphas, xi_max);

  const bool all_rational =
      std::all_of(alphas.begin(), alphas.end(), [](const ExactReal& a) { return a.is_rational(); });
  const auto quad_it =
      std::find_if(alphas.begin(), alphas.end(), [](const ExactReal& a) { return a.is_quadratic(); });

  if (all_rational) {
    v.status = SaStatus::SA;
    v.witness = rational_resonance_witness(alphas, 5);
    v.note = "exact resonance along common-denominator multiples";
    if (!validate_witness(*v.witness, alphas).valid)
      throw std::logic_error("generated resonance witness failed validation");
    return v;
  }

  if (quad_it != alphas.end()) {
    v.status = SaStatus::NotSA;
    v.bound = quadratic_lower_bound(std::get<QuadIrr>(quad_it->storage()));
    v.note = "coordinate " + std::to_string(quad_it - alphas.begin() + 1) +
             " is badly approximable; bound dominates the max";
    if (!verify_bound_on_scan(alphas, v.scan, *v.bound, [](const Int&) { return false; }))
      throw std::logic_error("quadratic lower bound violated on scan (should be impossible)");
    return v;
  }

  // Factorial-Liouville branch: all irrational coordinates must share a base;
  // rational coordinates are absorbed into the clearing factor.
  std::optional<Int> base;
  bool structurally_linked = true;
  int min_depth = 0;
  for (const ExactReal& a : alphas) {
    if (a.is_rational()) continue;
    if (!a.is_liouville()) {
      structurally_linked = false;
      break;
    }
    const auto& l = std::get<FactorialLiouville>(a.storage());
    if (!base) {
      base = l.base;
      min_depth = l.depth;
    } else if (*base != l.base) {
      structurally_linked = false;
      break;
    } else {
      min_depth = std::min(min_depth, l.depth);
    }
  }
  if (structurally_linked && base) {
    if (auto w = liouville_witness(alphas, *base, std::max(3, min_depth))) {
      v.status = SaStatus::SA;
      v.witness = std::move(*w);
      v.note = "factorial partial-sum witness, base " + base->str();
      return v;
    }
  }

  v.status = SaStatus::Undetermined;
  v.note = "no exact decision for this tag combination; scan evidence attached";
  return v;
}

std::pair<std::vector<ExactReal>, WitnessSequence> liouville_tuple(int n, const Int& base,
                                                                   int depth) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  if (depth < 3) throw DepthTooSmallError();
  std::vector<ExactReal> alphas;
  alphas.reserve(n);
  for (int j = 0; j < n; ++j) alphas.push_back(ExactReal::liouville(base, depth));
  auto w = liouville_witness(alphas, base, depth);
  if (!w || static_cast<int>(w->entries.size()) < 3) throw DepthTooSmallError();
  return {std::move(alphas), std::move(*w)};
}

GsVerdict gs_condition_check(std::span<const ExactReal> alphas, const Int& xi_max) {
  if (alphas.empty()) throw std::invalid_argument("empty alpha list");
  GsVerdict v;
  v.scan = sa_scan(alphas, xi_max);
  v.xi_zero_note =
      "xi = 0 stratum: off Gamma max_j |tau_j| >= 1 >= C, so requiring the bound there "
      "is equivalent to requiring it only for xi != 0 (certificates keep C <= 1)";

  const bool all_rational =
      std::all_of(alphas.begin(), alphas.end(), [](const ExactReal& a) { return a.is_rational(); });
  const auto quad_it =
      std::find_if(alphas.begin(), alphas.end(), [](const ExactReal& a) { return a.is_quadratic(); });
  const bool any_liouville =
      std::any_of(alphas.begin(), alphas.end(), [](const ExactReal& a) { return a.is_liouville(); });

  if (all_rational) {
    Int q(1);
    for (const ExactReal& a : alphas) q = lcm_int(q, den(a.exact_rational_value()));
    v.status = GsStatus::Holds;
    v.bound = LowerBoundCert{Rational(1, q), Rational(0), "bounded-denominator"};
    v.gamma_description = "Gamma = {(tau, xi) : tau_j = -alpha_j xi}, a rank-1 lattice with xi in " +
                          q.str() + " Z";
    const Rational common_q(q);
    const std::vector<ExactReal> copy(alphas.begin(), alphas.end());
    auto in_gamma = [copy, common_q](const Int& xi) {
      // (tau, xi) meets Gamma iff every alpha_j xi is an integer.
      for (const ExactReal& a : copy)
        if (den(a.exact_rational_value() * Rational(xi)) != 1) return false;
      return true;
    };
    if (!verify_bound_on_scan(alphas, v.scan, *v.bound, in_gamma))
      throw std::logic_error("denominator bound violated on scan (should be impossible)");
    return v;
  }

  if (quad_it != alphas.end()) {
    v.status = GsStatus::Holds;
    v.bound = quadratic_lower_bound(std::get<QuadIrr>(quad_it->storage()));
    v.gamma_description = "Gamma = {(0,0)} within the lattice (irrational coordinate)";
    if (!verify_bound_on_scan(alphas, v.scan, *v.bound, [](const Int&) { return false; }))
      throw std::logic_error("quadratic lower bound violated on scan (should be impossible)");
    return v;
  }

  if (any_liouville) {
    // Shared-base factorial coordinates defeat every (C, rho): witness entries
    // sink below any polynomial bound while staying off Gamma.
    std::optional<Int> base;
    bool linked = true;
    int depth = 3;
    for (const ExactReal& a : alphas) {
      if (a.is_rational()) continue;
      if (!a.is_liouville()) {
        linked = false;
        break;
      }
      const auto& l = std::get<FactorialLiouville>(a.storage());
      if (!base) {
        base = l.base;
        depth = l.depth;
      } else if (*base != l.base) {
        linked = false;
        break;
      } else {
        depth = std::min(depth, l.depth);
      }
    }
    if (linked && base) {
      if (auto w = liouville_witness(alphas, *base, std::max(3, depth))) {
        v.status = GsStatus::Fails;
        v.violating = std::move(*w);
        v.gamma_description = "Gamma = {(0,0)} within the lattice (irrational coordinate)";
        return v;
      }
    }
  }

  v.status = GsStatus::Undetermined;
  v.gamma_description = "Gamma undecided for this tag combination";
  return v;
}

ExpLowerBoundResult exp_lower_bound_check(const ExactReal& alpha, const Int& xi, int ell) {
  if (xi == 0) throw std::invalid_argument("xi must be nonzero");
  if (ell < 0) throw std::invalid_argument("ell must be >= 0");
  const Rational bound =
      Rational(1) / pow_rat(Rational(1) + Rational(boost::multiprecision::abs(xi)),
                            static_cast<unsigned>(ell));

  ExpLowerBoundResult out;
  const auto hyp = alpha.dist_at_least(xi, bound);
  if (!hyp) throw std::logic_error("hypothesis comparison did not resolve");
  out.hypothesis_holds = *hyp;

  // |e^{2 pi i alpha xi} - 1| = 2 sin(pi dist(alpha xi, Z)).
  if (alpha.has_exact_rational_value()) {
    const Rational d = dist_to_int(alpha.exact_rational_value() * Rational(xi));
    // Rational corner values where 2 sin(pi d) is itself rational.
    if (d == 0) {
      out.conclusion_holds = (bound <= 0);
    } else if (d == Rational(1, 6)) {
      out.conclusion_holds = (Rational(1) >= bound);
    } else if (d == Rational(1, 2)) {
      out.conclusion_holds = (Rational(2) >= bound);
    } else {
      bool decided = false;
      for (int terms = 8; terms <= 24; terms += 4) {
        const RatInterval s = two_sin_pi(RatInterval::point(d), terms);
        if (s.lo >= bound) {
          out.conclusion_holds = true;
          decided = true;
          break;
        }
        if (s.hi < bound) {
          out.conclusion_holds = false;
          decided = true;
          break;
        }
      }
      if (!decided) throw std::logic_error("sin comparison did not resolve");
    }
  } else {
    bool decided = false;
    for (unsigned bits = 64; bits <= alpha.max_refine_bits() && !decided; bits *= 2) {
      const RatInterval d = alpha.dist_int_times(xi, bits);
      const RatInterval s = two_sin_pi(d, 12);
      if (s.lo >= bound) {
        out.conclusion_holds = true;
        decided = true;
      } else if (s.hi < bound) {
        out.conclusion_holds = false;
        decided = true;
      }
    }
    if (!decided) throw std::logic_error("sin comparison did not resolve");
  }

  if (out.hypothesis_holds && !out.conclusion_holds)
    throw std::logic_error("exponential lower bound implication violated");
  return out;
}

bool peetre_holds(std::span<const long> zeta, std::span<const long> zeta_prime, int sigma) {
  if (zeta.size() != zeta_prime.size()) throw std::invalid_argument("dimension mismatch");
  double nz = 0, nzp = 0, nd = 0;
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    nz += static_cast<double>(zeta[i]) * zeta[i];
    nzp += static_cast<double>(zeta_prime[i]) * zeta_prime[i];
    const double d = static_cast<double>(zeta[i] - zeta_prime[i]);
    nd += d * d;
  }
  const double lhs = std::pow(1.0 + std::sqrt(nz), sigma);
  const double rhs =
      std::pow(1.0 + std::sqrt(nzp), sigma) * std::pow(1.0 + std::sqrt(nd), std::abs(sigma));
  return lhs <= rhs * (1.0 + 1e-12);
}

}  // namespace toruspec
