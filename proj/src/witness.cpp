#include "toruspec/witness.hpp"

#include <sstream>

namespace toruspec {

namespace {

/// Certified upper bound on |tau + alpha*xi|.
Rational abs_error_upper(const ExactReal& alpha, const Int& tau, const Int& xi, unsigned bits) {
  const RatInterval v = alpha.times_int(xi, bits) + Rational(tau);
  return v.abs().hi;
}

}  // namespace

WitnessCheck validate_witness(const WitnessSequence& w, std::span<const ExactReal> alphas) {
  WitnessCheck out;
  if (w.entries.empty()) {
    out.failure = "empty witness";
    return out;
  }
  if (w.C0 <= 0) {
    out.failure = "C0 must be positive";
    return out;
  }
  const std::size_t n = alphas.size();
  Int prev_norm_sq(-1);
  for (std::size_t i = 0; i < w.entries.size(); ++i) {
    const WitnessEntry& e = w.entries[i];
    std::ostringstream where;
    where << "entry " << i << " (nu=" << e.nu << ")";
    if (e.tau.size() != n) {
      out.failure = where.str() + ": tau dimension mismatch";
      return out;
    }
    if (e.xi == 0) {
      out.failure = where.str() + ": xi must be nonzero";
      return out;
    }
    if (e.nu < 1) {
      out.failure = where.str() + ": nu must be >= 1";
      return out;
    }
    const Int ns = norm_sq(e);
    if (ns <= prev_norm_sq) {
      out.failure = where.str() + ": |(tau,xi)| not strictly increasing";
      return out;
    }
    prev_norm_sq = ns;

    const Rational rhs_base = Rational(1) + norm_upper(e);
    const Rational rhs_pow = pow_rat(rhs_base, static_cast<unsigned>(e.nu));
    for (std::size_t j = 0; j < n; ++j) {
      // Need |tau_j + alpha_j xi| * (1+R)^nu < C0. Refine the enclosure until
      // the product is certified on one side.
      bool ok = false;
      for (unsigned bits = 64; bits <= alphas[j].max_refine_bits(); bits *= 2) {
        const Rational hi = abs_error_upper(alphas[j], e.tau[j], e.xi, bits);
        if (hi * rhs_pow < w.C0) {
          ok = true;
          break;
        }
        const RatInterval v = alphas[j].times_int(e.xi, bits) + Rational(e.tau[j]);
        if (v.abs().lo * rhs_pow >= w.C0) break;  // certified violation
        if (alphas[j].has_exact_rational_value()) break;
      }
      if (!ok) {
        out.failure = where.str() + ": inequality fails at coordinate " + std::to_string(j + 1);
        return out;
      }
    }
  }
  out.valid = true;
  return out;
}

}  // namespace toruspec
