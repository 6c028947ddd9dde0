#ifndef TORUSPEC_WITNESS_HPP
#define TORUSPEC_WITNESS_HPP

#include "toruspec/exact_real.hpp"

#include <span>
#include <string>
#include <vector>

namespace toruspec {

/// One certified simultaneous-approximation event: |tau_j + alpha_j xi| stays
/// below C0 (1 + |(tau,xi)|)^{-nu} for every coordinate.
struct WitnessEntry {
  std::vector<Int> tau;
  Int xi;
  int nu = 0;
};

struct WitnessSequence {
  std::vector<WitnessEntry> entries;
  Rational C0 = Rational(1);
};

struct WitnessCheck {
  bool valid = false;
  std::string failure;
};

/// Squared Euclidean norm of (tau, xi).
inline Int norm_sq(const WitnessEntry& e) {
  Int s = e.xi * e.xi;
  for (const Int& t : e.tau) s += t * t;
  return s;
}

/// Rational upper bound for |(tau,xi)|.
inline Rational norm_upper(const WitnessEntry& e) { return sqrt_upper(norm_sq(e), 32); }
inline Rational norm_lower(const WitnessEntry& e) { return sqrt_lower(norm_sq(e), 32); }

/// Re-validates every stored inequality in exact arithmetic (rational bounds
/// for irrational tags): strict norm growth, xi != 0, and per entry
///   max_j |tau_j + alpha_j xi| * (1 + R)^nu < C0   with R >= |(tau,xi)|.
WitnessCheck validate_witness(const WitnessSequence& w, std::span<const ExactReal> alphas);

}  // namespace toruspec

#endif
