#ifndef TORUSPEC_RATIONAL_HPP
#define TORUSPEC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace toruspec {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(const Int& n) { return n.template convert_to<double>(); }

/// Parses "p/q" or "p" (q > 0 enforced by cpp_rational canonicalization).
inline Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    const Int p(s.substr(0, slash));
    const Int q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rational(p, q);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  }
}

inline std::string format_rational(const Rational& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

inline Int floor_int(const Rational& r) {
  Int q = num(r) / den(r);
  if (num(r) < 0 && q * den(r) != num(r)) --q;
  return q;
}

/// Nearest integer with round-half-to-even tie breaking.
inline Int round_half_even(const Rational& r) {
  const Int f = floor_int(r);
  const Rational frac = r - Rational(f);
  if (frac < Rational(1, 2)) return f;
  if (frac > Rational(1, 2)) return f + 1;
  return (f % 2 == 0) ? f : f + 1;
}

/// Distance to the nearest integer, exact.
inline Rational dist_to_int(const Rational& r) {
  const Rational d = r - Rational(round_half_even(r));
  return d < 0 ? Rational(-d) : d;
}

inline Rational abs_rat(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational pow_rat(const Rational& base, unsigned e) {
  Rational acc(1), b = base;
  while (e) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

inline Int pow_int(Int base, unsigned long e) {
  Int acc(1);
  while (e) {
    if (e & 1ul) acc *= base;
    base *= base;
    e >>= 1ul;
  }
  return acc;
}

/// Floor of the integer square root (boost::multiprecision::sqrt truncates).
inline Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

/// Rational upper bound for sqrt(n), within 2^-bits of the true value.
inline Rational sqrt_upper(const Int& n, unsigned bits = 64) {
  const Int scale = pow_int(2, bits);
  const Int s = isqrt(n * scale * scale);
  return Rational(s + 1, scale);
}

inline Rational sqrt_lower(const Int& n, unsigned bits = 64) {
  const Int scale = pow_int(2, bits);
  const Int s = isqrt(n * scale * scale);
  return Rational(s, scale);
}

/// log(1 + x) for a nonnegative big integer, usable far beyond double range.
inline double log1p_big(const Int& x) {
  if (x < 0) throw std::domain_error("log1p_big of negative");
  const unsigned long bits = x == 0 ? 0 : boost::multiprecision::msb(x);
  if (bits < 900) return std::log1p(to_double(x));
  // x dominates 1; peel off the top 64 bits for the mantissa.
  const unsigned long shift = bits - 52;
  const double mant = to_double(Int(x >> shift));
  return std::log(mant) + static_cast<double>(shift) * 0.6931471805599453;
}

}  // namespace toruspec

#endif
