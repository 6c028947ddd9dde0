#ifndef TORUSPEC_EXACT_REAL_HPP
#define TORUSPEC_EXACT_REAL_HPP

#include "toruspec/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace toruspec {

/// Closed rational interval used to certify comparisons against irrational
/// values. Outward rounding is implicit: every constructor widens, never
/// narrows.
struct RatInterval {
  Rational lo;
  Rational hi;

  RatInterval() = default;
  RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::logic_error("inverted interval");
  }
  static RatInterval point(const Rational& v) { return {v, v}; }

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }

  RatInterval operator+(const Rational& r) const { return {lo + r, hi + r}; }
  RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }

  RatInterval scaled(const Rational& c) const {
    if (c >= 0) return {lo * c, hi * c};
    return {hi * c, lo * c};
  }
  RatInterval abs() const {
    if (lo >= 0) return *this;
    if (hi <= 0) return {-hi, -lo};
    return {Rational(0), std::max(-lo, hi)};
  }
};

/// Interval of dist(x, Z) for x ranging over I.
inline RatInterval dist_to_int_interval(const RatInterval& I) {
  const Rational half(1, 2);
  if (I.width() >= 1) return {Rational(0), half};
  const Int f = floor_int(I.lo);
  // Shift so the interval sits in [0, 2); the V-shaped dist profile repeats.
  const Rational lo = I.lo - Rational(f), hi = I.hi - Rational(f);
  auto dist_point = [&](const Rational& x) {
    Rational m = x;
    while (m >= 1) m -= 1;
    return std::min(m, Rational(1) - m);
  };
  const Rational dlo = dist_point(lo), dhi = dist_point(hi);
  Rational mn = std::min(dlo, dhi), mx = std::max(dlo, dhi);
  // Integer inside the interval pulls the min to 0.
  if (lo <= 1 && 1 <= hi) mn = 0;
  if (lo == 0) mn = 0;
  // Half-integer inside pushes the max to 1/2.
  if ((lo <= half && half <= hi) || (lo <= Rational(3, 2) && Rational(3, 2) <= hi)) mx = half;
  return {mn, mx};
}

/// a + b*sqrt(d) with rational a, b (b != 0) and squarefree d >= 2.
struct QuadIrr {
  Rational a;
  Rational b;
  Int d;
};

/// The factorial-base sum offset + sum_{k>=1} base^{-k!}. `depth` records how
/// many terms the owning construction has certified; exact partial sums are
/// available at any depth on demand.
struct FactorialLiouville {
  Int base;
  int depth;
  Rational offset = Rational(0);
};

struct FloatApprox {
  double v;
};

inline bool is_squarefree(const Int& d) {
  if (d < 2) return false;
  Int n = d;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    while (n % p == 0) n /= p;
  }
  return true;
}

/// Exact partial sum sum_{k=1}^{m} base^{-k!}.
inline Rational liouville_partial_sum(const Int& base, int m) {
  if (m <= 0) return Rational(0);
  unsigned long mfact = 1;
  for (int k = 2; k <= m; ++k) mfact *= static_cast<unsigned long>(k);
  Int numer(0);
  unsigned long kfact = 1;
  for (int k = 1; k <= m; ++k) {
    kfact *= static_cast<unsigned long>(k);
    numer += pow_int(base, mfact - kfact);
  }
  return Rational(numer, pow_int(base, mfact));
}

/// Upper bound on the tail sum_{k>m} base^{-k!}  (< 2 * base^{-(m+1)!}).
inline Rational liouville_tail_bound(const Int& base, int m) {
  unsigned long f = 1;
  for (int k = 2; k <= m + 1; ++k) f *= static_cast<unsigned long>(k);
  return Rational(2, pow_int(base, f));
}

/// Tagged exact representation of a real number. All certified comparisons
/// run in exact rational arithmetic; irrational tags are handled through
/// refinable rational enclosures whose width halves per extra requested bit,
/// up to a tag-dependent cap (1024 bits for quadratic irrationals).
class ExactReal {
 public:
  using Storage = std::variant<Rational, QuadIrr, FactorialLiouville, FloatApprox>;

  ExactReal() : v_(Rational(0)) {}
  explicit ExactReal(Rational r) : v_(std::move(r)) {}
  explicit ExactReal(QuadIrr q) : v_(std::move(q)) {
    const auto& qq = std::get<QuadIrr>(v_);
    if (qq.b == 0) throw std::invalid_argument("quadratic irrational with b = 0");
    if (!is_squarefree(qq.d)) throw std::invalid_argument("d must be squarefree >= 2");
  }
  explicit ExactReal(FactorialLiouville l) : v_(std::move(l)) {
    const auto& ll = std::get<FactorialLiouville>(v_);
    if (ll.base < 2) throw std::invalid_argument("liouville base must be >= 2");
    if (ll.depth < 1) throw std::invalid_argument("liouville depth must be >= 1");
  }
  explicit ExactReal(FloatApprox f) : v_(f) {}

  static ExactReal rational(const Rational& r) { return ExactReal(r); }
  static ExactReal sqrt_of(const Int& d) { return ExactReal(QuadIrr{Rational(0), Rational(1), d}); }
  static ExactReal liouville(const Int& base, int depth) {
    return ExactReal(FactorialLiouville{base, depth});
  }

  const Storage& storage() const { return v_; }
  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  bool is_quadratic() const { return std::holds_alternative<QuadIrr>(v_); }
  bool is_liouville() const { return std::holds_alternative<FactorialLiouville>(v_); }
  bool is_float() const { return std::holds_alternative<FloatApprox>(v_); }

  /// True when comparisons against rationals are decidable without enclosures.
  bool has_exact_rational_value() const { return is_rational() || is_float(); }

  /// The exact rational value for Rational/FloatApprox tags (a double is a
  /// dyadic rational).
  Rational exact_rational_value() const {
    if (is_rational()) return std::get<Rational>(v_);
    if (is_float()) return double_to_rational(std::get<FloatApprox>(v_).v);
    throw std::logic_error("tag has no exact rational value");
  }

  std::string tag_name() const {
    if (is_rational()) return "rational";
    if (is_quadratic()) return "quad";
    if (is_liouville()) return "liouville";
    return "float";
  }

  /// Enclosure of width <= 2^-bits (exact point interval for rational tags).
  RatInterval enclosure(unsigned bits) const {
    if (has_exact_rational_value()) return RatInterval::point(exact_rational_value());
    if (is_quadratic()) {
      const auto& q = std::get<QuadIrr>(v_);
      // |b| * width(sqrt enclosure) <= 2^-bits.
      unsigned extra = 2;
      const Rational ab = abs_rat(q.b);
      while (pow_rat(Rational(1, 2), bits + extra) * ab > pow_rat(Rational(1, 2), bits + 1)) ++extra;
      const RatInterval s{sqrt_lower(q.d, bits + extra), sqrt_upper(q.d, bits + extra)};
      return s.scaled(q.b) + q.a;
    }
    const auto& l = std::get<FactorialLiouville>(v_);
    const double lb = std::log2(to_double(l.base));
    int m = 1;
    unsigned long mp1fact = 2;  // (m+1)!
    while (static_cast<double>(mp1fact) * lb < bits + 1 && m < 12) {
      ++m;
      mp1fact *= static_cast<unsigned long>(m + 1);
    }
    const Rational p = liouville_partial_sum(l.base, m) + l.offset;
    return {p, p + liouville_tail_bound(l.base, m)};
  }

  double to_double() const {
    if (is_float()) return std::get<FloatApprox>(v_).v;
    return toruspec::to_double(enclosure(64).mid());
  }

  ExactReal plus_rational(const Rational& r) const {
    if (r == 0) return *this;
    if (is_rational()) return ExactReal(std::get<Rational>(v_) + r);
    if (is_quadratic()) {
      QuadIrr q = std::get<QuadIrr>(v_);
      q.a += r;
      return ExactReal(q);
    }
    if (is_liouville()) {
      FactorialLiouville l = std::get<FactorialLiouville>(v_);
      l.offset += r;
      return ExactReal(l);
    }
    return ExactReal(FloatApprox{std::get<FloatApprox>(v_).v + toruspec::to_double(r)});
  }

  /// Sign of (*this - r): -1, 0, +1. Exact for every tag.
  int compare_to_rational(const Rational& r) const {
    if (has_exact_rational_value()) {
      const Rational v = exact_rational_value();
      return v < r ? -1 : (v > r ? 1 : 0);
    }
    if (is_quadratic()) {
      const auto& q = std::get<QuadIrr>(v_);
      // sign of s + b*sqrt(d) with s = a - r; equality is impossible.
      const Rational s = q.a - r;
      if (s >= 0 && q.b > 0) return 1;
      if (s <= 0 && q.b < 0) return -1;
      const Rational lhs = s * s, rhs = q.b * q.b * Rational(q.d);
      if (q.b > 0) return rhs > lhs ? 1 : -1;  // s < 0 here
      return lhs > rhs ? 1 : -1;               // b < 0, s > 0
    }
    for (unsigned bits = 64; bits <= 4096; bits *= 2) {
      const RatInterval e = enclosure(bits);
      if (e.lo > r) return 1;
      if (e.hi < r) return -1;
    }
    throw std::logic_error("comparison did not resolve (irrational vs rational)");
  }

  /// Enclosure of (*this) * xi. Width <= 2^-bits.
  RatInterval times_int(const Int& xi, unsigned bits) const {
    if (has_exact_rational_value())
      return RatInterval::point(exact_rational_value() * Rational(xi));
    const unsigned long xb = xi == 0 ? 0 : boost::multiprecision::msb(boost::multiprecision::abs(xi));
    return enclosure(bits + static_cast<unsigned>(xb) + 2).scaled(Rational(xi));
  }

  /// Nearest integer to (*this)*xi (round-half-even for exact ties, which can
  /// occur only for rational tags).
  Int nearest_int_times(const Int& xi) const {
    if (has_exact_rational_value()) return round_half_even(exact_rational_value() * Rational(xi));
    for (unsigned bits = 64; bits <= max_refine_bits(); bits *= 2) {
      const RatInterval I = times_int(xi, bits);
      const Int rlo = round_half_even(I.lo), rhi = round_half_even(I.hi);
      if (rlo == rhi) return rlo;
    }
    throw std::logic_error("nearest integer did not resolve");
  }

  /// Certified interval for dist((*this)*xi, Z).
  RatInterval dist_int_times(const Int& xi, unsigned bits) const {
    if (has_exact_rational_value())
      return RatInterval::point(dist_to_int(exact_rational_value() * Rational(xi)));
    return dist_to_int_interval(times_int(xi, bits));
  }

  /// Decides dist((*this)*xi, Z) >= bound. nullopt when the refinement cap is
  /// reached without separation (possible only for equality corner cases).
  std::optional<bool> dist_at_least(const Int& xi, const Rational& bound) const {
    if (has_exact_rational_value())
      return dist_to_int(exact_rational_value() * Rational(xi)) >= bound;
    for (unsigned bits = 64; bits <= max_refine_bits(); bits *= 2) {
      const RatInterval d = dist_int_times(xi, bits);
      if (d.lo >= bound) return true;
      if (d.hi < bound) return false;
    }
    return std::nullopt;
  }

  unsigned max_refine_bits() const {
    // Factorial tags refine through exact partial sums, so allow the deep
    // enclosures witness validation needs; quadratic comparisons cap at 1024.
    return is_liouville() ? 1u << 20 : 1024u;
  }

  static Rational double_to_rational(double v);

 private:
  Storage v_;
};

inline Rational ExactReal::double_to_rational(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite float");
  if (v == 0.0) return Rational(0);
  int exp = 0;
  const double m = std::frexp(v, &exp);  // v = m * 2^exp, |m| in [0.5, 1)
  const auto mant = static_cast<long long>(std::ldexp(m, 53));
  const int e2 = exp - 53;
  Rational r(mant);
  if (e2 >= 0) r *= Rational(pow_int(2, static_cast<unsigned long>(e2)));
  else r /= Rational(pow_int(2, static_cast<unsigned long>(-e2)));
  return r;
}

// ---------------------------------------------------------------------------
// Certified trigonometric bounds (used by the exponential lower bound check).

inline const Rational& pi_lower() {
  static const Rational v(Int("314159265358979323846264338327950288419716939937510"),
                          pow_int(10, 50));
  return v;
}
inline const Rational& pi_upper() {
  static const Rational v(Int("314159265358979323846264338327950288419716939937511"),
                          pow_int(10, 50));
  return v;
}

/// Alternating-series bounds for sin(y), valid for 0 <= y < sqrt(6).
inline Rational sin_lower(const Rational& y, int terms) {
  Rational acc(0), p = y;
  const Rational y2 = y * y;
  int k = 0;
  for (; k < terms; ++k) {
    acc += (k % 2 == 0) ? p : Rational(-p);
    p = p * y2 / Rational((2 * k + 2) * (2 * k + 3));
  }
  // Ensure the truncation errs downward: last included term must be negative.
  if (terms % 2 == 1) acc -= p;
  return std::max(acc, Rational(0));
}

inline Rational sin_upper(const Rational& y, int terms) {
  Rational acc(0), p = y;
  const Rational y2 = y * y;
  for (int k = 0; k < terms; ++k) {
    acc += (k % 2 == 0) ? p : Rational(-p);
    p = p * y2 / Rational((2 * k + 2) * (2 * k + 3));
  }
  if (terms % 2 == 0) acc += p;
  return std::min(acc, Rational(1));
}

/// Certified interval for 2*sin(pi*x) with x an interval inside [0, 1/2].
inline RatInterval two_sin_pi(const RatInterval& x, int terms = 10) {
  const Rational ylo = pi_lower() * std::max(x.lo, Rational(0));
  const Rational yhi = pi_upper() * std::min(x.hi, Rational(1, 2));
  const Rational lo = sin_lower(ylo, terms) * 2;
  const Rational hi = sin_upper(yhi, terms) * 2;
  return {std::min(lo, hi), std::max(lo, std::min(hi, Rational(2)))};
}

}  // namespace toruspec

#endif
