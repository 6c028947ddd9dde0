#ifndef TORUSPEC_TRIG_POLY_HPP
#define TORUSPEC_TRIG_POLY_HPP

#include "toruspec/rational.hpp"

#include <complex>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace toruspec {

using FreqVec = std::vector<int>;

/// Complex coefficient with exact rational real/imaginary parts.
struct CoeffC {
  Rational re;
  Rational im;

  CoeffC() = default;
  CoeffC(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  CoeffC conj() const { return {re, -im}; }
  CoeffC operator+(const CoeffC& o) const { return {re + o.re, im + o.im}; }
  CoeffC operator-(const CoeffC& o) const { return {re - o.re, im - o.im}; }
  CoeffC operator-() const { return {-re, -im}; }
  bool operator==(const CoeffC& o) const { return re == o.re && im == o.im; }

  /// Multiplication by i*k.
  CoeffC times_ik(long long k) const { return {-im * Rational(k), re * Rational(k)}; }
  /// Division by i*k (k != 0).
  CoeffC div_ik(long long k) const { return {im / Rational(k), -re / Rational(k)}; }

  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

/// Real-valued trigonometric polynomial on T^n with exact rational
/// coefficients, stored as a finite Hermitian-symmetric frequency map.
class TrigPoly {
 public:
  explicit TrigPoly(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("TrigPoly dimension must be >= 1");
  }

  static TrigPoly constant(int dim, const Rational& c);
  /// cos(<k,t>)
  static TrigPoly harmonic_cos(int dim, const FreqVec& k);
  /// sin(<k,t>)
  static TrigPoly harmonic_sin(int dim, const FreqVec& k);
  /// Builds from raw terms (duplicates summed); validates Hermitian symmetry.
  static TrigPoly from_terms(int dim, const std::vector<std::pair<FreqVec, CoeffC>>& terms);

  int dim() const { return dim_; }
  const std::map<FreqVec, CoeffC>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// The zero-frequency coefficient (real by the Hermitian invariant).
  Rational constant_term() const;
  /// max |k|_inf over the support.
  int bandwidth() const;

  std::complex<double> eval_complex(std::span<const double> t) const;
  /// Value at a point of [0, 2pi)^n; asserts the imaginary part is tiny.
  double eval(std::span<const double> t) const;

  TrigPoly operator+(const TrigPoly& o) const;
  TrigPoly operator-(const TrigPoly& o) const;
  TrigPoly scaled(const Rational& c) const;
  bool operator==(const TrigPoly& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

 private:
  void insert_term(const FreqVec& k, const CoeffC& c);
  void validate_hermitian() const;

  int dim_;
  std::map<FreqVec, CoeffC> terms_;

  friend TrigPoly partial_derivative(const TrigPoly&, int);
  friend TrigPoly mean_in_variable(const TrigPoly&, int);
  friend TrigPoly primitive_in_variable(const TrigPoly&, int);
  friend TrigPoly restrict_prefix_to_zero(const TrigPoly&, int);
};

/// d/dt_j (1-based j).
TrigPoly partial_derivative(const TrigPoly& p, int j);

/// Average over t_j: drops every term with k_j != 0.
TrigPoly mean_in_variable(const TrigPoly& p, int j);

/// A_j: the t_j-primitive of (p - mean_in_variable(p, j)) vanishing on
/// {t_j = 0}; periodic because the t_j-mean was removed.
TrigPoly primitive_in_variable(const TrigPoly& p, int j);

/// [X_j, X_l] coefficient: d_{t_j} a_l - d_{t_l} a_j.
TrigPoly commutator_bracket(const TrigPoly& a_j, const TrigPoly& a_l, int j, int l);

/// Sets t_1 = ... = t_{j-1} = 0 (used by the telescoping global primitive).
TrigPoly restrict_prefix_to_zero(const TrigPoly& p, int j);

}  // namespace toruspec

#endif
