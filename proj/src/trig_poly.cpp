#include "toruspec/trig_poly.hpp"

#include <cmath>
#include <stdexcept>

namespace toruspec {

namespace {
FreqVec negated(const FreqVec& k) {
  FreqVec m(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) m[i] = -k[i];
  return m;
}
bool is_zero_freq(const FreqVec& k) {
  for (int v : k)
    if (v != 0) return false;
  return true;
}
}  // namespace

void TrigPoly::insert_term(const FreqVec& k, const CoeffC& c) {
  if (static_cast<int>(k.size()) != dim_) throw std::invalid_argument("frequency dimension mismatch");
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(k, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

void TrigPoly::validate_hermitian() const {
  for (const auto& [k, c] : terms_) {
    if (is_zero_freq(k)) {
      if (c.im != 0) throw std::invalid_argument("zero-frequency coefficient must be real");
      continue;
    }
    auto it = terms_.find(negated(k));
    if (it == terms_.end() || !(it->second == c.conj()))
      throw std::invalid_argument("coefficients are not Hermitian-symmetric (values not real)");
  }
}

TrigPoly TrigPoly::constant(int dim, const Rational& c) {
  TrigPoly p(dim);
  p.insert_term(FreqVec(dim, 0), CoeffC{c, Rational(0)});
  return p;
}

TrigPoly TrigPoly::harmonic_cos(int dim, const FreqVec& k) {
  TrigPoly p(dim);
  if (is_zero_freq(k)) return constant(dim, Rational(1));
  p.insert_term(k, CoeffC{Rational(1, 2), Rational(0)});
  p.insert_term(negated(k), CoeffC{Rational(1, 2), Rational(0)});
  return p;
}

TrigPoly TrigPoly::harmonic_sin(int dim, const FreqVec& k) {
  TrigPoly p(dim);
  if (is_zero_freq(k)) return p;
  // sin = (e^{ik.t} - e^{-ik.t}) / (2i)
  p.insert_term(k, CoeffC{Rational(0), Rational(-1, 2)});
  p.insert_term(negated(k), CoeffC{Rational(0), Rational(1, 2)});
  return p;
}

TrigPoly TrigPoly::from_terms(int dim, const std::vector<std::pair<FreqVec, CoeffC>>& terms) {
  TrigPoly p(dim);
  for (const auto& [k, c] : terms) p.insert_term(k, c);
  p.validate_hermitian();
  return p;
}

bool TrigPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && is_zero_freq(terms_.begin()->first);
}

Rational TrigPoly::constant_term() const {
  auto it = terms_.find(FreqVec(dim_, 0));
  return it == terms_.end() ? Rational(0) : it->second.re;
}

int TrigPoly::bandwidth() const {
  int bw = 0;
  for (const auto& [k, c] : terms_)
    for (int v : k) bw = std::max(bw, std::abs(v));
  return bw;
}

std::complex<double> TrigPoly::eval_complex(std::span<const double> t) const {
  if (static_cast<int>(t.size()) != dim_) throw std::invalid_argument("point dimension mismatch");
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [k, c] : terms_) {
    double phase = 0.0;
    for (int i = 0; i < dim_; ++i) phase += static_cast<double>(k[i]) * t[i];
    acc += c.to_complex() * std::polar(1.0, phase);
  }
  return acc;
}

double TrigPoly::eval(std::span<const double> t) const {
  const auto v = eval_complex(t);
  const double scale = std::max(1.0, std::abs(v));
  if (std::abs(v.imag()) > 1e-10 * scale)
    throw std::logic_error("evaluation of a real trig polynomial produced an imaginary part");
  return v.real();
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  TrigPoly r = *this;
  for (const auto& [k, c] : o.terms_) r.insert_term(k, c);
  return r;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  TrigPoly r = *this;
  for (const auto& [k, c] : o.terms_) r.insert_term(k, -c);
  return r;
}

TrigPoly TrigPoly::scaled(const Rational& c) const {
  TrigPoly r(dim_);
  if (c == 0) return r;
  for (const auto& [k, v] : terms_) r.terms_.emplace(k, CoeffC{v.re * c, v.im * c});
  return r;
}

namespace {
void check_index(const TrigPoly& p, int j) {
  if (j < 1 || j > p.dim()) throw std::out_of_range("variable index out of range");
}
}  // namespace

TrigPoly partial_derivative(const TrigPoly& p, int j) {
  check_index(p, j);
  TrigPoly r(p.dim());
  for (const auto& [k, c] : p.terms()) {
    const int kj = k[j - 1];
    if (kj != 0) r.insert_term(k, c.times_ik(kj));
  }
  return r;
}

TrigPoly mean_in_variable(const TrigPoly& p, int j) {
  check_index(p, j);
  TrigPoly r(p.dim());
  for (const auto& [k, c] : p.terms())
    if (k[j - 1] == 0) r.insert_term(k, c);
  return r;
}

TrigPoly primitive_in_variable(const TrigPoly& p, int j) {
  check_index(p, j);
  TrigPoly r(p.dim());
  for (const auto& [k, c] : p.terms()) {
    const int kj = k[j - 1];
    if (kj == 0) continue;
    // Integral of c e^{i k.t} in t_j from 0: c/(ik_j) (e^{ik.t} - e^{i k~.t}),
    // k~ = k with the j-th entry zeroed. The k~ part makes A_j vanish on t_j=0.
    const CoeffC q = c.div_ik(kj);
    r.insert_term(k, q);
    FreqVec kt = k;
    kt[j - 1] = 0;
    r.insert_term(kt, -q);
  }
  return r;
}

TrigPoly commutator_bracket(const TrigPoly& a_j, const TrigPoly& a_l, int j, int l) {
  if (a_j.dim() != a_l.dim()) throw std::invalid_argument("dimension mismatch");
  check_index(a_j, j);
  check_index(a_j, l);
  if (j == l) throw std::invalid_argument("bracket indices must be distinct");
  return partial_derivative(a_l, j) - partial_derivative(a_j, l);
}

TrigPoly restrict_prefix_to_zero(const TrigPoly& p, int j) {
  check_index(p, j);
  TrigPoly r(p.dim());
  for (const auto& [k, c] : p.terms()) {
    FreqVec kk = k;
    for (int i = 0; i < j - 1; ++i) kk[i] = 0;
    r.insert_term(kk, c);
  }
  return r;
}

}  // namespace toruspec
