#include "toruspec/system.hpp"

#include <cmath>
#include <numbers>

namespace toruspec {

void SystemSpec::validate() const {
  if (n < 1) throw std::invalid_argument("system dimension must be >= 1");
  if (static_cast<int>(coefficients.size()) != n)
    throw std::invalid_argument("system needs exactly n coefficient forms");
  for (const auto& p : coefficients)
    if (p.dim() != n) throw std::invalid_argument("coefficient dimension mismatch");
  if (constant_part && static_cast<int>(constant_part->size()) != n)
    throw std::invalid_argument("constant part needs exactly n entries");
}

bool SystemSpec::means_constant() const {
  for (int j = 1; j <= n; ++j)
    if (!mean_poly(j).is_constant()) return false;
  return true;
}

ExactReal SystemSpec::alpha(int j) const {
  const TrigPoly m = mean_poly(j);
  if (!m.is_constant()) throw std::logic_error("a_{j0} is not constant");
  const Rational base = m.constant_term();
  if (const ExactReal* c = constant_of(j)) return c->plus_rational(base);
  return ExactReal(base);
}

double SystemSpec::mean_value_at(int j, std::span<const double> t) const {
  double v = mean_poly(j).eval(t);
  if (const ExactReal* c = constant_of(j)) v += c->to_double();
  return v;
}

SystemSpec SystemSpec::constants(std::vector<ExactReal> alphas) {
  SystemSpec s;
  s.n = static_cast<int>(alphas.size());
  for (int j = 0; j < s.n; ++j) s.coefficients.emplace_back(TrigPoly(s.n));
  s.constant_part = std::move(alphas);
  s.validate();
  return s;
}

SystemSpec SystemSpec::polys(std::vector<TrigPoly> coeffs) {
  SystemSpec s;
  s.n = static_cast<int>(coeffs.size());
  s.coefficients = std::move(coeffs);
  s.validate();
  return s;
}

namespace {

/// Uniform grid scan of |p| with 4*(bandwidth+1) points per axis. A nonzero
/// trig polynomial cannot vanish on this grid (no aliasing at this density).
struct GridScan {
  std::vector<double> argmax_point;
  double max_abs = 0.0;
  double min_abs_on_upper_half = 0.0;  // min |p| over {|p| >= max/2}
};

GridScan scan_grid(const TrigPoly& p) {
  const int n = p.dim();
  const int per_axis = 4 * (p.bandwidth() + 1);
  const double step = 2.0 * std::numbers::pi / per_axis;

  GridScan out;
  std::vector<int> idx(n, 0);
  std::vector<double> t(n, 0.0);
  std::vector<std::pair<std::vector<double>, double>> values;
  long total = 1;
  for (int i = 0; i < n; ++i) total *= per_axis;
  values.reserve(total);

  for (long c = 0; c < total; ++c) {
    long rem = c;
    for (int i = n - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(rem % per_axis);
      rem /= per_axis;
    }
    for (int i = 0; i < n; ++i) t[i] = idx[i] * step;
    const double v = std::abs(p.eval_complex(t));
    values.emplace_back(t, v);
    if (v > out.max_abs) {
      out.max_abs = v;
      out.argmax_point = t;
    }
  }
  double mn = out.max_abs;
  for (const auto& [pt, v] : values)
    if (v >= out.max_abs / 2) mn = std::min(mn, v);
  out.min_abs_on_upper_half = mn;
  return out;
}

}  // namespace

FiniteTypeReport finite_type_exists(const SystemSpec& sys) {
  sys.validate();
  FiniteTypeReport rep;
  for (int j = 1; j <= sys.n; ++j) {
    for (int l = j + 1; l <= sys.n; ++l) {
      TrigPoly b = commutator_bracket(sys.coefficients[j - 1], sys.coefficients[l - 1], j, l);
      if (b.is_zero()) continue;
      const GridScan scan = scan_grid(b);
      rep.exists = true;
      rep.witness_pair = {j, l};
      rep.bracket = std::move(b);
      rep.witness_point = scan.argmax_point;
      rep.reciprocal_sup_bound = 1.0 / scan.min_abs_on_upper_half;
      return rep;
    }
  }
  return rep;
}

TrigPoly global_primitive_A(const SystemSpec& sys) {
  sys.validate();
  for (int j = 1; j <= sys.n; ++j)
    for (int l = j + 1; l <= sys.n; ++l)
      if (!commutator_bracket(sys.coefficients[j - 1], sys.coefficients[l - 1], j, l).is_zero())
        throw NotClosedError();

  // Telescoping sum: the j-th term integrates a_j with t_1..t_{j-1} frozen at
  // 0, its t_j-mean removed. Closedness makes the result a global primitive.
  TrigPoly A(sys.n);
  for (int j = 1; j <= sys.n; ++j) {
    const TrigPoly restricted = restrict_prefix_to_zero(sys.coefficients[j - 1], j);
    A = A + primitive_in_variable(restricted, j);
  }
  return A;
}

}  // namespace toruspec
