#include "toruspec/counterexample.hpp"

#include <cmath>
#include <numbers>

namespace toruspec {

namespace {

double log1p_pow2(unsigned long m) {
  if (m < 900) return std::log1p(std::pow(2.0, static_cast<double>(m)));
  return static_cast<double>(m) * 0.6931471805599453;
}

/// sup over the t-grid of |e^{i(tau . t - A(t) xi)}|. The modulus is 1 for
/// every real phase; the measurement only exercises rounding.
double measure_unit_modulus(const std::vector<Int>& tau, const Int& xi, const TrigPoly& A,
                            int grid) {
  const int n = static_cast<int>(tau.size());
  const double h = 2.0 * std::numbers::pi / grid;
  long total = 1;
  for (int i = 0; i < n; ++i) total *= grid;
  double sup = 0.0;
  std::vector<double> t(n);
  for (long g = 0; g < total; ++g) {
    long rem = g;
    for (int i = n - 1; i >= 0; --i) {
      t[i] = h * static_cast<double>(rem % grid);
      rem /= grid;
    }
    // tau . t mod 2pi via exact big-integer reduction of tau . g.
    Int acc(0);
    long rem2 = g;
    for (int i = n - 1; i >= 0; --i) {
      acc += tau[i] * Int(rem2 % grid);
      rem2 /= grid;
    }
    acc %= grid;
    double phase = h * acc.convert_to<double>();
    if (!A.is_zero()) phase -= A.eval(t) * to_double(xi);
    sup = std::max(sup, std::abs(std::polar(1.0, phase)));
  }
  return sup;
}

}  // namespace

CounterexampleResult build_counterexample(const WitnessSequence& witness, const SystemSpec& sys,
                                          int depth, FrequencyWindow window) {
  sys.validate();
  window.validate();
  for (int j = 1; j <= sys.n; ++j)
    for (int l = j + 1; l <= sys.n; ++l)
      if (!commutator_bracket(sys.coefficients[j - 1], sys.coefficients[l - 1], j, l).is_zero())
        throw NotClosedError();

  std::vector<ExactReal> alphas;
  for (int j = 1; j <= sys.n; ++j) alphas.push_back(sys.alpha(j));
  const WitnessCheck check = validate_witness(witness, alphas);
  if (!check.valid) throw WitnessInvalidError(check.failure);

  const TrigPoly A = global_primitive_A(sys);
  const int bw = A.bandwidth();
  const int grid = std::max(2 * window.t + 1, 4 * (bw + 1));

  CounterexampleResult out{PartialFourierField(sys.n, window.xi, window.t), {}, {}, {}};

  const int levels = std::min<int>(depth, static_cast<int>(witness.entries.size()));
  PartialFourierField base(sys.n, window.xi, window.t);
  for (int v = 0; v < levels; ++v) {
    const WitnessEntry& e = witness.entries[v];
    CounterexampleLevel lv;
    lv.nu = e.nu;
    lv.xi = e.xi;
    lv.tau = e.tau;
    lv.sup_u = measure_unit_modulus(e.tau, e.xi, A, grid);
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      // Refine until the enclosure of |tau_j + alpha_j xi| is tight relative
      // to its own size (the values sink super-polynomially with nu).
      RatInterval err = (alphas[j].times_int(e.xi, 256) + Rational(e.tau[j])).abs();
      for (unsigned bits = 512; bits <= alphas[j].max_refine_bits() && err.hi > 0 &&
                                err.width() * 4 > err.hi;
           bits *= 2)
        err = (alphas[j].times_int(e.xi, bits) + Rational(e.tau[j])).abs();
      lv.xju_sup.push_back(to_double(err.hi));
    }
    lv.in_field = boost::multiprecision::abs(e.xi) <= Int(window.xi) &&
                  std::all_of(e.tau.begin(), e.tau.end(), [&](const Int& t) {
                    return boost::multiprecision::abs(t) <= Int(window.t);
                  }) &&
                  (A.is_zero() ||
                   boost::multiprecision::abs(e.xi) * bw + window.t <= Int(2048));
    if (lv.in_field) {
      std::vector<int> tau(sys.n);
      for (int i = 0; i < sys.n; ++i) tau[i] = e.tau[i].convert_to<int>();
      base.set_coeff(tau, e.xi.convert_to<std::int64_t>(), {1.0, 0.0});
    }
    out.levels.push_back(std::move(lv));
  }
  out.u = A.is_zero() ? std::move(base) : conjugate(base, A, -1);

  // Decay reports assembled from the per-level analytic data (frequencies can
  // exceed any dense window).
  std::vector<DecayBand> u_bands;
  std::vector<std::vector<DecayBand>> x_bands(sys.n);
  for (const CounterexampleLevel& lv : out.levels) {
    const unsigned long m = boost::multiprecision::msb(boost::multiprecision::abs(lv.xi));
    const double x = log1p_pow2(m);
    u_bands.push_back(DecayBand{static_cast<int>(m), x, lv.sup_u});
    for (int j = 0; j < sys.n; ++j)
      x_bands[j].push_back(DecayBand{static_cast<int>(m), x, lv.xju_sup[j]});
  }
  const double threshold = std::max(1.0, static_cast<double>(levels) - 1.0);
  out.u_decay = decay_report_from_samples(u_bands, threshold);
  for (int j = 0; j < sys.n; ++j)
    out.xju_decay.push_back(decay_report_from_samples(x_bands[j], threshold));
  return out;
}

}  // namespace toruspec
