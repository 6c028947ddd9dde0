#include "toruspec/decay.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace toruspec {

namespace {

/// Pool-adjacent-violators fit of a nondecreasing profile; returns the RMS
/// deviation of y from it. y = -log(sup) must grow along bands for decay.
double isotonic_rms(const std::vector<double>& y) {
  if (y.size() < 2) return 0.0;
  std::vector<double> level(y), weight(y.size(), 1.0);
  std::vector<std::size_t> len(y.size(), 1);
  std::size_t blocks = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    level[blocks] = y[i];
    weight[blocks] = 1.0;
    len[blocks] = 1;
    while (blocks > 0 && level[blocks - 1] > level[blocks]) {
      const double w = weight[blocks - 1] + weight[blocks];
      level[blocks - 1] = (level[blocks - 1] * weight[blocks - 1] + level[blocks] * weight[blocks]) / w;
      weight[blocks - 1] = w;
      len[blocks - 1] += len[blocks];
      --blocks;
    }
    ++blocks;
  }
  std::vector<double> fitted;
  fitted.reserve(y.size());
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t r = 0; r < len[b]; ++r) fitted.push_back(level[b]);
  double ss = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) ss += (y[i] - fitted[i]) * (y[i] - fitted[i]);
  return std::sqrt(ss / static_cast<double>(y.size()));
}

struct LineFit {
  double slope = 0.0, intercept = 0.0, rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit f;
  const std::size_t n = x.size();
  if (n < 2) return f;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0) return f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / static_cast<double>(n));
  return f;
}

}  // namespace

DecayReport decay_report_from_samples(std::vector<DecayBand> bands, double threshold) {
  std::sort(bands.begin(), bands.end(),
            [](const DecayBand& a, const DecayBand& b) { return a.log1p_xi < b.log1p_xi; });
  if (bands.size() < 3) throw InsufficientBandsError();

  DecayReport rep;
  rep.bands = bands;
  rep.threshold = threshold;

  rep.all_zero = std::all_of(bands.begin(), bands.end(),
                             [](const DecayBand& b) { return b.sup < 1e-250; });
  if (rep.all_zero) {
    rep.k_hat = kInfiniteExponent;
    rep.c_hat = 0.0;
    rep.verdict = DecayVerdict::RapidDecay;
    return rep;
  }

  std::vector<double> x, y;
  for (const DecayBand& b : bands) {
    if (b.sup < 1e-250) continue;  // empty bands carry no fit information
    x.push_back(b.log1p_xi);
    y.push_back(-std::log(b.sup));
  }
  if (x.size() < 2) {
    rep.verdict = DecayVerdict::Inconclusive;
    return rep;
  }

  const LineFit decay = least_squares(x, y);
  rep.k_hat = decay.slope;
  rep.c_hat = std::exp(-decay.intercept);
  rep.ls_residual = decay.rms;
  rep.fit_residual = isotonic_rms(y);

  if (rep.k_hat >= threshold && rep.fit_residual <= 0.15) {
    rep.verdict = DecayVerdict::RapidDecay;
    return rep;
  }

  // Growth regime: fit +log sup against log(1+xi).
  std::vector<double> yg(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) yg[i] = -y[i];
  const LineFit growth = least_squares(x, yg);
  if (growth.slope >= -0.1 && growth.rms <= 0.5) {
    rep.m_hat = std::max(0.0, growth.slope);
    rep.verdict = DecayVerdict::PolynomialGrowth;
    return rep;
  }
  rep.verdict = DecayVerdict::Inconclusive;
  return rep;
}

DecayReport decay_report(const PartialFourierField& u, const DecayMode& mode, double threshold) {
  std::map<int, DecayBand> bands;
  for (const auto& [xi, s] : u.slices()) {
    const std::int64_t a = std::abs(xi);
    if (a < 1) continue;
    const int m = static_cast<int>(std::floor(std::log2(static_cast<double>(a))));
    // Drop the last partial band: require the whole [2^m, 2^{m+1}) range to
    // fit the declared window.
    if ((std::int64_t{2} << m) - 1 > u.xi_window()) continue;
    double v = 0.0;
    if (mode.kind == DecayMode::SupT) {
      v = slice_sup_grid(u, xi);
    } else {
      if (static_cast<int>(mode.point.size()) != u.n())
        throw std::invalid_argument("base point dimension mismatch");
      v = std::abs(eval_slice_at(u, xi, mode.point));
    }
    auto it = bands.find(m);
    if (it == bands.end())
      bands.emplace(m, DecayBand{m, std::log1p(std::pow(2.0, m)), v});
    else
      it->second.sup = std::max(it->second.sup, v);
  }
  std::vector<DecayBand> list;
  list.reserve(bands.size());
  for (const auto& [m, b] : bands) list.push_back(b);
  return decay_report_from_samples(std::move(list), threshold);
}

}  // namespace toruspec
