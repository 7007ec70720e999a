#include "rmt/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rmt {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty())
    throw std::invalid_argument("EmpiricalCdf: empty sample set");
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) /
         static_cast<double>(samples_.size());
}

double EmpiricalCdf::ks_distance(
    const std::function<double(double)>& reference) const {
  const double n = static_cast<double>(samples_.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const double f = reference(samples_[i]);
    sup = std::max(sup, std::max(static_cast<double>(i + 1) / n - f,
                                 f - static_cast<double>(i) / n));
  }
  return sup;
}

double EmpiricalCdf::quantile(double p) const {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("quantile: p outside [0, 1]");
  const double n = static_cast<double>(samples_.size());
  const auto idx = static_cast<std::size_t>(
      std::clamp(std::ceil(p * n) - 1.0, 0.0, n - 1.0));
  return samples_[idx];
}

ConfidenceBand dkw_band(std::size_t n, double alpha) {
  if (n < 1) throw std::invalid_argument("dkw_band: n must be >= 1");
  if (alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("dkw_band: alpha must lie in (0, 1)");
  return {std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n))),
          alpha};
}

std::vector<Deviation> deviation_curve(
    const EmpiricalCdf& ecdf, const std::function<double(double)>& reference,
    std::span<const double> x_grid) {
  const double n = static_cast<double>(ecdf.size());
  std::vector<Deviation> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    if (x < ecdf.min() || x > ecdf.max())
      throw std::invalid_argument(
          "deviation_curve: grid point outside the sample range");
    const double f = ecdf(x);
    // Clamp keeps the binomial se strictly positive at the range edges.
    const double fc = std::clamp(f, 1.0 / (n + 1.0), n / (n + 1.0));
    out.push_back({x, f - reference(x), std::sqrt(fc * (1.0 - fc) / n)});
  }
  return out;
}

CorrectionFit fit_one_over_n(
    const std::map<int, std::vector<Deviation>>& deviations) {
  if (deviations.size() < 3)
    throw std::invalid_argument(
        "fit_one_over_n: need >= 3 distinct N values");

  const auto& first = deviations.begin()->second;
  const std::size_t g = first.size();
  if (g == 0) throw std::invalid_argument("fit_one_over_n: empty grid");
  for (const auto& [n, dev] : deviations) {
    if (n <= 0) throw std::invalid_argument("fit_one_over_n: N must be > 0");
    if (dev.size() != g)
      throw std::invalid_argument("fit_one_over_n: grids differ across N");
    for (std::size_t j = 0; j < g; ++j)
      if (std::abs(dev[j].x - first[j].x) >
          1e-9 * std::max(1.0, std::abs(first[j].x)))
        throw std::invalid_argument("fit_one_over_n: grids differ across N");
  }

  CorrectionFit fit;
  for (const auto& [n, dev] : deviations) fit.n_list.push_back(n);
  fit.x_grid.resize(g);
  for (std::size_t j = 0; j < g; ++j) fit.x_grid[j] = first[j].x;

  for (std::size_t j = 0; j < g; ++j) {
    double suu = 0.0, sud = 0.0, sdd = 0.0;  // weighted sums, u = 1/N
    double sw = 0.0, su = 0.0, sd = 0.0;
    for (const auto& [n, dev] : deviations) {
      const double u = 1.0 / static_cast<double>(n);
      const double se = dev[j].se;
      if (se <= 0.0)
        throw std::invalid_argument("fit_one_over_n: zero standard error");
      const double w = 1.0 / (se * se);
      const double d = dev[j].delta;
      suu += w * u * u;
      sud += w * u * d;
      sdd += w * d * d;
      sw += w;
      su += w * u;
      sd += w * d;
    }

    const double c = sud / suu;
    double rss = 0.0;
    for (const auto& [n, dev] : deviations) {
      const double se = dev[j].se;
      const double resid = dev[j].delta - c / static_cast<double>(n);
      rss += resid * resid / (se * se);
    }
    fit.c_hat.push_back(c);
    fit.c_se.push_back(1.0 / std::sqrt(suu));
    fit.r_squared.push_back(sdd > 0.0 ? 1.0 - rss / sdd : 1.0);

    // Unconstrained diagnostic fit delta = b0 + b1 u.
    const double det = sw * suu - su * su;
    if (det > 0.0) {
      const double b0 = (suu * sd - su * sud) / det;
      const double b0_se = std::sqrt(suu / det);
      fit.intercept.push_back(b0);
      fit.intercept_se.push_back(b0_se);
      fit.intercept_suspect.push_back(std::abs(b0) > 3.0 * b0_se);
    } else {
      fit.intercept.push_back(0.0);
      fit.intercept_se.push_back(0.0);
      fit.intercept_suspect.push_back(false);
    }
  }
  return fit;
}

KurtosisRegression kurtosis_regression(
    const std::map<double, CorrectionFit>& fits, double x) {
  if (fits.size() < 3)
    throw std::invalid_argument(
        "kurtosis_regression: need >= 3 distinct kappa4 values");

  std::vector<double> k4, y, w;
  for (const auto& [kappa, fit] : fits) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < fit.x_grid.size(); ++j) {
      const double d = std::abs(fit.x_grid[j] - x);
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best_dist > 1e-9 * std::max(1.0, std::abs(x)))
      throw std::invalid_argument(
          "kurtosis_regression: grid does not contain x");
    k4.push_back(kappa);
    y.push_back(fit.c_hat[best]);
    const double se = fit.c_se[best];
    w.push_back(se > 0.0 ? 1.0 / (se * se) : 1.0);
  }

  double sw = 0.0, sk = 0.0, sy = 0.0, skk = 0.0, sky = 0.0;
  for (std::size_t i = 0; i < k4.size(); ++i) {
    sw += w[i];
    sk += w[i] * k4[i];
    sy += w[i] * y[i];
    skk += w[i] * k4[i] * k4[i];
    sky += w[i] * k4[i] * y[i];
  }
  const double det = sw * skk - sk * sk;
  if (det <= 0.0)
    throw std::invalid_argument(
        "kurtosis_regression: kappa4 values are not distinct");

  KurtosisRegression result;
  result.slope = (sw * sky - sk * sy) / det;
  result.intercept = (skk * sy - sk * sky) / det;
  result.slope_se = std::sqrt(sw / det);
  result.intercept_se = std::sqrt(skk / det);

  const double ybar = sy / sw;
  double rss = 0.0, tss = 0.0;
  for (std::size_t i = 0; i < k4.size(); ++i) {
    const double fit_i = result.intercept + result.slope * k4[i];
    rss += w[i] * (y[i] - fit_i) * (y[i] - fit_i);
    tss += w[i] * (y[i] - ybar) * (y[i] - ybar);
  }
  result.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;
  return result;
}

}  // namespace rmt
