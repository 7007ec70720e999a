#ifndef RMT_ESTIMATOR_HPP_
#define RMT_ESTIMATOR_HPP_

#include <functional>
#include <map>
#include <span>
#include <vector>

namespace rmt {

// Sorted-sample distribution estimate; F(x) = #{samples <= x} / n.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  double operator()(double x) const;
  std::size_t size() const { return samples_.size(); }
  const std::vector<double>& sorted_samples() const { return samples_; }
  double min() const { return samples_.front(); }
  double max() const { return samples_.back(); }

  // sup_x |F_hat(x) - F(x)| over the sample points (where the sup of an
  // ECDF deviation is attained).
  double ks_distance(const std::function<double(double)>& reference) const;

  // Empirical quantile at probability p (inverse-CDF convention).
  double quantile(double p) const;

 private:
  std::vector<double> samples_;
};

// Dvoretzky-Kiefer-Wolfowitz uniform band: P(sup|F_hat - F| > eps) <= alpha.
struct ConfidenceBand {
  double epsilon = 0.0;
  double alpha = 0.0;
};

ConfidenceBand dkw_band(std::size_t n, double alpha);

// One grid point of an ECDF-vs-reference comparison.
struct Deviation {
  double x = 0.0;
  double delta = 0.0;  // F_hat(x) - F_ref(x)
  double se = 0.0;     // binomial sqrt(F_hat (1-F_hat) / n)
};

// Delta(x) over a grid that must lie inside [min sample, max sample].
std::vector<Deviation> deviation_curve(
    const EmpiricalCdf& ecdf, const std::function<double(double)>& reference,
    std::span<const double> x_grid);

// Per-grid-point estimates of the 1/N coefficient c(x), from a weighted
// least-squares fit of Delta_N(x) against 1/N through the origin. The
// unconstrained intercept is kept as a diagnostic: the universality limit
// pins Delta_N -> 0, so a significant intercept signals a reference-law
// problem rather than physics.
struct CorrectionFit {
  std::vector<double> x_grid;
  std::vector<double> c_hat;
  std::vector<double> c_se;
  std::vector<double> r_squared;
  std::vector<int> n_list;
  std::vector<double> intercept;       // unconstrained diagnostic fit
  std::vector<double> intercept_se;
  std::vector<bool> intercept_suspect; // |intercept| > 3 intercept_se
};

// deviations: N -> deviation list, all on one common grid. Needs >= 3
// distinct N.
CorrectionFit fit_one_over_n(
    const std::map<int, std::vector<Deviation>>& deviations);

struct KurtosisRegression {
  double slope = 0.0;      // d c_hat(x) / d kappa4
  double intercept = 0.0;  // kappa4-independent part of the correction
  double r_squared = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
};

// Weighted OLS of c_hat(x) against kappa4 across >= 3 fits sharing a grid
// containing x.
KurtosisRegression kurtosis_regression(
    const std::map<double, CorrectionFit>& fits, double x);

}  // namespace rmt

#endif  // RMT_ESTIMATOR_HPP_
