#ifndef RMT_THEORY_HPP_
#define RMT_THEORY_HPP_

#include <functional>
#include <string>
#include <vector>

namespace rmt {

// Limiting cdf of x = N * lambda_min(X X*) for square complex sample
// covariance matrices: F(x) = 1 - exp(-x). For the complex Gaussian
// ensemble this is exact at every N, which is what makes it a clean
// baseline for measuring the non-Gaussian 1/N term.
double hard_edge_limit_cdf(double x);

// A limit law plus the coefficient of its 1/N correction. The correction
// is isolated here so the analytic form is auditable and swappable; the
// provenance string names where the form comes from.
struct CorrectionModel {
  std::function<double(double)> limit_cdf;
  std::function<double(double, double)> correction_term;  // (x, kappa4)
  std::string provenance;
};

// Zero-correction model: the pure universality limit.
CorrectionModel null_hard_edge_model();

// Hard-edge model with correction_term(x, kappa4) = kappa4 * x * exp(-x),
// i.e. F_N(x) ~ 1 - exp(-x) + kappa4 * x * exp(-x) / N. The shape and sign
// are pinned by Monte Carlo calibration against unit-modulus complex
// ensembles (see provenance string); the correction vanishes at the
// Gaussian point kappa4 = 0, as universality requires.
CorrectionModel paper_hard_edge_model();

struct CorrectedValue {
  double value = 0.0;
  bool clipped = false;  // true when the raw value left [0, 1]
};

// model.limit_cdf(x) + model.correction_term(x, kappa4) / n, clipped to
// [0, 1] with a flag.
CorrectedValue hard_edge_corrected_cdf(double x, int n, double kappa4,
                                       const CorrectionModel& model);

// Symmetric kernel with a finite diagonal value.
struct KernelSpec {
  std::function<double(double, double)> k;
  std::string name;
};

// Sine kernel at unit mean spacing: K(x,y) = sin(pi(x-y)) / (pi(x-y)),
// K(x,x) = 1; the diagonal is evaluated by series, never 0/0.
KernelSpec sine_kernel();

// Rank-one kernel K(x,y) = phi(x) phi(y); det(I - K) = 1 - int phi^2.
KernelSpec rank_one_kernel(std::function<double(double)> phi);

// Nystrom approximation of det(I - K) on L^2(0, s): Gauss-Legendre nodes
// and weights (x_i, w_i), M_ij = sqrt(w_i) K(x_i, x_j) sqrt(w_j),
// det(I - M). Converges exponentially in `nodes` for analytic kernels.
double fredholm_det(const KernelSpec& kernel, double s, int nodes);

// Gauss-Legendre rule on (0, 1); nodes ascending.
void gauss_legendre_unit(int nodes, std::vector<double>& x,
                         std::vector<double>& w);

// Probability of no eigenvalue in an interval of s mean spacings of the
// bulk sine process: det(I - K_sine) on (0, s).
double sine_gap_probability(double s, int nodes = 40);

// Bulk limit value plus transcribed 1/N correction; same evaluator
// structure as the hard edge, with the sine-kernel gap probability as the
// default limit.
CorrectedValue bulk_corrected_statistic(double s, int n, double kappa4,
                                        const CorrectionModel& model);

// Zero-correction bulk model around the sine gap probability.
CorrectionModel null_bulk_model(int nodes = 40);

}  // namespace rmt

#endif  // RMT_THEORY_HPP_
