#include "rmt/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmt {
namespace {

constexpr int kMaxDim = 4096;
constexpr double kPi = 3.14159265358979323846;

void check_dims(const Matrix& x) {
  if (x.rows() == 0 || x.cols() == 0)
    throw std::invalid_argument("empty matrix");
  if (x.rows() > kMaxDim || x.cols() > kMaxDim)
    throw std::invalid_argument("matrix dimension exceeds 4096");
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const Matrix& h) {
  check_dims(h);
  if (h.rows() != h.cols())
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
  const double scale = h.cwiseAbs().maxCoeff();
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0))
    throw std::invalid_argument("hermitian_eigenvalues: input not Hermitian");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

std::vector<double> singular_values(const Matrix& x) {
  check_dims(x);
  Eigen::BDCSVD<Matrix> svd(x);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

namespace {

// Inverse iteration on W = X X* through the LU factors of X. Returns a
// negative value when convergence stalls (caller falls back to the full
// decomposition).
double smallest_singular_value_fast(const Matrix& x) {
  const auto n = x.rows();
  Eigen::PartialPivLU<Matrix> lu(x);

  // An exactly zero pivot means a singular matrix.
  for (Eigen::Index i = 0; i < n; ++i)
    if (lu.matrixLU()(i, i) == std::complex<double>(0.0, 0.0)) return 0.0;

  // Fixed deterministic start vector.
  Eigen::VectorXcd v(n);
  Rng start_rng(0x5ca1ab1e);
  for (Eigen::Index i = 0; i < n; ++i)
    v(i) = std::complex<double>(start_rng.gaussian(), start_rng.gaussian());
  v.normalize();

  const double w_norm = x.squaredNorm();  // >= ||W||_2 via ||X||_F^2
  const double res_tol = 1e-13 * std::max(w_norm, 1e-300);
  constexpr int kMaxIter = 1000;

  // Converged when the residual is at noise level and the Rayleigh quotient
  // has stopped moving; the second condition guards against stopping early
  // when the two smallest eigenvalues are close.
  double rho_prev = -1.0;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    Eigen::VectorXcd y = lu.solve(v);            // X y = v
    Eigen::VectorXcd z = lu.adjoint().solve(y);  // X* z = y, so z = W^{-1} v
    const double zn = z.norm();
    if (!std::isfinite(zn) || zn == 0.0) return -1.0;
    v = z / zn;

    Eigen::VectorXcd xv = x.adjoint() * v;
    const double rho = xv.squaredNorm();
    Eigen::VectorXcd r = x * xv - rho * v;
    if (r.norm() <= res_tol && rho_prev >= 0.0 &&
        std::abs(rho - rho_prev) <= 1e-13 * rho)
      return std::sqrt(std::max(rho, 0.0));
    rho_prev = rho;
  }
  return -1.0;
}

}  // namespace

double smallest_singular_value(const Matrix& x) {
  check_dims(x);
  if (x.rows() == x.cols() && x.rows() >= 4) {
    const double fast = smallest_singular_value_fast(x);
    if (fast >= 0.0) return fast;
  }
  const auto sv = singular_values(x);
  return sv.back();
}

double rescale_hard_edge(double sigma_min, int n) {
  if (n <= 0) throw std::invalid_argument("rescale_hard_edge: n must be > 0");
  return static_cast<double>(n) * sigma_min * sigma_min;
}

int count_in_interval(const std::vector<double>& sorted_eigs, double lo,
                      double hi) {
  if (hi <= lo) return 0;
  const auto first =
      std::lower_bound(sorted_eigs.begin(), sorted_eigs.end(), lo);
  const auto last = std::upper_bound(first, sorted_eigs.end(), hi);
  return static_cast<int>(last - first);
}

double semicircle_density(double u) {
  if (std::abs(u) >= 2.0) return 0.0;
  return std::sqrt(4.0 - u * u) / (2.0 * kPi);
}

int bulk_counting_statistic(const std::vector<double>& sorted_eigs,
                            double center, double width_in_mean_spacings,
                            int n) {
  if (n <= 0) throw std::invalid_argument("bulk_counting_statistic: n <= 0");
  if (std::abs(center) >= 2.0)
    throw std::domain_error(
        "bulk_counting_statistic: center outside the limiting support (-2, 2)");
  if (width_in_mean_spacings < 0.0)
    throw std::domain_error("bulk_counting_statistic: negative width");
  if (width_in_mean_spacings == 0.0) return 0;

  const double rho = semicircle_density(center);
  const double spacing = 1.0 / (static_cast<double>(n) * rho);
  const double half = 0.5 * width_in_mean_spacings * spacing;
  // Eigenvalues arrive raw; the semicircle lives on H / sqrt(n).
  const double scale = std::sqrt(static_cast<double>(n));
  return count_in_interval(sorted_eigs, (center - half) * scale,
                           (center + half) * scale);
}

}  // namespace rmt
