#ifndef RMT_SPECTRA_HPP_
#define RMT_SPECTRA_HPP_

#include <cstdint>
#include <vector>

#include "rmt/ensembles.hpp"

namespace rmt {

enum class StatisticKind { kHardEdgeMin, kBulkCount, kBulkGap };

// One rescaled local statistic extracted from one draw, tagged with enough
// provenance to recompute it exactly.
struct SpectralSample {
  double statistic = 0.0;
  StatisticKind kind = StatisticKind::kHardEdgeMin;
  int n = 0;
  std::int64_t replicate_index = 0;
  std::uint64_t seed = 0;
};

// Ascending eigenvalues of a Hermitian matrix (dense, n <= 4096).
// Throws std::invalid_argument on non-Hermitian input.
std::vector<double> hermitian_eigenvalues(const Matrix& h);

// Descending singular values (n, m <= 4096).
std::vector<double> singular_values(const Matrix& x);

// Smallest singular value. Square inputs take an inverse-iteration fast
// path on X X* (LU of X, residual-checked, falls back to the full
// decomposition on slow convergence); the full decomposition is the oracle
// it must agree with to 1e-12 relative.
double smallest_singular_value(const Matrix& x);

// Hard-edge statistic x = n * sigma_min^2 = n * lambda_min(X X*) for the
// square, variance-1 normalization. This is the O(1) variable of the
// limit law.
double rescale_hard_edge(double sigma_min, int n);

// Plumbing mode: eigenvalues inside the absolute interval [lo, hi].
int count_in_interval(const std::vector<double>& sorted_eigs, double lo,
                      double hi);

// Eigenvalues of a raw Wigner draw falling in an interval around `center`
// whose width is measured in units of the local mean spacing; spacing comes
// from the semicircle density rho(u) = sqrt(4 - u^2) / (2 pi) after the
// eigenvalues are divided by sqrt(n). `center` must lie strictly inside
// (-2, 2).
int bulk_counting_statistic(const std::vector<double>& sorted_eigs,
                            double center, double width_in_mean_spacings,
                            int n);

// Semicircle density at u on the rescaled support [-2, 2].
double semicircle_density(double u);

}  // namespace rmt

#endif  // RMT_SPECTRA_HPP_
