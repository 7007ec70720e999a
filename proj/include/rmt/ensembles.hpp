#ifndef RMT_ENSEMBLES_HPP_
#define RMT_ENSEMBLES_HPP_

#include <Eigen/Dense>

#include "rmt/entry_dist.hpp"
#include "rmt/rng.hpp"

namespace rmt {

using Matrix = Eigen::MatrixXcd;

enum class EnsembleKind { kWigner, kCovarianceFactor };

// Recipe for one raw matrix draw. Entries have variance 1; the global
// spectral normalization (1/sqrt(N) and friends) is applied in `spectra`,
// never at sampling time.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::kCovarianceFactor;
  int n = 0;  // rows (and Wigner dimension)
  int m = 0;  // columns of the factor X; m = n for the square hard edge
  EntryDistribution entry = EntryDistribution::gaussian(FieldClass::kComplex);
  // Variance of the (real) Wigner diagonal; bulk statistics do not care but
  // finite-N corrections might, so it stays configurable.
  double diagonal_variance = 1.0;
};

// Gaussian-divisible interpolation (base + sqrt(t) * G) / sqrt(1 + t):
// t = 0 is the base ensemble, t -> infinity the pure Gaussian of matching
// symmetry class, and entry variance stays 1 for every t.
struct GaussianDivisibleSpec {
  EnsembleSpec base;
  double t = 0.0;
};

// Hermitian n x n draw: i.i.d. above-diagonal entries from the entry law,
// real diagonal. Hermiticity is exact by construction (mirrored storage).
Matrix sample_wigner(const EnsembleSpec& spec, Rng& rng);

// n x m factor X with fully i.i.d. entries; the study object is W = X X*.
Matrix sample_covariance_factor(const EnsembleSpec& spec, Rng& rng);

// (a + sqrt(t) * G) / sqrt(1 + t) with G an independent Gaussian matrix of
// the same shape and symmetry class. t = 0 returns `a` unchanged. The
// fourth cumulant of the output entries is kappa4(base) / (1+t)^2.
Matrix gaussian_divisible(const Matrix& a, double t, EnsembleKind kind,
                          FieldClass cls, Rng& rng,
                          double diagonal_variance = 1.0);

// One draw from a GaussianDivisibleSpec.
Matrix sample_gaussian_divisible(const GaussianDivisibleSpec& spec, Rng& rng);

}  // namespace rmt

#endif  // RMT_ENSEMBLES_HPP_
