#include "rmt/ensembles.hpp"

#include <cmath>
#include <stdexcept>

namespace rmt {
namespace {

// Variance of the real part of one entry draw. All shipped complex forms
// are rotation invariant, so the real part carries half the modulus
// variance.
double real_part_variance(FieldClass cls) {
  return cls == FieldClass::kReal ? 1.0 : 0.5;
}

}  // namespace

Matrix sample_wigner(const EnsembleSpec& spec, Rng& rng) {
  if (spec.kind != EnsembleKind::kWigner)
    throw std::invalid_argument("sample_wigner: spec.kind is not wigner");
  if (spec.n <= 0) throw std::invalid_argument("sample_wigner: n must be > 0");

  const int n = spec.n;
  Matrix h(n, n);
  const double diag_scale =
      std::sqrt(spec.diagonal_variance /
                real_part_variance(spec.entry.field_class()));
  for (int i = 0; i < n; ++i) {
    h(i, i) = spec.entry.sample(rng).real() * diag_scale;
    for (int j = i + 1; j < n; ++j) {
      const std::complex<double> x = spec.entry.sample(rng);
      h(i, j) = x;
      h(j, i) = std::conj(x);
    }
  }
  return h;
}

Matrix sample_covariance_factor(const EnsembleSpec& spec, Rng& rng) {
  if (spec.kind != EnsembleKind::kCovarianceFactor)
    throw std::invalid_argument(
        "sample_covariance_factor: spec.kind is not covariance_factor");
  if (spec.n <= 0 || spec.m <= 0)
    throw std::invalid_argument("sample_covariance_factor: n, m must be > 0");

  Matrix x(spec.n, spec.m);
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < spec.m; ++j) x(i, j) = spec.entry.sample(rng);
  return x;
}

Matrix gaussian_divisible(const Matrix& a, double t, EnsembleKind kind,
                          FieldClass cls, Rng& rng, double diagonal_variance) {
  if (t < 0.0) throw std::domain_error("gaussian_divisible: t must be >= 0");
  if (t == 0.0) return a;

  EnsembleSpec gspec;
  gspec.kind = kind;
  gspec.n = static_cast<int>(a.rows());
  gspec.m = static_cast<int>(a.cols());
  gspec.entry = EntryDistribution::gaussian(cls);
  gspec.diagonal_variance = diagonal_variance;

  const Matrix g = kind == EnsembleKind::kWigner
                       ? sample_wigner(gspec, rng)
                       : sample_covariance_factor(gspec, rng);
  return (a + std::sqrt(t) * g) / std::sqrt(1.0 + t);
}

Matrix sample_gaussian_divisible(const GaussianDivisibleSpec& spec, Rng& rng) {
  const Matrix a = spec.base.kind == EnsembleKind::kWigner
                       ? sample_wigner(spec.base, rng)
                       : sample_covariance_factor(spec.base, rng);
  return gaussian_divisible(a, spec.t, spec.base.kind,
                            spec.base.entry.field_class(), rng,
                            spec.base.diagonal_variance);
}

}  // namespace rmt
