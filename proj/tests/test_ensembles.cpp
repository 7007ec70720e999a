#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rmt/ensembles.hpp"
#include "rmt/spectra.hpp"

using namespace rmt;

namespace {

EnsembleSpec wigner_spec(int n, EntryDistribution entry) {
  EnsembleSpec s;
  s.kind = EnsembleKind::kWigner;
  s.n = n;
  s.m = n;
  s.entry = std::move(entry);
  return s;
}

EnsembleSpec factor_spec(int n, int m, EntryDistribution entry) {
  EnsembleSpec s;
  s.kind = EnsembleKind::kCovarianceFactor;
  s.n = n;
  s.m = m;
  s.entry = std::move(entry);
  return s;
}

// Two-sample Kolmogorov-Smirnov statistic.
double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i; else ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

}  // namespace

TEST_CASE("wigner draws are exactly Hermitian and deterministic") {
  const auto spec = wigner_spec(2, EntryDistribution::gaussian(FieldClass::kComplex));
  Rng rng(10);
  const Matrix h = sample_wigner(spec, rng);
  CHECK((h - Matrix(h.adjoint())).cwiseAbs().maxCoeff() == 0.0);

  Rng r1(11), r2(11);
  const auto spec64 =
      wigner_spec(64, EntryDistribution::gaussian(FieldClass::kComplex));
  CHECK((sample_wigner(spec64, r1) - sample_wigner(spec64, r2)).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(sample_covariance_factor(spec, rng), std::invalid_argument);
}

TEST_CASE("wigner off-diagonal second moment is 1 (Monte Carlo)") {
  const auto spec = wigner_spec(64, EntryDistribution::rademacher());
  Rng rng(12);
  double sum = 0.0;
  std::size_t count = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const Matrix h = sample_wigner(spec, rng);
    for (int i = 0; i < spec.n; ++i)
      for (int j = i + 1; j < spec.n; ++j) {
        sum += std::norm(h(i, j));
        ++count;
      }
  }
  const double mean = sum / static_cast<double>(count);
  // Fourth moment of the entries bounds the estimator variance by 1/count.
  CHECK(std::abs(mean - 1.0) <= 5.0 / std::sqrt(static_cast<double>(count)));
}

TEST_CASE("covariance factor shapes and entries") {
  Rng rng(13);
  const auto s1 = factor_spec(1, 1, EntryDistribution::rademacher());
  const Matrix x1 = sample_covariance_factor(s1, rng);
  CHECK((x1(0, 0) == std::complex<double>(1, 0) ||
         x1(0, 0) == std::complex<double>(-1, 0)));

  const auto s23 =
      factor_spec(2, 3, EntryDistribution::gaussian(FieldClass::kReal));
  const Matrix x23 = sample_covariance_factor(s23, rng);
  CHECK(x23.rows() == 2);
  CHECK(x23.cols() == 3);

  const auto s64 =
      factor_spec(64, 64, EntryDistribution::gaussian(FieldClass::kComplex));
  double sum = 0.0;
  std::size_t count = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const Matrix x = sample_covariance_factor(s64, rng);
    sum += x.squaredNorm();
    count += static_cast<std::size_t>(x.size());
  }
  const double mean = sum / static_cast<double>(count);
  CHECK(std::abs(mean - 1.0) <=
        5.0 * std::sqrt(1.0 / static_cast<double>(count)));

  CHECK_THROWS_AS(sample_wigner(s64, rng), std::invalid_argument);
}

TEST_CASE("gaussian_divisible identity, variance, and kurtosis dilution") {
  Rng rng(14);
  const auto base =
      factor_spec(32, 32, EntryDistribution::make_with_kurtosis(
                              FieldClass::kComplex, -1.0));
  const Matrix a = sample_covariance_factor(base, rng);

  CHECK((gaussian_divisible(a, 0.0, base.kind, FieldClass::kComplex, rng) - a).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(
      gaussian_divisible(a, -0.5, base.kind, FieldClass::kComplex, rng),
      std::domain_error);

  // kappa4 of the interpolated entries is kappa4(base)/(1+t)^2; variance
  // stays 1. Pool entries across draws and check both, 5 jackknife SEs.
  const double t = 3.0;
  std::vector<std::complex<double>> entries;
  for (int rep = 0; rep < 400; ++rep) {
    const Matrix b = sample_covariance_factor(base, rng);
    const Matrix m =
        gaussian_divisible(b, t, base.kind, FieldClass::kComplex, rng);
    entries.insert(entries.end(), m.data(), m.data() + m.size());
  }
  const auto est = empirical_cumulants(
      std::span<const std::complex<double>>(entries), FieldClass::kComplex);
  CHECK(std::abs(est.value.variance - 1.0) <=
        5.0 * est.standard_error.variance);
  const double expected = -1.0 / ((1.0 + t) * (1.0 + t));
  CHECK(std::abs(est.value.fourth_cumulant - expected) <=
        5.0 * est.standard_error.fourth_cumulant);
}

TEST_CASE("large t reproduces the pure Gaussian smallest singular value law") {
  const int n = 16;
  const int reps = 1500;
  Rng rng(15);
  const auto base = factor_spec(
      n, n, EntryDistribution::make_with_kurtosis(FieldClass::kComplex, -1.0));
  const auto gauss =
      factor_spec(n, n, EntryDistribution::gaussian(FieldClass::kComplex));

  std::vector<double> interpolated, reference;
  for (int rep = 0; rep < reps; ++rep) {
    const Matrix a = sample_covariance_factor(base, rng);
    const Matrix m =
        gaussian_divisible(a, 1e6, base.kind, FieldClass::kComplex, rng);
    interpolated.push_back(rescale_hard_edge(smallest_singular_value(m), n));
    const Matrix g = sample_covariance_factor(gauss, rng);
    reference.push_back(rescale_hard_edge(smallest_singular_value(g), n));
  }
  // Two-sample KS, alpha = 0.01: c(alpha) * sqrt(2/reps).
  const double critical = 1.628 * std::sqrt(2.0 / reps);
  CHECK(two_sample_ks(interpolated, reference) < critical);
}

TEST_CASE("wigner diagonal variance follows the configured convention") {
  auto spec = wigner_spec(48, EntryDistribution::gaussian(FieldClass::kComplex));
  spec.diagonal_variance = 2.0;
  Rng rng(16);
  double sum2 = 0.0;
  std::size_t count = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const Matrix h = sample_wigner(spec, rng);
    for (int i = 0; i < spec.n; ++i) {
      CHECK(h(i, i).imag() == 0.0);
      sum2 += h(i, i).real() * h(i, i).real();
      ++count;
    }
  }
  const double var = sum2 / static_cast<double>(count);
  CHECK(std::abs(var - 2.0) <=
        5.0 * 2.0 * std::sqrt(2.0 / static_cast<double>(count)));
}
