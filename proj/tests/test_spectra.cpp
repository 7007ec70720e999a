#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "rmt/ensembles.hpp"
#include "rmt/spectra.hpp"

using namespace rmt;

namespace {

Matrix random_complex(int n, int m, std::uint64_t seed) {
  Rng rng(seed);
  Matrix x(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      x(i, j) = std::complex<double>(rng.gaussian(), rng.gaussian()) * M_SQRT1_2;
  return x;
}

Matrix random_hermitian(int n, std::uint64_t seed) {
  const Matrix x = random_complex(n, n, seed);
  return (x + Matrix(x.adjoint())) / 2.0;
}

}  // namespace

TEST_CASE("closed-form eigenvalues") {
  Matrix h(2, 2);
  h << 2, 1, 1, 2;
  const auto eigs = hermitian_eigenvalues(h);
  CHECK(eigs[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eigs[1] == doctest::Approx(3.0).epsilon(1e-12));

  const auto ones = hermitian_eigenvalues(Matrix::Identity(5, 5));
  for (double e : ones) CHECK(e == doctest::Approx(1.0).epsilon(1e-13));

  Matrix bad(2, 2);
  bad << 0, 2, 1, 0;
  CHECK_THROWS_AS(hermitian_eigenvalues(bad), std::invalid_argument);
}

TEST_CASE("eigenvalue sum equals trace (oracle)") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Matrix h = random_hermitian(8, seed);
    const auto eigs = hermitian_eigenvalues(h);
    double sum = 0.0;
    for (double e : eigs) sum += e;
    const double trace = h.trace().real();
    CHECK(std::abs(sum - trace) <= 1e-10 * std::max(1.0, std::abs(trace)));
  }
}

TEST_CASE("closed-form singular values") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = -4;
  auto sv = singular_values(d);
  CHECK(sv[0] == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(sv[1] == doctest::Approx(3.0).epsilon(1e-13));

  Matrix m(2, 2);
  m << 0, 2, 1, 0;
  sv = singular_values(m);
  CHECK(sv[0] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(sv[1] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("singular value squares sum to the Frobenius norm (oracle)") {
  const Matrix x = random_complex(16, 16, 4);
  const auto sv = singular_values(x);
  double sum = 0.0;
  for (double s : sv) sum += s * s;
  CHECK(std::abs(sum - x.squaredNorm()) <= 1e-10 * x.squaredNorm());
}

TEST_CASE("smallest singular value: identities and fast path") {
  CHECK(smallest_singular_value(Matrix::Identity(10, 10)) ==
        doctest::Approx(1.0).epsilon(1e-13));

  Matrix z = random_complex(6, 6, 5);
  z.row(3).setZero();
  CHECK(smallest_singular_value(z) <= 1e-12);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix x = random_complex(64, 64, 100 + seed);
    const double fast = smallest_singular_value(x);
    const double oracle = singular_values(x).back();
    CHECK(std::abs(fast - oracle) <= 1e-10 * oracle);
  }
}

TEST_CASE("sigma_min lower-bounds ||X v|| over random unit vectors") {
  const Matrix x = random_complex(32, 32, 7);
  const double smin = smallest_singular_value(x);
  Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    Eigen::VectorXcd v(32);
    for (int i = 0; i < 32; ++i)
      v(i) = std::complex<double>(rng.gaussian(), rng.gaussian());
    v.normalize();
    CHECK((x * v).norm() >= smin - 1e-10);
  }
}

TEST_CASE("hard-edge rescaling is n * sigma^2") {
  CHECK(rescale_hard_edge(0.0, 17) == 0.0);
  CHECK(rescale_hard_edge(1.0, 4) == 4.0);
  Rng rng(9);
  for (int k = 0; k < 50; ++k) {
    const double s = rng.uniform() * 3.0;
    const int n = 1 + static_cast<int>(rng.uniform() * 100);
    CHECK(rescale_hard_edge(s, n) == doctest::Approx(n * s * s).epsilon(1e-15));
  }
}

TEST_CASE("interval counting") {
  const std::vector<double> eigs = {0.1, 0.5, 0.9};
  CHECK(count_in_interval(eigs, 0.2, 1.0) == 2);
  CHECK(count_in_interval(eigs, 0.3, 0.3) == 0);
  CHECK(bulk_counting_statistic(eigs, 0.0, 0.0, 3) == 0);
  CHECK_THROWS_AS(bulk_counting_statistic(eigs, 2.5, 1.0, 3),
                  std::domain_error);
}

TEST_CASE("bulk counting mean matches the sine-process first moment") {
  // Determinantal first-moment oracle: for a width of 1 mean spacing the
  // expected count is integral of K(x,x) = 1.
  const int n = 64;
  const int reps = 2000;
  EnsembleSpec spec;
  spec.kind = EnsembleKind::kWigner;
  spec.n = n;
  spec.m = n;
  spec.entry = EntryDistribution::gaussian(FieldClass::kComplex);
  Rng rng(10);
  double sum = 0.0, sum2 = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    const auto eigs = hermitian_eigenvalues(sample_wigner(spec, rng));
    const double c = bulk_counting_statistic(eigs, 0.0, 1.0, n);
    sum += c;
    sum2 += c * c;
  }
  const double mean = sum / reps;
  const double var = sum2 / reps - mean * mean;
  const double se = std::sqrt(var / reps);
  CHECK(std::abs(mean - 1.0) <= 5.0 * se);
}

TEST_CASE("hard-edge statistic mean matches the limit law (quadrature oracle)") {
  // E[x] for the limit law by quadrature of the survival function
  // 1 - F(x) = exp(-x) on a fine grid (the complex-Gaussian ensemble is at
  // kappa4 = 0 where the 1/N term vanishes).
  double oracle_mean = 0.0;
  const double dx = 1e-4;
  for (double x = 0.5 * dx; x < 40.0; x += dx) oracle_mean += std::exp(-x) * dx;

  const int n = 50;
  const int reps = 2000;
  EnsembleSpec spec;
  spec.kind = EnsembleKind::kCovarianceFactor;
  spec.n = n;
  spec.m = n;
  spec.entry = EntryDistribution::gaussian(FieldClass::kComplex);
  Rng rng(11);
  double sum = 0.0, sum2 = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    const Matrix x = sample_covariance_factor(spec, rng);
    const double v = rescale_hard_edge(smallest_singular_value(x), n);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum2 / reps - mean * mean) / reps);
  CHECK(std::abs(mean - oracle_mean) <= 5.0 * se);
}
