#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <complex>
#include <vector>

#include "rmt/entry_dist.hpp"

using namespace rmt;

namespace {

// Brute-force moment oracle for the real three-point law: weighted sums
// over the three atoms.
struct AtomMoments {
  double m2 = 0.0, m4 = 0.0;
};

AtomMoments real_three_point_moments(double a, double p) {
  const double atoms[3] = {-a, 0.0, a};
  const double weights[3] = {p, 1.0 - 2.0 * p, p};
  AtomMoments m;
  for (int i = 0; i < 3; ++i) {
    m.m2 += weights[i] * atoms[i] * atoms[i];
    m.m4 += weights[i] * std::pow(atoms[i], 4);
  }
  return m;
}

std::vector<std::complex<double>> draw(const EntryDistribution& dist,
                                       std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::complex<double>> out(n);
  for (auto& x : out) x = dist.sample(rng);
  return out;
}

}  // namespace

TEST_CASE("make_with_kurtosis hits the requested kurtosis exactly") {
  // (real, +1): a = 2, p = 1/8, checked against the atom-sum oracle.
  const auto d = EntryDistribution::make_with_kurtosis(FieldClass::kReal, 1.0);
  CHECK(d.atom() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(d.atom_weight() == doctest::Approx(0.125).epsilon(1e-15));
  const auto m = real_three_point_moments(d.atom(), d.atom_weight());
  CHECK(m.m2 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.m4 - 3.0 == doctest::Approx(1.0).epsilon(1e-14));

  // (real, 0): a = sqrt(3), p = 1/6, cumulants (0, 1, 0).
  const auto d0 = EntryDistribution::make_with_kurtosis(FieldClass::kReal, 0.0);
  const auto c0 = d0.exact_cumulants();
  CHECK(c0.mean == 0.0);
  CHECK(c0.variance == 1.0);
  CHECK(c0.fourth_cumulant == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(d0.atom() == doctest::Approx(std::sqrt(3.0)));
  CHECK(d0.atom_weight() == doctest::Approx(1.0 / 6.0));

  // (real, -2) is the Rademacher boundary.
  const auto dr =
      EntryDistribution::make_with_kurtosis(FieldClass::kReal, -2.0);
  CHECK(dr.form() == EntryForm::kRademacher);
  CHECK(dr.exact_cumulants().fourth_cumulant == -2.0);
}

TEST_CASE("make_with_kurtosis round-trips kappa4 exactly (both classes)") {
  for (double k4 : {-2.0, -1.5, -1.0, -0.25, 0.0, 0.5, 1.0, 3.0, 10.0}) {
    const auto d = EntryDistribution::make_with_kurtosis(FieldClass::kReal, k4);
    CHECK(d.exact_cumulants().fourth_cumulant == doctest::Approx(k4).epsilon(1e-15));
  }
  for (double k4 : {-1.0, -0.5, 0.0, 1.0, 4.0}) {
    const auto d =
        EntryDistribution::make_with_kurtosis(FieldClass::kComplex, k4);
    CHECK(d.exact_cumulants().fourth_cumulant == doctest::Approx(k4).epsilon(1e-15));
  }
}

TEST_CASE("infeasible kurtosis names the feasible interval") {
  CHECK_THROWS_WITH_AS(
      EntryDistribution::make_with_kurtosis(FieldClass::kReal, -2.5),
      doctest::Contains("[-2, inf)"), std::domain_error);
  CHECK_THROWS_WITH_AS(
      EntryDistribution::make_with_kurtosis(FieldClass::kComplex, -1.5),
      doctest::Contains("[-1, inf)"), std::domain_error);
}

TEST_CASE("sample support and determinism") {
  const auto rade = EntryDistribution::rademacher();
  const auto three =
      EntryDistribution::make_with_kurtosis(FieldClass::kReal, 1.0);
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const double r = rade.sample(rng).real();
    CHECK((r == 1.0 || r == -1.0));
    const double t = three.sample(rng).real();
    CHECK((t == -2.0 || t == 0.0 || t == 2.0));
  }

  const auto g = EntryDistribution::gaussian(FieldClass::kReal);
  const auto a = draw(g, 50, 1234);
  const auto b = draw(g, 50, 1234);
  CHECK(a == b);
}

TEST_CASE("exact cumulants of the shipped laws") {
  CHECK(EntryDistribution::gaussian(FieldClass::kReal)
            .exact_cumulants()
            .fourth_cumulant == 0.0);
  CHECK(EntryDistribution::gaussian(FieldClass::kComplex)
            .exact_cumulants()
            .fourth_cumulant == 0.0);
  CHECK(EntryDistribution::rademacher().exact_cumulants().fourth_cumulant ==
        -2.0);
  CHECK(EntryDistribution::unit_circle_discrete(8)
            .exact_cumulants()
            .fourth_cumulant == -1.0);
  CHECK(EntryDistribution::uniform().exact_cumulants().fourth_cumulant ==
        doctest::Approx(-1.2).epsilon(1e-15));
}

TEST_CASE("empirical cumulants agree with exact cumulants (Monte Carlo)") {
  const std::size_t n = 1000000;

  const auto rade = EntryDistribution::rademacher();
  auto est = empirical_cumulants(draw(rade, n, 5), FieldClass::kReal);
  CHECK(std::abs(est.value.fourth_cumulant - (-2.0)) <=
        5.0 * est.standard_error.fourth_cumulant);

  const auto g = EntryDistribution::gaussian(FieldClass::kReal);
  est = empirical_cumulants(draw(g, n, 6), FieldClass::kReal);
  CHECK(std::abs(est.value.fourth_cumulant) <=
        5.0 * est.standard_error.fourth_cumulant);
  CHECK(std::abs(est.value.mean) <= 5.0 * est.standard_error.mean);
  CHECK(std::abs(est.value.variance - 1.0) <=
        5.0 * est.standard_error.variance);
}

TEST_CASE("degenerate and undersized inputs") {
  std::vector<double> zeros(10, 0.0);
  const auto est = empirical_cumulants(std::span<const double>(zeros));
  CHECK(est.degenerate);
  CHECK(est.value.variance == 0.0);

  std::vector<double> few(9, 1.0);
  CHECK_THROWS_AS(empirical_cumulants(std::span<const double>(few)),
                  std::invalid_argument);
}

TEST_CASE("complex radial laws are rotation invariant in |x| moments") {
  const auto d =
      EntryDistribution::make_with_kurtosis(FieldClass::kComplex, 1.0);
  auto samples = draw(d, 20000, 77);
  const auto before = empirical_cumulants(
      std::span<const std::complex<double>>(samples), FieldClass::kComplex);
  const std::complex<double> phase = std::polar(1.0, 1.2345);
  for (auto& x : samples) x *= phase;
  const auto after = empirical_cumulants(
      std::span<const std::complex<double>>(samples), FieldClass::kComplex);
  CHECK(after.value.variance ==
        doctest::Approx(before.value.variance).epsilon(1e-12));
  CHECK(after.value.fourth_cumulant ==
        doctest::Approx(before.value.fourth_cumulant).epsilon(1e-12));
}
