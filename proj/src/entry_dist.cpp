#include "rmt/entry_dist.hpp"

#include <cmath>
#include <stdexcept>

namespace rmt {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

EntryDistribution EntryDistribution::gaussian(FieldClass cls) {
  return EntryDistribution(cls, EntryForm::kGaussian, 0.0, 0.0, 0);
}

EntryDistribution EntryDistribution::rademacher() {
  return EntryDistribution(FieldClass::kReal, EntryForm::kRademacher, 1.0, 0.5,
                           0);
}

EntryDistribution EntryDistribution::three_point(FieldClass cls, double atom,
                                                 double weight) {
  if (atom <= 0.0 || weight <= 0.0)
    throw std::domain_error("three_point: atom and weight must be positive");
  if (cls == FieldClass::kReal) {
    if (weight > 0.5)
      throw std::domain_error("three_point (real): weight must be <= 1/2");
    if (std::abs(2.0 * weight * atom * atom - 1.0) > 1e-12)
      throw std::domain_error(
          "three_point (real): 2*p*a^2 must equal 1 for unit variance");
  } else {
    if (weight > 1.0)
      throw std::domain_error("three_point (complex): weight must be <= 1");
    if (std::abs(weight * atom * atom - 1.0) > 1e-12)
      throw std::domain_error(
          "three_point (complex): p*a^2 must equal 1 for unit variance");
  }
  return EntryDistribution(cls, EntryForm::kThreePoint, atom, weight, 0);
}

EntryDistribution EntryDistribution::uniform() {
  return EntryDistribution(FieldClass::kReal, EntryForm::kUniform, 0.0, 0.0,
                           0);
}

EntryDistribution EntryDistribution::unit_circle_discrete(int num_points) {
  // k >= 3 keeps E[x^2] = 0 along with the unit modulus.
  if (num_points < 3)
    throw std::domain_error("unit_circle_discrete: need at least 3 points");
  return EntryDistribution(FieldClass::kComplex, EntryForm::kUnitCircleDiscrete,
                           1.0, 0.0, num_points);
}

EntryDistribution EntryDistribution::make_with_kurtosis(FieldClass cls,
                                                        double kappa4) {
  if (cls == FieldClass::kReal) {
    if (kappa4 < -2.0)
      throw std::domain_error(
          "make_with_kurtosis (real): kappa4 must lie in [-2, inf)");
    if (kappa4 == -2.0) return rademacher();
    const double a = std::sqrt(kappa4 + 3.0);
    return three_point(cls, a, 1.0 / (2.0 * a * a));
  }
  if (kappa4 < -1.0)
    throw std::domain_error(
        "make_with_kurtosis (complex): kappa4 must lie in [-1, inf)");
  const double a = std::sqrt(kappa4 + 2.0);
  return three_point(cls, a, 1.0 / (a * a));
}

std::complex<double> EntryDistribution::sample(Rng& rng) const {
  switch (form_) {
    case EntryForm::kGaussian:
      if (class_ == FieldClass::kReal) return {rng.gaussian(), 0.0};
      // Independent real/imaginary parts of variance 1/2 each.
      return {rng.gaussian() * M_SQRT1_2, rng.gaussian() * M_SQRT1_2};
    case EntryForm::kRademacher:
      return {rng.uniform() < 0.5 ? -1.0 : 1.0, 0.0};
    case EntryForm::kThreePoint: {
      const double u = rng.uniform();
      if (class_ == FieldClass::kReal) {
        if (u < weight_) return {-atom_, 0.0};
        if (u < 2.0 * weight_) return {atom_, 0.0};
        return {0.0, 0.0};
      }
      if (u >= weight_) return {0.0, 0.0};
      const double theta = kTwoPi * rng.uniform();
      return std::polar(atom_, theta);
    }
    case EntryForm::kUniform:
      return {(2.0 * rng.uniform() - 1.0) * std::sqrt(3.0), 0.0};
    case EntryForm::kUnitCircleDiscrete: {
      const int j = static_cast<int>(rng.uniform() * k_);
      return std::polar(1.0, kTwoPi * (j < k_ ? j : k_ - 1) / k_);
    }
  }
  throw std::logic_error("unreachable entry form");
}

Cumulants EntryDistribution::exact_cumulants() const {
  switch (form_) {
    case EntryForm::kGaussian:
      return {0.0, 1.0, 0.0};
    case EntryForm::kRademacher:
      return {0.0, 1.0, -2.0};
    case EntryForm::kThreePoint: {
      // Real: E[x^4] = 2*p*a^4 = a^2;  complex: E[|x|^4] = p*a^4 = a^2.
      const double a2 = atom_ * atom_;
      return {0.0, 1.0, class_ == FieldClass::kReal ? a2 - 3.0 : a2 - 2.0};
    }
    case EntryForm::kUniform:
      return {0.0, 1.0, 9.0 / 5.0 - 3.0};
    case EntryForm::kUnitCircleDiscrete:
      return {0.0, 1.0, -1.0};
  }
  throw std::logic_error("unreachable entry form");
}

MomentSpec EntryDistribution::spec() const {
  return {class_, 0.0, 1.0, exact_cumulants().fourth_cumulant};
}

std::string EntryDistribution::form_name() const {
  switch (form_) {
    case EntryForm::kGaussian: return "gaussian";
    case EntryForm::kRademacher: return "rademacher";
    case EntryForm::kThreePoint: return "three_point";
    case EntryForm::kUniform: return "uniform";
    case EntryForm::kUnitCircleDiscrete: return "unit_circle_discrete";
  }
  throw std::logic_error("unreachable entry form");
}

EntryForm EntryDistribution::form_from_name(const std::string& name) {
  if (name == "gaussian") return EntryForm::kGaussian;
  if (name == "rademacher") return EntryForm::kRademacher;
  if (name == "three_point") return EntryForm::kThreePoint;
  if (name == "uniform") return EntryForm::kUniform;
  if (name == "unit_circle_discrete") return EntryForm::kUnitCircleDiscrete;
  throw std::invalid_argument("unknown entry form: " + name);
}

namespace {

// Estimate from power sums; the shipped laws are centered by construction,
// so the fourth moment is taken raw while the variance is mean-corrected.
struct PowerSums {
  std::complex<double> s1{0.0, 0.0};
  double s2 = 0.0;
  double s4 = 0.0;
};

Cumulants estimate(const PowerSums& s, double n, FieldClass cls) {
  Cumulants c;
  const std::complex<double> mu = s.s1 / n;
  c.mean = mu.real();
  c.variance = s.s2 / n - std::norm(mu);
  const double m2 = s.s2 / n;
  const double m4 = s.s4 / n;
  c.fourth_cumulant = cls == FieldClass::kReal ? m4 - 3.0 * m2 * m2
                                               : m4 - 2.0 * m2 * m2;
  return c;
}

}  // namespace

EmpiricalCumulants empirical_cumulants(
    std::span<const std::complex<double>> samples, FieldClass cls) {
  const std::size_t n = samples.size();
  if (n < 10)
    throw std::invalid_argument("empirical_cumulants: need at least 10 samples");

  PowerSums total;
  for (const auto& x : samples) {
    const double a2 = std::norm(x);
    total.s1 += x;
    total.s2 += a2;
    total.s4 += a2 * a2;
  }

  EmpiricalCumulants out;
  out.value = estimate(total, static_cast<double>(n), cls);
  if (out.value.variance <= 0.0) {
    out.degenerate = true;
    out.value.variance = 0.0;
    return out;
  }

  // Delete-one jackknife over the power sums.
  Cumulants mean_loo{};
  std::vector<Cumulants> loo(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a2 = std::norm(samples[i]);
    PowerSums s{total.s1 - samples[i], total.s2 - a2, total.s4 - a2 * a2};
    loo[i] = estimate(s, static_cast<double>(n - 1), cls);
    mean_loo.mean += loo[i].mean;
    mean_loo.variance += loo[i].variance;
    mean_loo.fourth_cumulant += loo[i].fourth_cumulant;
  }
  mean_loo.mean /= static_cast<double>(n);
  mean_loo.variance /= static_cast<double>(n);
  mean_loo.fourth_cumulant /= static_cast<double>(n);

  double vm = 0.0, vv = 0.0, vk = 0.0;
  for (const auto& c : loo) {
    vm += (c.mean - mean_loo.mean) * (c.mean - mean_loo.mean);
    vv += (c.variance - mean_loo.variance) * (c.variance - mean_loo.variance);
    vk += (c.fourth_cumulant - mean_loo.fourth_cumulant) *
          (c.fourth_cumulant - mean_loo.fourth_cumulant);
  }
  const double scale = static_cast<double>(n - 1) / static_cast<double>(n);
  out.standard_error = {std::sqrt(scale * vm), std::sqrt(scale * vv),
                        std::sqrt(scale * vk)};
  return out;
}

EmpiricalCumulants empirical_cumulants(std::span<const double> samples) {
  std::vector<std::complex<double>> z(samples.begin(), samples.end());
  return empirical_cumulants(std::span<const std::complex<double>>(z),
                             FieldClass::kReal);
}

}  // namespace rmt
