#ifndef RMT_ENTRY_DIST_HPP_
#define RMT_ENTRY_DIST_HPP_

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "rmt/rng.hpp"

namespace rmt {

enum class FieldClass { kReal, kComplex };

// Kurtosis convention, fixed module-wide:
//   real class:    kappa4 = E[x^4]   - 3   (mean 0, variance 1)
//   complex class: kappa4 = E[|x|^4] - 2   (mean 0, E[|x|^2] = 1, E[x^2] = 0)
// Feasible ranges, attained by unit-modulus laws:
//   real kappa4 >= -2, complex kappa4 >= -1.
struct MomentSpec {
  FieldClass field_class = FieldClass::kReal;
  double mean = 0.0;
  double variance = 1.0;
  double fourth_cumulant = 0.0;
};

struct Cumulants {
  double mean = 0.0;
  double variance = 0.0;
  double fourth_cumulant = 0.0;
};

struct EmpiricalCumulants {
  Cumulants value;
  Cumulants standard_error;
  bool degenerate = false;  // zero sample variance
};

enum class EntryForm {
  kGaussian,
  kRademacher,        // real only: +/-1 with equal weight
  kThreePoint,        // real: {-a, 0, +a}; complex: radius {0, a} * uniform phase
  kUniform,           // real only: U(-sqrt(3), sqrt(3))
  kUnitCircleDiscrete // complex only: uniform on k-th roots of unity
};

// A scalar entry law with exactly known mean 0, variance 1 and fourth
// cumulant. All matrix-level rescaling lives downstream; entries are always
// variance 1 here.
class EntryDistribution {
 public:
  static EntryDistribution gaussian(FieldClass cls);
  static EntryDistribution rademacher();
  // Real class: atoms {-a, 0, +a} with weights {p, 1-2p, p}, 2pa^2 = 1.
  // Complex class: modulus a with probability p = 1/a^2, else 0, times a
  // uniform phase (rotation invariant).
  static EntryDistribution three_point(FieldClass cls, double atom,
                                       double weight);
  static EntryDistribution uniform();
  static EntryDistribution unit_circle_discrete(int num_points);

  // Canonical tunable-kurtosis family: symmetric three-point in the real
  // class (a^2 = kappa4 + 3, p = 1/(2a^2)), radial three-point in the
  // complex class (a^2 = kappa4 + 2, p = 1/a^2). Exact rational moments.
  // Throws std::domain_error naming the feasible interval when kappa4 is
  // infeasible. The boundary points are returned as the matching
  // unit-modulus law.
  static EntryDistribution make_with_kurtosis(FieldClass cls, double kappa4);

  std::complex<double> sample(Rng& rng) const;
  Cumulants exact_cumulants() const;

  FieldClass field_class() const { return class_; }
  EntryForm form() const { return form_; }
  MomentSpec spec() const;
  double atom() const { return atom_; }
  double atom_weight() const { return weight_; }

  std::string form_name() const;
  static EntryForm form_from_name(const std::string& name);

 private:
  EntryDistribution(FieldClass cls, EntryForm form, double atom, double weight,
                    int k)
      : class_(cls), form_(form), atom_(atom), weight_(weight), k_(k) {}

  FieldClass class_;
  EntryForm form_;
  double atom_ = 0.0;    // three_point
  double weight_ = 0.0;  // three_point
  int k_ = 0;            // unit_circle_discrete
};

// Central-moment estimates of (mean, variance, kappa4) with delete-one
// jackknife standard errors. Complex samples use the |x|-moment convention
// above; real samples must have zero imaginary part. Requires >= 10 samples.
EmpiricalCumulants empirical_cumulants(
    std::span<const std::complex<double>> samples, FieldClass cls);

EmpiricalCumulants empirical_cumulants(std::span<const double> samples);

}  // namespace rmt

#endif  // RMT_ENTRY_DIST_HPP_
