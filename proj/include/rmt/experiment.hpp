#ifndef RMT_EXPERIMENT_HPP_
#define RMT_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rmt/ensembles.hpp"
#include "rmt/estimator.hpp"
#include "rmt/spectra.hpp"
#include "rmt/theory.hpp"

namespace rmt {

// One ensemble line of a config file: entry law, symmetry class and the
// Gaussian-divisible weight t. The effective fourth cumulant seen by the
// matrix entries is kappa4 / (1+t)^2 (Gaussian convolution dilutes
// kurtosis); fits regress against the effective value.
struct EnsembleConfig {
  EnsembleKind kind = EnsembleKind::kCovarianceFactor;
  FieldClass field_class = FieldClass::kComplex;
  EntryForm form = EntryForm::kThreePoint;
  double kappa4 = 0.0;  // of the base entry law
  double t = 0.0;
  int circle_points = 8;  // unit_circle_discrete only
  double diagonal_variance = 1.0;

  EntryDistribution make_entry() const;
  double effective_kappa4() const { return kappa4 / ((1.0 + t) * (1.0 + t)); }
  std::string describe() const;
};

struct ExperimentConfig {
  std::uint64_t master_seed = 1;
  std::int64_t replicates = 0;
  std::vector<int> n_list;
  StatisticKind statistic = StatisticKind::kHardEdgeMin;
  std::vector<EnsembleConfig> ensembles;
  std::vector<double> grid_quantiles = {0.1, 0.2, 0.3, 0.4, 0.5,
                                        0.6, 0.7, 0.8, 0.9};
  std::filesystem::path output_dir = ".";
  int threads = 0;  // 0 = auto
  // Bulk statistics: interval centered here, width in mean spacings.
  double bulk_center = 0.0;
  double bulk_width_spacings = 1.0;
  // Theory tables.
  std::string model = "paper";
  std::vector<double> theory_x;

  void validate() const;  // throws std::invalid_argument
};

// Flat key = value text config; '#' comments; unknown keys are hard errors.
ExperimentConfig parse_config_file(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& text);

// Raised with the offending seed when a replicate fails numerically.
struct NumericalFailure : std::runtime_error {
  NumericalFailure(const std::string& what, std::uint64_t seed_in)
      : std::runtime_error(what), seed(seed_in) {}
  std::uint64_t seed;
};

// One fully deterministic replicate: seed -> draw -> statistic.
double replicate_statistic(const ExperimentConfig& config,
                           std::size_t ensemble_index, int n,
                           std::int64_t replicate_index);

struct SampleRow {
  int ensemble_id = 0;
  int n = 0;
  std::int64_t replicate = 0;
  std::uint64_t seed = 0;
  StatisticKind kind = StatisticKind::kHardEdgeMin;
  double value = 0.0;
};

// All replicates of the run, sorted by (ensemble_id, n, replicate). Output
// is a pure function of the config; thread count never changes it.
std::vector<SampleRow> run_sampling(const ExperimentConfig& config);

// run_sampling + CSV emission into config.output_dir: samples.csv with the
// row schema above plus an ensembles.csv metadata sidecar. Refuses to
// overwrite an existing samples.csv unless `force` (a partial directory is
// never silently mixed into).
std::filesystem::path write_samples(const ExperimentConfig& config,
                                    bool force = false);

struct FitOutput {
  std::vector<double> x_grid;
  std::map<int, CorrectionFit> fits;  // ensemble_id -> fit
  std::map<int, double> kappa4_eff;   // ensemble_id -> effective kappa4
  std::vector<KurtosisRegression> report;  // one per grid point
  bool have_report = false;
};

// Fit the 1/N coefficient per ensemble and, when >= 3 distinct effective
// kappa4 values are present, the cross-ensemble kurtosis regression.
// Reads samples.csv and its ensembles.csv sidecar.
FitOutput run_fit(const std::filesystem::path& samples_csv,
                  const CorrectionModel& model,
                  const std::vector<double>& grid_quantiles);

// Emit fits.csv (ensemble_id,x,c_hat,c_se,r2) and report.csv
// (x,kurtosis_slope,kurtosis_intercept,r2) next to `out_dir`.
void write_fit_outputs(const FitOutput& out,
                       const std::filesystem::path& out_dir);

// (x, limit, corrected per (n, kappa4)) overlay table.
void write_theory_table(const ExperimentConfig& config,
                        const std::filesystem::path& out_path);

// Reads fits.csv + ensembles.csv sidecar and recomputes report.csv.
void rebuild_report(const std::filesystem::path& fits_csv,
                    const std::filesystem::path& out_path);

std::string statistic_name(StatisticKind kind);
StatisticKind statistic_from_name(const std::string& name);

// Fixed 17-significant-digit decimal float used by every CSV writer.
std::string format_double(double v);

}  // namespace rmt

#endif  // RMT_EXPERIMENT_HPP_
