// Experiment driver: config-driven replicate farms, 1/N fits, and theory
// tables for hard-edge / bulk local statistics of random matrices.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure.

#include <CLI11.hpp>
#include <iostream>

#include "rmt/experiment.hpp"

namespace {

int run_sample(const std::string& config_path, const std::string& out_dir,
               bool force) {
  rmt::ExperimentConfig cfg = rmt::parse_config_file(config_path);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  const auto path = rmt::write_samples(cfg, force);
  std::cout << "wrote " << path.string() << " ("
            << cfg.ensembles.size() << " ensembles x " << cfg.n_list.size()
            << " N x " << cfg.replicates << " replicates)\n";
  return 0;
}

int run_fit_cmd(const std::string& samples_path, const std::string& model_name,
                const std::string& out_dir,
                std::vector<double> quantiles) {
  if (model_name != "null" && model_name != "paper")
    throw std::invalid_argument("--model must be 'null' or 'paper'");
  const rmt::CorrectionModel model = model_name == "paper"
                                         ? rmt::paper_hard_edge_model()
                                         : rmt::null_hard_edge_model();
  if (quantiles.empty())
    quantiles = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

  const std::filesystem::path samples(samples_path);
  const auto out = rmt::run_fit(samples, model, quantiles);
  const std::filesystem::path dir =
      out_dir.empty() ? samples.parent_path() : std::filesystem::path(out_dir);
  rmt::write_fit_outputs(out, dir);
  std::cout << "wrote " << (dir / "fits.csv").string() << '\n';
  if (out.have_report)
    std::cout << "wrote " << (dir / "report.csv").string() << '\n';
  else
    std::cout << "report.csv skipped: fewer than 3 distinct kappa4 values\n";
  return 0;
}

int run_theory(const std::string& config_path, const std::string& out_path) {
  const rmt::ExperimentConfig cfg = rmt::parse_config_file(config_path);
  const std::filesystem::path out =
      out_path.empty() ? cfg.output_dir / "theory.csv"
                       : std::filesystem::path(out_path);
  std::filesystem::create_directories(out.parent_path().empty()
                                          ? "."
                                          : out.parent_path());
  rmt::write_theory_table(cfg, out);
  std::cout << "wrote " << out.string() << '\n';
  return 0;
}

int run_report(const std::string& fits_path, const std::string& out_path) {
  const std::filesystem::path fits(fits_path);
  const std::filesystem::path out =
      out_path.empty() ? fits.parent_path() / "report.csv"
                       : std::filesystem::path(out_path);
  rmt::rebuild_report(fits, out);
  std::cout << "wrote " << out.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rmt_lab: finite-size corrections to local eigenvalue "
               "statistics of random matrices"};
  app.require_subcommand(1);

  std::string config_path, out_dir, samples_path, model_name = "null";
  std::string fits_path, out_path;
  std::vector<double> quantiles;
  bool force = false;

  auto* sample = app.add_subcommand("sample", "run the replicate farm");
  sample->add_option("--config", config_path, "experiment config file")
      ->required();
  sample->add_option("--out", out_dir, "override output directory");
  sample->add_flag("--force", force, "overwrite an existing samples.csv");

  auto* fit = app.add_subcommand("fit", "fit the 1/N correction");
  fit->add_option("--samples", samples_path, "samples.csv from `sample`")
      ->required();
  fit->add_option("--model", model_name, "reference model: null|paper")
      ->required();
  fit->add_option("--out", out_dir, "output directory (default: samples dir)");
  fit->add_option("--quantiles", quantiles, "grid quantiles in (0,1)");

  auto* theory = app.add_subcommand("theory", "emit limit/corrected tables");
  theory->add_option("--config", config_path, "experiment config file")
      ->required();
  theory->add_option("--out", out_path, "output csv path");

  auto* report = app.add_subcommand("report", "rebuild report.csv from fits");
  report->add_option("--fits", fits_path, "fits.csv from `fit`")->required();
  report->add_option("--out", out_path, "output csv path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sample->parsed()) return run_sample(config_path, out_dir, force);
    if (fit->parsed())
      return run_fit_cmd(samples_path, model_name, out_dir, quantiles);
    if (theory->parsed()) return run_theory(config_path, out_path);
    if (report->parsed()) return run_report(fits_path, out_path);
  } catch (const rmt::NumericalFailure& err) {
    std::cerr << "numerical failure: " << err.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
  return 0;
}
