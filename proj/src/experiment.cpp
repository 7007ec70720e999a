#include "rmt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace rmt {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& key) {
  std::size_t pos = 0;
  const std::string t = trim(s);
  double v;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for '" + key + "': " + s);
  }
  if (pos != t.size())
    throw std::invalid_argument("config: bad number for '" + key + "': " + s);
  return v;
}

std::int64_t parse_int(const std::string& s, const std::string& key) {
  const double v = parse_double(s, key);
  const auto i = static_cast<std::int64_t>(v);
  if (static_cast<double>(i) != v)
    throw std::invalid_argument("config: '" + key + "' must be an integer");
  return i;
}

std::vector<double> parse_double_list(const std::string& s,
                                      const std::string& key) {
  std::vector<double> out;
  for (const auto& tok : split(s, ','))
    if (!trim(tok).empty()) out.push_back(parse_double(tok, key));
  return out;
}

FieldClass class_from_name(const std::string& name) {
  if (name == "real") return FieldClass::kReal;
  if (name == "complex") return FieldClass::kComplex;
  throw std::invalid_argument("config: unknown field class: " + name);
}

std::string class_name(FieldClass cls) {
  return cls == FieldClass::kReal ? "real" : "complex";
}

EnsembleKind kind_from_name(const std::string& name) {
  if (name == "wigner") return EnsembleKind::kWigner;
  if (name == "covariance_factor") return EnsembleKind::kCovarianceFactor;
  throw std::invalid_argument("config: unknown ensemble kind: " + name);
}

std::string kind_name(EnsembleKind kind) {
  return kind == EnsembleKind::kWigner ? "wigner" : "covariance_factor";
}

EnsembleConfig parse_ensemble(const std::string& value) {
  EnsembleConfig e;
  bool have_form = false, have_kappa = false;
  std::istringstream in(value);
  std::string tok;
  while (in >> tok) {
    if (!tok.empty() && tok.back() == ',') tok.pop_back();
    if (tok.empty()) continue;
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: ensemble token needs key=value: " +
                                  tok);
    const std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
    if (k == "kind") e.kind = kind_from_name(v);
    else if (k == "class") e.field_class = class_from_name(v);
    else if (k == "form") { e.form = EntryDistribution::form_from_name(v); have_form = true; }
    else if (k == "kappa4") { e.kappa4 = parse_double(v, "kappa4"); have_kappa = true; }
    else if (k == "t") e.t = parse_double(v, "t");
    else if (k == "points") e.circle_points = static_cast<int>(parse_int(v, "points"));
    else throw std::invalid_argument("config: unknown ensemble key: " + k);
  }
  if (!have_form) e.form = have_kappa ? EntryForm::kThreePoint : EntryForm::kGaussian;
  if (e.t < 0.0) throw std::invalid_argument("config: ensemble t must be >= 0");
  return e;
}

}  // namespace

EntryDistribution EnsembleConfig::make_entry() const {
  switch (form) {
    case EntryForm::kGaussian:
      return EntryDistribution::gaussian(field_class);
    case EntryForm::kRademacher:
      if (field_class != FieldClass::kReal)
        throw std::invalid_argument("rademacher entries are real-class only");
      return EntryDistribution::rademacher();
    case EntryForm::kThreePoint:
      return EntryDistribution::make_with_kurtosis(field_class, kappa4);
    case EntryForm::kUniform:
      if (field_class != FieldClass::kReal)
        throw std::invalid_argument("uniform entries are real-class only");
      return EntryDistribution::uniform();
    case EntryForm::kUnitCircleDiscrete:
      if (field_class != FieldClass::kComplex)
        throw std::invalid_argument(
            "unit_circle_discrete entries are complex-class only");
      return EntryDistribution::unit_circle_discrete(circle_points);
  }
  throw std::logic_error("unreachable entry form");
}

std::string EnsembleConfig::describe() const {
  std::ostringstream out;
  out << "kind=" << kind_name(kind) << " class=" << class_name(field_class)
      << " form=" << make_entry().form_name() << " kappa4=" << kappa4
      << " t=" << t;
  return out.str();
}

void ExperimentConfig::validate() const {
  if (replicates < 100)
    throw std::invalid_argument("config: replicates must be >= 100");
  if (n_list.empty()) throw std::invalid_argument("config: n_list is empty");
  for (int n : n_list)
    if (n < 1 || n > 4096)
      throw std::invalid_argument("config: n_list entries must be in [1, 4096]");
  if (ensembles.empty())
    throw std::invalid_argument("config: no ensemble lines");
  for (const auto& e : ensembles) {
    try {
      e.make_entry();  // feasibility of kappa4 and class/form pairing
    } catch (const std::exception& err) {
      throw std::invalid_argument(std::string("config: ") + err.what());
    }
    const bool wigner_stat = statistic != StatisticKind::kHardEdgeMin;
    if (wigner_stat && e.kind != EnsembleKind::kWigner)
      throw std::invalid_argument(
          "config: bulk statistics need kind=wigner ensembles");
    if (!wigner_stat && e.kind != EnsembleKind::kCovarianceFactor)
      throw std::invalid_argument(
          "config: hard_edge_min needs kind=covariance_factor ensembles");
  }
  if (grid_quantiles.empty())
    throw std::invalid_argument("config: grid_quantiles is empty");
  for (double q : grid_quantiles)
    if (q <= 0.0 || q >= 1.0)
      throw std::invalid_argument("config: grid quantiles must lie in (0, 1)");
  if (!std::is_sorted(grid_quantiles.begin(), grid_quantiles.end()))
    throw std::invalid_argument("config: grid quantiles must be ascending");
  if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
  if (std::abs(bulk_center) >= 2.0)
    throw std::invalid_argument("config: bulk_center must lie in (-2, 2)");
  if (bulk_width_spacings <= 0.0 &&
      statistic != StatisticKind::kHardEdgeMin)
    throw std::invalid_argument("config: bulk_width_spacings must be > 0");
  if (model != "null" && model != "paper")
    throw std::invalid_argument("config: model must be 'null' or 'paper'");
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::optional<double> diag_variance;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "master_seed") {
      cfg.master_seed = static_cast<std::uint64_t>(
          std::stoull(value));
    } else if (key == "replicates") {
      cfg.replicates = parse_int(value, key);
    } else if (key == "n_list") {
      cfg.n_list.clear();
      for (double v : parse_double_list(value, key))
        cfg.n_list.push_back(static_cast<int>(v));
    } else if (key == "statistic") {
      cfg.statistic = statistic_from_name(value);
    } else if (key == "grid_quantiles") {
      cfg.grid_quantiles = parse_double_list(value, key);
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "threads") {
      cfg.threads = value == "auto" ? 0
                                    : static_cast<int>(parse_int(value, key));
    } else if (key == "bulk_center") {
      cfg.bulk_center = parse_double(value, key);
    } else if (key == "bulk_width_spacings") {
      cfg.bulk_width_spacings = parse_double(value, key);
    } else if (key == "model") {
      cfg.model = value;
    } else if (key == "theory_x") {
      cfg.theory_x = parse_double_list(value, key);
    } else if (key == "diagonal_variance") {
      diag_variance = parse_double(value, key);
    } else if (key == "ensemble") {
      cfg.ensembles.push_back(parse_ensemble(value));
    } else {
      throw std::invalid_argument("config: unknown key '" + key +
                                  "' (unknown keys are hard errors)");
    }
  }
  if (diag_variance)
    for (auto& e : cfg.ensembles) e.diagonal_variance = *diag_variance;
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string statistic_name(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::kHardEdgeMin: return "hard_edge_min";
    case StatisticKind::kBulkCount: return "bulk_count";
    case StatisticKind::kBulkGap: return "bulk_gap";
  }
  throw std::logic_error("unreachable statistic kind");
}

StatisticKind statistic_from_name(const std::string& name) {
  if (name == "hard_edge_min") return StatisticKind::kHardEdgeMin;
  if (name == "bulk_count") return StatisticKind::kBulkCount;
  if (name == "bulk_gap") return StatisticKind::kBulkGap;
  throw std::invalid_argument("unknown statistic: " + name);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double replicate_statistic(const ExperimentConfig& config,
                           std::size_t ensemble_index, int n,
                           std::int64_t replicate_index) {
  const auto& ec = config.ensembles.at(ensemble_index);
  const std::uint64_t seed =
      derive_seed(config.master_seed, ensemble_index,
                  static_cast<std::uint64_t>(n),
                  static_cast<std::uint64_t>(replicate_index));
  Rng rng(seed);

  EnsembleSpec spec;
  spec.kind = ec.kind;
  spec.n = n;
  spec.m = n;
  spec.entry = ec.make_entry();
  spec.diagonal_variance = ec.diagonal_variance;

  try {
    Matrix a = ec.kind == EnsembleKind::kWigner
                   ? sample_wigner(spec, rng)
                   : sample_covariance_factor(spec, rng);
    if (ec.t > 0.0)
      a = gaussian_divisible(a, ec.t, ec.kind, ec.field_class, rng,
                             ec.diagonal_variance);

    switch (config.statistic) {
      case StatisticKind::kHardEdgeMin:
        return rescale_hard_edge(smallest_singular_value(a), n);
      case StatisticKind::kBulkCount:
        return bulk_counting_statistic(hermitian_eigenvalues(a),
                                       config.bulk_center,
                                       config.bulk_width_spacings, n);
      case StatisticKind::kBulkGap:
        return bulk_counting_statistic(hermitian_eigenvalues(a),
                                       config.bulk_center,
                                       config.bulk_width_spacings, n) == 0
                   ? 1.0
                   : 0.0;
    }
    throw std::logic_error("unreachable statistic kind");
  } catch (const NumericalFailure&) {
    throw;
  } catch (const std::runtime_error& err) {
    throw NumericalFailure(
        std::string("replicate failed (seed ") + std::to_string(seed) +
            "): " + err.what(),
        seed);
  }
}

std::vector<SampleRow> run_sampling(const ExperimentConfig& config) {
  config.validate();

  std::vector<int> ns = config.n_list;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  struct Task {
    std::size_t ensemble;
    int n;
    std::int64_t rep_begin, rep_end;
    std::size_t row_offset;
  };

  const std::int64_t chunk = 64;
  std::vector<Task> tasks;
  std::size_t total_rows = 0;
  for (std::size_t e = 0; e < config.ensembles.size(); ++e) {
    for (int n : ns) {
      for (std::int64_t r = 0; r < config.replicates; r += chunk) {
        tasks.push_back({e, n, r, std::min(r + chunk, config.replicates),
                         total_rows + static_cast<std::size_t>(r)});
      }
      total_rows += static_cast<std::size_t>(config.replicates);
    }
  }

  std::vector<SampleRow> rows(total_rows);

  int threads = config.threads;
  if (const char* env = std::getenv("RMT_THREADS"); env && *env)
    threads = std::atoi(env);
  if (threads <= 0)
    threads = static_cast<int>(
        std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, static_cast<int>(tasks.size()));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure_message;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size() || failed.load()) return;
      const Task& t = tasks[i];
      try {
        for (std::int64_t r = t.rep_begin; r < t.rep_end; ++r) {
          SampleRow& row =
              rows[t.row_offset + static_cast<std::size_t>(r - t.rep_begin)];
          row.ensemble_id = static_cast<int>(t.ensemble);
          row.n = t.n;
          row.replicate = r;
          row.seed = derive_seed(config.master_seed, t.ensemble,
                                 static_cast<std::uint64_t>(t.n),
                                 static_cast<std::uint64_t>(r));
          row.kind = config.statistic;
          row.value = replicate_statistic(config, t.ensemble, t.n, r);
        }
      } catch (const std::exception& err) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failed.exchange(true)) failure_message = err.what();
        return;
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (failed.load()) throw std::runtime_error(failure_message);
  return rows;
}

namespace {

void write_ensembles_sidecar(const ExperimentConfig& config,
                             const std::filesystem::path& dir) {
  std::ofstream out(dir / "ensembles.csv");
  out << "ensemble_id,kind,class,form,kappa4,t,kappa4_effective,"
         "diagonal_variance,statistic,bulk_center,bulk_width_spacings\n";
  for (std::size_t e = 0; e < config.ensembles.size(); ++e) {
    const auto& ec = config.ensembles[e];
    out << e << ',' << kind_name(ec.kind) << ',' << class_name(ec.field_class)
        << ',' << ec.make_entry().form_name() << ','
        << format_double(ec.kappa4) << ',' << format_double(ec.t) << ','
        << format_double(ec.effective_kappa4()) << ','
        << format_double(ec.diagonal_variance) << ','
        << statistic_name(config.statistic) << ','
        << format_double(config.bulk_center) << ','
        << format_double(config.bulk_width_spacings) << '\n';
  }
}

}  // namespace

std::filesystem::path write_samples(const ExperimentConfig& config,
                                    bool force) {
  std::filesystem::create_directories(config.output_dir);
  const auto path = config.output_dir / "samples.csv";
  if (std::filesystem::exists(path) && !force)
    throw std::runtime_error(
        path.string() +
        " already exists; refusing to mix runs (pass --force to overwrite)");

  const auto rows = run_sampling(config);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "ensemble_id,n,replicate,seed,statistic_kind,value\n";
  for (const auto& row : rows) {
    out << row.ensemble_id << ',' << row.n << ',' << row.replicate << ','
        << row.seed << ',' << statistic_name(row.kind) << ','
        << format_double(row.value) << '\n';
  }
  write_ensembles_sidecar(config, config.output_dir);
  return path;
}

namespace {

struct SidecarRow {
  double kappa4_eff = 0.0;
  std::string statistic;
  double bulk_width = 1.0;
};

std::map<int, SidecarRow> read_sidecar(const std::filesystem::path& dir) {
  const auto path = dir / "ensembles.csv";
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("missing metadata sidecar " + path.string() +
                             " (written by the sample step)");
  std::map<int, SidecarRow> out;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() < 11)
      throw std::runtime_error("malformed ensembles.csv line: " + line);
    SidecarRow row;
    row.kappa4_eff = std::stod(f[6]);
    row.statistic = f[8];
    row.bulk_width = std::stod(f[10]);
    out[std::stoi(f[0])] = row;
  }
  return out;
}

}  // namespace

FitOutput run_fit(const std::filesystem::path& samples_csv,
                  const CorrectionModel& model,
                  const std::vector<double>& grid_quantiles) {
  std::ifstream in(samples_csv);
  if (!in)
    throw std::runtime_error("cannot open " + samples_csv.string());
  const auto sidecar = read_sidecar(samples_csv.parent_path());

  // ensemble_id -> n -> values
  std::map<int, std::map<int, std::vector<double>>> data;
  std::string line;
  std::getline(in, line);  // header
  std::string statistic;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 6)
      throw std::runtime_error("malformed samples.csv line: " + line);
    data[std::stoi(f[0])][std::stoi(f[1])].push_back(std::stod(f[5]));
    statistic = f[4];
  }
  if (data.empty()) throw std::runtime_error("samples.csv has no rows");

  FitOutput out;

  if (statistic == "hard_edge_min") {
    // Common grid: quantiles of everything pooled, so every ensemble and
    // every N is compared at the same x values.
    std::vector<double> pooled;
    for (const auto& [e, by_n] : data)
      for (const auto& [n, v] : by_n)
        pooled.insert(pooled.end(), v.begin(), v.end());
    EmpiricalCdf pooled_cdf(std::move(pooled));
    // Clip to the common support: a pooled quantile can fall outside a
    // single (ensemble, N) cell's sample range (e.g. an atom at 0 from
    // sparse entry laws at tiny N), and every cell must be evaluable at
    // every grid point.
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& [e, by_n] : data)
      for (const auto& [n, v] : by_n) {
        lo = std::max(lo, *std::min_element(v.begin(), v.end()));
        hi = std::min(hi, *std::max_element(v.begin(), v.end()));
      }
    for (double q : grid_quantiles) {
      const double x = pooled_cdf.quantile(q);
      if (x >= lo && x <= hi &&
          (out.x_grid.empty() || x > out.x_grid.back()))
        out.x_grid.push_back(x);
    }
    if (out.x_grid.empty())
      throw std::runtime_error(
          "fit: no grid quantile lies inside the common sample range; "
          "increase replicates or adjust quantiles");

    for (const auto& [e, by_n] : data) {
      if (by_n.size() < 3)
        throw std::runtime_error(
            "ensemble " + std::to_string(e) +
            ": need >= 3 distinct N for a 1/N fit (missing axis: N)");
      std::map<int, std::vector<Deviation>> devs;
      for (const auto& [n, values] : by_n) {
        EmpiricalCdf cdf{values};
        devs[n] = deviation_curve(cdf, model.limit_cdf, out.x_grid);
      }
      out.fits.emplace(e, fit_one_over_n(devs));
      out.kappa4_eff[e] = sidecar.at(e).kappa4_eff;
    }
  } else {
    // Bulk statistics reduce to one grid point: the interval width s.
    // bulk_gap compares the empty-interval frequency against the sine-kernel
    // gap probability; bulk_count compares the mean count against the exact
    // determinantal first moment (= s).
    for (const auto& [e, by_n] : data) {
      if (by_n.size() < 3)
        throw std::runtime_error(
            "ensemble " + std::to_string(e) +
            ": need >= 3 distinct N for a 1/N fit (missing axis: N)");
      const double s = sidecar.at(e).bulk_width;
      if (out.x_grid.empty()) out.x_grid.push_back(s);
      const double ref = statistic == "bulk_gap" ? sine_gap_probability(s) : s;
      std::map<int, std::vector<Deviation>> devs;
      for (const auto& [n, values] : by_n) {
        const double r = static_cast<double>(values.size());
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= r;
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        var /= std::max(1.0, r - 1.0);
        const double se = std::sqrt(std::max(var, 0.25 / r) / r);
        devs[n] = {{s, mean - ref, se}};
      }
      out.fits.emplace(e, fit_one_over_n(devs));
      out.kappa4_eff[e] = sidecar.at(e).kappa4_eff;
    }
  }

  // Kurtosis regression needs >= 3 distinct effective kappa4 values.
  std::set<double> distinct;
  for (const auto& [e, k] : out.kappa4_eff) distinct.insert(k);
  if (distinct.size() >= 3) {
    std::map<double, CorrectionFit> by_kappa;
    for (const auto& [e, fit] : out.fits) by_kappa[out.kappa4_eff[e]] = fit;
    for (double x : out.x_grid)
      out.report.push_back(kurtosis_regression(by_kappa, x));
    out.have_report = true;
  }
  return out;
}

void write_fit_outputs(const FitOutput& out,
                       const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream f(out_dir / "fits.csv");
    f << "ensemble_id,x,c_hat,c_se,r2\n";
    for (const auto& [e, fit] : out.fits)
      for (std::size_t j = 0; j < fit.x_grid.size(); ++j)
        f << e << ',' << format_double(fit.x_grid[j]) << ','
          << format_double(fit.c_hat[j]) << ',' << format_double(fit.c_se[j])
          << ',' << format_double(fit.r_squared[j]) << '\n';
  }
  if (out.have_report) {
    std::ofstream f(out_dir / "report.csv");
    f << "x,kurtosis_slope,kurtosis_intercept,r2\n";
    for (std::size_t j = 0; j < out.x_grid.size(); ++j)
      f << format_double(out.x_grid[j]) << ','
        << format_double(out.report[j].slope) << ','
        << format_double(out.report[j].intercept) << ','
        << format_double(out.report[j].r_squared) << '\n';
  }
}

void write_theory_table(const ExperimentConfig& config,
                        const std::filesystem::path& out_path) {
  const bool hard_edge = config.statistic == StatisticKind::kHardEdgeMin;
  const CorrectionModel model =
      hard_edge ? (config.model == "paper" ? paper_hard_edge_model()
                                           : null_hard_edge_model())
                : null_bulk_model();

  std::vector<double> grid = config.theory_x;
  if (grid.empty()) {
    const double lo = hard_edge ? 0.0 : 0.1;
    for (double x = lo; x <= 5.0 + 1e-12; x += 0.1) grid.push_back(x);
  }

  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot write " + out_path.string());
  f << "x,limit";
  for (std::size_t e = 0; e < config.ensembles.size(); ++e)
    for (int n : config.n_list)
      f << ",corrected_e" << e << "_n" << n;
  f << '\n';
  for (double x : grid) {
    f << format_double(x) << ',' << format_double(model.limit_cdf(x));
    for (const auto& ec : config.ensembles)
      for (int n : config.n_list) {
        const auto cv =
            hard_edge
                ? hard_edge_corrected_cdf(x, n, ec.effective_kappa4(), model)
                : bulk_corrected_statistic(x, n, ec.effective_kappa4(), model);
        f << ',' << format_double(cv.value);
      }
    f << '\n';
  }
}

void rebuild_report(const std::filesystem::path& fits_csv,
                    const std::filesystem::path& out_path) {
  std::ifstream in(fits_csv);
  if (!in) throw std::runtime_error("cannot open " + fits_csv.string());
  const auto sidecar = read_sidecar(fits_csv.parent_path());

  std::map<int, CorrectionFit> fits;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 5)
      throw std::runtime_error("malformed fits.csv line: " + line);
    auto& fit = fits[std::stoi(f[0])];
    fit.x_grid.push_back(std::stod(f[1]));
    fit.c_hat.push_back(std::stod(f[2]));
    fit.c_se.push_back(std::stod(f[3]));
    fit.r_squared.push_back(std::stod(f[4]));
  }
  if (fits.empty()) throw std::runtime_error("fits.csv has no rows");

  std::map<double, CorrectionFit> by_kappa;
  for (const auto& [e, fit] : fits) by_kappa[sidecar.at(e).kappa4_eff] = fit;
  if (by_kappa.size() < 3)
    throw std::runtime_error(
        "need >= 3 distinct kappa4 values across ensembles "
        "(missing axis: kappa4)");

  const auto& grid = fits.begin()->second.x_grid;
  std::ofstream out(out_path);
  out << "x,kurtosis_slope,kurtosis_intercept,r2\n";
  for (double x : grid) {
    const auto reg = kurtosis_regression(by_kappa, x);
    out << format_double(x) << ',' << format_double(reg.slope) << ','
        << format_double(reg.intercept) << ',' << format_double(reg.r_squared)
        << '\n';
  }
}

}  // namespace rmt
