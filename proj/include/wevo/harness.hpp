#pragma once

#include "wevo/metrics.hpp"
#include "wevo/population.hpp"
#include "wevo/wasserstein.hpp"

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace wevo {
class Objective;
}

namespace wevo::harness {

/// Algorithm ids in table column order.
const std::vector<std::string>& algorithm_ids();
bool is_algorithm(std::string_view id);

/// 64-bit FNV-1a over the bytes of `text`.
std::uint64_t fnv1a64(std::string_view text);

/// base_seed XOR fnv1a64("<algorithm>|<function>|<run>").
std::uint64_t run_seed(std::uint64_t base_seed, std::string_view algorithm, std::string_view function_id, int run);

/// Human-readable form of run_seed, echoed in provenance.json.
inline constexpr std::string_view seed_formula = R"(seed = base_seed XOR fnv1a64("<algorithm>|<function>|<run>"))";

/// WE schedule settings applied to every function. eta0 <= 0 picks
/// we::default_eta for each objective; the horizon always equals T.
struct WeSettings {
  double beta_min = 1.0;
  double beta_max = 100.0;
  we::BetaKind beta_kind = we::BetaKind::geometric;
  double eta0 = 0.0;
  we::EtaKind eta_kind = we::EtaKind::constant;
  we::Boundary boundary = we::Boundary::clamp;
};

we::Options we_options(const Objective& objective, const WeSettings& settings, int generations);

/// One seeded run of any algorithm with default baseline parameters.
RunRecord run_algorithm(std::string_view algorithm, const Objective& objective, const WeSettings& we_settings,
                        const RunOptions& options);

struct ExperimentConfig {
  std::string name = "experiment";
  std::vector<std::string> function_ids;
  std::vector<std::string> algorithm_ids;
  int n = 30;
  int t = 500;
  int runs = 30;
  std::uint64_t base_seed = 42;
  WeSettings we;
  double metric_beta = 1.0;
  /// 0 means std::thread::hardware_concurrency().
  int workers = 0;

  /// Throws ConfigError on empty lists, unknown ids or bad counts.
  void validate() const;
};

/// What survives of one run after aggregation.
struct RunSummary {
  std::string algorithm;
  std::string function_id;
  int run = 0;
  std::uint64_t seed = 0;
  double best_f = 0.0;
  Vector best_x;
  double entropy = 0.0;
  double free_energy = 0.0;
  std::vector<double> diversity;
  std::vector<double> best_f_trace;
  double wall_seconds = 0.0;
};

struct Significance {
  std::string function_id;
  Metric metric = Metric::entropy;
  std::string baseline;
  double statistic = 0.0;
  double p_value = 1.0;
  /// Non-zero paired differences; 0 when the test could not run.
  int n = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  /// Function-major, then algorithm in config order, then run index.
  std::vector<RunSummary> runs;
  /// Entropy and free-energy rows, in catalog order of the functions.
  std::vector<MetricRow> rows;
  /// WE against every other configured algorithm; empty without "we".
  std::vector<Significance> significance;
  std::string started_utc;
  std::string finished_utc;
  int workers_used = 1;

  const RunSummary& at(std::string_view function_id, std::string_view algorithm, int run) const;
};

/// Runs every (function, algorithm, run) triple across `config.workers`
/// threads. A failing run aborts the experiment; the error names the
/// algorithm, function, run and seed and keeps the original error class.
ExperimentResult run_experiment(const ExperimentConfig& config);

enum class TableFormat { csv, json };

/// `std::snprintf("%.6g")`.
std::string format_number(double value);

/// Writes table_benchmarks and table_invariance (plus table_auxiliary when
/// auxiliary functions were run) in every requested format, and
/// significance.csv, into `dir`.
void emit_tables(const ExperimentResult& result, const std::filesystem::path& dir,
                 const std::set<TableFormat>& formats = {TableFormat::csv, TableFormat::json});

/// One row per run: identifiers, seed, best_f, best_x, final metrics.
void emit_runs(const ExperimentResult& result, const std::filesystem::path& dir);

/// Per-function CSV of mean diversity per generation, one column per
/// algorithm.
void emit_diversity(const ExperimentResult& result, const std::filesystem::path& dir);

/// Config echo, seed formula, version and timestamps.
void emit_provenance(const ExperimentResult& result, const std::filesystem::path& path);

/// results/<name>/{tables,figures,runs,provenance.json} under `root`.
/// Returns the experiment directory.
std::filesystem::path write_experiment(const ExperimentResult& result, const std::filesystem::path& root);

/// Population snapshots and first-coordinate histograms at the requested
/// checkpoints of a run recorded with history (checkpoint c is the
/// population after c generations, 0 the initial one), plus
/// boltzmann_reference.csv: e^{-beta f}/Z marginalized onto the first
/// coordinate by 500 x 500 grid quadrature (1D objectives use the grid
/// directly). Throws ArgumentError for a checkpoint beyond T.
void emit_snapshots(const RunRecord& record, const Objective& objective, const std::vector<int>& checkpoints,
                    double beta, const std::filesystem::path& dir, int bins = 50);

/// Boltzmann marginal on the first coordinate: (x, density) pairs on
/// `points` grid nodes; integrates to 1 by the trapezoid rule.
std::vector<std::pair<double, double>> boltzmann_marginal(const Objective& objective, double beta,
                                                          int points = 500);

/// trajectory_<algorithm>.csv: generation, particle, coordinates, for
/// every stored position.
void emit_trajectory(const RunRecord& record, const std::filesystem::path& dir);

/// diversity_<algorithm>.csv for single runs (generation, diversity).
void emit_run_diversity(const RunRecord& record, const std::filesystem::path& dir);

} // namespace wevo::harness
