#include "wevo/harness.hpp"

#include "wevo/baselines.hpp"
#include "wevo/functions.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace wevo::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view version = "0.1.0";

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void close_output(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

// Value as it appears in the CSV, so JSON round-trips to the same digits.
double rounded(double value) { return std::stod(format_number(value)); }

std::string_view table_name(Suite suite) {
  switch (suite) {
  case Suite::benchmark: return "table_benchmarks";
  case Suite::invariance: return "table_invariance";
  case Suite::auxiliary: break;
  }
  return "table_auxiliary";
}

std::string with_context(const std::exception& e, const std::string& algorithm, const std::string& function_id,
                         int run, std::uint64_t seed) {
  std::ostringstream msg;
  msg << algorithm << " on " << function_id << ", run " << run << " (seed " << seed << "): " << e.what();
  return msg.str();
}

} // namespace

const std::vector<std::string>& algorithm_ids() {
  static const std::vector<std::string> ids{"we", "ga", "de", "cmaes", "jade", "sade"};
  return ids;
}

bool is_algorithm(std::string_view id) {
  const auto& ids = algorithm_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t run_seed(std::uint64_t base_seed, std::string_view algorithm, std::string_view function_id, int run) {
  std::string key;
  key.append(algorithm).append("|").append(function_id).append("|").append(std::to_string(run));
  return base_seed ^ fnv1a64(key);
}

we::Options we_options(const Objective& objective, const WeSettings& settings, int generations) {
  we::Options options = we::default_options(objective, generations);
  options.schedule.beta_min = settings.beta_min;
  options.schedule.beta_max = settings.beta_max;
  options.schedule.beta_kind = settings.beta_kind;
  options.schedule.eta_kind = settings.eta_kind;
  if (settings.eta0 > 0.0) options.schedule.eta0 = settings.eta0;
  options.boundary = settings.boundary;
  options.schedule.validate();
  return options;
}

RunRecord run_algorithm(std::string_view algorithm, const Objective& objective, const WeSettings& we_settings,
                        const RunOptions& options) {
  if (algorithm == "we") return we::run(objective, we_options(objective, we_settings, options.generations), options);
  if (algorithm == "ga") return ga::run(objective, {}, options);
  if (algorithm == "de") return de::run(objective, {}, options);
  if (algorithm == "cmaes") return cmaes::run(objective, {}, options);
  if (algorithm == "jade") return jade::run(objective, {}, options);
  if (algorithm == "sade") return sade::run(objective, {}, options);
  throw ConfigError("unknown algorithm '" + std::string(algorithm) + "'");
}

void ExperimentConfig::validate() const {
  if (function_ids.empty()) throw ConfigError("experiment: no functions selected");
  if (algorithm_ids.empty()) throw ConfigError("experiment: no algorithms selected");
  for (const auto& id : algorithm_ids) {
    if (!is_algorithm(id)) throw ConfigError("experiment: unknown algorithm '" + id + "'");
  }
  for (const auto& id : function_ids) {
    try {
      lookup(id);
    } catch (const NotFoundError&) {
      throw ConfigError("experiment: unknown function '" + id + "'");
    }
  }
  auto has_duplicates = [](std::vector<std::string> ids) {
    std::sort(ids.begin(), ids.end());
    return std::adjacent_find(ids.begin(), ids.end()) != ids.end();
  };
  if (has_duplicates(function_ids)) throw ConfigError("experiment: duplicate function id");
  if (has_duplicates(algorithm_ids)) throw ConfigError("experiment: duplicate algorithm id");
  if (runs < 1) throw ConfigError("experiment: runs must be at least 1");
  if (t < 1) throw ConfigError("experiment: t must be at least 1");
  if (n < 1) throw ConfigError("experiment: n must be at least 1");
  if (workers < 0) throw ConfigError("experiment: workers must be non-negative");
  if (!(metric_beta > 0.0)) throw ConfigError("experiment: metric beta must be positive");
  we::Schedule probe;
  probe.beta_min = we.beta_min;
  probe.beta_max = we.beta_max;
  probe.horizon = t;
  try {
    probe.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("experiment: ") + e.what());
  }
}

const RunSummary& ExperimentResult::at(std::string_view function_id, std::string_view algorithm, int run) const {
  for (const auto& summary : runs) {
    if (summary.function_id == function_id && summary.algorithm == algorithm && summary.run == run) return summary;
  }
  throw NotFoundError("no run " + std::to_string(run) + " of " + std::string(algorithm) + " on " +
                      std::string(function_id));
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();

  // Functions in catalog order so tables follow it whatever the flag order.
  std::vector<std::string> functions;
  for (const auto& objective : list_benchmarks()) {
    if (std::find(config.function_ids.begin(), config.function_ids.end(), objective.id()) !=
        config.function_ids.end())
      functions.push_back(objective.id());
  }
  for (const auto& id : config.function_ids) {
    if (std::find(functions.begin(), functions.end(), id) == functions.end()) functions.push_back(id);
  }

  ExperimentResult result;
  result.config = config;
  result.started_utc = utc_now();

  const std::size_t per_function = config.algorithm_ids.size() * static_cast<std::size_t>(config.runs);
  const std::size_t total = functions.size() * per_function;
  result.runs.resize(total);

  int workers = config.workers > 0 ? config.workers : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(total, 1)));
  result.workers_used = workers;

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::size_t error_slot = total;
  std::exception_ptr error;

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= total) return;
      const std::string& function_id = functions[slot / per_function];
      const std::string& algorithm = config.algorithm_ids[(slot % per_function) / static_cast<std::size_t>(config.runs)];
      const int run = static_cast<int>(slot % static_cast<std::size_t>(config.runs));
      const std::uint64_t seed = run_seed(config.base_seed, algorithm, function_id, run);
      try {
        RunOptions options;
        options.n = config.n;
        options.generations = config.t;
        options.seed = seed;
        options.metric_beta = config.metric_beta;
        const RunRecord record = run_algorithm(algorithm, lookup(function_id), config.we, options);
        RunSummary& summary = result.runs[slot];
        summary.algorithm = algorithm;
        summary.function_id = function_id;
        summary.run = run;
        summary.seed = seed;
        summary.best_f = record.best_f;
        summary.best_x = record.best_x;
        summary.entropy = record.traces.entropy.back();
        summary.free_energy = record.traces.free_energy.back();
        summary.diversity = record.traces.diversity;
        summary.best_f_trace = record.traces.best_f;
        summary.wall_seconds = record.wall_time.count();
      } catch (const std::exception& e) {
        std::exception_ptr wrapped;
        const std::string msg = with_context(e, algorithm, function_id, run, seed);
        if (dynamic_cast<const NumericError*>(&e)) wrapped = std::make_exception_ptr(NumericError(msg));
        else if (dynamic_cast<const ConfigError*>(&e)) wrapped = std::make_exception_ptr(ConfigError(msg));
        else if (dynamic_cast<const ArgumentError*>(&e)) wrapped = std::make_exception_ptr(ArgumentError(msg));
        else wrapped = std::make_exception_ptr(std::runtime_error(msg));
        std::lock_guard lock(error_mutex);
        // Report the earliest failing slot so the message does not depend
        // on scheduling.
        if (slot < error_slot) {
          error_slot = slot;
          error = wrapped;
        }
        failed.store(true);
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  if (error) std::rethrow_exception(error);

  for (std::size_t f = 0; f < functions.size(); ++f) {
    for (Metric metric : {Metric::entropy, Metric::free_energy}) {
      std::map<std::string, std::vector<double>> per_run;
      for (std::size_t a = 0; a < config.algorithm_ids.size(); ++a) {
        auto& values = per_run[config.algorithm_ids[a]];
        for (int r = 0; r < config.runs; ++r) {
          const RunSummary& s = result.runs[f * per_function + a * static_cast<std::size_t>(config.runs) +
                                            static_cast<std::size_t>(r)];
          values.push_back(metric == Metric::entropy ? s.entropy : s.free_energy);
        }
      }
      MetricRow row = make_metric_row(functions[f], metric, config.algorithm_ids, per_run);
      if (per_run.count("we")) {
        for (const auto& baseline : config.algorithm_ids) {
          if (baseline == "we") continue;
          Significance sig;
          sig.function_id = functions[f];
          sig.metric = metric;
          sig.baseline = baseline;
          try {
            const WilcoxonResult w = wilcoxon_signed_rank(per_run.at("we"), per_run.at(baseline));
            sig.statistic = w.statistic;
            sig.p_value = w.p_value;
            sig.n = w.n;
          } catch (const ArgumentError&) {
            // Identical samples or too few non-zero differences: no evidence
            // of a difference.
            sig.p_value = 1.0;
          }
          result.significance.push_back(sig);
        }
      }
      result.rows.push_back(std::move(row));
    }
  }
  result.finished_utc = utc_now();
  return result;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void emit_tables(const ExperimentResult& result, const fs::path& dir, const std::set<TableFormat>& formats) {
  const auto& algorithms = result.config.algorithm_ids;
  if (algorithms.empty()) throw ConfigError("emit_tables: no algorithms");
  fs::create_directories(dir);

  std::map<Suite, std::vector<const MetricRow*>> by_suite{{Suite::benchmark, {}}, {Suite::invariance, {}}};
  for (const auto& row : result.rows) by_suite[lookup(row.function_id).suite()].push_back(&row);

  for (const auto& [suite, rows] : by_suite) {
    const std::string stem(table_name(suite));
    if (formats.count(TableFormat::csv)) {
      const fs::path path = dir / (stem + ".csv");
      auto out = open_output(path);
      out << "function,metric";
      for (const auto& a : algorithms) out << ',' << a;
      for (const auto& a : algorithms) out << ',' << a << "_norm";
      out << '\n';
      for (const MetricRow* row : rows) {
        out << row->function_id << ',' << to_string(row->metric);
        for (const auto& a : algorithms) out << ',' << format_number(row->raw.at(a));
        for (const auto& a : algorithms) out << ',' << format_number(row->normalized.at(a));
        out << '\n';
      }
      close_output(out, path);
    }
    if (formats.count(TableFormat::json)) {
      json doc;
      doc["algorithms"] = algorithms;
      doc["rows"] = json::array();
      for (const MetricRow* row : rows) {
        json entry;
        entry["function"] = row->function_id;
        entry["metric"] = to_string(row->metric);
        for (const auto& a : algorithms) {
          entry["raw"][a] = rounded(row->raw.at(a));
          entry["normalized"][a] = rounded(row->normalized.at(a));
        }
        doc["rows"].push_back(entry);
      }
      const fs::path path = dir / (stem + ".json");
      auto out = open_output(path);
      out << doc.dump(2) << '\n';
      close_output(out, path);
    }
  }

  const fs::path path = dir / "significance.csv";
  auto out = open_output(path);
  out << "function,metric,baseline,statistic,p_value,n\n";
  for (const auto& s : result.significance) {
    out << s.function_id << ',' << to_string(s.metric) << ',' << s.baseline << ',' << format_number(s.statistic)
        << ',' << format_number(s.p_value) << ',' << s.n << '\n';
  }
  close_output(out, path);
}

void emit_runs(const ExperimentResult& result, const fs::path& dir) {
  fs::create_directories(dir);
  const fs::path path = dir / "runs.csv";
  auto out = open_output(path);
  int dim = 0;
  for (const auto& s : result.runs) dim = std::max(dim, static_cast<int>(s.best_x.size()));
  out << "function,algorithm,run,seed,best_f";
  for (int j = 0; j < dim; ++j) out << ",best_x" << j;
  out << ",entropy,free_energy,final_diversity\n";
  for (const auto& s : result.runs) {
    out << s.function_id << ',' << s.algorithm << ',' << s.run << ',' << s.seed << ',' << format_number(s.best_f);
    for (int j = 0; j < dim; ++j) out << ',' << (j < s.best_x.size() ? format_number(s.best_x[j]) : "");
    out << ',' << format_number(s.entropy) << ',' << format_number(s.free_energy) << ','
        << format_number(s.diversity.empty() ? 0.0 : s.diversity.back()) << '\n';
  }
  close_output(out, path);
}

void emit_diversity(const ExperimentResult& result, const fs::path& dir) {
  fs::create_directories(dir);
  const auto& algorithms = result.config.algorithm_ids;
  std::vector<std::string> functions;
  for (const auto& row : result.rows) {
    if (functions.empty() || functions.back() != row.function_id) functions.push_back(row.function_id);
  }
  for (const auto& function_id : functions) {
    std::map<std::string, std::vector<double>> mean;
    for (const auto& s : result.runs) {
      if (s.function_id != function_id) continue;
      auto& m = mean[s.algorithm];
      m.resize(s.diversity.size(), 0.0);
      for (std::size_t t = 0; t < s.diversity.size(); ++t) m[t] += s.diversity[t] / result.config.runs;
    }
    const fs::path path = dir / ("diversity_" + function_id + ".csv");
    auto out = open_output(path);
    out << "generation";
    for (const auto& a : algorithms) out << ',' << a;
    out << '\n';
    for (int t = 0; t < result.config.t; ++t) {
      out << t + 1;
      for (const auto& a : algorithms) out << ',' << format_number(mean[a][static_cast<std::size_t>(t)]);
      out << '\n';
    }
    close_output(out, path);
  }
}

void emit_provenance(const ExperimentResult& result, const fs::path& path) {
  const auto& c = result.config;
  json doc;
  doc["name"] = c.name;
  doc["version"] = version;
  doc["started_utc"] = result.started_utc;
  doc["finished_utc"] = result.finished_utc;
  doc["workers"] = result.workers_used;
  doc["seed_formula"] = seed_formula;
  doc["fnv1a64"] = {{"offset_basis", "0xcbf29ce484222325"}, {"prime", "0x100000001b3"}};
  doc["config"] = {{"functions", c.function_ids},
                   {"algorithms", c.algorithm_ids},
                   {"n", c.n},
                   {"t", c.t},
                   {"runs", c.runs},
                   {"base_seed", c.base_seed},
                   {"metric_beta", c.metric_beta},
                   {"we",
                    {{"beta_min", c.we.beta_min},
                     {"beta_max", c.we.beta_max},
                     {"beta_kind", c.we.beta_kind == we::BetaKind::linear      ? "linear"
                                   : c.we.beta_kind == we::BetaKind::geometric ? "geometric"
                                                                               : "constant"},
                     {"eta0", c.we.eta0 > 0.0 ? json(c.we.eta0) : json("default")},
                     {"eta_kind", c.we.eta_kind == we::EtaKind::constant ? "constant" : "inverse_decay"},
                     {"boundary", c.we.boundary == we::Boundary::clamp ? "clamp" : "reflect"}}}};
  json seeds = json::array();
  for (const auto& s : result.runs) {
    seeds.push_back({{"function", s.function_id}, {"algorithm", s.algorithm}, {"run", s.run}, {"seed", s.seed}});
  }
  doc["seeds"] = seeds;
  fs::create_directories(path.parent_path());
  auto out = open_output(path);
  out << doc.dump(2) << '\n';
  close_output(out, path);
}

fs::path write_experiment(const ExperimentResult& result, const fs::path& root) {
  const fs::path dir = root / result.config.name;
  emit_tables(result, dir / "tables");
  emit_runs(result, dir / "runs");
  emit_diversity(result, dir / "figures");
  emit_provenance(result, dir / "provenance.json");
  return dir;
}

std::vector<std::pair<double, double>> boltzmann_marginal(const Objective& objective, double beta, int points) {
  if (!(beta > 0.0)) throw ArgumentError("boltzmann_marginal: beta must be positive");
  if (points < 2) throw ArgumentError("boltzmann_marginal: need at least 2 grid points");
  const int d = objective.dim();
  if (d > 2) throw ArgumentError("boltzmann_marginal: only 1D and 2D objectives");
  const double lo = objective.lower()[0];
  const double dx = objective.range()[0] / (points - 1);
  std::vector<double> log_w(static_cast<std::size_t>(points));
  // Log of the (unnormalized) marginal at each x node.
  for (int i = 0; i < points; ++i) {
    Vector x(d);
    x[0] = lo + i * dx;
    if (d == 1) {
      log_w[static_cast<std::size_t>(i)] = -beta * objective.value(x);
      continue;
    }
    const double dy = objective.range()[1] / (points - 1);
    std::vector<double> terms(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
      x[1] = objective.lower()[1] + k * dy;
      terms[static_cast<std::size_t>(k)] = -beta * objective.value(x);
    }
    const double peak = *std::max_element(terms.begin(), terms.end());
    double sum = 0.0;
    for (int k = 0; k < points; ++k) {
      const double weight = (k == 0 || k == points - 1) ? 0.5 : 1.0;
      sum += weight * std::exp(terms[static_cast<std::size_t>(k)] - peak);
    }
    log_w[static_cast<std::size_t>(i)] = peak + std::log(sum * dy);
  }
  const double peak = *std::max_element(log_w.begin(), log_w.end());
  double z = 0.0;
  for (int i = 0; i < points; ++i) {
    const double weight = (i == 0 || i == points - 1) ? 0.5 : 1.0;
    z += weight * std::exp(log_w[static_cast<std::size_t>(i)] - peak) * dx;
  }
  std::vector<std::pair<double, double>> curve;
  curve.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    curve.emplace_back(lo + i * dx, std::exp(log_w[static_cast<std::size_t>(i)] - peak) / z);
  return curve;
}

void emit_snapshots(const RunRecord& record, const Objective& objective, const std::vector<int>& checkpoints,
                    double beta, const fs::path& dir, int bins) {
  if (record.history.empty()) throw ArgumentError("emit_snapshots: run was recorded without history");
  if (bins < 1) throw ArgumentError("emit_snapshots: bins must be positive");
  const int last = static_cast<int>(record.history.size()) - 1;
  for (int c : checkpoints) {
    if (c < 0 || c > last) {
      throw ArgumentError("emit_snapshots: checkpoint " + std::to_string(c) + " outside [0, " +
                          std::to_string(last) + "]");
    }
  }
  fs::create_directories(dir);
  const double lo = objective.lower()[0];
  const double width = objective.range()[0] / bins;
  for (int c : checkpoints) {
    const Matrix& positions = record.history[static_cast<std::size_t>(c)];
    const fs::path snap = dir / ("snapshot_" + std::to_string(c) + ".csv");
    auto out = open_output(snap);
    for (Eigen::Index j = 0; j < positions.cols(); ++j) out << (j ? "," : "") << 'x' << j;
    out << ",f\n";
    for (Eigen::Index i = 0; i < positions.rows(); ++i) {
      for (Eigen::Index j = 0; j < positions.cols(); ++j) out << (j ? "," : "") << format_number(positions(i, j));
      out << ',' << format_number(objective.value(positions.row(i).transpose())) << '\n';
    }
    close_output(out, snap);

    std::vector<int> counts(static_cast<std::size_t>(bins), 0);
    for (Eigen::Index i = 0; i < positions.rows(); ++i) {
      const int b = std::clamp(static_cast<int>(std::floor((positions(i, 0) - lo) / width)), 0, bins - 1);
      ++counts[static_cast<std::size_t>(b)];
    }
    const fs::path hist = dir / ("histogram_" + std::to_string(c) + ".csv");
    auto hout = open_output(hist);
    hout << "bin_lo,bin_hi,count,density\n";
    for (int b = 0; b < bins; ++b) {
      const double n = static_cast<double>(positions.rows());
      hout << format_number(lo + b * width) << ',' << format_number(lo + (b + 1) * width) << ','
           << counts[static_cast<std::size_t>(b)] << ','
           << format_number(counts[static_cast<std::size_t>(b)] / (n * width)) << '\n';
    }
    close_output(hout, hist);
  }
  const fs::path ref = dir / "boltzmann_reference.csv";
  auto out = open_output(ref);
  out << "x0,density\n";
  for (const auto& [x, density] : boltzmann_marginal(objective, beta)) {
    out << format_number(x) << ',' << format_number(density) << '\n';
  }
  close_output(out, ref);
}

void emit_trajectory(const RunRecord& record, const fs::path& dir) {
  if (record.history.empty()) throw ArgumentError("emit_trajectory: run was recorded without history");
  fs::create_directories(dir);
  const fs::path path = dir / ("trajectory_" + record.algorithm + ".csv");
  auto out = open_output(path);
  out << "generation,particle";
  for (Eigen::Index j = 0; j < record.history.front().cols(); ++j) out << ",x" << j;
  out << '\n';
  for (std::size_t g = 0; g < record.history.size(); ++g) {
    const Matrix& positions = record.history[g];
    for (Eigen::Index i = 0; i < positions.rows(); ++i) {
      out << g << ',' << i;
      for (Eigen::Index j = 0; j < positions.cols(); ++j) out << ',' << format_number(positions(i, j));
      out << '\n';
    }
  }
  close_output(out, path);
}

void emit_run_diversity(const RunRecord& record, const fs::path& dir) {
  fs::create_directories(dir);
  const fs::path path = dir / ("diversity_" + record.algorithm + ".csv");
  auto out = open_output(path);
  out << "generation,diversity\n";
  for (std::size_t t = 0; t < record.traces.diversity.size(); ++t)
    out << t + 1 << ',' << format_number(record.traces.diversity[t]) << '\n';
  close_output(out, path);
}

} // namespace wevo::harness
