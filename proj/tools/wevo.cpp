// wevo: catalog listing, single runs, comparative experiments and figure
// data for Wasserstein Evolution and the baseline optimizers.

#include "wevo/functions.hpp"
#include "wevo/harness.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace wevo;
using nlohmann::json;
namespace fs = std::filesystem;

struct ScheduleFlags {
  double beta_min = 1.0;
  double beta_max = 100.0;
  std::string beta_kind = "geometric";
  double eta = 0.0;
  std::string eta_kind = "constant";
  std::string boundary = "clamp";

  harness::WeSettings settings() const {
    harness::WeSettings s;
    s.beta_min = beta_min;
    s.beta_max = beta_max;
    s.beta_kind = beta_kind == "linear"     ? we::BetaKind::linear
                  : beta_kind == "constant" ? we::BetaKind::constant
                                            : we::BetaKind::geometric;
    s.eta0 = eta;
    s.eta_kind = eta_kind == "inverse_decay" ? we::EtaKind::inverse_decay : we::EtaKind::constant;
    s.boundary = boundary == "reflect" ? we::Boundary::reflect : we::Boundary::clamp;
    return s;
  }
};

void add_schedule_flags(CLI::App* app, ScheduleFlags& flags) {
  app->add_option("--beta-min", flags.beta_min, "WE inverse temperature at t = 0")->capture_default_str();
  app->add_option("--beta-max", flags.beta_max, "WE inverse temperature at t = T-1")->capture_default_str();
  app->add_option("--beta-kind", flags.beta_kind, "beta schedule")
      ->check(CLI::IsMember({"linear", "geometric", "constant"}))
      ->capture_default_str();
  app->add_option("--eta", flags.eta, "WE learning rate; 0 picks the per-function default")->capture_default_str();
  app->add_option("--eta-kind", flags.eta_kind, "learning-rate schedule")
      ->check(CLI::IsMember({"constant", "inverse_decay"}))
      ->capture_default_str();
  app->add_option("--boundary", flags.boundary, "WE box projection")
      ->check(CLI::IsMember({"clamp", "reflect"}))
      ->capture_default_str();
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json vector_json(const Vector& x) { return std::vector<double>(x.data(), x.data() + x.size()); }

int cmd_list(const std::string& format, const std::string& filter, bool auxiliary) {
  std::vector<const Objective*> objectives;
  for (const auto& o : list_benchmarks()) objectives.push_back(&o);
  if (auxiliary) {
    for (const auto& o : auxiliary_objectives()) objectives.push_back(&o);
  }
  std::sort(objectives.begin(), objectives.end(), [](auto* a, auto* b) { return a->id() < b->id(); });
  if (!filter.empty()) {
    std::erase_if(objectives, [&](auto* o) { return o->id().find(filter) == std::string::npos; });
  }

  const std::vector<std::pair<std::string, std::string>> algorithms{
      {"we", "beta geometric 1->100, eta=min(0.005*range, 1/median curvature), Scott KDE"},
      {"ga", "tournament 2, BLX-0.5 rate 0.9, Gaussian mutation 1/d sigma=0.1*range*(1-t/T)^2, 1 elite"},
      {"de", "rand/1/bin F=0.5 CR=0.9"},
      {"cmaes", "lambda=max(4+3ln d, N), mu=lambda/2, sigma0=0.3*range"},
      {"jade", "current-to-pbest/1 p=0.05 c=0.1 archive N"},
      {"sade", "rand/1/bin + current-to-best/2/bin, LP=50"}};

  if (format == "json") {
    json doc;
    doc["functions"] = json::array();
    for (const auto* o : objectives) {
      doc["functions"].push_back({{"id", o->id()},
                                  {"name", o->name()},
                                  {"suite", std::string(to_string(o->suite()))},
                                  {"dim", o->dim()},
                                  {"lower", vector_json(o->lower())},
                                  {"upper", vector_json(o->upper())},
                                  {"known_optima", o->known_optima().size()}});
    }
    doc["algorithms"] = json::array();
    if (filter.empty()) {
      for (const auto& [id, params] : algorithms) doc["algorithms"].push_back({{"id", id}, {"defaults", params}});
    }
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  for (const auto* o : objectives) {
    std::cout << o->id() << "  dim=" << o->dim() << "  bounds=" << format_vector(o->lower()) << ".."
              << format_vector(o->upper()) << "  optima=" << o->known_optima().size() << "  suite=" << to_string(o->suite())
              << '\n';
  }
  if (filter.empty()) {
    for (const auto& [id, params] : algorithms) std::cout << "algorithm " << id << "  " << params << '\n';
  }
  return 0;
}

struct RunFlags {
  std::string function;
  std::string algorithm;
  std::uint64_t seed = 42;
  int n = 30;
  int t = 500;
  double metric_beta = 1.0;
  std::string out;
  std::string checkpoints;
  std::string format = "text";
  ScheduleFlags schedule;
};

std::vector<int> parse_checkpoints(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text)) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ArgumentError("bad checkpoint '" + item + "'");
    }
  }
  return out;
}

int cmd_run(const RunFlags& flags) {
  if (!harness::is_algorithm(flags.algorithm)) throw ConfigError("unknown algorithm '" + flags.algorithm + "'");
  const Objective& objective = lookup(flags.function);
  const std::vector<int> checkpoints = parse_checkpoints(flags.checkpoints);
  if (!checkpoints.empty() && flags.out.empty()) throw ConfigError("--checkpoints needs --out");

  RunOptions options;
  options.n = flags.n;
  options.generations = flags.t;
  options.seed = flags.seed;
  options.metric_beta = flags.metric_beta;
  options.record_history = !checkpoints.empty();
  const auto settings = flags.schedule.settings();
  const RunRecord record = harness::run_algorithm(flags.algorithm, objective, settings, options);

  const double entropy = record.traces.entropy.back();
  const double free_energy = record.traces.free_energy.back();
  json summary{{"function", record.function_id},
               {"algorithm", record.algorithm},
               {"seed", record.seed},
               {"n", flags.n},
               {"t", flags.t},
               {"best_x", vector_json(record.best_x)},
               {"best_f", record.best_f},
               {"entropy", entropy},
               {"free_energy", free_energy}};

  if (flags.format == "json") {
    std::cout << summary.dump() << '\n';
  } else {
    std::cout << record.algorithm << " on " << record.function_id << " seed=" << record.seed
              << " best_x=" << format_vector(record.best_x) << " best_f=" << number(record.best_f)
              << " entropy=" << number(entropy) << " free_energy=" << number(free_energy) << '\n';
  }

  if (!flags.out.empty()) {
    const fs::path dir = flags.out;
    fs::create_directories(dir);
    json doc = summary;
    doc["traces"] = {{"best_f", record.traces.best_f},
                     {"mean_f", record.traces.mean_f},
                     {"entropy", record.traces.entropy},
                     {"free_energy", record.traces.free_energy},
                     {"diversity", record.traces.diversity}};
    json final_population = json::array();
    for (int i = 0; i < record.final_population.size(); ++i)
      final_population.push_back(vector_json(record.final_population.row(i)));
    doc["final_population"] = final_population;
    std::ofstream file(dir / "run.json");
    file << doc.dump(2) << '\n';
    if (!file) throw std::runtime_error("cannot write " + (dir / "run.json").string());
    harness::emit_run_diversity(record, dir);
    if (!checkpoints.empty()) {
      const double beta = flags.algorithm == "we" ? harness::we_options(objective, settings, flags.t).schedule.beta_at(flags.t - 1)
                                                  : settings.beta_max;
      harness::emit_snapshots(record, objective, checkpoints, beta, dir);
      harness::emit_trajectory(record, dir);
    }
  }
  return 0;
}

struct CompareFlags {
  std::string suite = "all";
  std::string functions;
  std::string algorithms = "we,ga,de,cmaes,jade,sade";
  int runs = 30;
  int n = 30;
  int t = 500;
  std::uint64_t seed = 42;
  int workers = 0;
  double metric_beta = 1.0;
  std::string out = "results";
  std::string name;
  std::string format = "text";
  ScheduleFlags schedule;
};

int cmd_compare(const CompareFlags& flags) {
  harness::ExperimentConfig config;
  config.algorithm_ids = split(flags.algorithms);
  if (!flags.functions.empty()) {
    config.function_ids = split(flags.functions);
  } else {
    for (const auto& o : list_benchmarks()) {
      const bool take = flags.suite == "all" || (flags.suite == "benchmarks" && o.suite() == Suite::benchmark) ||
                        (flags.suite == "invariance" && o.suite() == Suite::invariance);
      if (take) config.function_ids.push_back(o.id());
    }
  }
  config.runs = flags.runs;
  config.n = flags.n;
  config.t = flags.t;
  config.base_seed = flags.seed;
  config.workers = flags.workers;
  config.metric_beta = flags.metric_beta;
  config.we = flags.schedule.settings();
  config.name = flags.name.empty() ? flags.suite : flags.name;

  const harness::ExperimentResult result = harness::run_experiment(config);
  const fs::path dir = harness::write_experiment(result, flags.out);

  if (flags.format == "json") {
    json doc;
    doc["output"] = dir.string();
    doc["rows"] = json::array();
    for (const auto& row : result.rows) doc["rows"].push_back({{"function", row.function_id},
                                                               {"metric", to_string(row.metric)},
                                                               {"raw", row.raw},
                                                               {"normalized", row.normalized}});
    doc["significance"] = json::array();
    for (const auto& s : result.significance)
      doc["significance"].push_back(
          {{"function", s.function_id}, {"metric", to_string(s.metric)}, {"baseline", s.baseline}, {"p_value", s.p_value}});
    std::cout << doc.dump(2) << '\n';
    return 0;
  }

  std::printf("%-36s %-12s", "function", "metric");
  for (const auto& a : config.algorithm_ids) std::printf(" %12s", a.c_str());
  std::printf("\n");
  for (const auto& row : result.rows) {
    std::printf("%-36s %-12s", row.function_id.c_str(), to_string(row.metric).c_str());
    for (const auto& a : config.algorithm_ids) std::printf(" %12.6g", row.raw.at(a));
    std::printf("\n");
  }
  if (!result.significance.empty()) {
    std::printf("\nWilcoxon p-values, WE vs baseline\n");
    for (const auto& s : result.significance) {
      std::printf("%-36s %-12s %-6s p=%.3g\n", s.function_id.c_str(), to_string(s.metric).c_str(),
                  s.baseline.c_str(), s.p_value);
    }
  }
  std::printf("\nwrote %s (seed %llu, %d workers)\n", dir.string().c_str(),
              static_cast<unsigned long long>(config.base_seed), result.workers_used);
  return 0;
}

struct ReportFlags {
  std::string function = "himmelblau";
  std::string algorithms = "we,ga,de,cmaes,jade,sade";
  std::string checkpoints = "0,100,499";
  std::uint64_t seed = 42;
  int n = 30;
  int t = 500;
  double beta = 0.0;
  std::string out = "results/report";
  ScheduleFlags schedule;
};

int cmd_report(const ReportFlags& flags) {
  const Objective& objective = lookup(flags.function);
  const auto settings = flags.schedule.settings();
  const auto algorithms = split(flags.algorithms);
  if (algorithms.empty()) throw ConfigError("no algorithms selected");
  const std::vector<int> checkpoints = parse_checkpoints(flags.checkpoints);
  const fs::path dir = fs::path(flags.out) / flags.function;
  for (const auto& algorithm : algorithms) {
    if (!harness::is_algorithm(algorithm)) throw ConfigError("unknown algorithm '" + algorithm + "'");
    RunOptions options;
    options.n = flags.n;
    options.generations = flags.t;
    options.seed = harness::run_seed(flags.seed, algorithm, flags.function, 0);
    options.record_history = true;
    const RunRecord record = harness::run_algorithm(algorithm, objective, settings, options);
    harness::emit_trajectory(record, dir / "trajectories");
    harness::emit_run_diversity(record, dir / "diversity");
    if (algorithm == "we") {
      const double beta = flags.beta > 0.0 ? flags.beta
                                           : harness::we_options(objective, settings, flags.t).schedule.beta_at(flags.t - 1);
      harness::emit_snapshots(record, objective, checkpoints, beta, dir / "snapshots");
    }
    std::cout << algorithm << " best_f=" << number(record.best_f) << '\n';
  }
  std::cout << "wrote " << dir.string() << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein Evolution and baseline optimizers"};
  app.set_config("--config", "", "INI/TOML file with flag values");
  app.require_subcommand(1);
  app.allow_extras(false);

  std::string list_format = "text";
  std::string list_filter;
  auto* list = app.add_subcommand("list", "Show the objective catalog and algorithms");
  list->add_option("--format", list_format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  list->add_option("--filter", list_filter, "keep ids containing this text");
  bool list_auxiliary = false;
  list->add_flag("--auxiliary", list_auxiliary, "also show the sphere and 1D double-well test objectives");

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "One seeded run");
  run->add_option("function", run_flags.function, "objective id")->required();
  run->add_option("algorithm", run_flags.algorithm, "we, ga, de, cmaes, jade or sade")->required();
  run->add_option("--seed", run_flags.seed, "RNG seed")->capture_default_str();
  run->add_option("--n", run_flags.n, "population size")->capture_default_str();
  run->add_option("--t", run_flags.t, "generations")->capture_default_str();
  run->add_option("--metric-beta", run_flags.metric_beta, "beta in the free-energy metric")->capture_default_str();
  run->add_option("--out", run_flags.out, "directory for run.json and figure data");
  run->add_option("--checkpoints", run_flags.checkpoints, "comma-separated generations to snapshot (needs --out)");
  run->add_option("--format", run_flags.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  add_schedule_flags(run, run_flags.schedule);

  CompareFlags compare_flags;
  auto* compare = app.add_subcommand("compare", "Multi-run comparison with tables and Wilcoxon tests");
  compare->add_option("--suite", compare_flags.suite, "benchmarks, invariance or all")
      ->check(CLI::IsMember({"benchmarks", "invariance", "all"}))
      ->capture_default_str();
  compare->add_option("--functions", compare_flags.functions, "comma-separated ids; overrides --suite");
  compare->add_option("--algorithms", compare_flags.algorithms, "comma-separated algorithm ids")->capture_default_str();
  compare->add_option("--runs", compare_flags.runs, "runs per (function, algorithm)")->capture_default_str();
  compare->add_option("--n", compare_flags.n, "population size")->capture_default_str();
  compare->add_option("--t", compare_flags.t, "generations")->capture_default_str();
  compare->add_option("--seed", compare_flags.seed, "base seed")->capture_default_str();
  compare->add_option("--workers", compare_flags.workers, "worker threads; 0 uses every core")->capture_default_str();
  compare->add_option("--metric-beta", compare_flags.metric_beta, "beta in the free-energy metric")->capture_default_str();
  compare->add_option("--out", compare_flags.out, "results root")->capture_default_str();
  compare->add_option("--name", compare_flags.name, "experiment name (default: the suite)");
  compare->add_option("--format", compare_flags.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  add_schedule_flags(compare, compare_flags.schedule);

  ReportFlags report_flags;
  auto* report = app.add_subcommand("report", "Snapshot, trajectory and diversity data for one function");
  report->add_option("function", report_flags.function, "objective id")->capture_default_str();
  report->add_option("--algorithms", report_flags.algorithms, "comma-separated algorithm ids")->capture_default_str();
  report->add_option("--checkpoints", report_flags.checkpoints, "WE generations to snapshot")->capture_default_str();
  report->add_option("--seed", report_flags.seed, "base seed")->capture_default_str();
  report->add_option("--n", report_flags.n, "population size")->capture_default_str();
  report->add_option("--t", report_flags.t, "generations")->capture_default_str();
  report->add_option("--beta", report_flags.beta, "Boltzmann reference beta; 0 uses WE's final beta")
      ->capture_default_str();
  report->add_option("--out", report_flags.out, "output root")->capture_default_str();
  add_schedule_flags(report, report_flags.schedule);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*list) return cmd_list(list_format, list_filter, list_auxiliary);
    if (*run) return cmd_run(run_flags);
    if (*compare) return cmd_compare(compare_flags);
    if (*report) return cmd_report(report_flags);
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NotFoundError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
