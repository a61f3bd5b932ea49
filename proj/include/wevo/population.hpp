#pragma once

#include "wevo/kde.hpp"
#include "wevo/types.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace wevo {

class Objective;

/// N particles (one per row) with their cached objective values.
struct Population {
  Matrix positions;
  Vector fitness;
  int generation = 0;

  int size() const { return static_cast<int>(positions.rows()); }
  int dim() const { return static_cast<int>(positions.cols()); }
  Vector row(int i) const { return positions.row(i).transpose(); }
};

/// Evaluates every row; throws NumericError on a non-finite value.
Population evaluate_population(Matrix positions, const Objective& objective, int generation = 0);

/// n points drawn uniformly from the objective's box.
Matrix uniform_positions(const Objective& objective, int n, Rng& rng);

/// Per-generation traces; every vector has one entry per generation.
struct Traces {
  std::vector<double> best_f;
  std::vector<double> mean_f;
  std::vector<double> entropy;
  std::vector<double> free_energy;
  std::vector<double> diversity;
};

struct RunRecord {
  std::string algorithm;
  std::string function_id;
  Vector best_x;
  double best_f = 0.0;
  Traces traces;
  Population final_population;
  std::uint64_t seed = 0;
  std::chrono::duration<double> wall_time{0.0};
  /// Positions before the first generation and after each one (T + 1
  /// entries; CMA-ES has no initial population and stores T); only filled
  /// when history recording is requested.
  std::vector<Matrix> history;
};

/// Options shared by every optimizer's run().
struct RunOptions {
  int n = 30;
  int generations = 500;
  std::uint64_t seed = 42;
  /// Inverse temperature used for the free-energy trace.
  double metric_beta = 1.0;
  bool record_history = false;
};

/// Tracks best-so-far and appends one trace entry per generation.
class RunRecorder {
public:
  RunRecorder(std::string algorithm, const Objective& objective, const RunOptions& options);

  /// Updates best-so-far without adding a trace entry (initial population).
  void observe(const Population& pop);
  /// Updates best-so-far and appends the generation's metrics. Entropy
  /// reuses `model` when it was fitted with the metric bandwidth options.
  void record(const Population& pop, const KdeModel* model = nullptr);
  RunRecord finish(Population final_population);

  const BandwidthOptions& metric_bandwidth() const { return metric_bandwidth_; }

private:
  void update_best(const Population& pop);

  const Objective& objective_;
  RunOptions options_;
  BandwidthOptions metric_bandwidth_;
  RunRecord record_;
  bool has_best_ = false;
  std::chrono::steady_clock::time_point start_;
};

bool operator==(const BandwidthOptions& a, const BandwidthOptions& b);

void check_run_options(const RunOptions& options, int min_n = 1);

} // namespace wevo
