#pragma once

#include "wevo/kde.hpp"
#include "wevo/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace wevo {

class Objective;

/// KDE resubstitution entropy of a population (one point per row).
double population_entropy(const Matrix& points, const BandwidthOptions& options = {});

/// Mean objective value of the population.
double potential_energy(const Matrix& points, const Objective& objective);

/// U - S / beta, with the KDE floored at the objective's domain floor
/// unless `options` overrides it.
double free_energy(const Matrix& points, const Objective& objective, double beta);
double free_energy(const Matrix& points, const Objective& objective, double beta,
                   const BandwidthOptions& options);

/// Mean absolute deviation from the per-dimension median, averaged over
/// dimensions.
double diversity(const Matrix& points);

/// Logistic map of each value's z-score within the row (population
/// standard deviation). Rows with sigma < 1e-12 map to 0.5 everywhere.
std::vector<double> sigmoid_normalize(const std::vector<double>& values);

enum class Metric { entropy, free_energy };
std::string to_string(Metric metric);

struct MetricRow {
  std::string function_id;
  Metric metric = Metric::entropy;
  /// Keys are algorithm ids, kept in the experiment's algorithm order by
  /// `algorithms`.
  std::vector<std::string> algorithms;
  std::map<std::string, double> raw;
  std::map<std::string, double> normalized;
  std::map<std::string, std::vector<double>> per_run;
};

/// Builds raw means and the sigmoid-normalized row from per-run values.
MetricRow make_metric_row(std::string function_id, Metric metric,
                          const std::vector<std::string>& algorithms,
                          std::map<std::string, std::vector<double>> per_run);

/// Raised when every paired difference is zero.
class DegenerateSampleError : public ArgumentError {
public:
  using ArgumentError::ArgumentError;
};

struct WilcoxonResult {
  /// min(W+, W-).
  double statistic = 0.0;
  /// Sum of ranks of the positive differences a - b.
  double w_plus = 0.0;
  double p_value = 1.0;
  /// Non-zero differences used.
  int n = 0;
  bool exact = false;
};

/// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences
/// are dropped, ties get average ranks. Uses the exact null distribution
/// (conditional on the tie pattern) for n <= 25 and a tie- and
/// continuity-corrected normal approximation above.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b);

} // namespace wevo
