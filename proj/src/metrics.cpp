#include "wevo/metrics.hpp"

#include "wevo/functions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace wevo {

double population_entropy(const Matrix& points, const BandwidthOptions& options) {
  return KdeModel::fit(points, options).entropy(points);
}

double potential_energy(const Matrix& points, const Objective& objective) {
  if (points.rows() < 1) throw ArgumentError("potential_energy: empty population");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) sum += objective.value(points.row(i).transpose());
  return sum / static_cast<double>(points.rows());
}

double free_energy(const Matrix& points, const Objective& objective, double beta) {
  return free_energy(points, objective, beta, bandwidth_options_for(objective));
}

double free_energy(const Matrix& points, const Objective& objective, double beta,
                   const BandwidthOptions& options) {
  if (!(beta > 0.0)) throw ArgumentError("free_energy: beta must be positive");
  return potential_energy(points, objective) - population_entropy(points, options) / beta;
}

namespace {

double median(std::vector<double> v) {
  const std::size_t n = v.size();
  const std::size_t mid = n / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

} // namespace

double diversity(const Matrix& points) {
  if (points.rows() < 1) throw ArgumentError("diversity: empty population");
  double total = 0.0;
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    std::vector<double> column(points.col(j).data(), points.col(j).data() + points.rows());
    const double med = median(column);
    double dev = 0.0;
    for (double v : column) dev += std::abs(v - med);
    total += dev / static_cast<double>(points.rows());
  }
  return total / static_cast<double>(points.cols());
}

std::vector<double> sigmoid_normalize(const std::vector<double>& values) {
  if (values.size() < 2) throw ArgumentError("sigmoid_normalize: need at least two values");
  const double m = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / m;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double sigma = std::sqrt(var / m);
  std::vector<double> out(values.size(), 0.5);
  if (sigma < 1e-12) return out;
  for (std::size_t j = 0; j < values.size(); ++j)
    out[j] = 1.0 / (1.0 + std::exp(-(values[j] - mean) / sigma));
  return out;
}

std::string to_string(Metric metric) {
  return metric == Metric::entropy ? "entropy" : "free_energy";
}

MetricRow make_metric_row(std::string function_id, Metric metric,
                          const std::vector<std::string>& algorithms,
                          std::map<std::string, std::vector<double>> per_run) {
  MetricRow row;
  row.function_id = std::move(function_id);
  row.metric = metric;
  row.algorithms = algorithms;
  std::optional<std::size_t> runs;
  std::vector<double> means;
  for (const auto& alg : algorithms) {
    const auto it = per_run.find(alg);
    if (it == per_run.end() || it->second.empty())
      throw ArgumentError("metric row: missing runs for algorithm " + alg);
    if (runs && *runs != it->second.size())
      throw ArgumentError("metric row: per-run vectors differ in length");
    runs = it->second.size();
    const double mean = std::accumulate(it->second.begin(), it->second.end(), 0.0) /
                        static_cast<double>(it->second.size());
    row.raw[alg] = mean;
    means.push_back(mean);
  }
  if (means.size() >= 2) {
    const auto norm = sigmoid_normalize(means);
    for (std::size_t k = 0; k < algorithms.size(); ++k) row.normalized[algorithms[k]] = norm[k];
  } else {
    for (const auto& alg : algorithms) row.normalized[alg] = 0.5;
  }
  row.per_run = std::move(per_run);
  return row;
}

} // namespace wevo
