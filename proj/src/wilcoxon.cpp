#include "wevo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wevo {

namespace {

constexpr int exact_limit = 25;

/// Average ranks of |d| (1-based), plus the tie correction sum(t^3 - t).
std::vector<double> average_ranks(const std::vector<double>& abs_diff, double& tie_term) {
  const std::size_t n = abs_diff.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return abs_diff[a] < abs_diff[b]; });
  std::vector<double> ranks(n);
  tie_term = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && abs_diff[order[j + 1]] == abs_diff[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  return ranks;
}

} // namespace

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ArgumentError("wilcoxon: samples must be paired (equal length)");
  std::vector<double> diff;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (!std::isfinite(d)) throw ArgumentError("wilcoxon: non-finite difference");
    if (d != 0.0) diff.push_back(d);
  }
  if (diff.empty()) throw DegenerateSampleError("wilcoxon: all paired differences are zero");
  if (diff.size() < 5) throw ArgumentError("wilcoxon: need at least 5 non-zero differences");

  const int n = static_cast<int>(diff.size());
  std::vector<double> abs_diff(diff.size());
  std::transform(diff.begin(), diff.end(), abs_diff.begin(), [](double d) { return std::abs(d); });
  double tie_term = 0.0;
  const auto ranks = average_ranks(abs_diff, tie_term);

  WilcoxonResult result;
  result.n = n;
  for (std::size_t i = 0; i < diff.size(); ++i)
    if (diff[i] > 0.0) result.w_plus += ranks[i];
  const double total = 0.5 * n * (n + 1.0);
  result.statistic = std::min(result.w_plus, total - result.w_plus);

  if (n <= exact_limit) {
    // Ranks are multiples of 1/2, so doubled ranks are integers.
    std::vector<int> doubled(ranks.size());
    std::transform(ranks.begin(), ranks.end(), doubled.begin(),
                   [](double r) { return static_cast<int>(std::lround(2.0 * r)); });
    const int max_sum = std::accumulate(doubled.begin(), doubled.end(), 0);
    std::vector<double> count(static_cast<std::size_t>(max_sum) + 1, 0.0);
    count[0] = 1.0;
    int reach = 0;
    for (int r : doubled) {
      for (int s = reach; s >= 0; --s) count[static_cast<std::size_t>(s + r)] += count[static_cast<std::size_t>(s)];
      reach += r;
    }
    const int observed = static_cast<int>(std::lround(2.0 * result.w_plus));
    const double all = std::ldexp(1.0, n);
    double lower = 0.0, upper = 0.0;
    for (int s = 0; s <= max_sum; ++s) {
      if (s <= observed) lower += count[static_cast<std::size_t>(s)];
      if (s >= observed) upper += count[static_cast<std::size_t>(s)];
    }
    result.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / all);
    result.exact = true;
  } else {
    const double mean = total / 2.0;
    const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    const double dev = std::max(0.0, std::abs(result.w_plus - mean) - 0.5);
    const double z = var > 0.0 ? dev / std::sqrt(var) : 0.0;
    result.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  }
  return result;
}

} // namespace wevo
