#include "seqgen/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "seqgen/errors.hpp"

namespace seqgen {

MeanSd mean_sd(const std::vector<double>& values) {
  MeanSd out;
  out.n = static_cast<int>(values.size());
  if (values.empty()) return out;
  double sum = 0.0;
  for (const double v : values) sum += v;
  out.mean = sum / out.n;
  if (out.n < 2) return out;
  double ss = 0.0;
  for (const double v : values) ss += (v - out.mean) * (v - out.mean);
  out.sd = std::sqrt(ss / (out.n - 1));
  return out;
}

std::vector<double> normalize_min_max(const std::vector<double>& values) {
  if (values.empty()) throw EmptyInputError("cannot normalize an empty population");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  std::vector<double> out(values.size(), 0.0);
  if (hi == lo) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - lo) / (hi - lo);
  return out;
}

namespace {

// Midranks of the pooled sample; xs first.
std::vector<double> midranks(const std::vector<double>& xs, const std::vector<double>& ys,
                             double* tie_term) {
  const std::size_t total = xs.size() + ys.size();
  std::vector<std::pair<double, std::size_t>> pooled;
  pooled.reserve(total);
  for (std::size_t i = 0; i < xs.size(); ++i) pooled.emplace_back(xs[i], i);
  for (std::size_t i = 0; i < ys.size(); ++i) pooled.emplace_back(ys[i], xs.size() + i);
  std::sort(pooled.begin(), pooled.end());

  std::vector<double> ranks(total, 0.0);
  *tie_term = 0.0;
  std::size_t i = 0;
  while (i < total) {
    std::size_t j = i;
    while (j + 1 < total && pooled[j + 1].first == pooled[i].first) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    const double t = static_cast<double>(j - i + 1);
    *tie_term += t * t * t - t;
    for (std::size_t k = i; k <= j; ++k) ranks[pooled[k].second] = rank;
    i = j + 1;
  }
  return ranks;
}

double rank_sum_of_xs(const std::vector<double>& ranks, std::size_t nx) {
  double w = 0.0;
  for (std::size_t i = 0; i < nx; ++i) w += ranks[i];
  return w;
}

// Counts size-k subsets of ranks[from..] whose sum makes |sum + acc - center|
// at least `threshold`.
void count_extreme(const std::vector<double>& ranks, std::size_t from, std::size_t k, double acc,
                   double center, double threshold, long long* hits) {
  if (k == 0) {
    if (std::abs(acc - center) >= threshold - 1e-9) ++(*hits);
    return;
  }
  if (ranks.size() - from < k) return;
  count_extreme(ranks, from + 1, k - 1, acc + ranks[from], center, threshold, hits);
  count_extreme(ranks, from + 1, k, acc, center, threshold, hits);
}

}  // namespace

RankSumResult wilcoxon_rank_sum_exact(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.empty() || ys.empty()) throw EmptyInputError("rank-sum test needs two non-empty samples");
  const auto nx = xs.size();
  const auto total = nx + ys.size();
  double tie_term = 0.0;
  const std::vector<double> ranks = midranks(xs, ys, &tie_term);

  RankSumResult result;
  result.exact = true;
  result.statistic = rank_sum_of_xs(ranks, nx);
  const double center = static_cast<double>(nx) * (static_cast<double>(total) + 1.0) / 2.0;
  const double threshold = std::abs(result.statistic - center);

  // All C(total, nx) assignments of the pooled midranks to the x sample.
  std::vector<double> sorted_ranks = ranks;
  std::sort(sorted_ranks.begin(), sorted_ranks.end());
  long long hits = 0;
  count_extreme(sorted_ranks, 0, nx, 0.0, center, threshold, &hits);
  long long combos = 1;
  for (std::size_t i = 0; i < nx; ++i)
    combos = combos * static_cast<long long>(total - i) / static_cast<long long>(i + 1);
  result.p_value = static_cast<double>(hits) / static_cast<double>(combos);
  return result;
}

RankSumResult wilcoxon_rank_sum_approx(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.empty() || ys.empty()) throw EmptyInputError("rank-sum test needs two non-empty samples");
  const double nx = static_cast<double>(xs.size());
  const double ny = static_cast<double>(ys.size());
  const double total = nx + ny;
  double tie_term = 0.0;
  const std::vector<double> ranks = midranks(xs, ys, &tie_term);

  RankSumResult result;
  result.exact = false;
  result.statistic = rank_sum_of_xs(ranks, xs.size());
  const double center = nx * (total + 1.0) / 2.0;
  const double variance = nx * ny / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
  if (variance <= 0.0) {  // every pooled value identical
    result.p_value = 1.0;
    return result;
  }
  const double diff = result.statistic - center;
  const double continuity = diff > 0.0 ? -0.5 : (diff < 0.0 ? 0.5 : 0.0);
  const double z = (diff + continuity) / std::sqrt(variance);
  result.p_value = std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
  return result;
}

RankSumResult wilcoxon_rank_sum(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() + ys.size() <= 12) return wilcoxon_rank_sum_exact(xs, ys);
  return wilcoxon_rank_sum_approx(xs, ys);
}

}  // namespace seqgen
