#pragma once

#include <vector>

namespace seqgen {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (n-1); 0 for n < 2
  int n = 0;
};
MeanSd mean_sd(const std::vector<double>& values);

// Min-max normalization over the supplied population; a constant
// population maps to all zeros.
std::vector<double> normalize_min_max(const std::vector<double>& values);

struct RankSumResult {
  double statistic = 0.0;  // rank sum of xs, midranks for ties
  double p_value = 1.0;    // two-sided
  bool exact = false;      // enumeration (small samples) vs normal approximation
};

// Wilcoxon rank-sum test. Exact enumeration of all rank assignments when
// |xs| + |ys| <= 12; otherwise the normal approximation with midrank tie
// correction and continuity correction.
RankSumResult wilcoxon_rank_sum(const std::vector<double>& xs, const std::vector<double>& ys);

// The two computation routes, exposed so tests can cross-check them on
// the same input.
RankSumResult wilcoxon_rank_sum_exact(const std::vector<double>& xs, const std::vector<double>& ys);
RankSumResult wilcoxon_rank_sum_approx(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace seqgen
