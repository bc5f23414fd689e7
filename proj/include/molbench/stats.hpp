//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_STATS_HPP
#define MOLBENCH_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "molbench/error.hpp"

namespace molbench {

inline double mean_of(const std::vector<double> &values) {
  double acc = 0;
  for (double v : values)
    acc += v;
  return acc / double(values.size());
}

inline double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1)
    return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

/// Population standard deviation; the small-k convention used for the
/// fold-based +- intervals.
inline double population_std(const std::vector<double> &values) {
  const double m = mean_of(values);
  double acc = 0;
  for (double v : values)
    acc += (v - m) * (v - m);
  return std::sqrt(acc / double(values.size()));
}

enum class FoldReducer { Mean, Median };

inline std::string fold_reducer_name(FoldReducer r) {
  return r == FoldReducer::Mean ? "mean" : "median";
}

/// A metric reduced within contiguous equal-sized folds and aggregated as
/// mean +- population std across folds.
struct FoldedMetric {
  std::string name;
  std::string unit;
  std::string reducer;
  std::size_t value_count = 0;
  std::size_t fold_size = 0; // nominal; last fold may be short if configured
  std::vector<double> per_fold;
  double mean = 0.0;
  double stddev = 0.0;
};

/// Fold assignment is a pure function of input order (contiguous blocks);
/// shuffling, if wanted, is the caller's job and its seed belongs in the
/// report metadata.
inline FoldedMetric fold_metric(const std::string &name,
                                const std::string &unit,
                                const std::vector<double> &values,
                                std::size_t k, FoldReducer reducer,
                                bool allow_short_final = false) {
  if (values.empty())
    throw ValidationError("fold_metric '" + name + "': empty input");
  if (k < 1 || k > values.size())
    throw ValidationError("fold_metric '" + name + "': fold count " +
                          std::to_string(k) + " invalid for " +
                          std::to_string(values.size()) + " values");
  if (values.size() % k != 0 && !allow_short_final)
    throw ValidationError("fold_metric '" + name + "': " +
                          std::to_string(values.size()) +
                          " values not divisible into " + std::to_string(k) +
                          " folds (short final fold not configured)");

  FoldedMetric metric;
  metric.name = name;
  metric.unit = unit;
  metric.reducer = fold_reducer_name(reducer);
  metric.value_count = values.size();
  metric.fold_size = (values.size() + k - 1) / k;

  for (std::size_t start = 0; start < values.size();
       start += metric.fold_size) {
    const std::size_t end =
        std::min(values.size(), start + metric.fold_size);
    std::vector<double> fold(values.begin() + long(start),
                             values.begin() + long(end));
    metric.per_fold.push_back(reducer == FoldReducer::Mean
                                  ? mean_of(fold)
                                  : median_of(fold));
  }
  metric.mean = mean_of(metric.per_fold);
  metric.stddev = population_std(metric.per_fold);
  return metric;
}

/// Fold aggregation for pooled ratios: each molecule contributes a
/// (sum, count) pair and a fold's value is sum-of-sums / sum-of-counts.
/// Used by the pooled geometry deviations, where molecules carry different
/// numbers of primitives.
inline FoldedMetric pooled_fold_metric(const std::string &name,
                                       const std::string &unit,
                                       const std::vector<double> &sums,
                                       const std::vector<double> &counts,
                                       std::size_t k,
                                       bool allow_short_final = false) {
  if (sums.size() != counts.size())
    throw ValidationError("pooled_fold_metric '" + name +
                          "': sums/counts length mismatch");
  if (sums.empty())
    throw ValidationError("pooled_fold_metric '" + name + "': empty input");
  if (k < 1 || k > sums.size())
    throw ValidationError("pooled_fold_metric '" + name + "': fold count " +
                          std::to_string(k) + " invalid for " +
                          std::to_string(sums.size()) + " values");
  if (sums.size() % k != 0 && !allow_short_final)
    throw ValidationError("pooled_fold_metric '" + name + "': " +
                          std::to_string(sums.size()) +
                          " values not divisible into " + std::to_string(k) +
                          " folds (short final fold not configured)");

  FoldedMetric metric;
  metric.name = name;
  metric.unit = unit;
  metric.reducer = "pooled-mean";
  metric.value_count = sums.size();
  metric.fold_size = (sums.size() + k - 1) / k;

  for (std::size_t start = 0; start < sums.size();
       start += metric.fold_size) {
    const std::size_t end = std::min(sums.size(), start + metric.fold_size);
    double sum = 0, count = 0;
    for (std::size_t i = start; i < end; ++i) {
      sum += sums[i];
      count += counts[i];
    }
    if (count <= 0)
      throw ValidationError("pooled_fold_metric '" + name + "': fold " +
                            std::to_string(metric.per_fold.size() + 1) +
                            " has no primitives");
    metric.per_fold.push_back(sum / count);
  }
  metric.mean = mean_of(metric.per_fold);
  metric.stddev = population_std(metric.per_fold);
  return metric;
}

} // namespace molbench

#endif // MOLBENCH_STATS_HPP
