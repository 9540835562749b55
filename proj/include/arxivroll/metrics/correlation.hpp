#pragma once

#include <span>
#include <vector>

#include "arxivroll/common.hpp"

namespace arxivroll::metrics {

// A coefficient has no value for the input (constant vector, all pairs tied).
class UndefinedCorrelation : public DomainError {
 public:
  using DomainError::DomainError;
};

// 1-based ranks with ties sharing the average of their positions. With
// `descending`, the largest value gets rank 1.
std::vector<double> average_ranks(std::span<const double> values,
                                  bool descending = false);

// All three require |x| = |y| >= 2 (PreconditionError otherwise).
double pearson(std::span<const double> x, std::span<const double> y);
// Pearson on average ranks.
double spearman(std::span<const double> x, std::span<const double> y);
// Tau-b, computed in O(n log n) by sorting and counting merge swaps.
double kendall(std::span<const double> x, std::span<const double> y);

struct StabilityStats {
  double mean = 0.0;
  double std = 0.0;  // population
  double min = 0.0;
  double max = 0.0;
};

// Descriptive statistics over per-seed accuracies; needs >= 2 values.
StabilityStats stability(std::span<const double> values);

double mean(std::span<const double> values);
double population_std(std::span<const double> values);

}  // namespace arxivroll::metrics
