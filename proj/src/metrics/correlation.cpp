#include "arxivroll/metrics/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace arxivroll::metrics {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw PreconditionError("correlation inputs differ in length (" +
                            std::to_string(x.size()) + " vs " +
                            std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) {
    throw PreconditionError("correlation needs at least 2 observations");
  }
}

// Pairs that are tied within each run of equal values of `v`, which must be
// sorted.
std::int64_t tied_pairs(const std::vector<double>& v) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    std::int64_t t = static_cast<std::int64_t>(j - i);
    total += t * (t - 1) / 2;
    i = j;
  }
  return total;
}

// Sorts v ascending and returns the number of inversions it removed.
std::int64_t merge_count(std::vector<double>& v, std::vector<double>& buf,
                         std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<std::int64_t>(mid - i);
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
  return swaps;
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values,
                                  bool descending) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? values[a] > values[b] : values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    double r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
    i = j;
  }
  return ranks;
}

double mean(std::span<const double> v) {
  if (v.empty()) throw PreconditionError("mean of an empty vector");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double population_std(std::span<const double> v) {
  double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw UndefinedCorrelation("correlation undefined for a constant vector");
  }
  double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  auto rx = average_ranks(x);
  auto ry = average_ranks(y);
  return pearson(rx, ry);
}

double kendall(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x[order[i]];
    ys[i] = y[order[i]];
  }

  std::int64_t n0 = static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1) / 2;
  std::int64_t n1 = tied_pairs(xs);
  // Pairs tied in both x and y.
  std::int64_t n3 = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && xs[j] == xs[i] && ys[j] == ys[i]) ++j;
    std::int64_t t = static_cast<std::int64_t>(j - i);
    n3 += t * (t - 1) / 2;
    i = j;
  }
  std::vector<double> buf(n);
  std::int64_t swaps = merge_count(ys, buf, 0, n);
  std::int64_t n2 = tied_pairs(ys);

  double denom = std::sqrt(static_cast<double>(n0 - n1) *
                           static_cast<double>(n0 - n2));
  if (denom == 0.0) {
    throw UndefinedCorrelation("Kendall tau-b undefined: every pair is tied");
  }
  // concordant - discordant = n0 - n1 - n2 + n3 - 2 * discordant
  double diff = static_cast<double>(n0 - n1 - n2 + n3 - 2 * swaps);
  return std::clamp(diff / denom, -1.0, 1.0);
}

StabilityStats stability(std::span<const double> values) {
  if (values.size() < 2) {
    throw PreconditionError("stability needs at least 2 values, got " +
                            std::to_string(values.size()));
  }
  StabilityStats s;
  s.mean = mean(values);
  s.std = population_std(values);
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

}  // namespace arxivroll::metrics
