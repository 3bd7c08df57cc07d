#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "homax/space.hpp"

namespace homax::detail {

/// Points sorted by distance from one center.  Every realizable ball around
/// the center is a prefix of `order` ending at a tie-group boundary; the
/// first group is always the singleton {center}.
struct CenterOrder {
  std::vector<int> order;        // point indices, sorted by (dist, index)
  std::vector<double> sorted_d;  // distances aligned with `order`
  std::vector<int> group_end;    // exclusive prefix length per distinct distance
  std::vector<double> group_d;   // the distinct distance per group

  int groups() const { return static_cast<int>(group_end.size()); }
};

inline void build_center_order(const Space& s, int c, CenterOrder& co,
                               std::vector<double>& row) {
  const int n = s.n();
  row.resize(static_cast<std::size_t>(n));
  s.fill_dist_row(c, row);
  co.order.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) co.order[static_cast<std::size_t>(i)] = i;
  std::sort(co.order.begin(), co.order.end(), [&](int a, int b) {
    const double da = row[static_cast<std::size_t>(a)];
    const double db = row[static_cast<std::size_t>(b)];
    if (da != db) return da < db;
    return a < b;  // total order keeps results thread-count independent
  });
  co.sorted_d.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    co.sorted_d[static_cast<std::size_t>(i)] =
        row[static_cast<std::size_t>(co.order[static_cast<std::size_t>(i)])];
  co.group_end.clear();
  co.group_d.clear();
  int i = 0;
  while (i < n) {
    const double d = co.sorted_d[static_cast<std::size_t>(i)];
    int j = i;
    while (j < n && co.sorted_d[static_cast<std::size_t>(j)] == d) ++j;
    co.group_end.push_back(j);
    co.group_d.push_back(d);
    i = j;
  }
}

/// Fenwick tree over value ranks carrying two parallel sums.  Used by the
/// oscillation and commutator sweeps to split a growing member set at a
/// threshold value in O(log n).
class Fenwick2 {
 public:
  void init(int n) {
    n_ = n;
    a_.assign(static_cast<std::size_t>(n) + 1, 0.0);
    b_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  }
  void clear() {
    std::fill(a_.begin(), a_.end(), 0.0);
    std::fill(b_.begin(), b_.end(), 0.0);
  }
  /// rank in [0, n).
  void add(int rank, double da, double db) {
    for (int i = rank + 1; i <= n_; i += i & (-i)) {
      a_[static_cast<std::size_t>(i)] += da;
      b_[static_cast<std::size_t>(i)] += db;
    }
  }
  /// Sums over ranks [0, rank]; rank = -1 gives (0, 0).
  std::pair<double, double> prefix(int rank) const {
    double sa = 0.0, sb = 0.0;
    for (int i = rank + 1; i > 0; i -= i & (-i)) {
      sa += a_[static_cast<std::size_t>(i)];
      sb += b_[static_cast<std::size_t>(i)];
    }
    return {sa, sb};
  }
  /// Smallest rank whose cumulative `a`-sum reaches `target`; n-1 fallback.
  int lower_rank(double target) const {
    int pos = 0;
    double acc = 0.0;
    int step = 1;
    while (2 * step <= n_) step *= 2;
    for (; step > 0; step /= 2) {
      const int next = pos + step;
      if (next <= n_ && acc + a_[static_cast<std::size_t>(next)] < target) {
        pos = next;
        acc += a_[static_cast<std::size_t>(next)];
      }
    }
    return pos < n_ ? pos : n_ - 1;
  }

 private:
  int n_ = 0;
  std::vector<double> a_, b_;
};

/// Ranks of field values against their sorted distinct list.
struct ValueRanks {
  std::vector<double> sorted_unique;
  std::vector<int> rank;  // per point

  void build(const std::vector<double>& values) {
    sorted_unique = values;
    std::sort(sorted_unique.begin(), sorted_unique.end());
    sorted_unique.erase(std::unique(sorted_unique.begin(), sorted_unique.end()),
                        sorted_unique.end());
    rank.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      rank[i] = static_cast<int>(
          std::lower_bound(sorted_unique.begin(), sorted_unique.end(), values[i]) -
          sorted_unique.begin());
  }
  /// Largest rank with sorted_unique[rank] <= v, or -1.
  int rank_at_most(double v) const {
    return static_cast<int>(std::upper_bound(sorted_unique.begin(),
                                             sorted_unique.end(), v) -
                            sorted_unique.begin()) -
           1;
  }
};

}  // namespace homax::detail
