#include "homax/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "homax/detail/sweep.hpp"
#include "homax/errors.hpp"

namespace homax {

namespace {

void check_masses(const std::vector<double>& masses) {
  for (double m : masses)
    if (!(m > 0.0) || !std::isfinite(m))
      throw NonPositiveMass("every point mass must be positive and finite");
}

void check_sizes(std::size_t n_ids, std::size_t n_masses) {
  if (n_ids == 0) throw BadCount("a space needs at least one point");
  if (n_ids != n_masses) throw SizeMismatch("point_ids and masses disagree in length");
}

double sum_masses(const std::vector<double>& masses) {
  double t = 0.0;
  for (double m : masses) t += m;
  return t;
}

/// Exact max(1, quotient) scan.  Allowing z to coincide with x or y only
/// introduces quotient values of exactly 1, so the inclusive minimum below
/// reproduces the floored constant without per-triple exclusion tests.
double a0_scan(const Space& s) {
  const int n = s.n();
  if (n < 2) return 1.0;
  std::vector<double> rx(static_cast<std::size_t>(n)), ry(static_cast<std::size_t>(n));
  double best = 1.0;
  for (int x = 0; x < n; ++x) {
    s.fill_dist_row(x, rx);
    for (int y = x + 1; y < n; ++y) {
      s.fill_dist_row(y, ry);
      double den = std::numeric_limits<double>::infinity();
      for (int z = 0; z < n; ++z) {
        const double c = rx[static_cast<std::size_t>(z)] + ry[static_cast<std::size_t>(z)];
        if (c < den) den = c;
      }
      const double q = rx[static_cast<std::size_t>(y)] / den;
      if (q > best) best = q;
    }
  }
  return best;
}

}  // namespace

int Space::index_of(std::int64_t id) const {
  for (int i = 0; i < n_; ++i)
    if (ids_[static_cast<std::size_t>(i)] == id) return i;
  throw UnknownPoint("point id " + std::to_string(id) + " is not in the space");
}

double Space::dist(int i, int j) const {
  switch (kind_) {
    case MetricKind::Matrix:
      return dist_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                   static_cast<std::size_t>(j)];
    case MetricKind::Abs1D:
      return std::abs(coords_[static_cast<std::size_t>(i)] -
                      coords_[static_cast<std::size_t>(j)]);
    case MetricKind::Circle: {
      double a = std::abs(coords_[static_cast<std::size_t>(i)] -
                          coords_[static_cast<std::size_t>(j)]);
      a = std::min(a, 1.0 - a);
      return exponent_ == 1.0 ? a : std::pow(a, exponent_);
    }
  }
  return 0.0;
}

void Space::fill_dist_row(int i, std::span<double> out) const {
  const auto n = static_cast<std::size_t>(n_);
  switch (kind_) {
    case MetricKind::Matrix: {
      const double* row = dist_.data() + static_cast<std::size_t>(i) * n;
      std::copy(row, row + n, out.begin());
      return;
    }
    case MetricKind::Abs1D: {
      const double xi = coords_[static_cast<std::size_t>(i)];
      for (std::size_t j = 0; j < n; ++j) out[j] = std::abs(coords_[j] - xi);
      return;
    }
    case MetricKind::Circle: {
      const double xi = coords_[static_cast<std::size_t>(i)];
      for (std::size_t j = 0; j < n; ++j) {
        double a = std::abs(coords_[j] - xi);
        a = std::min(a, 1.0 - a);
        out[j] = exponent_ == 1.0 ? a : std::pow(a, exponent_);
      }
      return;
    }
  }
}

void Space::finish(double a0) {
  total_mass_ = sum_masses(masses_);
  double diam = 0.0;
  if (kind_ == MetricKind::Abs1D) {
    const auto [lo, hi] = std::minmax_element(coords_.begin(), coords_.end());
    diam = *hi - *lo;
  } else {
    std::vector<double> row(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      fill_dist_row(i, row);
      for (double d : row) diam = std::max(diam, d);
    }
  }
  diameter_ = diam;
  a0_ = a0;
}

Space Space::from_matrix(std::vector<std::int64_t> point_ids,
                         std::vector<double> dist_rowmajor,
                         std::vector<double> masses) {
  check_sizes(point_ids.size(), masses.size());
  const auto n = point_ids.size();
  if (dist_rowmajor.size() != n * n)
    throw SizeMismatch("distance matrix must be n x n");
  check_masses(masses);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist_rowmajor[i * n + j];
      if (!std::isfinite(d)) throw NonFiniteValue("distances must be finite");
      if (i == j) {
        if (d != 0.0) throw NonZeroDiagonal("dist(x,x) must be 0");
      } else {
        if (d < 0.0) throw NegativeDistance("distances must be nonnegative");
        if (d == 0.0) throw ZeroOffDiagonal("dist(x,y) = 0 for distinct points");
        if (d != dist_rowmajor[j * n + i])
          throw NonSymmetricMetric("dist(x,y) != dist(y,x)");
      }
    }
  }
  Space s;
  s.n_ = static_cast<int>(n);
  s.kind_ = MetricKind::Matrix;
  s.ids_ = std::move(point_ids);
  s.dist_ = std::move(dist_rowmajor);
  s.masses_ = std::move(masses);
  s.finish(1.0);
  s.a0_ = a0_scan(s);
  return s;
}

Space Space::from_line(std::vector<std::int64_t> point_ids,
                       std::vector<double> coords,
                       std::vector<double> masses) {
  check_sizes(point_ids.size(), masses.size());
  if (coords.size() != point_ids.size())
    throw SizeMismatch("coords and point_ids disagree in length");
  check_masses(masses);
  std::vector<double> sorted = coords;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!std::isfinite(sorted[i])) throw NonFiniteValue("coords must be finite");
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw ZeroOffDiagonal("coincident coordinates give dist 0 between distinct points");
  }
  Space s;
  s.n_ = static_cast<int>(point_ids.size());
  s.kind_ = MetricKind::Abs1D;
  s.ids_ = std::move(point_ids);
  s.coords_ = std::move(coords);
  s.masses_ = std::move(masses);
  s.finish(1.0);  // |x - y| is a metric, so the floored constant is exactly 1
  return s;
}

Space Space::from_circle(std::vector<std::int64_t> point_ids,
                         std::vector<double> positions,
                         std::vector<double> masses,
                         double exponent) {
  check_sizes(point_ids.size(), masses.size());
  if (positions.size() != point_ids.size())
    throw SizeMismatch("positions and point_ids disagree in length");
  if (!(exponent > 0.0) || exponent > 1.0 || !std::isfinite(exponent))
    throw BadParameter("circle exponent must lie in (0, 1]");
  check_masses(masses);
  std::vector<double> sorted = positions;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i] >= 0.0) || sorted[i] >= 1.0)
      throw BadParameter("circle positions must lie in [0, 1)");
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw ZeroOffDiagonal("coincident positions give dist 0 between distinct points");
  }
  Space s;
  s.n_ = static_cast<int>(point_ids.size());
  s.kind_ = MetricKind::Circle;
  s.ids_ = std::move(point_ids);
  s.coords_ = std::move(positions);
  s.masses_ = std::move(masses);
  s.exponent_ = exponent;
  // Snowflaking a metric by an exponent <= 1 preserves the triangle
  // inequality, so the floored constant is exactly 1 here as well.
  s.finish(1.0);
  return s;
}

Space build_space(std::vector<std::int64_t> point_ids,
                  std::vector<double> dist_rowmajor,
                  std::vector<double> masses) {
  return Space::from_matrix(std::move(point_ids), std::move(dist_rowmajor),
                            std::move(masses));
}

double quasi_triangle_constant(const Space& s) { return a0_scan(s); }

Ball ball_at(const Space& s, int center_index, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw NonPositiveRadius("ball radius must be positive and finite");
  if (center_index < 0 || center_index >= s.n())
    throw UnknownPoint("center index out of range");
  Ball b;
  b.center = center_index;
  b.radius = radius;
  std::vector<double> row(static_cast<std::size_t>(s.n()));
  s.fill_dist_row(center_index, row);
  for (int j = 0; j < s.n(); ++j)
    if (row[static_cast<std::size_t>(j)] < radius) b.members.push_back(j);
  if (b.members.empty()) throw EmptyBall("ball has no members");
  double m = 0.0;
  for (int j : b.members) m += s.mass(j);
  b.mass = m;
  return b;
}

double subset_measure(const Space& s, std::span<const std::int64_t> ids) {
  std::unordered_map<std::int64_t, int> lookup;
  lookup.reserve(static_cast<std::size_t>(s.n()));
  for (int i = 0; i < s.n(); ++i) lookup.emplace(s.point_id(i), i);
  std::vector<int> idx;
  idx.reserve(ids.size());
  for (std::int64_t id : ids) {
    const auto it = lookup.find(id);
    if (it == lookup.end())
      throw UnknownPoint("point id " + std::to_string(id) + " is not in the space");
    idx.push_back(it->second);
  }
  std::sort(idx.begin(), idx.end());  // fixed summation order
  double t = 0.0;
  for (int i : idx) t += s.mass(i);
  return t;
}

namespace {

struct MemberSetHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace

BallFamily enumerate_balls(const Space& s) {
  const int n = s.n();
  BallFamily fam;
  std::unordered_map<std::vector<int>, int, MemberSetHash> seen;
  detail::CenterOrder co;
  std::vector<double> row;
  for (int c = 0; c < n; ++c) {
    detail::build_center_order(s, c, co, row);
    for (int g = 0; g < co.groups(); ++g) {
      const int k = co.group_end[static_cast<std::size_t>(g)];
      std::vector<int> members(co.order.begin(), co.order.begin() + k);
      std::sort(members.begin(), members.end());
      if (seen.find(members) != seen.end()) continue;
      Ball b;
      b.center = c;
      // The strict radius realizing the prefix: any value in (d_g, d_{g+1}];
      // the next distinct distance keeps ball_at(center, radius) == members.
      b.radius = g + 1 < co.groups() ? co.group_d[static_cast<std::size_t>(g) + 1]
                                     : co.group_d.back() + 1.0;
      double m = 0.0;
      for (int x : members) m += s.mass(x);
      b.mass = m;
      b.members = std::move(members);
      seen.emplace(b.members, static_cast<int>(fam.balls.size()));
      fam.balls.push_back(std::move(b));
    }
  }
  fam.containing_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Ball& b : fam.balls)
    for (int x : b.members) ++fam.containing_offsets[static_cast<std::size_t>(x) + 1];
  for (int i = 0; i < n; ++i)
    fam.containing_offsets[static_cast<std::size_t>(i) + 1] +=
        fam.containing_offsets[static_cast<std::size_t>(i)];
  fam.containing_data.resize(static_cast<std::size_t>(fam.containing_offsets.back()));
  std::vector<int> cursor(fam.containing_offsets.begin(), fam.containing_offsets.end() - 1);
  for (std::size_t bi = 0; bi < fam.balls.size(); ++bi)
    for (int x : fam.balls[bi].members)
      fam.containing_data[static_cast<std::size_t>(cursor[static_cast<std::size_t>(x)]++)] =
          static_cast<int>(bi);
  return fam;
}

namespace {

/// Shared sweep for the doubling and growth scans.  For one center the
/// candidate radii are the realized distances and their scalings d/lambda;
/// closed balls evaluated at a candidate agree with strict balls of any
/// radius just above it.
template <typename Fn>
void scan_growth(const Space& s, double lambda, Fn&& visit) {
  const int n = s.n();
  detail::CenterOrder co;
  std::vector<double> row;
  std::vector<double> prefix_mass;
  for (int c = 0; c < n; ++c) {
    detail::build_center_order(s, c, co, row);
    const int G = co.groups();
    prefix_mass.assign(static_cast<std::size_t>(G), 0.0);
    double acc = 0.0;
    int pos = 0;
    for (int g = 0; g < G; ++g) {
      for (; pos < co.group_end[static_cast<std::size_t>(g)]; ++pos)
        acc += s.mass(co.order[static_cast<std::size_t>(pos)]);
      prefix_mass[static_cast<std::size_t>(g)] = acc;
    }
    auto closed_mass = [&](double r) {
      // mass of {d <= r}
      const auto it = std::upper_bound(co.group_d.begin(), co.group_d.end(), r);
      const int g = static_cast<int>(it - co.group_d.begin()) - 1;
      return g < 0 ? 0.0 : prefix_mass[static_cast<std::size_t>(g)];
    };
    for (int g = 0; g < G; ++g) {
      const double d = co.group_d[static_cast<std::size_t>(g)];
      if (d > 0.0) {
        const double r0 = d / lambda;  // lambda * r0 == d exactly for powers of two
        visit(closed_mass(lambda * r0) / closed_mass(r0));
        visit(closed_mass(lambda * d) / prefix_mass[static_cast<std::size_t>(g)]);
      }
    }
  }
}

}  // namespace

double doubling_constant(const Space& s) {
  double best = 1.0;
  scan_growth(s, 2.0, [&](double ratio) { best = std::max(best, ratio); });
  return best;
}

double upper_dimension_estimate(const Space& s, double c_mu) {
  if (!(c_mu > 0.0) || !std::isfinite(c_mu))
    throw BadParameter("c_mu must be positive and finite");
  const double dc = doubling_constant(s);
  if (c_mu < dc * (1.0 - 1e-12))
    throw CMuTooSmall("c_mu below the doubling constant of the space");
  double nhat = 0.0;
  for (double lambda : {2.0, 4.0, 8.0, 16.0}) {
    const double log_l = std::log(lambda);
    scan_growth(s, lambda, [&](double ratio) {
      nhat = std::max(nhat, std::log(ratio / c_mu) / log_l);
    });
  }
  return std::max(nhat, 0.0);
}

}  // namespace homax
