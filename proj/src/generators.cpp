#include "homax/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "homax/errors.hpp"

namespace homax {

namespace {

std::vector<std::int64_t> iota_ids(int n) {
  std::vector<std::int64_t> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), std::int64_t{0});
  return ids;
}

}  // namespace

Space make_grid_1d(int n, double length) {
  if (n < 1) throw BadCount("grid needs at least one point");
  if (!(length > 0.0)) throw BadParameter("grid length must be positive");
  std::vector<double> coords(static_cast<std::size_t>(n), 0.0);
  for (int i = 1; i < n; ++i)
    coords[static_cast<std::size_t>(i)] =
        static_cast<double>(i) * length / static_cast<double>(n - 1);
  std::vector<double> masses(static_cast<std::size_t>(n),
                             length / static_cast<double>(n));
  return Space::from_line(iota_ids(n), std::move(coords), std::move(masses));
}

Space make_bessel_halfline(double lambda_b, int n, double r_max) {
  if (!(lambda_b > -0.5)) throw BadParameter("lambda_b must exceed -1/2");
  if (n < 2) throw BadCount("half-line grid needs at least two points");
  if (!(r_max > 0.0)) throw BadParameter("r_max must be positive");

  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(n));
  if (r_max > 1.0) {
    // Geometric on (0, 1], uniform on (1, r_max].
    const int m = n / 2;
    const double r_min = 1.0 / static_cast<double>(n);
    for (int i = 0; i < m; ++i)
      x.push_back(i + 1 == m
                      ? 1.0
                      : r_min * std::pow(1.0 / r_min,
                                         static_cast<double>(i) /
                                             static_cast<double>(m - 1)));
    const int u = n - m;
    for (int j = 1; j <= u; ++j)
      x.push_back(j == u ? r_max
                         : 1.0 + static_cast<double>(j) * (r_max - 1.0) /
                                     static_cast<double>(u));
  } else {
    const double r_min = r_max / static_cast<double>(n);
    for (int i = 0; i < n; ++i)
      x.push_back(i + 1 == n
                      ? r_max
                      : r_min * std::pow(r_max / r_min,
                                         static_cast<double>(i) /
                                             static_cast<double>(n - 1)));
  }

  const double powp = 2.0 * lambda_b + 1.0;
  std::vector<double> masses(static_cast<std::size_t>(n));
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cur = std::pow(x[static_cast<std::size_t>(i)], powp);
    masses[static_cast<std::size_t>(i)] = (cur - prev) / powp;
    prev = cur;
  }
  return Space::from_line(iota_ids(n), std::move(x), std::move(masses));
}

Space make_finite_torus(int n, double dim_growth) {
  if (n < 4) throw BadParameter("torus needs at least four points");
  if (!(dim_growth >= 1.0) || !std::isfinite(dim_growth))
    throw BadParameter("dim_growth must lie in [1, infinity)");
  std::vector<double> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    pos[static_cast<std::size_t>(i)] =
        static_cast<double>(i) / static_cast<double>(n);
  std::vector<double> masses(static_cast<std::size_t>(n),
                             1.0 / static_cast<double>(n));
  return Space::from_circle(iota_ids(n), std::move(pos), std::move(masses),
                            1.0 / dim_growth);
}

CounterexamplePair make_counterexample_pair(const Space& s, std::int64_t x0_id,
                                            bool allow_truncated) {
  int idx = -1;
  for (int i = 0; i < s.n(); ++i)
    if (s.point_id(i) == x0_id) {
      idx = i;
      break;
    }
  if (idx < 0) throw MissingPoint("counterexample base point is not in the space");

  std::vector<double> row(static_cast<std::size_t>(s.n()));
  s.fill_dist_row(idx, row);
  double far = 0.0;
  for (double d : row) far = std::max(far, d);
  const bool truncated = far < 100.0;
  if (truncated && !allow_truncated)
    throw BadParameter(
        "domain is truncated near the base point; pass allow_truncated");

  std::vector<double> bv(row.size()), fv(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    bv[i] = std::log1p(row[i]);
    fv[i] = row[i] < 1.0 ? 1.0 : 0.0;
  }
  CounterexamplePair out{FieldFunction(std::move(bv)),
                         FieldFunction(std::move(fv)), idx, far, truncated};
  return out;
}

bool phi_log_over_mass_decreasing(const Space& s, int x0_index) {
  std::vector<double> row(static_cast<std::size_t>(s.n()));
  s.fill_dist_row(x0_index, row);
  std::vector<int> order(static_cast<std::size_t>(s.n()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return row[static_cast<std::size_t>(a)] < row[static_cast<std::size_t>(b)];
  });
  double cum = 0.0, prev_phi = 0.0;
  bool have_prev = false;
  std::size_t i = 0;
  while (i < order.size()) {
    const double d = row[static_cast<std::size_t>(order[i])];
    while (i < order.size() && row[static_cast<std::size_t>(order[i])] == d)
      cum += s.mass(order[i++]);
    if (d <= 1.0) continue;
    const double phi = std::log(d) / cum;
    if (have_prev && phi > prev_phi * (1.0 + 1e-12)) return false;
    prev_phi = phi;
    have_prev = true;
  }
  return true;
}

}  // namespace homax
