#pragma once

#include <cstdint>

#include "homax/field.hpp"
#include "homax/space.hpp"

namespace homax {

/// n equispaced points on [0, length], dist = |x - y|, mass = length / n
/// each, so total_mass == length exactly.
Space make_grid_1d(int n, double length);

/// n points on (0, r_max] carrying the measure x^(2 lambda_b) dx: the mass of
/// the cell (x_{i-1}, x_i] is the exact integral
/// (x_i^(2l+1) - x_{i-1}^(2l+1)) / (2l+1), so cell masses telescope to
/// r_max^(2l+1)/(2l+1).  Points are geometric on (0, min(1, r_max)] to
/// resolve the density degeneracy at the origin and uniform past 1.
/// Requires lambda_b > -1/2, n >= 2, r_max > 0.
Space make_bessel_halfline(double lambda_b, int n, double r_max);

/// n points on a circle of unit circumference with uniform masses 1/n and
/// dist = arc^(1/dim_growth), so ball masses grow like r^dim_growth.  A
/// finite-diameter, finite-mass space; dim_growth = 1 is the plain circle.
/// Requires n >= 4, dim_growth >= 1.
Space make_finite_torus(int n, double dim_growth);

struct CounterexamplePair {
  FieldFunction b;      // ln(1 + dist(., x0))
  FieldFunction f;      // indicator of {dist(., x0) < 1}
  int x0_index = 0;
  double far_reach = 0.0;  // max distance from x0
  bool truncated = false;  // far_reach < 100: the domain cuts the tail off
};

/// The weak-type failure pair around x0.  Throws MissingPoint when x0_id is
/// not in the space and BadParameter when the domain is truncated (no point
/// at distance >= 100 from x0) unless allow_truncated is set.
CounterexamplePair make_counterexample_pair(const Space& s, std::int64_t x0_id,
                                            bool allow_truncated = false);

/// Checks that t -> ln(t) / mass{dist(x0, .) <= t} is nonincreasing across
/// the realized distances from x0 that lie in (1, infinity).  Vacuously true
/// with fewer than two such radii.
bool phi_log_over_mass_decreasing(const Space& s, int x0_index);

}  // namespace homax
