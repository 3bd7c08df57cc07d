#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "homax/detail/rng.hpp"
#include "homax/errors.hpp"
#include "homax/norms.hpp"
#include "homax/space.hpp"

using namespace homax;

namespace {

Space three_point_line() {
  return Space::from_line({0, 1, 2}, {0.0, 1.0, 2.0}, {1.0, 1.0, 1.0});
}

Space random_space(detail::Rng& rng, int n) {
  std::vector<std::int64_t> ids(static_cast<std::size_t>(n));
  std::vector<double> coords(static_cast<std::size_t>(n));
  std::vector<double> masses(static_cast<std::size_t>(n));
  double x = 0.0;
  for (int i = 0; i < n; ++i) {
    ids[static_cast<std::size_t>(i)] = i;
    x += rng.uniform(0.1, 1.0);
    coords[static_cast<std::size_t>(i)] = x;
    masses[static_cast<std::size_t>(i)] = rng.uniform(0.5, 2.0);
  }
  return Space::from_line(ids, coords, masses);
}

FieldFunction random_field(detail::Rng& rng, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& t : v) t = rng.normal();
  return FieldFunction(std::move(v));
}

}  // namespace

TEST_CASE("lp norms") {
  const Space s = three_point_line();
  const FieldFunction f({3.0, -1.0, 2.0});
  CHECK(lp_norm(s, f, 1.0) == doctest::Approx(6.0));
  CHECK(lp_norm(s, f, 2.0) == doctest::Approx(std::sqrt(14.0)));
  CHECK(lp_norm(s, f, std::numeric_limits<double>::infinity()) == 3.0);
  const std::vector<double> w{2.0, 1.0, 1.0};
  CHECK(lp_norm(s, f, 1.0, &w) == doctest::Approx(9.0));
  CHECK_THROWS_AS(lp_norm(s, f, 0.5), BadExponent);
}

TEST_CASE("mean oscillation of the identity on the line is 2/3") {
  const Space s = three_point_line();
  const FieldFunction b({0.0, 1.0, 2.0});
  CHECK(bmo_norm(s, b, BmoVariant::MeanOsc) == doctest::Approx(2.0 / 3.0));
  // Constants have zero oscillation in every variant.
  const FieldFunction c = FieldFunction::constant(3, 5.0);
  CHECK(bmo_norm(s, c, BmoVariant::MeanOsc) == 0.0);
  CHECK(bmo_norm(s, c, BmoVariant::InfC) == 0.0);
  CHECK(bmo_norm(s, c, BmoVariant::LocalL1) == doctest::Approx(15.0));
}

TEST_CASE("median-centred oscillation is between half and full mean oscillation") {
  detail::Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const Space s = random_space(rng, 14);
    const FieldFunction b = random_field(rng, 14);
    const double mo = bmo_norm(s, b, BmoVariant::MeanOsc);
    const double ic = bmo_norm(s, b, BmoVariant::InfC);
    CHECK(ic <= mo * (1.0 + 1e-12));
    CHECK(mo <= 2.0 * ic * (1.0 + 1e-12));
  }
}

TEST_CASE("p-power oscillation grows with p and matches MeanOsc at p=1") {
  detail::Rng rng(12);
  const Space s = random_space(rng, 10);
  const FieldFunction b = random_field(rng, 10);
  const double p1 = bmo_norm(s, b, BmoVariant::PPower, 1.0);
  CHECK(p1 == doctest::Approx(bmo_norm(s, b, BmoVariant::MeanOsc)).epsilon(1e-12));
  CHECK(bmo_norm(s, b, BmoVariant::PPower, 2.0) >= p1 * (1.0 - 1e-12));
}

TEST_CASE("luxemburg norm of an indicator-like constant") {
  const Space s = three_point_line();
  const FieldFunction one = FieldFunction::constant(3, 1.0);
  const std::vector<int> all{0, 1, 2};
  // mean exp(1/lam) == 2 exactly at lam = 1/log 2.
  CHECK(luxemburg_norm(s, one, all, OrliczKind::ExpL) ==
        doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-8));

  // Root of (1/lam) log(2 + 1/lam) = 1, solved here by plain bisection.
  double lo = 1e-6, hi = 1e6;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((1.0 / mid) * std::log(2.0 + 1.0 / mid) > 1.0 ? lo : hi) = mid;
  }
  CHECK(luxemburg_norm(s, one, all, OrliczKind::LlogL) ==
        doctest::Approx(0.5 * (lo + hi)).epsilon(1e-8));
}

TEST_CASE("luxemburg norm is homogeneous and monotone in the subset") {
  detail::Rng rng(13);
  const Space s = random_space(rng, 16);
  const FieldFunction f = random_field(rng, 16);
  std::vector<int> all(16);
  for (int i = 0; i < 16; ++i) all[static_cast<std::size_t>(i)] = i;
  for (OrliczKind kind : {OrliczKind::LlogL, OrliczKind::ExpL}) {
    const double base = luxemburg_norm(s, f, all, kind);
    std::vector<double> scaled = f.values();
    for (double& v : scaled) v *= 7.0;
    CHECK(luxemburg_norm(s, FieldFunction(scaled), all, kind) ==
          doctest::Approx(7.0 * base).epsilon(1e-8));
  }
  const FieldFunction zero = FieldFunction::constant(16, 0.0);
  CHECK(luxemburg_norm(s, zero, all, OrliczKind::LlogL) == 0.0);
  const std::vector<int> none{};
  CHECK_THROWS_AS(luxemburg_norm(s, f, none, OrliczKind::LlogL), EmptySubset);
}

TEST_CASE("rearrangement of a small fixture") {
  const Space s = three_point_line();
  const FieldFunction f({3.0, 1.0, 2.0});
  const StepRearrangement r = rearrangement(s, f);
  CHECK(r.levels == std::vector<double>{3.0, 2.0, 1.0});
  CHECK(r.breakpoints == std::vector<double>{0.0, 1.0, 2.0, 3.0});
  CHECK(r.support_mass() == 3.0);
  CHECK(r.evaluate(0.5) == 3.0);
  CHECK(r.evaluate(1.0) == 3.0);  // right-continuous from the definition
  CHECK(r.evaluate(1.5) == 2.0);
  CHECK(r.evaluate(3.5) == 0.0);
}

TEST_CASE("rearrangement agrees with the infimum definition") {
  detail::Rng rng(14);
  for (int rep = 0; rep < 5; ++rep) {
    const Space s = random_space(rng, 20);
    const FieldFunction f = random_field(rng, 20);
    const StepRearrangement r = rearrangement(s, f);

    // Realized |f| levels, ascending, for the reference infimum.
    std::vector<double> levels;
    for (int i = 0; i < 20; ++i) levels.push_back(std::abs(f[i]));
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    for (int k = 0; k < 100; ++k) {
      const double t = rng.uniform(1e-9, s.total_mass() * 1.1);
      double expect = 0.0;
      if (!(distribution_function(s, f, 0.0) < t)) {
        expect = std::numeric_limits<double>::quiet_NaN();
        for (double lev : levels)
          if (distribution_function(s, f, lev) < t) {
            expect = lev;
            break;
          }
      }
      CHECK(r.evaluate(t) == doctest::Approx(expect).epsilon(1e-14));
    }
  }
}

TEST_CASE("distribution function and llogl functional") {
  const Space s = three_point_line();
  const FieldFunction f({3.0, -1.0, 2.0});
  CHECK(distribution_function(s, f, 0.0) == 3.0);
  CHECK(distribution_function(s, f, 1.0) == 2.0);
  CHECK(distribution_function(s, f, 2.5) == 1.0);
  CHECK(distribution_function(s, f, 3.0) == 0.0);
  CHECK_THROWS_AS(distribution_function(s, f, -1.0), BadParameter);

  const double lam = 0.5;
  double expect = 0.0;
  for (double v : {3.0, 1.0, 2.0}) {
    const double t = v / lam;
    expect += t * (1.0 + (t > 1.0 ? std::log(t) : 0.0));
  }
  CHECK(llogl_functional(s, f, lam) == doctest::Approx(expect).epsilon(1e-14));
  CHECK_THROWS_AS(llogl_functional(s, f, 0.0), NonPositiveLambda);
}

TEST_CASE("ball average validates its subset") {
  const Space s = three_point_line();
  const FieldFunction f({3.0, 1.0, 2.0});
  const std::vector<int> sub{0, 2};
  CHECK(ball_average(s, f, sub) == doctest::Approx(2.5));
  const std::vector<int> none{};
  CHECK_THROWS_AS(ball_average(s, f, none), EmptyBall);
}
