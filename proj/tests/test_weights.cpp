#include <cmath>
#include <vector>

#include <doctest.h>

#include "homax/detail/rng.hpp"
#include "homax/errors.hpp"
#include "homax/operators.hpp"
#include "homax/space.hpp"
#include "homax/weights.hpp"

using namespace homax;

namespace {

Space three_point_line() {
  return Space::from_line({0, 1, 2}, {0.0, 1.0, 2.0}, {1.0, 1.0, 1.0});
}

Space random_line(detail::Rng& rng, int n) {
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

Weight random_weight(detail::Rng& rng, const Space& s) {
  std::vector<double> v(static_cast<std::size_t>(s.n()));
  for (double& t : v) t = std::exp(rng.uniform(-1.5, 1.5));
  return Weight(s, FieldFunction(std::move(v)));
}

}  // namespace

TEST_CASE("weight validation and clamping") {
  const Space s = three_point_line();
  CHECK_THROWS_AS(Weight(s, FieldFunction({1.0, 0.0, 1.0})), NonPositiveMass);
  CHECK_THROWS_AS(Weight(s, FieldFunction({1.0, 1.0})), SizeMismatch);
  const Weight w(s, FieldFunction({1e-20, 1.0, 1e20}));
  CHECK(w.clamped_count() == 2);
  CHECK(w.value(0) == 1e-12);
  CHECK(w.value(2) == 1e12);
  CHECK(w.element(1) == 1.0);  // w * mass
}

TEST_CASE("a2 fixture") {
  const Space s = three_point_line();
  const Weight w(s, FieldFunction({1.0, 4.0, 1.0}));
  CHECK(ap_constant(s, w, 2.0) == doctest::Approx(25.0 / 16.0).epsilon(1e-14));
  CHECK(a1_constant(s, w) == doctest::Approx(2.5).epsilon(1e-14));
  // The a1 quotient comes from the maximal operator of the weight itself.
  const FieldFunction mw = maximal(s, FieldFunction({1.0, 4.0, 1.0}));
  CHECK(mw[0] == doctest::Approx(2.5));
  CHECK(mw[1] == doctest::Approx(4.0));
  CHECK(mw[2] == doctest::Approx(2.5));
  CHECK_THROWS_AS(ap_constant(s, w, 1.0), BadExponent);
  CHECK_THROWS_AS(ap_constant(s, w, 0.5), BadExponent);
}

TEST_CASE("constant weights have characteristic exactly 1") {
  detail::Rng rng(201);
  const Space s = random_line(rng, 12);
  const Weight w(s, FieldFunction::constant(s.n(), 3.7));
  for (double p : {1.5, 2.0, 4.0})
    CHECK(ap_constant(s, w, p) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a1_constant(s, w) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ap duality") {
  detail::Rng rng(202);
  for (int rep = 0; rep < 8; ++rep) {
    const Space s = random_line(rng, 10);
    const Weight w = random_weight(rng, s);
    for (double p : {1.5, 2.0, 3.0}) {
      const double pp = p / (p - 1.0);
      std::vector<double> sv(static_cast<std::size_t>(s.n()));
      for (int i = 0; i < s.n(); ++i)
        sv[static_cast<std::size_t>(i)] = std::pow(w.value(i), -1.0 / (p - 1.0));
      const Weight sigma(s, FieldFunction(std::move(sv)));
      const double lhs = ap_constant(s, w, p);
      const double rhs = std::pow(ap_constant(s, sigma, pp), p - 1.0);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
      CHECK(lhs >= 1.0 - 1e-14);
    }
  }
}

TEST_CASE("ap characteristic is nonincreasing in p") {
  detail::Rng rng(203);
  for (int rep = 0; rep < 8; ++rep) {
    const Space s = random_line(rng, 10);
    const Weight w = random_weight(rng, s);
    double prev = a1_constant(s, w);  // a1 dominates every finite-p constant
    for (double p : {1.5, 2.0, 3.0, 4.0, 8.0}) {
      const double ap = ap_constant(s, w, p);
      CHECK(ap <= prev * (1.0 + 1e-10));
      prev = ap;
    }
  }
}

TEST_CASE("characterization quantities respect weight scaling") {
  detail::Rng rng(204);
  const Space s = random_line(rng, 10);
  const BallFamily fam = enumerate_balls(s);
  std::vector<double> bv(static_cast<std::size_t>(s.n()));
  for (double& t : bv) t = rng.normal();
  const FieldFunction b(std::move(bv));
  const Weight w = random_weight(rng, s);
  std::vector<double> scaled(w.values());
  for (double& t : scaled) t *= 5.0;
  const Weight w5(s, FieldFunction(std::move(scaled)));
  for (CharKind kind : {CharKind::RestrictedMaximal, CharKind::SharpOfCutoff}) {
    const double q1 = weighted_char_quantity(s, fam, b, w, 1.0, kind, 1.0);
    const double q5 = weighted_char_quantity(s, fam, b, w5, 1.0, kind, 1.0);
    // Scaling w cancels between numerator and w(B).
    CHECK(q5 == doctest::Approx(q1).epsilon(1e-12));
    CHECK(q1 >= 0.0);
  }
  CHECK_THROWS_AS(
      weighted_char_quantity(s, fam, b, w, 0.5, CharKind::RestrictedMaximal, 1.0),
      BadExponent);
}

TEST_CASE("exponential weight scan on a bounded symbol") {
  const Space s = three_point_line();
  const FieldFunction b({0.0, 1.0, 2.0});
  const Weight unit(s, FieldFunction::constant(3, 1.0));
  const std::vector<double> grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  const ExpWeightScan scan = exp_weight_scan(s, b, unit, 2.0, grid, 1e9);
  REQUIRE(scan.rows.size() == grid.size());
  CHECK(scan.rows.front().ap == doctest::Approx(1.0).epsilon(1e-13));
  for (std::size_t i = 1; i < scan.rows.size(); ++i)
    CHECK(scan.rows[i].ap >= scan.rows[i - 1].ap * (1.0 - 1e-12));
  CHECK(scan.any_pass);
  CHECK(scan.largest_passing_abs_d == 0.5);
}
