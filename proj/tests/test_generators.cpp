#include <cmath>
#include <vector>

#include <doctest.h>

#include "homax/errors.hpp"
#include "homax/generators.hpp"
#include "homax/norms.hpp"
#include "homax/space.hpp"

using namespace homax;

namespace {

/// Composite Simpson rule for the cell masses, as an independent quadrature.
double simpson(double a, double b, double p, int steps) {
  const double h = (b - a) / (2.0 * steps);
  double acc = std::pow(a, p) + std::pow(b, p);
  for (int k = 1; k < 2 * steps; ++k)
    acc += std::pow(a + k * h, p) * (k % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

/// Log-log slope of ball mass against radius around a point.
double mass_growth_slope(const Space& s, int center,
                         const std::vector<double>& radii) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double r : radii) {
    const Ball b = ball_at(s, center, r);
    const double lx = std::log(r), ly = std::log(b.mass);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(radii.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("grid generator") {
  CHECK_THROWS_AS(make_grid_1d(0, 1.0), BadCount);
  CHECK_THROWS_AS(make_grid_1d(5, 0.0), BadParameter);
  const Space s = make_grid_1d(30, 2.0);
  CHECK(s.n() == 30);
  CHECK(s.a0() == 1.0);
  CHECK(s.diameter() == doctest::Approx(2.0));
  CHECK(s.total_mass() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.mass(7) == doctest::Approx(2.0 / 30.0));
  CHECK(s.coords()[29] == doctest::Approx(2.0));
}

TEST_CASE("grid dimension estimate is near one") {
  const Space s = make_grid_1d(30, 2.0);
  const double cmu = doubling_constant(s);
  const double dim = upper_dimension_estimate(s, cmu);
  CHECK(dim >= 0.0);
  CHECK(dim <= 1.2);
  const double slope =
      mass_growth_slope(s, 15, {0.2, 0.3, 0.4, 0.5, 0.7, 0.9});
  CHECK(slope == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("half-line generator masses telescope") {
  CHECK_THROWS_AS(make_bessel_halfline(-0.5, 10, 1.0), BadParameter);
  CHECK_THROWS_AS(make_bessel_halfline(1.0, 1, 1.0), BadCount);
  CHECK_THROWS_AS(make_bessel_halfline(1.0, 10, 0.0), BadParameter);

  const double lam = 1.0;
  const Space s = make_bessel_halfline(lam, 200, 50.0);
  const double powp = 2.0 * lam + 1.0;
  CHECK(s.n() == 200);
  CHECK(s.coords().back() == 50.0);
  CHECK(s.total_mass() ==
        doctest::Approx(std::pow(50.0, powp) / powp).epsilon(1e-12));
  CHECK(s.mass(0) ==
        doctest::Approx(std::pow(s.coords()[0], powp) / powp).epsilon(1e-12));

  // The grid is strictly increasing and hits 1.0 exactly when r_max > 1.
  for (int i = 1; i < s.n(); ++i) CHECK(s.coords()[i] > s.coords()[i - 1]);
  CHECK(s.coords()[99] == 1.0);
}

TEST_CASE("half-line cell masses match quadrature") {
  const double lam = 0.7;
  const Space s = make_bessel_halfline(lam, 60, 10.0);
  double prev = 0.0;
  for (int i = 0; i < s.n(); ++i) {
    const double q = simpson(prev, s.coords()[i], 2.0 * lam, 400);
    CHECK(s.mass(i) == doctest::Approx(q).epsilon(1e-8));
    prev = s.coords()[i];
  }
}

TEST_CASE("half-line with lambda zero is plain Lebesgue") {
  const Space s = make_bessel_halfline(0.0, 40, 0.8);
  double prev = 0.0;
  for (int i = 0; i < s.n(); ++i) {
    CHECK(s.mass(i) == doctest::Approx(s.coords()[i] - prev).epsilon(1e-13));
    prev = s.coords()[i];
  }
  CHECK(s.total_mass() == doctest::Approx(0.8).epsilon(1e-13));
}

TEST_CASE("half-line dimension estimate tracks 2*lambda + 1") {
  const Space s = make_bessel_halfline(1.0, 200, 50.0);
  const double cmu = doubling_constant(s);
  CHECK(upper_dimension_estimate(s, cmu) <= 3.2);
}

TEST_CASE("torus generator") {
  CHECK_THROWS_AS(make_finite_torus(3, 1.0), BadParameter);
  CHECK_THROWS_AS(make_finite_torus(8, 0.5), BadParameter);
  const Space s = make_finite_torus(64, 4.0);
  CHECK(s.n() == 64);
  CHECK(s.a0() == 1.0);
  CHECK(s.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.circle_exponent() == doctest::Approx(0.25));
  // Antipodal metric distance is the snowflaked half-circumference.
  CHECK(s.dist(0, 32) == doctest::Approx(std::pow(0.5, 0.25)));
}

TEST_CASE("torus mass growth matches the growth exponent") {
  const double g = 4.0;
  const Space s = make_finite_torus(64, g);
  std::vector<double> radii;
  for (double arc : {4.0 / 64, 6.0 / 64, 8.0 / 64, 12.0 / 64, 0.25})
    radii.push_back(std::pow(arc, 1.0 / g) * (1.0 + 1e-9));
  CHECK(mass_growth_slope(s, 0, radii) == doctest::Approx(g).epsilon(0.3 / g));
}

TEST_CASE("plain torus doubling stays small") {
  for (int n : {8, 16, 32, 64})
    CHECK(doubling_constant(make_finite_torus(n, 1.0)) <= 4.0 + 1e-12);
}

TEST_CASE("counterexample pair construction") {
  const Space small = make_bessel_halfline(1.0, 200, 50.0);
  CHECK_THROWS_AS(make_counterexample_pair(small, 0, false), BadParameter);
  CHECK_THROWS_AS(make_counterexample_pair(small, 999, true), MissingPoint);

  const CounterexamplePair pair = make_counterexample_pair(small, 0, true);
  CHECK(pair.truncated);
  CHECK(pair.x0_index == 0);
  CHECK(pair.far_reach == doctest::Approx(50.0).epsilon(1e-3));
  CHECK(pair.b[pair.x0_index] == 0.0);
  CHECK(pair.f[pair.x0_index] == 1.0);
  // The cutoff function is the indicator of the unit ball around the base.
  for (int i = 0; i < small.n(); ++i)
    CHECK(pair.f[i] == (small.dist(pair.x0_index, i) < 1.0 ? 1.0 : 0.0));

  const Space wide = make_bessel_halfline(1.0, 400, 150.0);
  const CounterexamplePair ok = make_counterexample_pair(wide, 0, false);
  CHECK_FALSE(ok.truncated);
  CHECK(ok.far_reach > 100.0);
}

TEST_CASE("log-over-mass profile decreases on the half-line") {
  const Space s = make_bessel_halfline(1.0, 200, 50.0);
  CHECK(phi_log_over_mass_decreasing(s, 0));
}

TEST_CASE("oscillation of the log symbol is stable under refinement") {
  const Space coarse = make_bessel_halfline(1.0, 100, 50.0);
  const Space fine = make_bessel_halfline(1.0, 200, 50.0);
  const auto osc = [](const Space& s) {
    const CounterexamplePair p = make_counterexample_pair(s, 0, true);
    return bmo_norm(s, p.b, BmoVariant::MeanOsc);
  };
  const double a = osc(coarse);
  const double b = osc(fine);
  CHECK(std::abs(a - b) / std::max(a, b) <= 0.10);
}
