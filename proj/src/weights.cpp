#include "homax/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "homax/detail/sweep.hpp"
#include "homax/errors.hpp"
#include "homax/operators.hpp"

namespace homax {

namespace {

constexpr double kWeightFloor = 1e-12;
constexpr double kWeightCeil = 1e12;

void check_q(double q) {
  if (!(q > 1.0) || !std::isfinite(q))
    throw BadExponent("Muckenhoupt exponent must lie in (1, infinity)");
}

}  // namespace

Weight::Weight(const Space& s, const FieldFunction& w) {
  if (w.size() != s.n())
    throw SizeMismatch("weight length does not match the space");
  v_ = w.values();
  for (double& x : v_) {
    if (!(x > 0.0))
      throw NonPositiveMass("weights must be strictly positive");
    if (x < kWeightFloor) {
      x = kWeightFloor;
      ++clamped_;
    } else if (x > kWeightCeil) {
      x = kWeightCeil;
      ++clamped_;
    }
  }
  wm_.resize(v_.size());
  for (int i = 0; i < s.n(); ++i)
    wm_[static_cast<std::size_t>(i)] = v_[static_cast<std::size_t>(i)] * s.mass(i);
}

double Weight::ball_total(const Ball& b) const {
  double t = 0.0;
  for (int x : b.members) t += wm_[static_cast<std::size_t>(x)];
  return t;
}

double ap_constant(const Space& s, const Weight& w, double p) {
  check_q(p);
  const int n = s.n();
  const double dual = -1.0 / (p - 1.0);
  std::vector<double> sig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    sig[static_cast<std::size_t>(i)] =
        std::pow(w.value(i), dual) * s.mass(i);
  double best = 0.0;
  detail::CenterOrder co;
  std::vector<double> row;
  for (int c = 0; c < n; ++c) {
    detail::build_center_order(s, c, co, row);
    double ws = 0.0, ss = 0.0, mass = 0.0;
    int pos = 0;
    for (int gi = 0; gi < co.groups(); ++gi) {
      for (; pos < co.group_end[static_cast<std::size_t>(gi)]; ++pos) {
        const int x = co.order[static_cast<std::size_t>(pos)];
        ws += w.element(x);
        ss += sig[static_cast<std::size_t>(x)];
        mass += s.mass(x);
      }
      const double factor =
          (ws / mass) * std::pow(ss / mass, p - 1.0);
      best = std::max(best, factor);
    }
  }
  return best;
}

double a1_constant(const Space& s, const Weight& w) {
  const FieldFunction mw = maximal(s, FieldFunction(w.values()), 1.0);
  double best = 0.0;
  for (int i = 0; i < s.n(); ++i)
    best = std::max(best, mw[i] / w.value(i));
  return best;
}

double weighted_char_quantity(const Space& s, const BallFamily& family,
                              const FieldFunction& b, const Weight& w,
                              double q, CharKind kind, double p) {
  if (!(q >= 1.0) || !std::isfinite(q))
    throw BadExponent("characterization exponent must lie in [1, infinity)");
  if (kind == CharKind::RestrictedMaximal && (!(p >= 1.0) || !std::isfinite(p)))
    throw BadExponent("restricted maximal exponent must lie in [1, infinity)");
  if (b.size() != s.n())
    throw SizeMismatch("field length does not match the space");
  double best = 0.0;
  for (const Ball& ball : family.balls) {
    double acc = 0.0;
    if (kind == CharKind::RestrictedMaximal) {
      const RestrictedField t = maximal_restricted(s, b, p, ball);
      for (int x : ball.members)
        acc += std::pow(std::abs(b[x] - t.values[static_cast<std::size_t>(x)]), q) *
               w.element(x);
    } else {
      std::vector<double> cut(static_cast<std::size_t>(s.n()), 0.0);
      for (int x : ball.members) cut[static_cast<std::size_t>(x)] = b[x];
      const FieldFunction sharp = sharp_maximal(s, FieldFunction(std::move(cut)));
      for (int x : ball.members)
        acc += std::pow(std::abs(b[x] - 2.0 * sharp[x]), q) * w.element(x);
    }
    best = std::max(best, acc / w.ball_total(ball));
  }
  return best;
}

ExpWeightScan exp_weight_scan(const Space& s, const FieldFunction& b,
                              const Weight& w, double q,
                              const std::vector<double>& d_grid,
                              double threshold) {
  check_q(q);
  if (b.size() != s.n())
    throw SizeMismatch("field length does not match the space");
  ExpWeightScan out;
  out.rows.reserve(d_grid.size());
  for (double d : d_grid) {
    std::vector<double> mv(static_cast<std::size_t>(s.n()));
    for (int i = 0; i < s.n(); ++i)
      mv[static_cast<std::size_t>(i)] =
          std::exp(std::min(d * b[i], 700.0)) * w.value(i);
    const Weight mw(s, FieldFunction(std::move(mv)));
    const double ap = ap_constant(s, mw, q);
    out.rows.push_back({d, ap});
    if (ap <= threshold && (!out.any_pass || std::abs(d) > out.largest_passing_abs_d)) {
      out.largest_passing_abs_d = std::abs(d);
      out.any_pass = true;
    }
  }
  return out;
}

}  // namespace homax
