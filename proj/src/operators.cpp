#include "homax/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "homax/detail/sweep.hpp"
#include "homax/errors.hpp"
#include "homax/norms.hpp"

namespace homax {

namespace {

void check_bound(const Space& s, const FieldFunction& f) {
  if (f.size() != s.n())
    throw SizeMismatch("field length does not match the space");
}

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw BadExponent("maximal exponent must lie in [1, infinity)");
}

std::vector<double> abs_pow_mass(const Space& s, const FieldFunction& f, double p) {
  std::vector<double> g(static_cast<std::size_t>(s.n()));
  for (int i = 0; i < s.n(); ++i) {
    const double a = std::abs(f[i]);
    g[static_cast<std::size_t>(i)] = (p == 1.0 ? a : std::pow(a, p)) * s.mass(i);
  }
  return g;
}

FieldFunction finish_root(std::vector<double> v, double p) {
  if (p != 1.0)
    for (double& x : v) x = std::pow(x, 1.0 / p);
  return FieldFunction(std::move(v));
}

}  // namespace

FieldFunction maximal(const Space& s, const FieldFunction& f, double p) {
  check_p(p);
  check_bound(s, f);
  const int n = s.n();
  const std::vector<double> g = abs_pow_mass(s, f, p);
  std::vector<double> res(static_cast<std::size_t>(n), 0.0);
  detail::CenterOrder co;
  std::vector<double> row, vals, sufmax;
  for (int c = 0; c < n; ++c) {
    detail::build_center_order(s, c, co, row);
    const int G = co.groups();
    vals.assign(static_cast<std::size_t>(G), 0.0);
    double num = 0.0, den = 0.0;
    int pos = 0;
    for (int gi = 0; gi < G; ++gi) {
      for (; pos < co.group_end[static_cast<std::size_t>(gi)]; ++pos) {
        const int x = co.order[static_cast<std::size_t>(pos)];
        num += g[static_cast<std::size_t>(x)];
        den += s.mass(x);
      }
      vals[static_cast<std::size_t>(gi)] = num / den;
    }
    sufmax.assign(static_cast<std::size_t>(G), 0.0);
    double run = -std::numeric_limits<double>::infinity();
    for (int gi = G - 1; gi >= 0; --gi) {
      run = std::max(run, vals[static_cast<std::size_t>(gi)]);
      sufmax[static_cast<std::size_t>(gi)] = run;
    }
    pos = 0;
    for (int gi = 0; gi < G; ++gi)
      for (; pos < co.group_end[static_cast<std::size_t>(gi)]; ++pos) {
        const int x = co.order[static_cast<std::size_t>(pos)];
        res[static_cast<std::size_t>(x)] =
            std::max(res[static_cast<std::size_t>(x)], sufmax[static_cast<std::size_t>(gi)]);
      }
  }
  return finish_root(std::move(res), p);
}

RestrictedField maximal_restricted(const Space& s, const FieldFunction& f,
                                   double p, const Ball& restriction) {
  check_p(p);
  check_bound(s, f);
  if (restriction.members.empty()) throw EmptyBall("empty restriction ball");
  const int n = s.n();
  const std::vector<double> g = abs_pow_mass(s, f, p);
  RestrictedField out;
  out.values.assign(static_cast<std::size_t>(n),
                    std::numeric_limits<double>::quiet_NaN());
  out.defined.assign(static_cast<std::size_t>(n), 0);
  std::vector<char> in_b(static_cast<std::size_t>(n), 0);
  for (int x : restriction.members) {
    in_b[static_cast<std::size_t>(x)] = 1;
    out.defined[static_cast<std::size_t>(x)] = 1;
    out.values[static_cast<std::size_t>(x)] = 0.0;
  }
  detail::CenterOrder co;
  std::vector<double> row, vals, revmax;
  for (int c : restriction.members) {
    detail::build_center_order(s, c, co, row);
    // Longest prefix fully inside the restriction, floored to a group end.
    int stop = 0;
    while (stop < n && in_b[static_cast<std::size_t>(co.order[static_cast<std::size_t>(stop)])])
      ++stop;
    int gmax = -1;
    for (int gi = 0; gi < co.groups(); ++gi)
      if (co.group_end[static_cast<std::size_t>(gi)] <= stop) gmax = gi;
    if (gmax < 0) continue;  // cannot happen: the singleton {c} is inside
    vals.assign(static_cast<std::size_t>(gmax) + 1, 0.0);
    double num = 0.0, den = 0.0;
    int pos = 0;
    for (int gi = 0; gi <= gmax; ++gi) {
      for (; pos < co.group_end[static_cast<std::size_t>(gi)]; ++pos) {
        const int x = co.order[static_cast<std::size_t>(pos)];
        num += g[static_cast<std::size_t>(x)];
        den += s.mass(x);
      }
      vals[static_cast<std::size_t>(gi)] = num / den;
    }
    revmax.assign(static_cast<std::size_t>(gmax) + 1, 0.0);
    double run = -std::numeric_limits<double>::infinity();
    for (int gi = gmax; gi >= 0; --gi) {
      run = std::max(run, vals[static_cast<std::size_t>(gi)]);
      revmax[static_cast<std::size_t>(gi)] = run;
    }
    pos = 0;
    for (int gi = 0; gi <= gmax; ++gi)
      for (; pos < co.group_end[static_cast<std::size_t>(gi)]; ++pos) {
        const int x = co.order[static_cast<std::size_t>(pos)];
        out.values[static_cast<std::size_t>(x)] =
            std::max(out.values[static_cast<std::size_t>(x)],
                     revmax[static_cast<std::size_t>(gi)]);
      }
  }
  if (p != 1.0)
    for (int x : restriction.members)
      out.values[static_cast<std::size_t>(x)] =
          std::pow(out.values[static_cast<std::size_t>(x)], 1.0 / p);
  return out;
}

FieldFunction sharp_maximal(const Space& s, const FieldFunction& f) {
  check_bound(s, f);
  const int n = s.n();
  detail::ValueRanks ranks;
  ranks.build(f.values());
  detail::Fenwick2 fen;
  fen.init(static_cast<int>(ranks.sorted_unique.size()));
  std::vector<double> res(static_cast<std::size_t>(n), 0.0);
  detail::CenterOrder co;
  std::vector<double> row, vals, sufmax;
  for (int c = 0; c < n; ++c) {
    detail::build_center_order(s, c, co, row);
    const int G = co.groups();
    fen.clear();
    vals.assign(static_cast<std::size_t>(G), 0.0);
    double sum_fm = 0.0, mass = 0.0;
    int pos = 0;
    for (int gi = 0; gi < G; ++gi) {
      for (; pos < co.group_end[static_cast<std::size_t>(gi)]; ++pos) {
        const int x = co.order[static_cast<std::size_t>(pos)];
        const double m = s.mass(x);
        fen.add(ranks.rank[static_cast<std::size_t>(x)], m, f[x] * m);
        sum_fm += f[x] * m;
        mass += m;
      }
      const double mean = sum_fm / mass;
      const auto [m_lo, s_lo] = fen.prefix(ranks.rank_at_most(mean));
      const double dev =
          mean * m_lo - s_lo + (sum_fm - s_lo) - mean * (mass - m_lo);
      vals[static_cast<std::size_t>(gi)] = dev / mass;
    }
    sufmax.assign(static_cast<std::size_t>(G), 0.0);
    double run = -std::numeric_limits<double>::infinity();
    for (int gi = G - 1; gi >= 0; --gi) {
      run = std::max(run, vals[static_cast<std::size_t>(gi)]);
      sufmax[static_cast<std::size_t>(gi)] = run;
    }
    pos = 0;
    for (int gi = 0; gi < G; ++gi)
      for (; pos < co.group_end[static_cast<std::size_t>(gi)]; ++pos) {
        const int x = co.order[static_cast<std::size_t>(pos)];
        res[static_cast<std::size_t>(x)] =
            std::max(res[static_cast<std::size_t>(x)], sufmax[static_cast<std::size_t>(gi)]);
      }
  }
  return FieldFunction(std::move(res));
}

FieldFunction delta_variant(const Space& s, const FieldFunction& f,
                            double delta, DeltaKind kind) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw BadDelta("delta must lie in (0, 1)");
  check_bound(s, f);
  std::vector<double> g(static_cast<std::size_t>(s.n()));
  for (int i = 0; i < s.n(); ++i)
    g[static_cast<std::size_t>(i)] = std::pow(std::abs(f[i]), delta);
  const FieldFunction gd(std::move(g));
  FieldFunction m = kind == DeltaKind::Plain ? maximal(s, gd, 1.0)
                                             : sharp_maximal(s, gd);
  std::vector<double> v = m.values();
  for (double& x : v) x = std::pow(x, 1.0 / delta);
  return FieldFunction(std::move(v));
}

FieldFunction iterated_maximal(const Space& s, const FieldFunction& f) {
  return maximal(s, maximal(s, f, 1.0), 1.0);
}

FieldFunction maximal_llogl(const Space& s, const FieldFunction& f) {
  check_bound(s, f);
  const int n = s.n();
  std::vector<double> res(static_cast<std::size_t>(n), 0.0);
  detail::CenterOrder co;
  std::vector<double> row, vals, sufmax, av, am;
  for (int c = 0; c < n; ++c) {
    detail::build_center_order(s, c, co, row);
    const int G = co.groups();
    av.clear();
    am.clear();
    vals.assign(static_cast<std::size_t>(G), 0.0);
    int pos = 0;
    for (int gi = 0; gi < G; ++gi) {
      for (; pos < co.group_end[static_cast<std::size_t>(gi)]; ++pos) {
        const int x = co.order[static_cast<std::size_t>(pos)];
        av.push_back(std::abs(f[x]));
        am.push_back(s.mass(x));
      }
      vals[static_cast<std::size_t>(gi)] =
          detail::luxemburg_core({av.data(), av.size()}, {am.data(), am.size()},
                                 OrliczKind::LlogL);
    }
    sufmax.assign(static_cast<std::size_t>(G), 0.0);
    double run = -std::numeric_limits<double>::infinity();
    for (int gi = G - 1; gi >= 0; --gi) {
      run = std::max(run, vals[static_cast<std::size_t>(gi)]);
      sufmax[static_cast<std::size_t>(gi)] = run;
    }
    pos = 0;
    for (int gi = 0; gi < G; ++gi)
      for (; pos < co.group_end[static_cast<std::size_t>(gi)]; ++pos) {
        const int x = co.order[static_cast<std::size_t>(pos)];
        res[static_cast<std::size_t>(x)] =
            std::max(res[static_cast<std::size_t>(x)], sufmax[static_cast<std::size_t>(gi)]);
      }
  }
  return FieldFunction(std::move(res));
}

namespace {

FieldFunction pointwise_commutator(const Space& s, const FieldFunction& b,
                                   FieldFunction tbf, const FieldFunction& tf) {
  std::vector<double> v = tbf.values();
  for (int i = 0; i < s.n(); ++i) v[static_cast<std::size_t>(i)] -= b[i] * tf[i];
  return FieldFunction(std::move(v));
}

FieldFunction product(const FieldFunction& a, const FieldFunction& b) {
  std::vector<double> v = a.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= b[static_cast<int>(i)];
  return FieldFunction(std::move(v));
}

}  // namespace

FieldFunction commutator_maximal(const Space& s, const FieldFunction& b,
                                 const FieldFunction& f, double p) {
  check_bound(s, b);
  check_bound(s, f);
  return pointwise_commutator(s, b, maximal(s, product(b, f), p),
                              maximal(s, f, p));
}

FieldFunction commutator_sharp(const Space& s, const FieldFunction& b,
                               const FieldFunction& f) {
  check_bound(s, b);
  check_bound(s, f);
  return pointwise_commutator(s, b, sharp_maximal(s, product(b, f)),
                              sharp_maximal(s, f));
}

FieldFunction maximal_commutator(const Space& s, const FieldFunction& b,
                                 const FieldFunction& f) {
  check_bound(s, b);
  check_bound(s, f);
  const int n = s.n();
  detail::ValueRanks ranks;
  ranks.build(b.values());
  detail::Fenwick2 fen;  // per rank: (|f| mass, b |f| mass)
  fen.init(static_cast<int>(ranks.sorted_unique.size()));
  std::vector<double> res(static_cast<std::size_t>(n), 0.0);
  detail::CenterOrder co;
  std::vector<double> row;
  for (int c = 0; c < n; ++c) {
    detail::build_center_order(s, c, co, row);
    fen.clear();
    double w_all = 0.0, t_all = 0.0, mass = 0.0;
    int pos = 0;
    for (int gi = 0; gi < co.groups(); ++gi) {
      for (; pos < co.group_end[static_cast<std::size_t>(gi)]; ++pos) {
        const int x = co.order[static_cast<std::size_t>(pos)];
        const double wm = std::abs(f[x]) * s.mass(x);
        fen.add(ranks.rank[static_cast<std::size_t>(x)], wm, b[x] * wm);
        w_all += wm;
        t_all += b[x] * wm;
        mass += s.mass(x);
      }
      // Every member of the prefix sees this ball; the split by b(x) makes
      // the absolute difference a pair of signed sums.
      for (int j = 0; j < pos; ++j) {
        const int x = co.order[static_cast<std::size_t>(j)];
        const auto [w_lo, t_lo] = fen.prefix(ranks.rank[static_cast<std::size_t>(x)]);
        const double val =
            (b[x] * (w_lo - (w_all - w_lo)) - t_lo + (t_all - t_lo)) / mass;
        res[static_cast<std::size_t>(x)] =
            std::max(res[static_cast<std::size_t>(x)], val);
      }
    }
  }
  return FieldFunction(std::move(res));
}

namespace naive {

namespace {

std::vector<double> distinct_radii(const std::vector<double>& row) {
  std::vector<double> r = row;
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

}  // namespace

FieldFunction maximal(const Space& s, const FieldFunction& f, double p) {
  check_p(p);
  check_bound(s, f);
  const int n = s.n();
  std::vector<double> res(static_cast<std::size_t>(n), 0.0);
  std::vector<double> row(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    s.fill_dist_row(c, row);
    for (double r : distinct_radii(row)) {
      double num = 0.0, den = 0.0;
      for (int y = 0; y < n; ++y)
        if (row[static_cast<std::size_t>(y)] <= r) {
          num += std::pow(std::abs(f[y]), p) * s.mass(y);
          den += s.mass(y);
        }
      const double val = num / den;
      for (int y = 0; y < n; ++y)
        if (row[static_cast<std::size_t>(y)] <= r)
          res[static_cast<std::size_t>(y)] =
              std::max(res[static_cast<std::size_t>(y)], val);
    }
  }
  return finish_root(std::move(res), p);
}

FieldFunction sharp_maximal(const Space& s, const FieldFunction& f) {
  check_bound(s, f);
  const int n = s.n();
  std::vector<double> res(static_cast<std::size_t>(n), 0.0);
  std::vector<double> row(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    s.fill_dist_row(c, row);
    for (double r : distinct_radii(row)) {
      double num = 0.0, den = 0.0;
      for (int y = 0; y < n; ++y)
        if (row[static_cast<std::size_t>(y)] <= r) {
          num += f[y] * s.mass(y);
          den += s.mass(y);
        }
      const double mean = num / den;
      double dev = 0.0;
      for (int y = 0; y < n; ++y)
        if (row[static_cast<std::size_t>(y)] <= r)
          dev += std::abs(f[y] - mean) * s.mass(y);
      const double val = dev / den;
      for (int y = 0; y < n; ++y)
        if (row[static_cast<std::size_t>(y)] <= r)
          res[static_cast<std::size_t>(y)] =
              std::max(res[static_cast<std::size_t>(y)], val);
    }
  }
  return FieldFunction(std::move(res));
}

FieldFunction maximal_commutator(const Space& s, const FieldFunction& b,
                                 const FieldFunction& f) {
  check_bound(s, b);
  check_bound(s, f);
  const int n = s.n();
  std::vector<double> res(static_cast<std::size_t>(n), 0.0);
  std::vector<double> row(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    s.fill_dist_row(c, row);
    for (double r : distinct_radii(row)) {
      double den = 0.0;
      for (int y = 0; y < n; ++y)
        if (row[static_cast<std::size_t>(y)] <= r) den += s.mass(y);
      for (int x = 0; x < n; ++x) {
        if (row[static_cast<std::size_t>(x)] > r) continue;
        double num = 0.0;
        for (int y = 0; y < n; ++y)
          if (row[static_cast<std::size_t>(y)] <= r)
            num += std::abs(b[x] - b[y]) * std::abs(f[y]) * s.mass(y);
        res[static_cast<std::size_t>(x)] =
            std::max(res[static_cast<std::size_t>(x)], num / den);
      }
    }
  }
  return FieldFunction(std::move(res));
}

double bmo_mean_osc(const Space& s, const FieldFunction& b) {
  check_bound(s, b);
  const int n = s.n();
  double best = 0.0;
  std::vector<double> row(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    s.fill_dist_row(c, row);
    for (double r : distinct_radii(row)) {
      double num = 0.0, den = 0.0;
      for (int y = 0; y < n; ++y)
        if (row[static_cast<std::size_t>(y)] <= r) {
          num += b[y] * s.mass(y);
          den += s.mass(y);
        }
      const double mean = num / den;
      double dev = 0.0;
      for (int y = 0; y < n; ++y)
        if (row[static_cast<std::size_t>(y)] <= r)
          dev += std::abs(b[y] - mean) * s.mass(y);
      best = std::max(best, dev / den);
    }
  }
  return best;
}

RestrictedField maximal_restricted(const Space& s, const BallFamily& family,
                                   const FieldFunction& f, double p,
                                   const Ball& restriction) {
  check_p(p);
  check_bound(s, f);
  const int n = s.n();
  RestrictedField out;
  out.values.assign(static_cast<std::size_t>(n),
                    std::numeric_limits<double>::quiet_NaN());
  out.defined.assign(static_cast<std::size_t>(n), 0);
  std::vector<char> in_b(static_cast<std::size_t>(n), 0);
  for (int x : restriction.members) {
    in_b[static_cast<std::size_t>(x)] = 1;
    out.defined[static_cast<std::size_t>(x)] = 1;
    out.values[static_cast<std::size_t>(x)] = 0.0;
  }
  for (const Ball& sub : family.balls) {
    bool inside = true;
    for (int x : sub.members)
      if (!in_b[static_cast<std::size_t>(x)]) {
        inside = false;
        break;
      }
    if (!inside) continue;
    double num = 0.0;
    for (int y : sub.members) num += std::pow(std::abs(f[y]), p) * s.mass(y);
    const double val = num / sub.mass;
    for (int x : sub.members)
      out.values[static_cast<std::size_t>(x)] =
          std::max(out.values[static_cast<std::size_t>(x)], val);
  }
  if (p != 1.0)
    for (int x : restriction.members)
      out.values[static_cast<std::size_t>(x)] =
          std::pow(out.values[static_cast<std::size_t>(x)], 1.0 / p);
  return out;
}

}  // namespace naive

}  // namespace homax
