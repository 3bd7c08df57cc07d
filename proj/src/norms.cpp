#include "homax/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "homax/detail/sweep.hpp"
#include "homax/errors.hpp"

namespace homax {

namespace {

void check_bound(const Space& s, const FieldFunction& f) {
  if (f.size() != s.n())
    throw SizeMismatch("field length does not match the space");
}

double log_plus(double t) { return t > 1.0 ? std::log(t) : 0.0; }

}  // namespace

double ball_average(const Space& s, const FieldFunction& f,
                    std::span<const int> members) {
  check_bound(s, f);
  if (members.empty()) throw EmptyBall("average over an empty member set");
  double num = 0.0, den = 0.0;
  for (int x : members) {
    num += f[x] * s.mass(x);
    den += s.mass(x);
  }
  return num / den;
}

double lp_norm(const Space& s, const FieldFunction& f, double p,
               const std::vector<double>* weight) {
  check_bound(s, f);
  if (std::isinf(p) && p > 0.0) {
    double m = 0.0;
    for (int i = 0; i < s.n(); ++i) m = std::max(m, std::abs(f[i]));
    return m;
  }
  if (!(p >= 1.0) || !std::isfinite(p))
    throw BadExponent("lp_norm needs p in [1, infinity]");
  if (weight && static_cast<int>(weight->size()) != s.n())
    throw SizeMismatch("weight length does not match the space");
  double acc = 0.0;
  for (int i = 0; i < s.n(); ++i) {
    const double w = weight ? (*weight)[static_cast<std::size_t>(i)] : 1.0;
    acc += std::pow(std::abs(f[i]), p) * w * s.mass(i);
  }
  return std::pow(acc, 1.0 / p);
}

namespace {

/// Oscillation-style sweep over every realizable ball.  `pick_center` chooses
/// the value c the deviation is measured against (ball mean or weighted
/// median); returns the sup of mean_B |b - c|.
template <bool UseMedian>
double osc_sweep(const Space& s, const FieldFunction& b) {
  const int n = s.n();
  detail::ValueRanks ranks;
  ranks.build(b.values());
  detail::Fenwick2 fen;
  fen.init(static_cast<int>(ranks.sorted_unique.size()));
  detail::CenterOrder co;
  std::vector<double> row;
  double best = 0.0;
  for (int c = 0; c < n; ++c) {
    detail::build_center_order(s, c, co, row);
    fen.clear();
    double sum_bm = 0.0, mass = 0.0;
    int pos = 0;
    for (int g = 0; g < co.groups(); ++g) {
      for (; pos < co.group_end[static_cast<std::size_t>(g)]; ++pos) {
        const int x = co.order[static_cast<std::size_t>(pos)];
        const double m = s.mass(x);
        fen.add(ranks.rank[static_cast<std::size_t>(x)], m, b[x] * m);
        sum_bm += b[x] * m;
        mass += m;
      }
      double center;
      int split_rank;
      if constexpr (UseMedian) {
        split_rank = fen.lower_rank(mass / 2.0);
        center = ranks.sorted_unique[static_cast<std::size_t>(split_rank)];
      } else {
        center = sum_bm / mass;
        split_rank = ranks.rank_at_most(center);
      }
      const auto [m_lo, s_lo] = fen.prefix(split_rank);
      const double dev =
          center * m_lo - s_lo + (sum_bm - s_lo) - center * (mass - m_lo);
      best = std::max(best, dev / mass);
    }
  }
  return best;
}

double ppower_sweep(const Space& s, const FieldFunction& b, double p) {
  const int n = s.n();
  detail::CenterOrder co;
  std::vector<double> row;
  double best = 0.0;
  for (int c = 0; c < n; ++c) {
    detail::build_center_order(s, c, co, row);
    double sum_bm = 0.0, mass = 0.0;
    int pos = 0;
    for (int g = 0; g < co.groups(); ++g) {
      for (; pos < co.group_end[static_cast<std::size_t>(g)]; ++pos) {
        const int x = co.order[static_cast<std::size_t>(pos)];
        sum_bm += b[x] * s.mass(x);
        mass += s.mass(x);
      }
      const double mean = sum_bm / mass;
      double dev = 0.0;
      for (int j = 0; j < pos; ++j) {
        const int x = co.order[static_cast<std::size_t>(j)];
        dev += std::pow(std::abs(b[x] - mean), p) * s.mass(x);
      }
      best = std::max(best, std::pow(dev / mass, 1.0 / p));
    }
  }
  return best;
}

}  // namespace

double bmo_norm(const Space& s, const FieldFunction& b, BmoVariant variant,
                double p) {
  check_bound(s, b);
  switch (variant) {
    case BmoVariant::MeanOsc:
      return osc_sweep<false>(s, b);
    case BmoVariant::InfC:
      return osc_sweep<true>(s, b);
    case BmoVariant::PPower:
      if (!(p > 0.0) || !std::isfinite(p))
        throw BadExponent("PPower variant needs p in (0, infinity)");
      return ppower_sweep(s, b, p);
    case BmoVariant::LocalL1:
      return osc_sweep<false>(s, b) + lp_norm(s, b, 1.0);
  }
  return 0.0;
}

namespace detail {

double luxemburg_core(std::span<const double> abs_values,
                      std::span<const double> masses, OrliczKind kind) {
  double mu = 0.0, l1 = 0.0, sup = 0.0;
  for (std::size_t i = 0; i < abs_values.size(); ++i) {
    mu += masses[i];
    l1 += abs_values[i] * masses[i];
    sup = std::max(sup, abs_values[i]);
  }
  if (l1 == 0.0) return 0.0;
  const auto feasible = [&](double lam) {
    double acc = 0.0;
    for (std::size_t i = 0; i < abs_values.size(); ++i) {
      const double t = abs_values[i] / lam;
      acc += (kind == OrliczKind::LlogL ? t * std::log(2.0 + t)
                                        : std::exp(std::min(t, 700.0)))
             * masses[i];
    }
    const double bound = kind == OrliczKind::LlogL ? 1.0 : 2.0;
    return acc / mu <= bound;
  };
  // The bracket [l1/(16 mu), 16 sup] straddles the root for both shapes;
  // the doubling loops are a safety net against degenerate inputs.
  double lo = l1 / (16.0 * mu);
  double hi = 16.0 * sup;
  for (int i = 0; i < 128 && feasible(lo); ++i) lo /= 2.0;
  for (int i = 0; i < 128 && !feasible(hi); ++i) hi *= 2.0;
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

double luxemburg_norm(const Space& s, const FieldFunction& f,
                      std::span<const int> subset, OrliczKind kind) {
  check_bound(s, f);
  if (subset.empty()) throw EmptySubset("Luxemburg norm over an empty subset");
  std::vector<double> av, am;
  av.reserve(subset.size());
  am.reserve(subset.size());
  for (int x : subset) {
    if (x < 0 || x >= s.n()) throw UnknownPoint("subset index out of range");
    av.push_back(std::abs(f[x]));
    am.push_back(s.mass(x));
  }
  return detail::luxemburg_core(av, am, kind);
}

double StepRearrangement::evaluate(double t) const {
  if (!(t > 0.0) || !std::isfinite(t))
    throw BadParameter("rearrangement argument must be positive and finite");
  if (levels.empty() || t > breakpoints.back()) return 0.0;
  const auto it = std::lower_bound(breakpoints.begin() + 1, breakpoints.end(), t);
  return levels[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

StepRearrangement rearrangement(const Space& s, const FieldFunction& f) {
  check_bound(s, f);
  std::vector<std::pair<double, double>> vm;  // (|f|, mass), zeros dropped
  vm.reserve(static_cast<std::size_t>(s.n()));
  for (int i = 0; i < s.n(); ++i)
    if (f[i] != 0.0) vm.emplace_back(std::abs(f[i]), s.mass(i));
  std::sort(vm.begin(), vm.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  StepRearrangement r;
  r.breakpoints.push_back(0.0);
  double acc = 0.0;
  std::size_t i = 0;
  while (i < vm.size()) {
    const double level = vm[i].first;
    double m = 0.0;
    while (i < vm.size() && vm[i].first == level) m += vm[i++].second;
    acc += m;
    r.levels.push_back(level);
    r.breakpoints.push_back(acc);
  }
  return r;
}

double distribution_function(const Space& s, const FieldFunction& f, double lam) {
  check_bound(s, f);
  if (!(lam >= 0.0) || !std::isfinite(lam))
    throw BadParameter("distribution threshold must be nonnegative and finite");
  double acc = 0.0;
  for (int i = 0; i < s.n(); ++i)
    if (std::abs(f[i]) > lam) acc += s.mass(i);
  return acc;
}

double llogl_functional(const Space& s, const FieldFunction& f, double lam) {
  check_bound(s, f);
  if (!(lam > 0.0) || !std::isfinite(lam))
    throw NonPositiveLambda("llogl_functional needs lam > 0");
  double acc = 0.0;
  for (int i = 0; i < s.n(); ++i) {
    const double t = std::abs(f[i]) / lam;
    acc += t * (1.0 + log_plus(t)) * s.mass(i);
  }
  return acc;
}

}  // namespace homax
