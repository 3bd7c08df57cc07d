#pragma once

#include <span>
#include <vector>

#include "homax/field.hpp"
#include "homax/space.hpp"

namespace homax {

/// Plain average (1/mu(B)) * sum of f over the members, in member order.
double ball_average(const Space& s, const FieldFunction& f,
                    std::span<const int> members);

/// L^p norm over the whole space, optionally against a weight density
/// (integration element w * mass).  p = infinity gives max |f|; every point
/// carries positive mass, so no essential-sup subtleties arise.
double lp_norm(const Space& s, const FieldFunction& f, double p,
               const std::vector<double>* weight = nullptr);

enum class BmoVariant {
  MeanOsc,   // sup_B mean_B |b - mean_B(b)|
  InfC,      // sup_B inf_c mean_B |b - c|, inner inf solved by weighted median
  PPower,    // sup_B (mean_B |b - mean_B(b)|^p)^(1/p)
  LocalL1,   // MeanOsc + L1 norm of b
};

/// Bounded-mean-oscillation norms.  `p` applies to PPower only (p > 0).
/// PPower rescans every ball, costing O(n^3); the other variants run in
/// O(n^2 log n) via per-center prefix sweeps.
double bmo_norm(const Space& s, const FieldFunction& b, BmoVariant variant,
                double p = 1.0);

enum class OrliczKind {
  LlogL,  // inf { lam > 0 : mean_E (|f|/lam) * log(2 + |f|/lam) <= 1 }
  ExpL,   // inf { lam > 0 : mean_E exp(|f|/lam) <= 2 }
};

/// Luxemburg norm of f over a subset of point indices (natural logarithm
/// throughout).  Solved by bracketing and bisection to 1e-10 relative;
/// returns 0 when f vanishes on the subset.
double luxemburg_norm(const Space& s, const FieldFunction& f,
                      std::span<const int> subset, OrliczKind kind);

/// Decreasing rearrangement of |f| against the measure, as a step function.
/// evaluate(t) realizes inf { s > 0 : mu(|f| > s) < t } exactly; it is
/// `levels[i]` on (breakpoints[i], breakpoints[i+1]] and 0 past the mass of
/// the support.
struct StepRearrangement {
  std::vector<double> breakpoints;  // 0 = t_0 < t_1 < ... < t_k
  std::vector<double> levels;       // strictly decreasing, positive, size k

  double evaluate(double t) const;
  double support_mass() const { return breakpoints.back(); }
};

StepRearrangement rearrangement(const Space& s, const FieldFunction& f);

/// mu({ |f| > lam }), strict inequality; lam must be >= 0.
double distribution_function(const Space& s, const FieldFunction& f, double lam);

/// sum over X of (|f|/lam) * (1 + log+(|f|/lam)) d(mu); lam must be > 0.
double llogl_functional(const Space& s, const FieldFunction& f, double lam);

namespace detail {
/// Bracketing + bisection solver shared with the Orlicz maximal operator.
double luxemburg_core(std::span<const double> abs_values,
                      std::span<const double> masses, OrliczKind kind);
}  // namespace detail

}  // namespace homax
