#pragma once

#include <vector>

#include "homax/field.hpp"
#include "homax/space.hpp"

namespace homax {

/// Strictly positive density against the base measure.  Values are clamped
/// into [1e-12, 1e12] at construction for double-precision safety; the number
/// of clamped entries is kept so callers can surface a warning instead of an
/// abort.
class Weight {
 public:
  Weight(const Space& s, const FieldFunction& w);

  int size() const { return static_cast<int>(v_.size()); }
  double value(int i) const { return v_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return v_; }
  /// w(i) * mass(i), the integration element.
  double element(int i) const { return wm_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& elements() const { return wm_; }
  /// w(B) over explicit members, summed in member order.
  double ball_total(const Ball& b) const;
  int clamped_count() const { return clamped_; }

 private:
  std::vector<double> v_;
  std::vector<double> wm_;
  int clamped_ = 0;
};

/// Muckenhoupt characteristic for p in (1, infinity):
/// sup over balls of (mean of w) * (mean of w^(-1/(p-1)))^(p-1), means
/// mass-weighted.  Evaluated by per-center prefix sweeps, O(n^2 log n).
double ap_constant(const Space& s, const Weight& w, double p);

/// sup over points of M(w)(x) / w(x); always >= 1.
double a1_constant(const Space& s, const Weight& w);

/// Which transform the characterization quantity compares b against.
enum class CharKind {
  RestrictedMaximal,  // T = M_{p, B}(b) on B
  SharpOfCutoff,      // T = 2 * Msharp(b * chi_B)
};

/// sup over family balls B of
///   (1/w(B)) * sum_B |b - T(x)|^q * w * mass,
/// with T per `kind`.  `p` is the exponent of the restricted maximal and is
/// ignored for SharpOfCutoff.  O(family * n^2 log n); meant for small spaces.
double weighted_char_quantity(const Space& s, const BallFamily& family,
                              const FieldFunction& b, const Weight& w,
                              double q, CharKind kind, double p = 1.0);

struct ExpWeightRow {
  double d = 0.0;
  double ap = 0.0;
};

struct ExpWeightScan {
  std::vector<ExpWeightRow> rows;   // in d_grid order
  double largest_passing_abs_d = 0.0;
  bool any_pass = false;
};

/// For each d in the grid, the A_q characteristic of e^(d b) * w.  Reports
/// the largest |d| whose constant stays at or below `threshold`.
ExpWeightScan exp_weight_scan(const Space& s, const FieldFunction& b,
                              const Weight& w, double q,
                              const std::vector<double>& d_grid,
                              double threshold);

}  // namespace homax
