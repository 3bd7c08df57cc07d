#pragma once

#include <cstdint>
#include <vector>

#include "homax/field.hpp"
#include "homax/space.hpp"

namespace homax {

/// Result of an operator restricted to a ball.  Points outside the
/// restriction are explicitly undefined (defined = 0 and a NaN value); they
/// are never reported as 0.
struct RestrictedField {
  std::vector<double> values;
  std::vector<std::uint8_t> defined;
};

/// Hardy-Littlewood style maximal operator with exponent p >= 1:
/// sup over balls B containing x of (mean_B |f|^p)^(1/p).
///
/// Every realizable ball around a center is a prefix of the distance-sorted
/// point order, so one pass of prefix sums and a suffix max per center
/// evaluates the sup exactly in O(n^2 log n); the naive route below is the
/// O(n^3) oracle for it.
FieldFunction maximal(const Space& s, const FieldFunction& f, double p = 1.0);

/// Same sup, but only over balls contained in `restriction` (admissible
/// sub-balls are the realizable balls whose member set is inside it).
RestrictedField maximal_restricted(const Space& s, const FieldFunction& f,
                                   double p, const Ball& restriction);

/// Fefferman-Stein sharp function: sup over balls containing x of
/// mean_B |f - mean_B(f)|.
FieldFunction sharp_maximal(const Space& s, const FieldFunction& f);

enum class DeltaKind { Plain, Sharp };

/// (M(|f|^delta))^(1/delta) or (Msharp(|f|^delta))^(1/delta), delta in (0,1).
FieldFunction delta_variant(const Space& s, const FieldFunction& f,
                            double delta, DeltaKind kind);

/// M applied twice (p = 1).
FieldFunction iterated_maximal(const Space& s, const FieldFunction& f);

/// Orlicz maximal operator: sup over balls containing x of the L log L
/// Luxemburg norm of f on the ball.  Costs O(n^3 log(1/tol)) because each
/// ball's norm needs its own bisection.
FieldFunction maximal_llogl(const Space& s, const FieldFunction& f);

/// Commutator [M_p, b] f = M_p(b f) - b * M_p(f); carries sign.
FieldFunction commutator_maximal(const Space& s, const FieldFunction& b,
                                 const FieldFunction& f, double p = 1.0);

/// Commutator [Msharp, b] f = Msharp(b f) - b * Msharp(f).
FieldFunction commutator_sharp(const Space& s, const FieldFunction& b,
                               const FieldFunction& f);

/// Maximal commutator:
/// C_b f(x) = sup over balls B containing x of
///            (1/mu(B)) * sum_B |b(x) - b(y)| |f(y)| dmu(y).
/// O(n^3 log n): the integrand depends on the evaluation point, so every
/// (ball, member) pair is visited once with Fenwick splits by b-value.
FieldFunction maximal_commutator(const Space& s, const FieldFunction& b,
                                 const FieldFunction& f);

/// Reference evaluators, deliberately literal: double loop over
/// (center, radius) with linear scans.  These are the oracle route the
/// optimized evaluators are tested against and benchmarked with.
namespace naive {

FieldFunction maximal(const Space& s, const FieldFunction& f, double p = 1.0);
FieldFunction sharp_maximal(const Space& s, const FieldFunction& f);
FieldFunction maximal_commutator(const Space& s, const FieldFunction& b,
                                 const FieldFunction& f);
double bmo_mean_osc(const Space& s, const FieldFunction& b);
/// Filters the deduplicated family by an explicit subset test.
RestrictedField maximal_restricted(const Space& s, const BallFamily& family,
                                   const FieldFunction& f, double p,
                                   const Ball& restriction);

}  // namespace naive

}  // namespace homax
