#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace homax {

/// How pairwise distances are represented.  Abs1D and Circle spaces compute
/// distances from 1-d coordinates on demand, which keeps large spaces cheap;
/// Matrix spaces store the full symmetric matrix row-major.
enum class MetricKind { Matrix, Abs1D, Circle };

/// A ball of the space.  `members` is the sorted list of point indices and
/// equals {y : dist(center, y) < radius} exactly; radii are chosen so that
/// strict inequality realizes the set (see enumerate_balls).
struct Ball {
  int center = 0;
  double radius = 0.0;
  std::vector<int> members;
  double mass = 0.0;
};

/// Finite quasi-metric measure space.  Immutable after construction.
///
/// Invariants: dist is symmetric, zero exactly on the diagonal, and satisfies
/// dist(x,y) <= a0 * (dist(x,z) + dist(z,y)) for every triple, where a0 is the
/// exact maximal quotient (floored at 1).  All masses are strictly positive.
class Space {
 public:
  /// Dense-matrix construction; validates the quasi-metric axioms and runs
  /// the exact O(n^3) quotient scan for a0.
  static Space from_matrix(std::vector<std::int64_t> point_ids,
                           std::vector<double> dist_rowmajor,
                           std::vector<double> masses);

  /// Points on a line with dist = |x - y|.  Coordinates must be pairwise
  /// distinct.  This is a metric, so a0 = 1 without a scan.
  static Space from_line(std::vector<std::int64_t> point_ids,
                         std::vector<double> coords,
                         std::vector<double> masses);

  /// Points on a circle of unit circumference, positions in [0,1).  The
  /// distance is the arc length raised to `exponent` (0 < exponent <= 1),
  /// which is again a metric, so a0 = 1.
  static Space from_circle(std::vector<std::int64_t> point_ids,
                           std::vector<double> positions,
                           std::vector<double> masses,
                           double exponent = 1.0);

  int n() const { return n_; }
  std::int64_t point_id(int i) const { return ids_[static_cast<std::size_t>(i)]; }
  const std::vector<std::int64_t>& point_ids() const { return ids_; }
  /// Index of a point id; throws UnknownPoint.
  int index_of(std::int64_t id) const;

  double dist(int i, int j) const;
  /// Writes dist(i, *) into `out` (size n); row access for tight loops.
  void fill_dist_row(int i, std::span<double> out) const;

  double mass(int i) const { return masses_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& masses() const { return masses_; }
  double total_mass() const { return total_mass_; }
  double diameter() const { return diameter_; }
  /// Exact quasi-triangle constant, >= 1.
  double a0() const { return a0_; }

  MetricKind kind() const { return kind_; }
  /// Arc exponent for Circle spaces (1 for a plain circle).
  double circle_exponent() const { return exponent_; }
  /// 1-d coordinates (Abs1D, Circle) or generator-provided positions; may be
  /// empty for Matrix spaces.
  const std::vector<double>& coords() const { return coords_; }
  /// Dense distance matrix; empty unless kind() == Matrix.
  const std::vector<double>& matrix() const { return dist_; }

 private:
  Space() = default;
  void finish(double a0);

  int n_ = 0;
  MetricKind kind_ = MetricKind::Matrix;
  std::vector<std::int64_t> ids_;
  std::vector<double> coords_;
  std::vector<double> dist_;
  std::vector<double> masses_;
  double exponent_ = 1.0;
  double total_mass_ = 0.0;
  double diameter_ = 0.0;
  double a0_ = 1.0;
};

/// Validating constructor over a dense matrix (same as Space::from_matrix).
Space build_space(std::vector<std::int64_t> point_ids,
                  std::vector<double> dist_rowmajor,
                  std::vector<double> masses);

/// Exact max over ordered triples of dist(x,y) / (dist(x,z) + dist(z,y)),
/// floored at 1.  O(n^3); intended for validation and moderate spaces.
double quasi_triangle_constant(const Space& s);

/// The ball {y : dist(center, y) < radius}; throws NonPositiveRadius or
/// EmptyBall (radius so small that even the center is excluded is impossible,
/// so EmptyBall never fires for positive radii; it guards zero-member sets
/// from future representations).
Ball ball_at(const Space& s, int center_index, double radius);

/// Total mass of a set of point ids; throws UnknownPoint on stray ids.
double subset_measure(const Space& s, std::span<const std::int64_t> ids);

/// All distinct balls of the space with a per-point containment index.
struct BallFamily {
  std::vector<Ball> balls;
  std::vector<int> containing_offsets;  // size n+1, CSR layout
  std::vector<int> containing_data;     // ball indices, ascending per point

  std::span<const int> containing(int point) const {
    const auto b = static_cast<std::size_t>(containing_offsets[point]);
    const auto e = static_cast<std::size_t>(containing_offsets[point + 1]);
    return {containing_data.data() + b, e - b};
  }
};

/// Enumerates every realizable ball: for each center the radii sweep the
/// sorted distinct distances d, realizing {y : dist <= d} as the strict ball
/// of the next larger realizable radius.  Membership sets are deduplicated
/// globally (first-encountered center kept).  Family size is at most n^2.
/// Memory is Theta(sum of ball sizes); intended for spaces up to a few
/// hundred points.
BallFamily enumerate_balls(const Space& s);

/// Exact sup over x and r > 0 of mu(B(x,2r)) / mu(B(x,r)).
double doubling_constant(const Space& s);

/// Smallest growth exponent: max over lambda in {2,4,8,16} and all realized
/// (x, r) of log(mu_ratio / c_mu) / log(lambda), clamped at 0.  Requires
/// c_mu >= doubling_constant (CMuTooSmall otherwise).
double upper_dimension_estimate(const Space& s, double c_mu);

}  // namespace homax
