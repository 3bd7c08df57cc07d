#pragma once

#include <cstddef>
#include <vector>

namespace homax {

/// A real-valued function given by one value per point of a Space, in point
/// order.  Values are validated to be finite at construction.  Instances are
/// immutable; derived functions are built from a fresh value vector.
class FieldFunction {
 public:
  FieldFunction() = default;
  explicit FieldFunction(std::vector<double> values);

  static FieldFunction constant(int n, double value);

  int size() const { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return v_; }

 private:
  std::vector<double> v_;
};

/// max(f, 0) pointwise.
FieldFunction positive_part(const FieldFunction& f);
/// max(-f, 0) pointwise, so f = positive_part(f) - negative_part(f).
FieldFunction negative_part(const FieldFunction& f);

}  // namespace homax
