#include "homax/field.hpp"

#include <cmath>

#include "homax/errors.hpp"

namespace homax {

FieldFunction::FieldFunction(std::vector<double> values) : v_(std::move(values)) {
  for (double x : v_)
    if (!std::isfinite(x))
      throw NonFiniteValue("field functions must take finite values");
}

FieldFunction FieldFunction::constant(int n, double value) {
  if (n < 0) throw BadCount("negative point count");
  return FieldFunction(std::vector<double>(static_cast<std::size_t>(n), value));
}

FieldFunction positive_part(const FieldFunction& f) {
  std::vector<double> v = f.values();
  for (double& x : v) x = x > 0.0 ? x : 0.0;
  return FieldFunction(std::move(v));
}

FieldFunction negative_part(const FieldFunction& f) {
  std::vector<double> v = f.values();
  for (double& x : v) x = x < 0.0 ? -x : 0.0;
  return FieldFunction(std::move(v));
}

}  // namespace homax
