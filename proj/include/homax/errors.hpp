#pragma once

#include <stdexcept>
#include <string>

namespace homax {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define HOMAX_DEFINE_ERROR(Name)                              \
  struct Name final : Error {                                 \
    explicit Name(const std::string& what) : Error(what) {}   \
  }

// space construction / queries
HOMAX_DEFINE_ERROR(NonSymmetricMetric);
HOMAX_DEFINE_ERROR(NonZeroDiagonal);
HOMAX_DEFINE_ERROR(ZeroOffDiagonal);
HOMAX_DEFINE_ERROR(NegativeDistance);
HOMAX_DEFINE_ERROR(NonPositiveMass);
HOMAX_DEFINE_ERROR(NonPositiveRadius);
HOMAX_DEFINE_ERROR(UnknownPoint);
HOMAX_DEFINE_ERROR(CMuTooSmall);

// functions and norms
HOMAX_DEFINE_ERROR(NonFiniteValue);
HOMAX_DEFINE_ERROR(SizeMismatch);
HOMAX_DEFINE_ERROR(EmptyBall);
HOMAX_DEFINE_ERROR(EmptySubset);
HOMAX_DEFINE_ERROR(BadExponent);
HOMAX_DEFINE_ERROR(BadDelta);
HOMAX_DEFINE_ERROR(NonPositiveLambda);

// generators
HOMAX_DEFINE_ERROR(BadCount);
HOMAX_DEFINE_ERROR(BadParameter);
HOMAX_DEFINE_ERROR(MissingPoint);

// verification
HOMAX_DEFINE_ERROR(UnknownCheck);
HOMAX_DEFINE_ERROR(EmptyGrid);

// file I/O
HOMAX_DEFINE_ERROR(IoError);

#undef HOMAX_DEFINE_ERROR

}  // namespace homax
