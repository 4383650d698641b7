#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lamo {

enum class ErrorKind {
  incompatible_radicands,
  zero_denominator,
  parse_error,
  not_non_decreasing,
  empty_window,
  horizon_exceeded,
  not_sorted,
  not_positive,
  non_positive_time,
  unsupported_point,
  outside_image,
  infinite_value,
  non_positive_slope,
  invalid_map,
  collision_present,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::incompatible_radicands: return "IncompatibleRadicands";
    case ErrorKind::zero_denominator: return "ZeroDenominator";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::not_non_decreasing: return "NotNonDecreasing";
    case ErrorKind::empty_window: return "EmptyWindow";
    case ErrorKind::horizon_exceeded: return "HorizonExceeded";
    case ErrorKind::not_sorted: return "NotSorted";
    case ErrorKind::not_positive: return "NotPositive";
    case ErrorKind::non_positive_time: return "NonPositiveTime";
    case ErrorKind::unsupported_point: return "UnsupportedPoint";
    case ErrorKind::outside_image: return "OutsideImage";
    case ErrorKind::infinite_value: return "InfiniteValue";
    case ErrorKind::non_positive_slope: return "NonPositiveSlope";
    case ErrorKind::invalid_map: return "InvalidMap";
    case ErrorKind::collision_present: return "CollisionPresent";
  }
  return "Unknown";
}

/// Every failure raised by the library. The kind is stable and is what the
/// CLI maps to exit codes; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lamo
