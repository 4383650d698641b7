#pragma once

/// \file continuous.hpp
/// Exactly representable strictly increasing continuous maps phi on (0, inf)
/// and the integer sets they generate.
///
/// Two families are supported:
///   - linear: phi(t) = lambda * t with lambda > 0 (rational or quadratic);
///   - piecewise linear through rational anchors phi(1), ..., phi(N), joined
///     to the origin by a straight segment, and continued past N either with
///     the last slope or with anchors L - D / (n + 1) that converge to L.
/// Piecewise maps are linear on every [n, n + 1], so evaluation, inversion,
/// and every floor stay inside the rationals.

#include "lamo/error.hpp"
#include "lamo/exact.hpp"
#include "lamo/sequences.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace lamo {

struct ExtendLastSlope {
  bool operator==(const ExtendLastSlope&) const = default;
};

struct SaturateToward {
  Exact limit;
  bool operator==(const SaturateToward&) const = default;
};

using MapTail = std::variant<ExtendLastSlope, SaturateToward>;

class MonotoneMap {
 public:
  static MonotoneMap linear(Exact slope) {
    if (slope.sign() <= 0) throw Error(ErrorKind::non_positive_slope, "slope " + to_string(slope) + " is not positive");
    MonotoneMap m;
    m.slope_ = std::move(slope);
    return m;
  }

  /// anchors[i] is phi(i + 1).
  static MonotoneMap piecewise(std::vector<Exact> anchors, MapTail tail) {
    if (anchors.empty()) throw Error(ErrorKind::invalid_map, "a piecewise map needs at least one anchor");
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      if (!anchors[i].is_rational()) {
        throw Error(ErrorKind::invalid_map, "anchor " + std::to_string(i + 1) + " is not rational");
      }
      if (anchors[i].sign() <= 0) throw Error(ErrorKind::invalid_map, "anchor " + std::to_string(i + 1) + " is not positive");
      if (i > 0 && !(anchors[i - 1] < anchors[i])) {
        throw Error(ErrorKind::invalid_map, "anchor " + std::to_string(i + 1) + " does not increase");
      }
    }
    if (const auto* sat = std::get_if<SaturateToward>(&tail)) {
      if (!sat->limit.is_rational()) throw Error(ErrorKind::invalid_map, "saturation limit must be rational");
      if (!(anchors.back() < sat->limit)) {
        throw Error(ErrorKind::invalid_map, "saturation limit " + to_string(sat->limit) + " must exceed every anchor");
      }
    }
    MonotoneMap m;
    m.anchors_ = std::move(anchors);
    m.tail_ = std::move(tail);
    if (const auto* sat = std::get_if<SaturateToward>(&m.tail_)) {
      m.tail_scale_ = (sat->limit - m.anchors_.back()) * Exact(static_cast<std::int64_t>(m.anchors_.size() + 1));
    }
    return m;
  }

  bool is_linear() const noexcept { return anchors_.empty(); }
  const Exact& slope() const noexcept { return slope_; }
  const std::vector<Exact>& anchors() const noexcept { return anchors_; }
  const MapTail& tail() const noexcept { return tail_; }
  bool saturates() const noexcept { return !is_linear() && std::holds_alternative<SaturateToward>(tail_); }

  /// D = (L - phi(N)) * (N + 1) for saturating maps.
  const Exact& saturation_scale() const noexcept { return tail_scale_; }

  /// Supremum M of the image (0, M); nullopt means M = inf.
  std::optional<Exact> image_bound() const {
    if (saturates()) return std::get<SaturateToward>(tail_).limit;
    return std::nullopt;
  }

  /// Indices n for which the map was built to satisfy a stated property
  /// (set by construct_phi for unknown tails); nullopt means all n.
  std::optional<std::uint64_t> validity_horizon() const noexcept { return validity_horizon_; }
  void set_validity_horizon(std::optional<std::uint64_t> h) noexcept { validity_horizon_ = h; }

  /// phi(n) for integer n >= 0, with phi(0) = 0 by continuity.
  Exact at_integer(const BigInt& n) const {
    if (n <= 0) return Exact();
    if (is_linear()) return slope_ * Exact(n);
    const BigInt count = anchors_.size();
    if (n <= count) return anchors_[static_cast<std::size_t>(n) - 1];
    if (saturates()) {
      // L - D / (n + 1), which meets the last anchor at n = N.
      return std::get<SaturateToward>(tail_).limit - tail_scale_ / Exact(BigInt(n + 1));
    }
    return anchors_.back() + last_slope() * Exact(BigInt(n - count));
  }

  bool operator==(const MonotoneMap& o) const {
    return slope_ == o.slope_ && anchors_ == o.anchors_ && tail_ == o.tail_;
  }

 private:
  MonotoneMap() = default;

  Exact last_slope() const {
    if (anchors_.size() == 1) return anchors_.front();
    return anchors_.back() - anchors_[anchors_.size() - 2];
  }

  Exact slope_;
  std::vector<Exact> anchors_;
  MapTail tail_;
  Exact tail_scale_;
  std::optional<std::uint64_t> validity_horizon_;
};

namespace detail {

inline std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorKind::horizon_exceeded, "integer " + v.str() + " is out of range");
  }
  return static_cast<std::uint64_t>(v);
}

inline Exact lerp(const Exact& lo, const Exact& hi, const Exact& frac) { return lo + frac * (hi - lo); }

}  // namespace detail

/// phi(t) for t > 0.
inline Exact eval(const MonotoneMap& phi, const Exact& t) {
  if (t.sign() <= 0) throw Error(ErrorKind::non_positive_time, "t = " + to_string(t));
  if (phi.is_linear()) return phi.slope() * t;
  if (!t.is_rational()) {
    throw Error(ErrorKind::unsupported_point, "piecewise maps are evaluated at rational points only");
  }
  BigInt n = floor(t);
  Exact lo = phi.at_integer(n);
  if (Exact(n) == t) return lo;
  return detail::lerp(lo, phi.at_integer(n + 1), t - Exact(n));
}

/// 0 < y < M.
inline bool image_contains(const MonotoneMap& phi, const Exact& y) {
  if (y.sign() <= 0) return false;
  auto bound = phi.image_bound();
  return !bound || y < *bound;
}

/// The unique t > 0 with phi(t) = y.
inline Exact inverse_eval(const MonotoneMap& phi, const Exact& y) {
  if (!image_contains(phi, y)) throw Error(ErrorKind::outside_image, "y = " + to_string(y));
  if (phi.is_linear()) return y / phi.slope();
  if (!y.is_rational()) {
    throw Error(ErrorKind::unsupported_point, "piecewise maps are inverted at rational points only");
  }
  const auto& anchors = phi.anchors();
  BigInt n;  // segment [n, n + 1] containing phi^-1(y)
  if (y < anchors.back()) {
    auto it = std::upper_bound(anchors.begin(), anchors.end(), y);
    n = static_cast<std::int64_t>(it - anchors.begin());
  } else if (phi.saturates()) {
    // Largest n with L - D / (n + 1) <= y.
    const Exact& limit = std::get<SaturateToward>(phi.tail()).limit;
    n = floor(phi.saturation_scale() / (limit - y)) - 1;
  } else {
    Exact slope = phi.at_integer(BigInt(anchors.size() + 1)) - anchors.back();
    n = floor((y - anchors.back()) / slope) + static_cast<std::int64_t>(anchors.size());
  }
  Exact lo = phi.at_integer(n);
  Exact hi = phi.at_integer(n + 1);
  return Exact(n) + (y - lo) / (hi - lo);
}

/// Number of meetings up to time t: floor(phi(t) + t).
inline std::uint64_t meeting_count(const MonotoneMap& phi, const Exact& t) {
  return detail::to_u64(floor(eval(phi, t) + t));
}

struct AvoidanceReport {
  std::uint64_t checked = 0;             // n = 1..checked were examined
  std::optional<std::uint64_t> violation;  // smallest n with phi(n) an integer

  bool holds() const noexcept { return !violation.has_value(); }
};

/// Checks phi(n) is never a positive integer for n = 1..N.
inline AvoidanceReport lattice_avoidance(const MonotoneMap& phi, std::uint64_t n_max) {
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    Exact v = eval(phi, Exact(BigInt(n)));
    if (v.is_integer() && v.sign() > 0) return {n_max, n};
  }
  return {n_max, std::nullopt};
}

struct CorollarySets {
  IntSet s_y;  // {floor(phi(n) + n)}
  IntSet s_x;  // {floor(n + phi^-1(n)) : n in Im(phi)}
};

inline CorollarySets corollary_sets(const MonotoneMap& phi, std::uint64_t k) {
  std::vector<std::uint64_t> sy;
  std::vector<std::uint64_t> sx;
  for (std::uint64_t n = 1;; ++n) {
    Exact t(BigInt{n});
    std::uint64_t v = detail::to_u64(floor(eval(phi, t) + t));
    if (v > k) break;
    sy.push_back(v);
  }
  for (std::uint64_t n = 1;; ++n) {
    Exact y(BigInt{n});
    if (!image_contains(phi, y)) break;
    std::uint64_t v = detail::to_u64(floor(y + inverse_eval(phi, y)));
    if (v > k) break;
    sx.push_back(v);
  }
  return {IntSet(std::move(sy), k), IntSet(std::move(sx), k)};
}

/// A piecewise-linear phi with floor(phi(n)) = f(n) and phi(n) never an
/// integer, through the anchors f(n) + 1 - 1/(n + 1).
///
/// A constant tail v saturates toward v + 1, so Im(phi) = (0, v + 1). An
/// unknown tail extends the last slope; the guarantees then cover the listed
/// prefix only (recorded as the validity horizon).
inline MonotoneMap construct_phi(const NumberSequence& f) {
  detail::require_non_decreasing(f);
  const Tail tail = f.effective_tail();
  if (tail.kind == TailKind::infinite) {
    throw Error(ErrorKind::infinite_value, "sequence takes the value inf; construct the map for its inverse instead");
  }
  std::vector<std::uint64_t> values;
  for (ExtNat x : f.prefix()) values.push_back(x.value());
  if (tail.kind == TailKind::constant && (values.empty() || values.back() < tail.value)) {
    values.push_back(tail.value);
  }
  if (values.empty()) throw Error(ErrorKind::empty_window, "no terms to interpolate");
  std::vector<Exact> anchors;
  anchors.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const BigInt n = i + 1;
    anchors.push_back(Exact(BigInt(values[i] + 1)) - Exact::rational(1, n + 1));
  }
  if (tail.kind == TailKind::constant) {
    return MonotoneMap::piecewise(std::move(anchors), SaturateToward{Exact(BigInt(tail.value + 1))});
  }
  MonotoneMap phi = MonotoneMap::piecewise(std::move(anchors), ExtendLastSlope{});
  phi.set_validity_horizon(f.prefix_length());
  return phi;
}

/// floor(phi^-1(n)) when n is in the image, inf otherwise.
inline ExtNat induced_inverse(const MonotoneMap& phi, std::uint64_t n) {
  Exact y(BigInt{n});
  if (!image_contains(phi, y)) return kInfinity;
  return ExtNat(detail::to_u64(floor(inverse_eval(phi, y))));
}

/// The sets {floor((1 + lambda) n)} and {floor((1 + 1/lambda) n)} cut to [1, K].
/// No irrationality check: rational slopes are accepted.
inline std::pair<IntSet, IntSet> beatty_pair(const Exact& lambda, std::uint64_t k) {
  CorollarySets sets = corollary_sets(MonotoneMap::linear(lambda), k);
  return {std::move(sets.s_y), std::move(sets.s_x)};
}

}  // namespace lamo
