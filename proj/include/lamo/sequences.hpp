#pragma once

/// \file sequences.hpp
/// Non-decreasing sequences over {0, 1, 2, ...} extended with infinity, their
/// inverses g(n) = #{m : f(m) < n}, the hat sets {n + f(n)}, and
/// complementarity checks on windows of the positive integers.
///
/// A sequence is a finite prefix f(1..N) plus a tail descriptor. Every
/// operation answers only inside its exactness horizon and raises
/// HorizonExceeded rather than guessing beyond it.

#include "lamo/error.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace lamo {

/// A value in {0, 1, 2, ...} or infinity.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtNat infinity() {
    ExtNat x;
    x.infinite_ = true;
    return x;
  }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  constexpr bool is_finite() const noexcept { return !infinite_; }

  std::uint64_t value() const {
    if (infinite_) throw Error(ErrorKind::infinite_value, "value() of infinity");
    return value_;
  }

  constexpr bool operator==(const ExtNat& o) const noexcept {
    return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
  }
  constexpr std::strong_ordering operator<=>(const ExtNat& o) const noexcept {
    if (infinite_ || o.infinite_) return infinite_ <=> o.infinite_;
    return value_ <=> o.value_;
  }

  friend constexpr ExtNat operator+(ExtNat x, std::uint64_t k) noexcept {
    return x.infinite_ ? x : ExtNat(x.value_ + k);
  }

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

inline constexpr ExtNat kInfinity = ExtNat::infinity();

inline std::string to_string(ExtNat x) {
  return x.is_infinite() ? std::string("inf") : std::to_string(x.value());
}

enum class TailKind { unknown, constant, infinite };

/// What the sequence does after its listed prefix.
struct Tail {
  TailKind kind = TailKind::unknown;
  std::uint64_t value = 0;  // meaningful for constant tails only

  static constexpr Tail unknown() { return {TailKind::unknown, 0}; }
  static constexpr Tail constant(std::uint64_t v) { return {TailKind::constant, v}; }
  static constexpr Tail infinite() { return {TailKind::infinite, 0}; }

  constexpr bool operator==(const Tail& o) const noexcept {
    return kind == o.kind && (kind != TailKind::constant || value == o.value);
  }
};

/// Upper bound on how many terms an operation will materialize.
inline constexpr std::uint64_t kMaxMaterialized = std::uint64_t{1} << 26;

class NumberSequence {
 public:
  NumberSequence() = default;
  NumberSequence(std::vector<ExtNat> prefix, Tail tail) : prefix_(std::move(prefix)), tail_(tail) {}

  const std::vector<ExtNat>& prefix() const noexcept { return prefix_; }
  const Tail& tail() const noexcept { return tail_; }
  std::uint64_t prefix_length() const noexcept { return prefix_.size(); }

  /// The tail once a trailing infinity in an unknown-tail prefix is taken
  /// into account (after an infinity every later term is infinite).
  Tail effective_tail() const noexcept {
    if (tail_.kind == TailKind::unknown && !prefix_.empty() && prefix_.back().is_infinite()) {
      return Tail::infinite();
    }
    return tail_;
  }

  /// f(n) for n >= 1, or nullopt if f(n) is not determined.
  std::optional<ExtNat> at(std::uint64_t n) const {
    if (n == 0) return std::nullopt;
    if (n <= prefix_.size()) return prefix_[n - 1];
    Tail t = effective_tail();
    switch (t.kind) {
      case TailKind::constant: return ExtNat(t.value);
      case TailKind::infinite: return kInfinity;
      case TailKind::unknown: return std::nullopt;
    }
    return std::nullopt;
  }

  /// Largest index with a determined value; nullopt when every index is.
  std::optional<std::uint64_t> horizon() const noexcept {
    if (effective_tail().kind == TailKind::unknown) return prefix_.size();
    return std::nullopt;
  }

  bool fully_determined() const noexcept { return !horizon().has_value(); }

  /// Same sequence with redundant trailing prefix entries dropped and a
  /// trailing infinity promoted to an infinite tail.
  NumberSequence canonical() const {
    NumberSequence out(prefix_, effective_tail());
    if (out.tail_.kind == TailKind::constant) {
      while (!out.prefix_.empty() && out.prefix_.back() == ExtNat(out.tail_.value)) out.prefix_.pop_back();
    } else if (out.tail_.kind == TailKind::infinite) {
      while (!out.prefix_.empty() && out.prefix_.back().is_infinite()) out.prefix_.pop_back();
    }
    return out;
  }

  /// Same sequence with the prefix extended to `length` terms from the tail.
  /// Unknown tails cannot be extended and are left as they are.
  NumberSequence materialized(std::uint64_t length) const {
    NumberSequence out = *this;
    if (length > kMaxMaterialized) {
      throw Error(ErrorKind::horizon_exceeded, "refusing to materialize " + std::to_string(length) + " terms");
    }
    for (std::uint64_t n = out.prefix_.size() + 1; n <= length; ++n) {
      auto v = at(n);
      if (!v) break;
      out.prefix_.push_back(*v);
    }
    return out;
  }

  /// Value equality of the denoted sequences (canonical forms compared).
  friend bool operator==(const NumberSequence& x, const NumberSequence& y) {
    NumberSequence cx = x.canonical();
    NumberSequence cy = y.canonical();
    return cx.prefix_ == cy.prefix_ && cx.tail_ == cy.tail_;
  }

 private:
  std::vector<ExtNat> prefix_;
  Tail tail_;
};

/// Strictly increasing positive integers, with membership of every integer
/// in [1, horizon] fully determined.
class IntSet {
 public:
  IntSet() = default;
  IntSet(std::vector<std::uint64_t> elements, std::uint64_t horizon)
      : elements_(std::move(elements)), horizon_(horizon) {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (elements_[i] == 0) throw Error(ErrorKind::not_positive, "set element 0 at position " + std::to_string(i + 1));
      if (i > 0 && elements_[i] <= elements_[i - 1]) {
        throw Error(ErrorKind::not_sorted, "set element " + std::to_string(elements_[i]) + " at position " +
                                               std::to_string(i + 1) + " does not exceed its predecessor");
      }
    }
    if (!elements_.empty() && elements_.back() > horizon_) {
      throw Error(ErrorKind::horizon_exceeded, "set element " + std::to_string(elements_.back()) +
                                                   " exceeds horizon " + std::to_string(horizon_));
    }
  }

  const std::vector<std::uint64_t>& elements() const noexcept { return elements_; }
  std::uint64_t horizon() const noexcept { return horizon_; }
  std::size_t size() const noexcept { return elements_.size(); }

  bool contains(std::uint64_t k) const { return std::binary_search(elements_.begin(), elements_.end(), k); }

  /// The same set cut down to [1, k], k <= horizon.
  IntSet truncated(std::uint64_t k) const {
    if (k > horizon_) {
      throw Error(ErrorKind::horizon_exceeded,
                  "cannot view window " + std::to_string(k) + " of a set with horizon " + std::to_string(horizon_));
    }
    std::vector<std::uint64_t> kept(elements_.begin(), std::upper_bound(elements_.begin(), elements_.end(), k));
    return IntSet(std::move(kept), k);
  }

  bool operator==(const IntSet&) const = default;

 private:
  std::vector<std::uint64_t> elements_;
  std::uint64_t horizon_ = 0;
};

inline bool check_non_decreasing(const NumberSequence& s) {
  const auto& p = s.prefix();
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i] < p[i - 1]) return false;
  }
  if (s.tail().kind == TailKind::constant) {
    ExtNat v(s.tail().value);
    return std::all_of(p.begin(), p.end(), [&](ExtNat x) { return x <= v; });
  }
  return true;
}

/// Index (1-based) of the first prefix term that breaks monotonicity or
/// exceeds a constant tail; 0 when there is none.
inline std::uint64_t first_order_violation(const NumberSequence& s) {
  const auto& p = s.prefix();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0 && p[i] < p[i - 1]) return i + 1;
    if (s.tail().kind == TailKind::constant && p[i] > ExtNat(s.tail().value)) return i + 1;
  }
  return 0;
}

namespace detail {

inline void require_non_decreasing(const NumberSequence& s) {
  if (std::uint64_t at = first_order_violation(s); at != 0) {
    throw Error(ErrorKind::not_non_decreasing, "term " + std::to_string(at) + " breaks the order");
  }
}

// #{m in prefix : f(m) < n}; the prefix is sorted in ExtNat order.
inline std::uint64_t count_below(const std::vector<ExtNat>& prefix, std::uint64_t n) {
  return static_cast<std::uint64_t>(std::lower_bound(prefix.begin(), prefix.end(), ExtNat(n)) - prefix.begin());
}

inline void check_materializable(std::uint64_t length) {
  if (length > kMaxMaterialized) {
    throw Error(ErrorKind::horizon_exceeded, "inverse window of " + std::to_string(length) + " terms is too large");
  }
}

}  // namespace detail

/// g(n) = #{m >= 1 : f(m) < n}.
///
/// Constant tail v: g(1..v) exact, g(n) = inf beyond (infinite tail).
/// Infinite tail: g is exact everywhere and ends in a constant tail.
/// Unknown tail with last term f(N): g(1..f(N)) exact, tail unknown.
inline NumberSequence invert(const NumberSequence& f) {
  detail::require_non_decreasing(f);
  const Tail tail = f.effective_tail();
  std::vector<ExtNat> g;
  switch (tail.kind) {
    case TailKind::constant: {
      detail::check_materializable(tail.value);
      for (std::uint64_t n = 1; n <= tail.value; ++n) g.push_back(detail::count_below(f.prefix(), n));
      return NumberSequence(std::move(g), Tail::infinite()).canonical();
    }
    case TailKind::infinite: {
      const auto& p = f.prefix();
      auto first_inf = std::find_if(p.begin(), p.end(), [](ExtNat x) { return x.is_infinite(); });
      std::vector<ExtNat> finite(p.begin(), first_inf);
      std::uint64_t largest = finite.empty() ? 0 : finite.back().value();
      detail::check_materializable(largest);
      for (std::uint64_t n = 1; n <= largest; ++n) g.push_back(detail::count_below(finite, n));
      return NumberSequence(std::move(g), Tail::constant(finite.size())).canonical();
    }
    case TailKind::unknown: {
      if (f.prefix().empty() || f.prefix().back() == ExtNat(0)) {
        throw Error(ErrorKind::empty_window, "the inverse is not determined at any index");
      }
      std::uint64_t window = f.prefix().back().value();
      detail::check_materializable(window);
      for (std::uint64_t n = 1; n <= window; ++n) g.push_back(detail::count_below(f.prefix(), n));
      return NumberSequence(std::move(g), Tail::unknown());
    }
  }
  return {};
}

struct GridWitness {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  bool operator==(const GridWitness&) const = default;
};

/// First (m, n) in the M x N window where "f(m) < n" and "g(n) < m" are not
/// exactly one true; nullopt when the whole window passes.
inline std::optional<GridWitness> find_grid_violation(const NumberSequence& f, const NumberSequence& g,
                                                      std::uint64_t rows, std::uint64_t cols) {
  std::vector<ExtNat> fv;
  std::vector<ExtNat> gv;
  for (std::uint64_t m = 1; m <= rows; ++m) {
    auto v = f.at(m);
    if (!v) throw Error(ErrorKind::horizon_exceeded, "f(" + std::to_string(m) + ") is not determined");
    fv.push_back(*v);
  }
  for (std::uint64_t n = 1; n <= cols; ++n) {
    auto v = g.at(n);
    if (!v) throw Error(ErrorKind::horizon_exceeded, "g(" + std::to_string(n) + ") is not determined");
    gv.push_back(*v);
  }
  for (std::uint64_t m = 1; m <= rows; ++m) {
    for (std::uint64_t n = 1; n <= cols; ++n) {
      bool first = fv[m - 1] < ExtNat(n);
      bool second = gv[n - 1] < ExtNat(m);
      if (first == second) return GridWitness{m, n};
    }
  }
  return std::nullopt;
}

inline bool mutually_inverse_on_window(const NumberSequence& f, const NumberSequence& g, std::uint64_t rows,
                                       std::uint64_t cols) {
  return !find_grid_violation(f, g, rows, cols).has_value();
}

/// Largest K for which hat(f, K) is determined; nullopt when unbounded.
inline std::optional<std::uint64_t> hat_horizon(const NumberSequence& f) {
  if (f.effective_tail().kind != TailKind::unknown) return std::nullopt;
  if (f.prefix().empty()) return 0;
  return f.prefix_length() + f.prefix().back().value();
}

/// {n + f(n) : f(n) finite} cut to [1, K].
inline IntSet hat(const NumberSequence& f, std::uint64_t k) {
  detail::require_non_decreasing(f);
  if (auto h = hat_horizon(f); h && k > *h) {
    throw Error(ErrorKind::horizon_exceeded,
                "hat window " + std::to_string(k) + " exceeds the determined range " + std::to_string(*h));
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= k; ++n) {
    auto v = f.at(n);
    if (!v || v->is_infinite()) break;
    std::uint64_t e = n + v->value();
    if (e > k) break;
    out.push_back(e);
  }
  return IntSet(std::move(out), k);
}

/// True when hat(f, K) already lists every element of the full hat set.
inline bool hat_is_complete(const NumberSequence& f, std::uint64_t k) {
  if (f.effective_tail().kind != TailKind::infinite) return false;
  const auto& p = f.prefix();
  auto first_inf = std::find_if(p.begin(), p.end(), [](ExtNat x) { return x.is_infinite(); });
  std::uint64_t finite = static_cast<std::uint64_t>(first_inf - p.begin());
  return finite == 0 || finite + p[finite - 1].value() <= k;
}

enum class SetExtent { complete, window };

/// The sequence f(n) = s_n - n whose hat set is S.
inline NumberSequence from_set(const IntSet& s, SetExtent extent) {
  std::vector<ExtNat> f;
  f.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) f.push_back(s.elements()[i] - (i + 1));
  return NumberSequence(std::move(f), extent == SetExtent::complete ? Tail::infinite() : Tail::unknown());
}

inline NumberSequence from_set(std::vector<std::uint64_t> elements, std::uint64_t horizon, SetExtent extent) {
  return from_set(IntSet(std::move(elements), horizon), extent);
}

enum class VerdictKind { partition, overlap, gap };

struct ComplementVerdict {
  VerdictKind kind = VerdictKind::partition;
  std::uint64_t witness = 0;  // smallest violating integer; 0 for a partition

  bool is_partition() const noexcept { return kind == VerdictKind::partition; }
  bool operator==(const ComplementVerdict&) const = default;
};

inline std::string to_string(const ComplementVerdict& v) {
  switch (v.kind) {
    case VerdictKind::partition: return "partition";
    case VerdictKind::overlap: return "overlap(" + std::to_string(v.witness) + ")";
    case VerdictKind::gap: return "gap(" + std::to_string(v.witness) + ")";
  }
  return {};
}

/// Does every integer in [1, K] lie in exactly one of A, B?
///
/// On failure the smallest integer covered twice is reported; only when
/// nothing is covered twice is the smallest uncovered integer reported.
inline ComplementVerdict check_complementary(const IntSet& a, const IntSet& b, std::uint64_t k) {
  if (a.horizon() < k || b.horizon() < k) {
    throw Error(ErrorKind::horizon_exceeded, "window " + std::to_string(k) + " exceeds set horizons " +
                                                 std::to_string(a.horizon()) + "/" + std::to_string(b.horizon()));
  }
  std::optional<std::uint64_t> first_gap;
  auto ia = a.elements().begin();
  auto ib = b.elements().begin();
  for (std::uint64_t x = 1; x <= k; ++x) {
    bool in_a = ia != a.elements().end() && *ia == x;
    bool in_b = ib != b.elements().end() && *ib == x;
    if (in_a) ++ia;
    if (in_b) ++ib;
    if (in_a && in_b) return {VerdictKind::overlap, x};
    if (!in_a && !in_b && !first_gap) first_gap = x;
  }
  if (first_gap) return {VerdictKind::gap, *first_gap};
  return {};
}

enum class SequenceClass { all_finite_unbounded_window, bounded, eventually_infinite };

inline std::string to_string(SequenceClass c) {
  switch (c) {
    case SequenceClass::all_finite_unbounded_window: return "all_finite_unbounded_window";
    case SequenceClass::bounded: return "bounded";
    case SequenceClass::eventually_infinite: return "eventually_infinite";
  }
  return {};
}

/// Unknown tails are reported as a statement about the listed prefix only.
inline SequenceClass classify(const NumberSequence& f) {
  switch (f.effective_tail().kind) {
    case TailKind::constant: return SequenceClass::bounded;
    case TailKind::infinite: return SequenceClass::eventually_infinite;
    case TailKind::unknown: return SequenceClass::all_finite_unbounded_window;
  }
  return SequenceClass::all_finite_unbounded_window;
}

}  // namespace lamo
