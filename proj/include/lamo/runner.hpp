#pragma once

/// \file runner.hpp
/// Two runners on a circular track of length 1 moving in opposite
/// directions. Y moves as psi(t) = t and crosses the origin at integer
/// times; X moves as phi(t) and crosses it whenever phi(t) is an integer.
/// Every origin crossing records how many meetings happened before it.
///
/// The simulation only evaluates phi at integer times. Between consecutive
/// integers both phi and the relative motion phi(t) + t are linear, so every
/// crossing and meeting time is solved in closed form on that segment, then
/// all events are merged in exact time order. A meeting that coincides with
/// a crossing happens at the origin and is logged as a collision.

#include "lamo/continuous.hpp"
#include "lamo/error.hpp"
#include "lamo/exact.hpp"
#include "lamo/sequences.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lamo {

enum class EventKind { y_crosses_origin, x_crosses_origin, meeting };

constexpr std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::y_crosses_origin: return "y_crosses_origin";
    case EventKind::x_crosses_origin: return "x_crosses_origin";
    case EventKind::meeting: return "meeting";
  }
  return "unknown";
}

struct Event {
  Exact time;
  EventKind kind = EventKind::meeting;
  /// Meeting events: their 1-based index. Crossings: meetings strictly
  /// before this time (0 means nothing is recorded).
  std::uint64_t count = 0;
  /// A meeting at the origin, merged with the crossings at the same time.
  bool collision = false;
};

struct EventLog {
  std::vector<Event> events;
  Exact horizon_time;

  std::optional<Exact> first_collision() const {
    for (const Event& e : events) {
      if (e.collision) return e.time;
    }
    return std::nullopt;
  }
  bool has_collision() const { return first_collision().has_value(); }
};

namespace detail {

struct RawEvent {
  Exact time;
  EventKind kind;
};

// All integer j with lo < j <= hi (and j >= 1), as the times on [n, n + 1]
// at which a linear quantity running from lo to hi reaches j.
inline void solve_segment(const BigInt& n, const Exact& lo, const Exact& hi, const Exact& t_max, EventKind kind,
                          std::vector<RawEvent>& out) {
  BigInt first = floor(lo) + 1;
  if (first < 1) first = 1;
  BigInt last = floor(hi);
  Exact rise = hi - lo;
  for (BigInt j = first; j <= last; ++j) {
    Exact t = Exact(n) + (Exact(j) - lo) / rise;
    if (t > t_max) break;
    out.push_back({std::move(t), kind});
  }
}

}  // namespace detail

/// Runs both athletes on (0, T] for a positive rational T.
inline EventLog simulate(const MonotoneMap& phi, const Exact& t_max) {
  if (t_max.sign() <= 0) throw Error(ErrorKind::non_positive_time, "T = " + to_string(t_max));
  if (!t_max.is_rational()) throw Error(ErrorKind::unsupported_point, "T must be rational");

  std::vector<detail::RawEvent> raw;
  const BigInt segments = ceil(t_max);
  Exact lo;  // phi(0) = 0
  for (BigInt n = 0; n < segments; ++n) {
    Exact hi = phi.at_integer(n + 1);
    detail::solve_segment(n, lo, hi, t_max, EventKind::x_crosses_origin, raw);
    detail::solve_segment(n, lo + Exact(n), hi + Exact(BigInt(n + 1)), t_max, EventKind::meeting, raw);
    if (Exact(BigInt(n + 1)) <= t_max) raw.push_back({Exact(BigInt(n + 1)), EventKind::y_crosses_origin});
    lo = std::move(hi);
  }
  std::stable_sort(raw.begin(), raw.end(), [](const auto& p, const auto& q) { return p.time < q.time; });

  EventLog log;
  log.horizon_time = t_max;
  std::uint64_t meetings = 0;
  for (std::size_t i = 0; i < raw.size();) {
    std::size_t j = i + 1;
    while (j < raw.size() && raw[j].time == raw[i].time) ++j;
    if (j - i == 1) {
      Event e{raw[i].time, raw[i].kind, 0, false};
      if (e.kind == EventKind::meeting) ++meetings;
      e.count = meetings;
      log.events.push_back(std::move(e));
    } else {
      // Coincident events: runners meet exactly at the origin.
      ++meetings;
      log.events.push_back(Event{raw[i].time, EventKind::meeting, meetings, true});
    }
    i = j;
  }
  return log;
}

struct RecordedSets {
  IntSet s_x;
  IntSet s_y;
};

/// Positive counts recorded at X's and Y's crossings.
///
/// With K meetings inside the log, counts 1..K-1 are fully observed; K
/// itself is observed only if its crossing (which lies between meeting K
/// and meeting K + 1) already happened.
inline RecordedSets recorded_sets(const EventLog& log) {
  if (auto t = log.first_collision()) {
    throw Error(ErrorKind::collision_present, "runners meet at the origin at t = " + to_string(*t));
  }
  std::vector<std::uint64_t> sx;
  std::vector<std::uint64_t> sy;
  std::uint64_t meetings = 0;
  for (const Event& e : log.events) {
    if (e.kind == EventKind::meeting) {
      meetings = e.count;
    } else if (e.count > 0) {
      (e.kind == EventKind::x_crosses_origin ? sx : sy).push_back(e.count);
    }
  }
  bool last_seen = (!sx.empty() && sx.back() == meetings) || (!sy.empty() && sy.back() == meetings);
  std::uint64_t horizon = meetings == 0 ? 0 : (last_seen ? meetings : meetings - 1);
  std::erase_if(sx, [&](std::uint64_t v) { return v > horizon; });
  std::erase_if(sy, [&](std::uint64_t v) { return v > horizon; });
  return {IntSet(std::move(sx), horizon), IntSet(std::move(sy), horizon)};
}

/// Integer times t <= N at which the runners meet at the origin, read off
/// the collision events of a simulation.
inline std::vector<std::uint64_t> meets_at_origin(const MonotoneMap& phi, std::uint64_t n_max) {
  std::vector<std::uint64_t> out;
  if (n_max == 0) return out;
  EventLog log = simulate(phi, Exact(BigInt(n_max)));
  for (const Event& e : log.events) {
    if (e.collision && e.time.is_integer()) out.push_back(static_cast<std::uint64_t>(e.time.a()));
  }
  return out;
}

}  // namespace lamo
