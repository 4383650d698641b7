#include "lamo/runner.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <random>

using lamo::BigInt;
using lamo::Error;
using lamo::ErrorKind;
using lamo::EventKind;
using lamo::EventLog;
using lamo::Exact;
using lamo::IntSet;
using lamo::MonotoneMap;
using lamo::NumberSequence;
using lamo::Tail;

namespace {

template <typename F>
ErrorKind error_kind_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected lamo::Error";
  return ErrorKind::parse_error;
}

MonotoneMap constructed_map() { return lamo::construct_phi(NumberSequence({1, 1, 2}, Tail::constant(2))); }

// Recorded sets against the formulas, cut to the recorded horizon.
void expect_oracle_agrees(const MonotoneMap& phi, const Exact& t_max) {
  EventLog log = lamo::simulate(phi, t_max);
  auto rec = lamo::recorded_sets(log);
  ASSERT_EQ(rec.s_x.horizon(), rec.s_y.horizon());
  std::uint64_t k = rec.s_x.horizon();
  auto formula = lamo::corollary_sets(phi, k);
  EXPECT_EQ(rec.s_y, formula.s_y) << "T=" << lamo::to_string(t_max);
  EXPECT_EQ(rec.s_x, formula.s_x) << "T=" << lamo::to_string(t_max);
}

// Meetings carry their own index, crossings the meetings before them; both
// equal floor(phi(t) + t) at the event time.
void expect_counts_follow_formula(const MonotoneMap& phi, const EventLog& log) {
  for (const auto& e : log.events) {
    ASSERT_EQ(e.count, lamo::meeting_count(phi, e.time)) << lamo::to_string(e.time);
  }
}

Exact random_irrational_slope(std::mt19937_64& rng) {
  for (;;) {
    auto s = lamo_test::random_quadratic(rng, 15, 12);
    if (!s.value.is_rational() && s.value.sign() > 0) return s.value;
  }
}

}  // namespace

TEST(Simulate, SqrtTwoMatchesFormulas) {
  auto phi = MonotoneMap::linear(Exact::sqrt(2));
  EventLog log = lamo::simulate(phi, Exact(10));
  EXPECT_FALSE(log.has_collision());
  auto rec = lamo::recorded_sets(log);
  ASSERT_GE(rec.s_y.horizon(), 12u);
  EXPECT_EQ(rec.s_y.truncated(12), IntSet({2, 4, 7, 9, 12}, 12));
  EXPECT_EQ(rec.s_x.truncated(8), IntSet({1, 3, 5, 6, 8}, 8));
  expect_oracle_agrees(phi, Exact(10));
}

TEST(Simulate, CollisionAtOrigin) {
  EventLog log = lamo::simulate(MonotoneMap::linear(Exact(1)), Exact(2));
  ASSERT_TRUE(log.has_collision());
  EXPECT_EQ(*log.first_collision(), Exact(1));
  EXPECT_EQ(error_kind_of([&] { (void)lamo::recorded_sets(log); }), ErrorKind::collision_present);
}

TEST(Simulate, ConstructedMapNeverCollides) {
  EventLog log = lamo::simulate(constructed_map(), Exact(3));
  EXPECT_FALSE(log.has_collision());
  auto rec = lamo::recorded_sets(log);
  // Meetings at phi(t) + t = 1..5 within (0, 3].
  EXPECT_EQ(rec.s_y.horizon(), 5u);
  EXPECT_EQ(rec.s_y, IntSet({2, 3, 5}, 5));
  EXPECT_EQ(rec.s_x, IntSet({1, 4}, 5));
}

TEST(Simulate, ShortRunIsEmpty) {
  EventLog log = lamo::simulate(MonotoneMap::linear(Exact::sqrt(2)), Exact::rational(1, 4));
  auto rec = lamo::recorded_sets(log);
  EXPECT_EQ(rec.s_x, IntSet({}, 0));
  EXPECT_EQ(rec.s_y, IntSet({}, 0));
  EXPECT_TRUE(lamo::recorded_sets(EventLog{}).s_x.elements().empty());
}

TEST(Simulate, Errors) {
  auto phi = MonotoneMap::linear(Exact(2));
  EXPECT_EQ(error_kind_of([&] { (void)lamo::simulate(phi, Exact(0)); }), ErrorKind::non_positive_time);
  EXPECT_EQ(error_kind_of([&] { (void)lamo::simulate(phi, Exact::sqrt(2)); }), ErrorKind::unsupported_point);
}

TEST(Simulate, EventsAreTimeOrdered) {
  EventLog log = lamo::simulate(MonotoneMap::linear(Exact::quadratic(-1, 1, 5, 2)), Exact(20));
  ASSERT_FALSE(log.events.empty());
  for (std::size_t i = 1; i < log.events.size(); ++i) {
    ASSERT_LT(log.events[i - 1].time, log.events[i].time);
  }
  EXPECT_EQ(log.horizon_time, Exact(20));
}

TEST(MeetsAtOrigin, Examples) {
  EXPECT_EQ(lamo::meets_at_origin(MonotoneMap::linear(Exact::rational(2, 3)), 10),
            (std::vector<std::uint64_t>{3, 6, 9}));
  EXPECT_TRUE(lamo::meets_at_origin(MonotoneMap::linear(Exact::sqrt(2)), 100).empty());
  EXPECT_EQ(lamo::meets_at_origin(MonotoneMap::linear(Exact(1)), 3), (std::vector<std::uint64_t>{1, 2, 3}));
}

TEST(RunnerProperty, OracleEquivalencePiecewise) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    auto phi = lamo_test::random_piecewise(rng, lamo_test::uniform(rng, 1, 25), trial % 2 == 0);
    Exact t_max = Exact::rational(lamo_test::uniform_signed(rng, 1, 30 * 7), 7);
    ASSERT_NO_FATAL_FAILURE(expect_oracle_agrees(phi, t_max));
  }
}

TEST(RunnerProperty, OracleEquivalenceIrrationalLinear) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    auto phi = MonotoneMap::linear(random_irrational_slope(rng));
    ASSERT_NO_FATAL_FAILURE(expect_oracle_agrees(phi, Exact(lamo_test::uniform_signed(rng, 1, 25))));
  }
}

TEST(RunnerProperty, OracleEquivalenceConstructedMaps) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    auto phi = lamo::construct_phi(lamo_test::random_constant_tail(rng, 20, 30));
    ASSERT_NO_FATAL_FAILURE(expect_oracle_agrees(phi, Exact(lamo_test::uniform_signed(rng, 1, 30))));
  }
}

TEST(RunnerProperty, StoredCountsFollowFloorFormula) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    MonotoneMap phi = trial % 2 ? MonotoneMap::linear(random_irrational_slope(rng))
                                : lamo_test::random_piecewise(rng, lamo_test::uniform(rng, 1, 20), trial % 3 == 0);
    ASSERT_NO_FATAL_FAILURE(expect_counts_follow_formula(phi, lamo::simulate(phi, Exact(15))));
  }
}

TEST(RunnerProperty, OneCrossingBetweenMeetings) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    MonotoneMap phi = trial % 2 ? MonotoneMap::linear(random_irrational_slope(rng))
                                : lamo_test::random_piecewise(rng, lamo_test::uniform(rng, 1, 20), trial % 3 == 0);
    EventLog log = lamo::simulate(phi, Exact(15));
    ASSERT_FALSE(log.has_collision());
    std::optional<int> crossings;
    for (const auto& e : log.events) {
      if (e.kind == EventKind::meeting) {
        if (crossings) {
          ASSERT_EQ(*crossings, 1) << "before meeting " << e.count;
        }
        crossings = 0;
      } else if (crossings) {
        ++*crossings;
      }
    }
  }
}

TEST(RunnerProperty, OriginMeetingsIffLatticeHits) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 60; ++trial) {
    Exact lambda = trial % 2 ? lamo_test::random_positive_rational(rng, 40, 12) : random_irrational_slope(rng);
    auto phi = MonotoneMap::linear(lambda);
    auto hits = lamo::meets_at_origin(phi, 24);
    auto report = lamo::lattice_avoidance(phi, 24);
    ASSERT_EQ(hits.empty(), report.holds()) << lamo::to_string(lambda);
    if (!hits.empty()) {
      ASSERT_EQ(hits.front(), *report.violation);
    }
    for (std::uint64_t t : hits) ASSERT_TRUE(lamo::eval(phi, Exact(BigInt(t))).is_integer());
  }
}
