// Desk-scale acceptance run: one PASS/FAIL line per criterion, exit status 1
// if any criterion fails or runs past its time budget.

#include "lamo/lamo.hpp"

#include "generators.hpp"
#include "oracle/decimal_oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using lamo::BigInt;
using lamo::Exact;
using lamo::ExtNat;
using lamo::IntSet;
using lamo::MonotoneMap;
using lamo::NumberSequence;
using lamo::Tail;

namespace {

// Frozen output of the decimal oracle: floor(n * phi) and floor(n * phi^2), n = 1..25.
const std::vector<std::uint64_t> kLowerWythoff = {1,  3,  4,  6,  8,  9,  11, 12, 14, 16, 17, 19, 21,
                                                  22, 24, 25, 27, 29, 30, 32, 33, 35, 37, 38, 40};
const std::vector<std::uint64_t> kUpperWythoff = {2,  5,  7,  10, 13, 15, 18, 20, 23, 26, 28, 31, 34,
                                                  36, 39, 41, 44, 47, 49, 52, 54, 57, 60, 62, 65};

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

// Prefix length <= 50, values <= 100, tails constant or infinite.
std::vector<NumberSequence> acceptance_sequences(std::uint64_t seed, int count, bool constant_only) {
  std::mt19937_64 rng(seed);
  std::vector<NumberSequence> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(constant_only ? lamo_test::random_constant_tail(rng, 50, 100) : lamo_test::random_decidable(rng, 50, 100));
  }
  return out;
}

Outcome involution() {
  Outcome o;
  int checked = 0;
  for (const auto& f : acceptance_sequences(1001, 200, false)) {
    if (!(lamo::invert(lamo::invert(f)) == f)) o.fail("invert(invert(f)) != f for sequence " + std::to_string(checked));
    ++checked;
  }
  o.detail = o.ok ? std::to_string(checked) + " sequences" : o.detail;
  return o;
}

Outcome lambek_moser_forward() {
  Outcome o;
  constexpr std::uint64_t k = 200;
  int checked = 0;
  for (const auto& f : acceptance_sequences(1001, 200, false)) {
    auto verdict = lamo::check_complementary(lamo::hat(f, k), lamo::hat(lamo::invert(f), k), k);
    if (!verdict.is_partition()) o.fail("sequence " + std::to_string(checked) + ": " + lamo::to_string(verdict));
    ++checked;
  }
  o.detail = o.ok ? std::to_string(checked) + " pairs partition [1,200]" : o.detail;
  return o;
}

Outcome mutual_inverse_grid() {
  Outcome o;
  std::mt19937_64 rng(1003);
  int passed = 0;
  int caught = 0;
  for (int i = 0; i < 50; ++i) {
    NumberSequence f = lamo_test::random_decidable(rng, 50, 100);
    if (lamo::mutually_inverse_on_window(f, lamo::invert(f), 100, 100)) {
      ++passed;
    } else {
      o.fail("true pair " + std::to_string(i) + " fails the grid");
    }
  }
  for (int i = 0; i < 50;) {
    NumberSequence f = lamo_test::random_decidable(rng, 50, 100);
    NumberSequence g = lamo::invert(f);
    bool bump_g = i % 2 == 1;
    auto mutated = lamo_test::bump_any(bump_g ? g : f, 100, rng, 100);
    if (!mutated) continue;  // nothing finite to bump; draw again
    ++i;
    const NumberSequence& f2 = bump_g ? f : mutated->first;
    const NumberSequence& g2 = bump_g ? mutated->first : g;
    bool witnessed = lamo::find_grid_violation(f2, g2, 100, 100).has_value();
    if (!witnessed && lamo::check_non_decreasing(f2) && lamo::check_non_decreasing(g2)) {
      witnessed = !lamo::check_complementary(lamo::hat(f2, 200), lamo::hat(g2, 200), 200).is_partition();
    }
    if (witnessed) {
      ++caught;
    } else {
      o.fail("mutated pair " + std::to_string(i) + " (index " + std::to_string(mutated->second) + ") not caught");
    }
  }
  if (o.ok) o.detail = std::to_string(passed) + " pairs pass, " + std::to_string(caught) + " mutants caught";
  return o;
}

Outcome rational_slope_fails() {
  Outcome o;
  auto phi = MonotoneMap::linear(Exact::rational(2, 3));
  auto report = lamo::lattice_avoidance(phi, 12);
  if (report.holds() || *report.violation != 3) o.fail("expected violation(3)");
  auto sets = lamo::corollary_sets(phi, 12);
  if (!(sets.s_y == IntSet({1, 3, 5, 6, 8, 10, 11}, 12))) o.fail("S_Y mismatch: " + lamo::io::set_brief(sets.s_y));
  if (!(sets.s_x == IntSet({2, 5, 7, 10, 12}, 12))) o.fail("S_X mismatch: " + lamo::io::set_brief(sets.s_x));
  auto verdict = lamo::check_complementary(sets.s_y, sets.s_x, 12);
  if (lamo::to_string(verdict) != "overlap(5)") o.fail("verdict " + lamo::to_string(verdict));
  if (o.ok) o.detail = "violation(3), " + lamo::to_string(verdict);
  return o;
}

Outcome irrational_slopes_partition() {
  Outcome o;
  constexpr std::uint64_t k = 500;
  const Exact golden = Exact::quadratic(-1, 1, 5, 2);
  for (const Exact& lambda : {Exact::sqrt(2), golden}) {
    auto phi = MonotoneMap::linear(lambda);
    if (!lamo::lattice_avoidance(phi, 500).holds()) o.fail("avoidance fails for " + lamo::to_string(lambda));
    auto sets = lamo::corollary_sets(phi, k);
    auto verdict = lamo::check_complementary(sets.s_y, sets.s_x, k);
    if (!verdict.is_partition()) o.fail(lamo::to_string(lambda) + ": " + lamo::to_string(verdict));
  }
  auto [lower, upper] = lamo::beatty_pair(golden, k);
  std::vector<std::uint64_t> lo(lower.elements().begin(), lower.elements().begin() + 25);
  std::vector<std::uint64_t> up(upper.elements().begin(), upper.elements().begin() + 25);
  if (lo != kLowerWythoff) o.fail("lower Wythoff terms differ from the frozen oracle values");
  if (up != kUpperWythoff) o.fail("upper Wythoff terms differ from the frozen oracle values");
  auto oracle_lo = lamo_test::decimal_beatty(1, 1, 2, 5, 25);
  auto oracle_up = lamo_test::decimal_beatty(3, 1, 2, 5, 25);
  for (std::size_t i = 0; i < 25; ++i) {
    if (static_cast<std::uint64_t>(oracle_lo[i]) != lo[i] || static_cast<std::uint64_t>(oracle_up[i]) != up[i]) {
      o.fail("decimal oracle disagrees at n=" + std::to_string(i + 1));
    }
  }
  if (o.ok) o.detail = "sqrt(2) and golden partition [1,500]; 25 Wythoff terms match";
  return o;
}

Outcome induced_inverse_coherence() {
  Outcome o;
  std::uint64_t compared = 0;
  std::uint64_t infinite = 0;
  for (const auto& f : acceptance_sequences(1006, 100, true)) {
    auto phi = lamo::construct_phi(f);
    NumberSequence g = lamo::invert(f);
    for (std::uint64_t n = 1; n <= f.tail().value + 20; ++n) {
      ExtNat got = lamo::induced_inverse(phi, n);
      if (got != *g.at(n)) o.fail("mismatch at n=" + std::to_string(n));
      if (got.is_infinite()) ++infinite;
      ++compared;
    }
  }
  if (o.ok) o.detail = std::to_string(compared) + " values, " + std::to_string(infinite) + " on the inf branch";
  return o;
}

Outcome construction_postconditions() {
  Outcome o;
  std::mt19937_64 rng(1007);
  std::uint64_t pairs = 0;
  for (const auto& f : acceptance_sequences(1006, 100, true)) {
    auto phi = lamo::construct_phi(f);
    std::uint64_t last = phi.anchors().size() + 10;
    for (std::uint64_t n = 1; n <= last; ++n) {
      Exact v = phi.at_integer(n);
      if (lamo::floor(v) != BigInt(f.at(n)->value())) o.fail("floor(phi(n)) != f(n) at n=" + std::to_string(n));
      if (v.is_integer()) o.fail("phi(n) is an integer at n=" + std::to_string(n));
      if (!(v < phi.at_integer(n + 1))) o.fail("not increasing at anchor n=" + std::to_string(n));
    }
    for (int i = 0; i < 1000;) {
      std::int64_t den = lamo_test::uniform_signed(rng, 1, 64);
      std::int64_t span = static_cast<std::int64_t>(last) * den;
      std::int64_t p1 = lamo_test::uniform_signed(rng, 1, span);
      std::int64_t p2 = lamo_test::uniform_signed(rng, 1, span);
      if (p1 == p2) continue;
      ++i;
      if (p2 < p1) std::swap(p1, p2);
      if (!(lamo::eval(phi, Exact::rational(p1, den)) < lamo::eval(phi, Exact::rational(p2, den)))) {
        o.fail("eval not strictly increasing");
      }
      ++pairs;
    }
  }
  if (o.ok) o.detail = "100 maps, " + std::to_string(pairs) + " sample pairs";
  return o;
}

Outcome simulator_oracle() {
  Outcome o;
  std::mt19937_64 rng(1008);
  std::vector<MonotoneMap> maps;
  for (int i = 0; i < 20; ++i) {
    maps.push_back(lamo_test::random_piecewise(rng, lamo_test::uniform(rng, 50, 60), i % 2 == 0, 60));
  }
  maps.push_back(MonotoneMap::linear(Exact::sqrt(2)));
  maps.push_back(MonotoneMap::linear(Exact::quadratic(-1, 1, 5, 2)));
  const Exact t_max(50);
  std::uint64_t events = 0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& phi = maps[i];
    auto log = lamo::simulate(phi, t_max);
    if (log.has_collision()) {
      o.fail("map " + std::to_string(i) + " collided");
      continue;
    }
    auto rec = lamo::recorded_sets(log);
    auto formula = lamo::corollary_sets(phi, rec.s_y.horizon());
    if (!(rec.s_y == formula.s_y) || !(rec.s_x == formula.s_x)) o.fail("recorded sets differ for map " + std::to_string(i));
    for (const auto& e : log.events) {
      if (e.count != lamo::meeting_count(phi, e.time)) o.fail("stored count off at t=" + lamo::to_string(e.time));
      ++events;
    }
  }
  auto collision = lamo::simulate(MonotoneMap::linear(Exact(1)), Exact(2)).first_collision();
  if (!collision || !(*collision == Exact(1))) o.fail("lambda = 1 did not collide at t = 1");
  if (o.ok) o.detail = std::to_string(maps.size()) + " maps, " + std::to_string(events) + " events; lambda=1 collides at t=1";
  return o;
}

Outcome exact_kernel() {
  Outcome o;
  std::mt19937_64 rng(1009);
  int agreed = 0;
  for (int i = 0; i < 1000; ++i) {
    auto s = lamo_test::random_quadratic(rng);
    BigInt f = lamo::floor(s.value);
    if (lamo_test::near_integer(s.a, s.b, s.c, s.d)) {
      o.fail("sample too close to an integer for the decimal oracle");
      continue;
    }
    if (f != lamo_test::decimal_floor(s.a, s.b, s.c, s.d)) o.fail("floor disagrees with oracle: " + lamo::to_string(s.value));
    if (!(Exact(f) <= s.value && s.value < Exact(BigInt(f + 1)))) o.fail("floor postcondition: " + lamo::to_string(s.value));
    ++agreed;
  }
  int triples = 0;
  for (int i = 0; i < 1000; ++i) {
    static constexpr std::int64_t kRadicands[] = {2, 3, 5, 7};
    std::int64_t d = kRadicands[lamo_test::uniform(rng, 0, 3)];
    Exact x = lamo_test::random_quadratic(rng, 1000, 100, d).value;
    Exact y = lamo_test::random_quadratic(rng, 1000, 100, d).value;
    Exact z = lamo_test::random_quadratic(rng, 1000, 100, d).value;
    if (x <= y && y <= z && !(x <= z)) o.fail("transitivity broken");
    if (x < y && y < z && !(x < z)) o.fail("strict transitivity broken");
    if ((x < y) == (y < x) && !(x == y)) o.fail("trichotomy broken");
    ++triples;
  }
  if (o.ok) o.detail = std::to_string(agreed) + " floors, " + std::to_string(triples) + " triples";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "involution", 5, involution},
      {2, "lambek-moser partition", 5, lambek_moser_forward},
      {3, "mutual-inverse grid", 10, mutual_inverse_grid},
      {4, "rational slope fails", 1, rational_slope_fails},
      {5, "irrational slopes partition", 2, irrational_slopes_partition},
      {6, "induced inverse coherence", 5, induced_inverse_coherence},
      {7, "construction postconditions", 5, construction_postconditions},
      {8, "simulator oracle", 10, simulator_oracle},
      {9, "exact kernel", 2, exact_kernel},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) out.fail("took " + std::to_string(secs) + " s, budget " + std::to_string(c.budget_seconds) + " s");
    if (!out.ok) ++failures;
    std::printf("[%s] %d %-28s %6.3fs / %4.0fs  %s\n", out.ok ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_seconds,
                out.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
