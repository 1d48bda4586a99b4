#include <gtest/gtest.h>

#include <map>
#include <random>
#include <sstream>

#include "rcascade/cascade.hpp"
#include "rcascade/seeders.hpp"
#include "test_support.hpp"

using namespace rcascade;
using Kind = Termination::Kind;
namespace rt = rcascade::testing;

namespace {

const ThresholdConfig kSync{Rational(1, 1), CascadeMode::reversible_sync};

ThresholdConfig sync(Rational rho) { return {rho, CascadeMode::reversible_sync}; }
ThresholdConfig async(Rational rho) { return {rho, CascadeMode::reversible_async}; }
ThresholdConfig irrev(Rational rho) { return {rho, CascadeMode::irreversible}; }

std::vector<bool> to_bools(const VertexSet& s) {
  std::vector<bool> out(s.universe());
  for (Vertex v = 0; v < s.universe(); ++v) out[v] = s.contains(v);
  return out;
}

VertexSet from_mask(std::size_t n, std::uint64_t mask) {
  VertexSet s(n);
  for (Vertex v = 0; v < n; ++v) {
    if (mask >> v & 1) s.insert(v);
  }
  return s;
}

// Walks the state sequence with plain containers until all-active or the
// first repeated state.
Termination reference_walk(const Graph& g, const VertexSet& seeds, const Rational& rho, bool irreversible) {
  std::map<std::vector<bool>, std::size_t> seen;
  auto s = to_bools(seeds);
  for (std::size_t r = 0;; ++r) {
    if (std::all_of(s.begin(), s.end(), [](bool b) { return b; })) return {Kind::all_active, r, 0};
    auto [it, fresh] = seen.emplace(s, r);
    if (!fresh) {
      const auto period = r - it->second;
      return period == 1 ? Termination{Kind::fixed_point, it->second, 0}
                         : Termination{Kind::cycle, it->second, period};
    }
    s = rt::reference_step(g, s, rho, irreversible);
  }
}

void expect_same(const Termination& a, const Termination& b) {
  EXPECT_EQ(a.kind, b.kind);
  EXPECT_EQ(a.round, b.round);
  EXPECT_EQ(a.period, b.period);
}

Graph directed_cycle(std::size_t n, Vertex offset = 0, std::vector<Edge>* into = nullptr) {
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(offset + v, offset + static_cast<Vertex>((v + 1) % n));
  if (into) into->insert(into->end(), e.begin(), e.end());
  return Graph::build(offset + n, e, Directedness::directed);
}

}  // namespace

TEST(SyncStep, Blinker) {
  const auto g = rt::path(2);
  EXPECT_EQ(sync_step(g, VertexSet(2, {0}), Rational(1, 1)), VertexSet(2, {1}));
}

TEST(SyncStep, AllActiveIsAbsorbing) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto g = rt::random_connected(15, 0.2, rng);
    for (auto rho : {Rational(1, 10), Rational(1, 2), Rational(1, 1)}) {
      EXPECT_TRUE(sync_step(g, VertexSet::full(15), rho).all());
    }
  }
}

TEST(SyncStep, StarCenterSeed) {
  const auto g = rt::star(4);
  EXPECT_EQ(sync_step(g, VertexSet(5, {0}), Rational(1, 2)), VertexSet(5, {1, 2, 3, 4}));
}

TEST(SyncStep, ZeroInDegreeKeepsState) {
  const auto g = Graph::build(3, std::vector<Edge>{{0, 1}, {1, 2}}, Directedness::directed);
  EXPECT_EQ(sync_step(g, VertexSet(3, {0}), Rational(1, 1)), VertexSet(3, {0, 1}));
  EXPECT_EQ(sync_step(g, VertexSet(3, {1, 2}), Rational(1, 1)), VertexSet(3, {2}));
}

TEST(SyncStep, MatchesReferenceOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    const bool directed = i % 2 == 1;
    const auto n = 5 + static_cast<std::size_t>(i % 17);
    const auto g = directed ? rt::random_directed(n, 0.3, rng) : rt::random_connected(n, 0.25, rng);
    const Rational rho(1 + static_cast<std::uint64_t>(i % 5), 5);
    for (int j = 0; j < 10; ++j) {
      VertexSet s(n);
      for (Vertex v = 0; v < n; ++v) {
        if (rng() & 1) s.insert(v);
      }
      EXPECT_EQ(to_bools(sync_step(g, s, rho)), rt::reference_step(g, to_bools(s), rho));
    }
  }
}

// Vertex 0 of a star with d leaves sees exactly `active` active leaves.
TEST(Threshold, BoundaryAgainstRationalOracle) {
  for (auto rho : {Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(1, 1)}) {
    for (std::uint64_t d = 1; d <= 12; ++d) {
      const auto g = rt::star(d);
      // Oracle: smallest c with c/d >= a/b, found by counting up.
      std::uint64_t need = 0;
      while (need * rho.den() < rho.num() * d) ++need;
      for (std::uint64_t active = 0; active <= d; ++active) {
        VertexSet s(d + 1);
        for (Vertex v = 1; v <= active; ++v) s.insert(v);
        const bool on = sync_step(g, s, rho).contains(0);
        EXPECT_EQ(on, active >= need) << "rho=" << rho.str() << " d=" << d << " active=" << active;
      }
      EXPECT_EQ(rho.min_active(d), need);
    }
  }
}

TEST(Threshold, ThirdsOfThree) {
  // rho d is integral: exactly 1 of 3 suffices at 1/3, 2 of 3 at 2/3.
  const auto g = rt::star(3);
  EXPECT_TRUE(sync_step(g, VertexSet(4, {1}), Rational(1, 3)).contains(0));
  EXPECT_FALSE(sync_step(g, VertexSet(4, {1}), Rational(2, 3)).contains(0));
  EXPECT_TRUE(sync_step(g, VertexSet(4, {1, 2}), Rational(2, 3)).contains(0));
}

TEST(RunSync, BlinkerCycles) {
  const auto t = run_sync(rt::path(2), VertexSet(2, {0}), kSync);
  EXPECT_EQ(t.termination.kind, Kind::cycle);
  EXPECT_EQ(t.termination.round, 0U);
  EXPECT_EQ(t.termination.period, 2U);
  EXPECT_FALSE(t.rounds_to_full);
  EXPECT_FALSE(t.monotone);
  EXPECT_FALSE(is_monotone(t));
  EXPECT_EQ(t.termination.str(), "cycle period 2 entry 0");
}

TEST(RunSync, TriangleHalf) {
  const auto t = run_sync(rt::complete(3), VertexSet(3, {0, 1}), sync(Rational(1, 2)));
  EXPECT_EQ(t.termination.kind, Kind::all_active);
  EXPECT_EQ(t.rounds_to_full, 1U);
  EXPECT_EQ(t.states.size(), 2U);
}

TEST(RunSync, AllSeedsRoundZero) {
  const auto g = rt::grid(3, 4);
  const auto t = run_sync(g, VertexSet::full(12), kSync);
  EXPECT_EQ(t.termination.str(), "all_active round 0");
  EXPECT_EQ(t.rounds_to_full, 0U);
  EXPECT_TRUE(is_monotone(t));
  EXPECT_EQ(t.steps, 0U);
}

TEST(RunSync, EmptySeedsFixedPoint) {
  const auto t = run_sync(rt::cycle(5), VertexSet(5), kSync);
  EXPECT_EQ(t.termination.kind, Kind::fixed_point);
  EXPECT_EQ(t.termination.round, 0U);
}

TEST(RunSync, BudgetExhausted) {
  const auto g = directed_cycle(10);
  const auto t = run_sync(g, VertexSet(10, {0}), kSync, 4);
  EXPECT_EQ(t.termination.kind, Kind::budget_exhausted);
  EXPECT_EQ(t.steps, 4U);
}

TEST(RunSync, ExhaustivePeriodicity) {
  std::mt19937_64 rng(5);
  std::vector<Graph> graphs{rt::path(6), rt::cycle(7), rt::star(5), rt::grid(3, 3),
                            rt::complete(5), directed_cycle(6)};
  for (int i = 0; i < 6; ++i) graphs.push_back(rt::random_directed(8 + i % 3, 0.25, rng));
  for (int i = 0; i < 4; ++i) graphs.push_back(rt::random_connected(12, 0.15, rng));
  std::size_t checked = 0;
  for (const auto& g : graphs) {
    const auto n = g.num_vertices();
    ASSERT_LE(n, 12U);
    const std::size_t cap = (std::size_t{1} << n) + 1;
    for (auto rho : {Rational(1, 2), Rational(1, 1), Rational(1, 3)}) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); mask += (n >= 12 ? 7 : 1)) {
        const auto seeds = from_mask(n, mask);
        const auto t = run_sync(g, seeds, sync(rho), cap);
        expect_same(t.termination, reference_walk(g, seeds, rho, false));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 10000U);
}

TEST(RunSync, DirectedPeriods) {
  // Rotating single token: period equals the cycle length.
  const auto g = directed_cycle(100);
  for (bool record : {true, false}) {
    const auto t = run_sync(g, VertexSet(100, {0}), kSync, std::nullopt, {record});
    EXPECT_EQ(t.termination.kind, Kind::cycle);
    EXPECT_EQ(t.termination.period, 100U);
    EXPECT_EQ(t.termination.round, 0U);
  }
  // Two disjoint rings of 3 and 5 give period 15.
  std::vector<Edge> e;
  directed_cycle(3, 0, &e);
  directed_cycle(5, 3, &e);
  const auto two = Graph::build(8, e, Directedness::directed);
  const auto t = run_sync(two, VertexSet(8, {0, 3}), kSync);
  EXPECT_EQ(t.termination.period, 15U);
}

TEST(RunSync, UnrecordedMatchesRecorded) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const auto n = 6 + static_cast<std::size_t>(i % 40);
    const auto g = i % 3 == 0 ? rt::random_connected(n, 0.1, rng) : rt::random_directed(n, 0.12, rng);
    VertexSet s(n);
    for (Vertex v = 0; v < n; ++v) {
      if (rng() % 3 == 0) s.insert(v);
    }
    const Rational rho(1 + static_cast<std::uint64_t>(i % 4), 4);
    const auto a = run_sync(g, s, sync(rho), 1000);
    const auto b = run_sync(g, s, sync(rho), 1000, {false});
    expect_same(a.termination, b.termination);
    EXPECT_EQ(a.final_state, b.final_state);
    EXPECT_EQ(a.rounds_to_full, b.rounds_to_full);
    EXPECT_EQ(a.monotone, b.monotone);
    EXPECT_TRUE(b.states.empty());
    EXPECT_EQ(a.monotone, is_monotone(a));
  }
}

TEST(RunIrreversible, Examples) {
  const auto blink = run_irreversible(rt::path(2), VertexSet(2, {0}), irrev(Rational(1, 1)));
  EXPECT_EQ(blink.termination.str(), "all_active round 1");
  EXPECT_EQ(blink.final_state, VertexSet::full(2));

  const auto empty = run_irreversible(rt::cycle(6), VertexSet(6), irrev(Rational(1, 2)));
  EXPECT_EQ(empty.termination.kind, Kind::fixed_point);
  EXPECT_TRUE(empty.final_state.empty());

  const auto tri = run_irreversible(rt::complete(3), VertexSet(3, {0, 1}), irrev(Rational(1, 1)));
  EXPECT_EQ(tri.rounds_to_full, 1U);
}

TEST(RunIrreversible, AlwaysMonotoneAndMatchesReference) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 150; ++i) {
    const auto n = 4 + static_cast<std::size_t>(i % 10);
    const auto g = i % 2 ? rt::random_directed(n, 0.3, rng) : rt::random_connected(n, 0.2, rng);
    const auto seeds = from_mask(n, rng() & ((std::uint64_t{1} << n) - 1));
    const Rational rho(1 + static_cast<std::uint64_t>(i % 3), 3);
    const auto t = run_irreversible(g, seeds, irrev(rho));
    EXPECT_TRUE(t.monotone);
    EXPECT_TRUE(is_monotone(t));
    EXPECT_LE(t.steps, n + 1);
    EXPECT_NE(t.termination.kind, Kind::cycle);
    expect_same(t.termination, reference_walk(g, seeds, rho, true));
  }
}

TEST(RunAsync, AllSeedsAreImmediatelyDone) {
  const auto g = rt::grid(3, 3);
  for (auto p : {SchedulerPolicy::round_robin, SchedulerPolicy::uniform_random,
                 SchedulerPolicy::greedy_deactivate, SchedulerPolicy::full_sweep}) {
    const auto t = run_async(g, VertexSet::full(9), async(Rational(1, 2)), {p, {1, 0}});
    EXPECT_EQ(t.termination.str(), "all_active round 0");
    EXPECT_EQ(t.rounds_to_full, 0U);
  }
}

TEST(RunAsync, BlinkerNeverCompletes) {
  // Round-robin and greedy switch 0 off first and the run dies out; the full
  // sweep oscillates. A uniform pick of vertex 1 would fill the edge instead.
  const auto g = rt::path(2);
  for (auto p : {SchedulerPolicy::round_robin, SchedulerPolicy::greedy_deactivate, SchedulerPolicy::full_sweep}) {
    const auto t = run_async(g, VertexSet(2, {0}), async(Rational(1, 1)), {p, {9, 1}}, 200);
    EXPECT_FALSE(t.rounds_to_full) << to_string(p);
    for (const auto& s : t.states) EXPECT_FALSE(s.all());
  }
  const auto rr = run_async(g, VertexSet(2, {0}), async(Rational(1, 1)), {SchedulerPolicy::round_robin, {}}, 200);
  ASSERT_GE(rr.states.size(), 2U);
  EXPECT_TRUE(rr.states[1].empty());
  EXPECT_EQ(rr.termination.kind, Kind::fixed_point);
  // Full sweep is the synchronous blinker.
  const auto fs = run_async(g, VertexSet(2, {0}), async(Rational(1, 1)), {SchedulerPolicy::full_sweep, {}}, 50);
  EXPECT_EQ(fs.termination.kind, Kind::budget_exhausted);
  EXPECT_EQ(fs.steps, 50U);
}

TEST(RunAsync, FullSweepFollowsSyncWhileChangeable) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 50; ++i) {
    const auto n = 8 + static_cast<std::size_t>(i % 8);
    const auto g = rt::random_connected(n, 0.25, rng);
    const auto seeds = from_mask(n, rng() & ((std::uint64_t{1} << n) - 1));
    const Rational rho(1, 2);
    const auto a = run_async(g, seeds, async(rho), {SchedulerPolicy::full_sweep, {}}, 30);
    for (std::size_t k = 1; k < a.states.size(); ++k) {
      EXPECT_EQ(a.states[k], sync_step(g, a.states[k - 1], rho));
    }
  }
}

TEST(RunAsync, StepsOnlyFlipChangeableVertices) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    const auto n = 10 + static_cast<std::size_t>(i % 6);
    const auto g = rt::random_connected(n, 0.2, rng);
    const auto seeds = from_mask(n, rng() & ((std::uint64_t{1} << n) - 1));
    const Rational rho(1, 3);
    for (auto p : {SchedulerPolicy::round_robin, SchedulerPolicy::uniform_random,
                   SchedulerPolicy::greedy_deactivate}) {
      const auto t = run_async(g, seeds, async(rho), {p, {7, static_cast<std::uint64_t>(i)}}, 200);
      for (std::size_t k = 1; k < t.states.size(); ++k) {
        const auto& before = t.states[k - 1];
        const auto& after = t.states[k];
        const auto target = sync_step(g, before, rho);
        std::size_t flipped = 0;
        for (Vertex v = 0; v < n; ++v) {
          if (before.contains(v) != after.contains(v)) {
            ++flipped;
            EXPECT_EQ(after.contains(v), target.contains(v));
          }
        }
        EXPECT_EQ(flipped, 1U);
      }
      if (t.termination.kind == Kind::fixed_point) {
        EXPECT_EQ(sync_step(g, t.final_state, rho), t.final_state);
      }
    }
  }
}

TEST(RunAsync, GreedyDeactivatesFirst) {
  // Seeds {0,2} on a path 0-1-2 at rho = 1: 0 and 2 want off, 1 wants on.
  const auto g = rt::path(3);
  const auto t = run_async(g, VertexSet(3, {0, 2}), async(Rational(1, 1)),
                           {SchedulerPolicy::greedy_deactivate, {}}, 5);
  ASSERT_GE(t.states.size(), 2U);
  EXPECT_EQ(t.states[1], VertexSet(3, {2}));
}

TEST(RunAsync, UniformIsDeterministicPerSeed) {
  std::mt19937_64 rng(37);
  const auto g = rt::random_connected(30, 0.1, rng);
  const auto seeds = from_mask(30, rng() & ((1u << 30) - 1));
  const Scheduler s{SchedulerPolicy::uniform_random, {42, 3}};
  const auto a = run_async(g, seeds, async(Rational(1, 2)), s, 500);
  const auto b = run_async(g, seeds, async(Rational(1, 2)), s, 500);
  EXPECT_EQ(a.states, b.states);
}

// Stable seed sets that fill the graph synchronously fill it under every
// scheduler without ever deactivating a vertex.
TEST(RunAsync, StableSeedsGiveMonotoneMonopoly) {
  std::mt19937_64 rng(41);
  std::size_t graphs = 0, runs = 0;
  for (int i = 0; graphs < 120; ++i) {
    const auto n = 6 + static_cast<std::size_t>(i % 30);
    const auto g = rt::random_connected(n, 0.05 + 0.02 * (i % 7), rng);
    const Rational rho(1 + static_cast<std::uint64_t>(i % 4), 5);
    std::vector<VertexSet> candidates{highdeg_seeder(g, rho).vertices};
    for (int j = 0; j < 30; ++j) {
      VertexSet s(n);
      for (Vertex v = 0; v < n; ++v) {
        if (rng() % 2 == 0) s.insert(v);
      }
      candidates.push_back(s);
    }
    bool used = false;
    for (const auto& s : candidates) {
      if (!check_seed_stability(g, s, rho)) continue;
      if (!run_sync(g, s, sync(rho)).rounds_to_full) continue;
      used = true;
      for (auto p : {SchedulerPolicy::round_robin, SchedulerPolicy::uniform_random,
                     SchedulerPolicy::greedy_deactivate, SchedulerPolicy::full_sweep}) {
        const auto t = run_async(g, s, async(rho), {p, {static_cast<std::uint64_t>(i), runs}}, 10 * n * n);
        EXPECT_EQ(t.termination.kind, Kind::all_active) << to_string(p) << " n=" << n;
        EXPECT_TRUE(t.monotone);
        EXPECT_TRUE(is_monotone(t));
        ++runs;
      }
    }
    if (used) ++graphs;
  }
  EXPECT_GE(runs, 400U);
}

TEST(Stability, Examples) {
  const auto g = rt::path(2);
  EXPECT_TRUE(check_seed_stability(g, VertexSet::full(2), Rational(1, 1)));
  EXPECT_FALSE(check_seed_stability(g, VertexSet(2, {0}), Rational(1, 1)));
  EXPECT_TRUE(check_seed_stability(g, VertexSet(2), Rational(1, 1)));
}

TEST(RunCascade, DispatchAndModeChecks) {
  const auto g = rt::path(2);
  const VertexSet s(2, {0});
  EXPECT_EQ(run_cascade(g, s, irrev(Rational(1, 1))).termination.str(), "all_active round 1");
  EXPECT_EQ(run_cascade(g, s, sync(Rational(1, 1))).termination.kind, Kind::cycle);
  EXPECT_FALSE(run_cascade(g, s, async(Rational(1, 1)), {}, 20).rounds_to_full);
  EXPECT_THROW(run_sync(g, s, irrev(Rational(1, 1))), std::invalid_argument);
  EXPECT_THROW(run_irreversible(g, s, sync(Rational(1, 1))), std::invalid_argument);
  EXPECT_THROW(run_async(g, s, sync(Rational(1, 1)), {}), std::invalid_argument);
  EXPECT_THROW(run_sync(g, VertexSet(3), kSync), std::invalid_argument);
}

TEST(Names, RoundTrip) {
  for (auto p : {SchedulerPolicy::round_robin, SchedulerPolicy::uniform_random,
                 SchedulerPolicy::greedy_deactivate, SchedulerPolicy::full_sweep}) {
    EXPECT_EQ(parse_scheduler(to_string(p)), p);
  }
  EXPECT_EQ(parse_scheduler("uniform"), SchedulerPolicy::uniform_random);
  for (auto m : {CascadeMode::reversible_sync, CascadeMode::reversible_async, CascadeMode::irreversible}) {
    EXPECT_EQ(parse_mode(to_string(m)), m);
  }
  EXPECT_THROW(parse_mode("bogus"), std::invalid_argument);
  EXPECT_THROW(parse_scheduler("bogus"), std::invalid_argument);
}

TEST(Trace, Format) {
  const auto t = run_sync(rt::path(2), VertexSet(2, {0}), kSync);
  std::ostringstream out;
  write_trace(out, t);
  EXPECT_EQ(out.str(), "round 0: 1\nround 1: 2\nround 2: 1\ntermination: cycle period 2 entry 0\n");
}
