#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcascade/graph.hpp"
#include "rcascade/rational.hpp"
#include "rcascade/rng.hpp"

namespace rcascade {

enum class CascadeMode { reversible_sync, reversible_async, irreversible };

struct ThresholdConfig {
  Rational rho{1, 1};
  CascadeMode mode = CascadeMode::reversible_sync;
};

struct Termination {
  enum class Kind { all_active, fixed_point, cycle, budget_exhausted };
  Kind kind = Kind::budget_exhausted;
  // all_active / fixed_point: the round (or async step); cycle: entry round.
  std::size_t round = 0;
  // cycle only; >= 2 (a period-1 cycle is reported as fixed_point).
  std::size_t period = 0;

  // "all_active round 3", "fixed_point round 2", "cycle period 2 entry 0",
  // "budget_exhausted".
  std::string str() const;
};

struct CascadeTrace {
  // states[0] is the seed set. Empty when state recording is disabled.
  std::vector<VertexSet> states;
  VertexSet final_state;
  Termination termination;
  bool monotone = true;
  std::optional<std::size_t> rounds_to_full;
  // Rounds (sync) or macro-steps (async) executed.
  std::size_t steps = 0;
};

struct RunOptions {
  bool record_states = true;
};

enum class SchedulerPolicy { round_robin, uniform_random, greedy_deactivate, full_sweep };

std::string_view to_string(SchedulerPolicy policy);
SchedulerPolicy parse_scheduler(std::string_view name);
std::string_view to_string(CascadeMode mode);
CascadeMode parse_mode(std::string_view name);

struct Scheduler {
  SchedulerPolicy policy = SchedulerPolicy::round_robin;
  RngSeed seed{};
};

inline std::size_t default_max_rounds(const Graph& g) { return 4 * g.num_vertices() + 16; }

// One synchronous reversible round. Vertices with zero in-degree keep their
// state; every other vertex is active afterwards iff at least a rho fraction
// of its in-neighbours is active now.
VertexSet sync_step(const Graph& g, const VertexSet& state, const Rational& rho);

// Iterates sync_step until all vertices are active, a state repeats, or
// max_rounds is reached.
CascadeTrace run_sync(const Graph& g, const VertexSet& seeds, const ThresholdConfig& cfg,
                      std::optional<std::size_t> max_rounds = std::nullopt, RunOptions opts = {});

// Asynchronous reversible cascade. Each macro-step the scheduler picks a
// nonempty subset of the vertices whose update would change their state and
// flips them together, judged on the pre-step state. Stops at quiescence.
CascadeTrace run_async(const Graph& g, const VertexSet& seeds, const ThresholdConfig& cfg,
                       const Scheduler& sched, std::optional<std::size_t> max_steps = std::nullopt,
                       RunOptions opts = {});

// Synchronous rounds without deactivation; always reaches a fixed point
// within n rounds.
CascadeTrace run_irreversible(const Graph& g, const VertexSet& seeds, const ThresholdConfig& cfg,
                              RunOptions opts = {});

// Dispatch on cfg.mode. The scheduler is used for reversible_async only.
CascadeTrace run_cascade(const Graph& g, const VertexSet& seeds, const ThresholdConfig& cfg,
                         const Scheduler& sched = {}, std::optional<std::size_t> budget = std::nullopt,
                         RunOptions opts = {});

// S is a subset of the active set one synchronous round after seeding S.
bool check_seed_stability(const Graph& g, const VertexSet& seeds, const Rational& rho);

// Consecutive recorded states are nested increasing.
bool is_monotone(const CascadeTrace& trace);

// "round r: <hex>" per recorded state, then "termination: <class>".
void write_trace(std::ostream& out, const CascadeTrace& trace);

}  // namespace rcascade
