#include "rcascade/cascade.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace rcascade {

std::string Termination::str() const {
  switch (kind) {
    case Kind::all_active:
      return "all_active round " + std::to_string(round);
    case Kind::fixed_point:
      return "fixed_point round " + std::to_string(round);
    case Kind::cycle:
      return "cycle period " + std::to_string(period) + " entry " + std::to_string(round);
    case Kind::budget_exhausted:
      return "budget_exhausted";
  }
  return "unknown";
}

std::string_view to_string(SchedulerPolicy policy) {
  switch (policy) {
    case SchedulerPolicy::round_robin: return "round-robin";
    case SchedulerPolicy::uniform_random: return "uniform";
    case SchedulerPolicy::greedy_deactivate: return "greedy-deactivate";
    case SchedulerPolicy::full_sweep: return "full-sweep";
  }
  return "unknown";
}

SchedulerPolicy parse_scheduler(std::string_view name) {
  if (name == "round-robin") return SchedulerPolicy::round_robin;
  if (name == "uniform" || name == "uniform-random") return SchedulerPolicy::uniform_random;
  if (name == "greedy-deactivate") return SchedulerPolicy::greedy_deactivate;
  if (name == "full-sweep") return SchedulerPolicy::full_sweep;
  throw std::invalid_argument("unknown scheduler '" + std::string(name) + "'");
}

std::string_view to_string(CascadeMode mode) {
  switch (mode) {
    case CascadeMode::reversible_sync: return "sync";
    case CascadeMode::reversible_async: return "async";
    case CascadeMode::irreversible: return "irrev";
  }
  return "unknown";
}

CascadeMode parse_mode(std::string_view name) {
  if (name == "sync") return CascadeMode::reversible_sync;
  if (name == "async") return CascadeMode::reversible_async;
  if (name == "irrev" || name == "irreversible") return CascadeMode::irreversible;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

VertexSet sync_step(const Graph& g, const VertexSet& state, const Rational& rho) {
  const auto n = g.num_vertices();
  if (state.universe() != n) throw std::invalid_argument("state universe does not match graph");
  VertexSet next(n);
  for (Vertex v = 0; v < n; ++v) {
    const auto in = g.in_neighbors(v);
    if (in.empty()) {
      next.set(v, state.contains(v));
      continue;
    }
    std::size_t active = 0;
    for (Vertex u : in) active += state.contains(u) ? 1 : 0;
    next.set(v, rho.reached(active, in.size()));
  }
  return next;
}

namespace {

void require_mode(const ThresholdConfig& cfg, CascadeMode expected) {
  if (cfg.mode != expected) {
    throw std::invalid_argument("cascade run expects mode " + std::string(to_string(expected)) +
                                ", got " + std::string(to_string(cfg.mode)));
  }
}

CascadeTrace run_rounds(const Graph& g, const VertexSet& seeds, const Rational& rho, bool irreversible,
                        std::size_t max_rounds, RunOptions opts) {
  using Kind = Termination::Kind;
  if (seeds.universe() != g.num_vertices()) {
    throw std::invalid_argument("seed set universe does not match graph");
  }

  CascadeTrace trace;
  VertexSet current = seeds;
  if (opts.record_states) trace.states.push_back(current);

  // Hash of every visited state plus full copies at power-of-two rounds;
  // a hash hit is confirmed by replaying from the nearest checkpoint.
  std::unordered_multimap<std::uint64_t, std::size_t> seen;
  std::vector<std::pair<std::size_t, VertexSet>> checkpoints;
  auto advance = [&](const VertexSet& s) {
    auto next = sync_step(g, s, rho);
    if (irreversible) next |= s;
    return next;
  };
  auto state_at = [&](std::size_t round) -> VertexSet {
    if (opts.record_states) return trace.states[round];
    const auto* cp = &checkpoints.front();
    for (const auto& c : checkpoints) {
      if (c.first <= round) cp = &c;
    }
    VertexSet s = cp->second;
    for (std::size_t r = cp->first; r < round; ++r) s = advance(s);
    return s;
  };

  for (std::size_t round = 0;; ++round) {
    if (current.all()) {
      trace.termination = {Kind::all_active, round, 0};
      trace.rounds_to_full = round;
      break;
    }
    const auto h = current.hash();
    std::optional<std::size_t> repeat;
    auto [lo, hi] = seen.equal_range(h);
    for (auto it = lo; it != hi && !repeat; ++it) {
      if (state_at(it->second) == current) repeat = it->second;
    }
    if (repeat) {
      const auto period = round - *repeat;
      trace.termination = period == 1 ? Termination{Kind::fixed_point, *repeat, 0}
                                      : Termination{Kind::cycle, *repeat, period};
      break;
    }
    if (round >= max_rounds) {
      trace.termination = {Kind::budget_exhausted, round, 0};
      break;
    }
    seen.emplace(h, round);
    if (!opts.record_states && (round & (round - 1)) == 0) checkpoints.emplace_back(round, current);

    auto next = advance(current);
    if (!current.is_subset_of(next)) trace.monotone = false;
    current = std::move(next);
    ++trace.steps;
    if (opts.record_states) trace.states.push_back(current);
  }
  trace.final_state = std::move(current);
  return trace;
}

}  // namespace

CascadeTrace run_sync(const Graph& g, const VertexSet& seeds, const ThresholdConfig& cfg,
                      std::optional<std::size_t> max_rounds, RunOptions opts) {
  require_mode(cfg, CascadeMode::reversible_sync);
  return run_rounds(g, seeds, cfg.rho, false, max_rounds.value_or(default_max_rounds(g)), opts);
}

CascadeTrace run_irreversible(const Graph& g, const VertexSet& seeds, const ThresholdConfig& cfg,
                              RunOptions opts) {
  require_mode(cfg, CascadeMode::irreversible);
  // The active set grows strictly until it is fixed, so n + 1 rounds suffice.
  return run_rounds(g, seeds, cfg.rho, true, g.num_vertices() + 1, opts);
}

CascadeTrace run_async(const Graph& g, const VertexSet& seeds, const ThresholdConfig& cfg,
                       const Scheduler& sched, std::optional<std::size_t> max_steps, RunOptions opts) {
  using Kind = Termination::Kind;
  require_mode(cfg, CascadeMode::reversible_async);
  const auto n = g.num_vertices();
  if (seeds.universe() != n) throw std::invalid_argument("seed set universe does not match graph");
  const auto budget = max_steps.value_or(default_max_rounds(g));
  const auto& rho = cfg.rho;

  CascadeTrace trace;
  VertexSet state = seeds;
  if (opts.record_states) trace.states.push_back(state);

  std::vector<std::size_t> active_in(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : g.in_neighbors(v)) active_in[v] += state.contains(u) ? 1 : 0;
  }
  auto wants_on = [&](Vertex v) { return rho.reached(active_in[v], g.in_degree(v)); };
  auto changeable = [&](Vertex v) { return g.in_degree(v) > 0 && state.contains(v) != wants_on(v); };

  Rng rng(sched.seed);
  std::size_t cursor = 0;
  std::vector<Vertex> candidates;
  std::vector<Vertex> chosen;

  for (std::size_t step = 0;; ++step) {
    if (state.all()) {
      trace.termination = {Kind::all_active, step, 0};
      trace.rounds_to_full = step;
      break;
    }
    candidates.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (changeable(v)) candidates.push_back(v);
    }
    if (candidates.empty()) {
      trace.termination = {Kind::fixed_point, step, 0};
      break;
    }
    if (step >= budget) {
      trace.termination = {Kind::budget_exhausted, step, 0};
      break;
    }

    chosen.clear();
    switch (sched.policy) {
      case SchedulerPolicy::round_robin: {
        auto it = std::lower_bound(candidates.begin(), candidates.end(), static_cast<Vertex>(cursor));
        const Vertex v = it == candidates.end() ? candidates.front() : *it;
        chosen.push_back(v);
        cursor = (v + 1) % n;
        break;
      }
      case SchedulerPolicy::uniform_random:
        chosen.push_back(candidates[rng.below(candidates.size())]);
        break;
      case SchedulerPolicy::greedy_deactivate: {
        auto it = std::find_if(candidates.begin(), candidates.end(),
                               [&](Vertex v) { return state.contains(v); });
        chosen.push_back(it == candidates.end() ? candidates.front() : *it);
        break;
      }
      case SchedulerPolicy::full_sweep:
        chosen = candidates;
        break;
    }

    for (Vertex v : chosen) {
      const bool on = !state.contains(v);
      if (!on) trace.monotone = false;
      state.set(v, on);
    }
    for (Vertex v : chosen) {
      const bool on = state.contains(v);
      for (Vertex w : g.out_neighbors(v)) {
        if (on) {
          ++active_in[w];
        } else {
          --active_in[w];
        }
      }
    }
    ++trace.steps;
    if (opts.record_states) trace.states.push_back(state);
  }
  trace.final_state = std::move(state);
  return trace;
}

CascadeTrace run_cascade(const Graph& g, const VertexSet& seeds, const ThresholdConfig& cfg,
                         const Scheduler& sched, std::optional<std::size_t> budget, RunOptions opts) {
  switch (cfg.mode) {
    case CascadeMode::reversible_sync: return run_sync(g, seeds, cfg, budget, opts);
    case CascadeMode::reversible_async: return run_async(g, seeds, cfg, sched, budget, opts);
    case CascadeMode::irreversible: return run_irreversible(g, seeds, cfg, opts);
  }
  throw std::invalid_argument("unknown cascade mode");
}

bool check_seed_stability(const Graph& g, const VertexSet& seeds, const Rational& rho) {
  return seeds.is_subset_of(sync_step(g, seeds, rho));
}

bool is_monotone(const CascadeTrace& trace) {
  for (std::size_t i = 1; i < trace.states.size(); ++i) {
    if (!trace.states[i - 1].is_subset_of(trace.states[i])) return false;
  }
  return true;
}

void write_trace(std::ostream& out, const CascadeTrace& trace) {
  for (std::size_t r = 0; r < trace.states.size(); ++r) {
    out << "round " << r << ": " << trace.states[r].to_hex() << '\n';
  }
  out << "termination: " << trace.termination.str() << '\n';
}

}  // namespace rcascade
