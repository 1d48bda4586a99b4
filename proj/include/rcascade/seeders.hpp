#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcascade/graph.hpp"
#include "rcascade/rational.hpp"
#include "rcascade/rng.hpp"

namespace rcascade {

enum class Provenance { high_degree_core, random_repair, explicit_list };

std::string_view to_string(Provenance p);

struct SeedSet {
  VertexSet vertices;
  Provenance provenance = Provenance::explicit_list;
  std::optional<Rational> rho;
  std::optional<double> C;
  std::optional<RngSeed> rng;
  // Closed-form bound computed alongside the construction. For the
  // high-degree core this is a hard upper bound on |vertices|; for random
  // repair it bounds the expected size only.
  std::optional<std::size_t> budget;

  std::size_t size() const { return vertices.count(); }
};

// "seeds k: v1 v2 ... vk" in ascending id order.
std::string format_seeds(const VertexSet& seeds);
// Inverse of format_seeds; also accepts a bare whitespace/comma separated id list.
VertexSet parse_seeds(std::string_view text, std::size_t n);

// Core X = {v : d(v) > 1/rho} (or the lowest id vertex when empty); each
// v in X is seeded with ceil(rho d(v)) of its neighbours. The result is
// stable under one synchronous round and activates everything within
// diameter(g) rounds. Throws GraphError on directed, disconnected or
// single-vertex graphs.
SeedSet highdeg_seeder(const Graph& g, const Rational& rho);

// Neighbours of v in the order used to fill its quota: those already in
// `chosen`, then those in the high-degree core, then the rest; ascending id
// inside each group.
std::vector<Vertex> seed_selection_order(const Graph& g, Vertex v, const Rational& rho,
                                         const VertexSet& chosen);

// 2 + sum over d(v) > 1/rho of (ceil(rho d(v)) + 1).
std::size_t budget_highdeg(const Graph& g, const Rational& rho);

struct RandomRepairSample {
  bool trivial = false;  // 8 C rho >= 1: every vertex seeded
  VertexSet sampled;     // S0
  VertexSet deficient;   // A = {v : |N_in(v) & S0| <= rho d_in(v)}
  VertexSet seeds;       // S0 | A | N_in(A)
};

RandomRepairSample random_repair_sample(const Graph& g, const Rational& rho, double C, RngSeed seed);

// Samples S0 with per-vertex probability 8 C rho, then adds every vertex v
// with |N_in(v) & S0| <= rho d_in(v) together with its in-neighbours. When
// 8 C rho >= 1 all vertices are returned. Activates every vertex in one
// synchronous round. Requires C > 1.
SeedSet random_repair_seeder(const Graph& g, const Rational& rho, double C, RngSeed seed);

// ceil(8 C rho n + sum_v (d_in(v) + 1) exp(-3 C rho d_in(v))), or n when
// 8 C rho >= 1.
std::size_t budget_random_repair(const Graph& g, const Rational& rho, double C);

// |{v : d_in(v) < ln(e/rho) / (C rho)}|
std::size_t count_low_indegree(const Graph& g, const Rational& rho, double C);

}  // namespace rcascade
