#include "rcascade/seeders.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rcascade/cascade.hpp"

namespace rcascade {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::high_degree_core: return "highdeg";
    case Provenance::random_repair: return "random-repair";
    case Provenance::explicit_list: return "explicit";
  }
  return "unknown";
}

std::string format_seeds(const VertexSet& seeds) {
  const auto members = seeds.members();
  std::string out = "seeds " + std::to_string(members.size()) + ":";
  for (auto v : members) out += " " + std::to_string(v);
  return out;
}

VertexSet parse_seeds(std::string_view text, std::size_t n) {
  std::string body(text);
  std::optional<std::size_t> declared;
  if (body.rfind("seeds", 0) == 0) {
    const auto colon = body.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("seed line lacks ':'");
    declared = std::stoul(body.substr(5, colon - 5));
    body = body.substr(colon + 1);
  }
  std::replace(body.begin(), body.end(), ',', ' ');
  std::istringstream in(body);
  std::vector<Vertex> ids;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    const auto v = std::stoull(token, &used);
    if (used != token.size()) throw std::invalid_argument("bad seed id '" + token + "'");
    if (v >= n) throw std::invalid_argument("seed id " + token + " outside graph");
    ids.push_back(static_cast<Vertex>(v));
  }
  VertexSet out(n, ids);
  if (declared && *declared != out.count()) {
    throw std::invalid_argument("seed line declares " + std::to_string(*declared) + " ids, lists " +
                                std::to_string(out.count()));
  }
  return out;
}

namespace {

VertexSet high_degree_core(const Graph& g, const Rational& rho) {
  VertexSet core(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (rho.exceeds_inverse(g.degree(v))) core.insert(v);
  }
  return core;
}

}  // namespace

std::vector<Vertex> seed_selection_order(const Graph& g, Vertex v, const Rational& rho,
                                         const VertexSet& chosen) {
  std::vector<Vertex> order(g.out_neighbors(v).begin(), g.out_neighbors(v).end());
  auto rank = [&](Vertex u) {
    if (chosen.contains(u)) return 0;
    return rho.exceeds_inverse(g.degree(u)) ? 1 : 2;
  };
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return rank(a) < rank(b); });
  return order;
}

std::size_t budget_highdeg(const Graph& g, const Rational& rho) {
  std::size_t budget = 2;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto d = g.in_degree(v);
    if (rho.exceeds_inverse(d)) budget += rho.min_active(d) + 1;
  }
  return budget;
}

SeedSet highdeg_seeder(const Graph& g, const Rational& rho) {
  if (g.directed()) throw GraphError("high-degree seeding needs an undirected graph");
  if (g.num_vertices() < 2) throw GraphError("high-degree seeding needs at least two vertices");
  if (!is_connected(g)) throw GraphError("high-degree seeding needs a connected graph");

  auto core = high_degree_core(g, rho);
  if (core.empty()) core.insert(0);

  VertexSet seeds(g.num_vertices());
  for (Vertex v : core.members()) {
    seeds.insert(v);
    const auto order = seed_selection_order(g, v, rho, seeds);
    const auto quota = rho.min_active(g.degree(v));
    for (std::size_t i = 0; i < quota; ++i) seeds.insert(order[i]);
  }

  // Every seed keeps at least ceil(rho d) seeded neighbours.
  for (Vertex u : seeds.members()) {
    std::size_t inside = 0;
    for (Vertex w : g.out_neighbors(u)) inside += seeds.contains(w) ? 1 : 0;
    if (inside < rho.min_active(g.degree(u))) {
      throw std::logic_error("high-degree seed set not stable at vertex " + std::to_string(u));
    }
  }

  SeedSet out;
  out.vertices = std::move(seeds);
  out.provenance = Provenance::high_degree_core;
  out.rho = rho;
  out.budget = budget_highdeg(g, rho);
  if (out.size() > *out.budget) throw std::logic_error("high-degree seed set exceeds its budget");
  return out;
}

namespace {

bool sampling_is_trivial(const Rational& rho, double C) {
  return 8.0 * C * static_cast<double>(rho.num()) >= static_cast<double>(rho.den());
}

}  // namespace

std::size_t budget_random_repair(const Graph& g, const Rational& rho, double C) {
  if (sampling_is_trivial(rho, C)) return g.num_vertices();
  const double r = rho.value();
  double total = 8.0 * C * r * static_cast<double>(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto d = static_cast<double>(g.in_degree(v));
    total += (d + 1.0) * std::exp(-3.0 * C * r * d);
  }
  return static_cast<std::size_t>(std::ceil(total));
}

RandomRepairSample random_repair_sample(const Graph& g, const Rational& rho, double C, RngSeed seed) {
  if (!(C > 1.0)) throw std::invalid_argument("random repair needs C > 1");
  const auto n = g.num_vertices();
  RandomRepairSample out;
  out.sampled = VertexSet(n);
  out.deficient = VertexSet(n);
  if (sampling_is_trivial(rho, C)) {
    out.trivial = true;
    out.seeds = VertexSet::full(n);
    return out;
  }

  Rng rng(seed);
  const double prob = 8.0 * C * rho.value();
  for (Vertex v = 0; v < n; ++v) {
    if (rng.bernoulli(prob)) out.sampled.insert(v);
  }
  out.seeds = out.sampled;
  for (Vertex v = 0; v < n; ++v) {
    const auto in = g.in_neighbors(v);
    std::size_t hit = 0;
    for (Vertex u : in) hit += out.sampled.contains(u) ? 1 : 0;
    if (rho.den() * hit <= rho.num() * in.size()) {
      out.deficient.insert(v);
      out.seeds.insert(v);
      for (Vertex u : in) out.seeds.insert(u);
    }
  }
  return out;
}

SeedSet random_repair_seeder(const Graph& g, const Rational& rho, double C, RngSeed seed) {
  auto sample = random_repair_sample(g, rho, C, seed);
  if (!sample.trivial && !sync_step(g, sample.seeds, rho).all()) {
    throw std::logic_error("random repair seed set failed to activate all vertices in one round");
  }
  SeedSet out;
  out.vertices = std::move(sample.seeds);
  out.provenance = Provenance::random_repair;
  out.rho = rho;
  out.C = C;
  out.rng = seed;
  out.budget = budget_random_repair(g, rho, C);
  return out;
}

std::size_t count_low_indegree(const Graph& g, const Rational& rho, double C) {
  const double r = rho.value();
  const double threshold = (1.0 - std::log(r)) / (C * r);  // ln(e/rho) / (C rho)
  std::size_t count = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (static_cast<double>(g.in_degree(v)) < threshold) ++count;
  }
  return count;
}

}  // namespace rcascade
