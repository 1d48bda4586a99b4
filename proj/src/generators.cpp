#include "rcascade/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

namespace rcascade {

Graph gen_er(const ErParams& params, RngSeed seed) {
  const auto n = params.n;
  const double p = params.p;
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  std::vector<Edge> edges;
  if (p == 0.0 || n < 2) return Graph::build(n, edges, Directedness::undirected);
  if (p == 1.0) {
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    return Graph::build(n, edges, Directedness::undirected);
  }

  Rng rng(seed);
  const double log_q = std::log1p(-p);
  edges.reserve(static_cast<std::size_t>(p * static_cast<double>(n) * static_cast<double>(n - 1) / 2 * 1.1) + 16);
  // Pairs (w, v) with w < v enumerated row by row; each skip is Geometric(p).
  long long v = 1;
  long long w = -1;
  const auto nn = static_cast<long long>(n);
  while (v < nn) {
    const double r = rng.uniform();
    w += 1 + static_cast<long long>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
  }
  return Graph::build(n, edges, Directedness::undirected);
}

namespace {

std::uint64_t edge_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

std::vector<std::size_t> target_degrees(const PowerLawParams& params) {
  const std::size_t n = params.n;
  const double slack_c = params.C / 2.0;
  std::vector<std::size_t> degrees;
  degrees.reserve(n);
  for (std::size_t k = 2; k < n && degrees.size() < n; ++k) {
    const double cap = params.C * static_cast<double>(n) / std::pow(static_cast<double>(k), params.gamma);
    if (cap < 1.0) break;
    // Slack count, but at least one vertex for every degree the bound admits.
    const auto target = std::max<std::size_t>(static_cast<std::size_t>(std::floor(cap * slack_c / params.C)), 1);
    const auto count = std::min(target, n - degrees.size());
    degrees.insert(degrees.end(), count, k);
  }
  degrees.resize(n, 1);
  const auto total = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
  if (total % 2 == 1) {
    auto it = std::find(degrees.begin(), degrees.end(), std::size_t{1});
    if (it == degrees.end()) it = std::min_element(degrees.begin(), degrees.end());
    ++*it;
  }
  return degrees;
}

double sequence_tail_constant(const std::vector<std::size_t>& degrees, double gamma) {
  std::unordered_map<std::size_t, std::size_t> hist;
  for (auto d : degrees) ++hist[d];
  double worst = 0.0;
  for (const auto& [k, c] : hist) {
    worst = std::max(worst, static_cast<double>(c) / static_cast<double>(degrees.size()) *
                                std::pow(static_cast<double>(k), gamma));
  }
  return worst;
}

template <typename Range>
void shuffle(Range& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.below(i)]);
  }
}

// Removes loops and repeated edges by double-edge swaps. False if some bad
// edge could not be repaired.
bool rewire_simple(std::vector<Edge>& edges, Rng& rng) {
  std::unordered_map<std::uint64_t, std::size_t> mult;
  mult.reserve(edges.size() * 2);
  for (const auto& [a, b] : edges) ++mult[edge_key(a, b)];
  auto is_bad = [&](std::size_t i) {
    const auto& [a, b] = edges[i];
    return a == b || mult[edge_key(a, b)] > 1;
  };
  auto drop = [&](std::size_t i) {
    auto it = mult.find(edge_key(edges[i].first, edges[i].second));
    if (--it->second == 0) mult.erase(it);
  };

  constexpr std::size_t kAttempts = 1000;
  for (int pass = 0; pass < 8; ++pass) {
    bool clean = true;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!is_bad(i)) continue;
      bool fixed = false;
      for (std::size_t attempt = 0; attempt < kAttempts && !fixed; ++attempt) {
        const std::size_t j = rng.below(edges.size());
        if (j == i) continue;
        auto [u, v] = edges[i];
        auto [x, y] = edges[j];
        if (rng.below(2) == 1) std::swap(x, y);
        if (u == x || v == y) continue;
        drop(i);
        drop(j);
        if (mult.contains(edge_key(u, x)) || mult.contains(edge_key(v, y)) ||
            edge_key(u, x) == edge_key(v, y)) {
          ++mult[edge_key(edges[i].first, edges[i].second)];
          ++mult[edge_key(edges[j].first, edges[j].second)];
          continue;
        }
        edges[i] = {u, x};
        edges[j] = {v, y};
        ++mult[edge_key(u, x)];
        ++mult[edge_key(v, y)];
        fixed = true;
      }
      clean = clean && fixed;
    }
    if (clean) break;
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (is_bad(i)) return false;
  }
  return true;
}

// Joins components by swapping (a,b),(c,d) -> (a,c),(b,d) where (a,b) is a
// non-tree edge of the growing component. Degrees are unchanged.
bool connect_components(std::size_t n, std::vector<Edge>& edges) {
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    incident[edges[i].first].push_back(i);
    incident[edges[i].second].push_back(i);
  }

  // BFS spanning forest: component id per vertex, tree flag per edge.
  std::vector<std::size_t> comp(n, SIZE_MAX);
  std::vector<bool> tree_edge(edges.size(), false);
  struct Component {
    std::vector<std::size_t> edges;
    std::vector<std::size_t> non_tree;
    std::size_t vertices = 0;
  };
  std::vector<Component> comps;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != SIZE_MAX) continue;
    const std::size_t id = comps.size();
    comps.emplace_back();
    std::vector<std::size_t> queue{s};
    comp[s] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto u = queue[head];
      ++comps[id].vertices;
      for (auto e : incident[u]) {
        const auto w = edges[e].first == u ? edges[e].second : edges[e].first;
        if (comp[w] == SIZE_MAX) {
          comp[w] = id;
          tree_edge[e] = true;
          queue.push_back(w);
        }
      }
    }
  }
  if (comps.size() == 1) return true;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto& c = comps[comp[edges[e].first]];
    c.edges.push_back(e);
    if (!tree_edge[e]) c.non_tree.push_back(e);
  }

  std::size_t giant = SIZE_MAX;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].non_tree.empty()) continue;
    if (giant == SIZE_MAX || comps[i].vertices > comps[giant].vertices) giant = i;
  }
  if (giant == SIZE_MAX) return false;

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i != giant) order.push_back(i);
  }
  // Cyclic components first so the pool of non-tree edges never runs dry
  // while there is still enough cycle mass overall.
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return comps[a].non_tree.size() > comps[b].non_tree.size();
  });

  std::vector<std::size_t> pool = comps[giant].non_tree;
  for (auto id : order) {
    auto& other = comps[id];
    if (other.edges.empty() || pool.empty()) return false;
    const auto gi = pool.back();
    pool.pop_back();
    std::size_t oi;
    if (!other.non_tree.empty()) {
      oi = other.non_tree.back();
      other.non_tree.pop_back();
      pool.insert(pool.end(), other.non_tree.begin(), other.non_tree.end());
      pool.push_back(oi);  // (b,d) closes a cycle through the new tree edge (a,c)
    } else {
      oi = other.edges.front();
    }
    const auto [a, b] = edges[gi];
    const auto [c, d] = edges[oi];
    edges[gi] = {a, c};
    edges[oi] = {b, d};
  }
  return true;
}

}  // namespace

Graph gen_powerlaw_connected(const PowerLawParams& params, RngSeed seed, std::size_t max_retries) {
  if (!(params.gamma > 2.0)) throw std::invalid_argument("gamma must exceed 2");
  if (!(params.C >= 1.0)) throw std::invalid_argument("C must be at least 1");
  if (params.n < 2) throw std::invalid_argument("power-law generator needs n >= 2");

  const auto n = params.n;
  auto degrees = target_degrees(params);
  const double planned = sequence_tail_constant(degrees, params.gamma);
  if (planned > params.C) {
    throw GenerationError("degree sequence violates the tail bound", planned);
  }
  const auto total = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
  if (total < 2 * (n - 1)) {
    throw GenerationError("degree sum " + std::to_string(total) + " too small for a connected graph on " +
                              std::to_string(n) + " vertices",
                          planned);
  }

  Rng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(max_retries, 1); ++attempt) {
    shuffle(degrees, rng);
    std::vector<Vertex> stubs;
    stubs.reserve(total);
    for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), degrees[v], v);
    shuffle(stubs, rng);
    std::vector<Edge> edges;
    edges.reserve(total / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.emplace_back(stubs[i], stubs[i + 1]);

    if (!rewire_simple(edges, rng)) continue;
    if (!connect_components(n, edges)) continue;
    auto g = Graph::build(n, edges, Directedness::undirected);
    if (g.num_edges() != edges.size() || !is_connected(g)) continue;
    const double tail = empirical_tail_constant(g, params.gamma);
    best = std::min(best, tail);
    if (tail <= params.C) return g;
  }
  throw GenerationError("no certified connected graph after " + std::to_string(max_retries) + " attempts",
                        best);
}

Graph gen_circulant(std::size_t n, std::size_t d) {
  if (d % 2 != 0) throw std::invalid_argument("circulant degree must be even");
  if (d == 0 || d >= n) throw std::invalid_argument("circulant degree must satisfy 0 < d < n");
  std::vector<Edge> edges;
  edges.reserve(n * d / 2);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t j = 1; j <= d / 2; ++j) {
      edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>((v + j) % n));
    }
  }
  return Graph::build(n, edges, Directedness::undirected);
}

}  // namespace rcascade
