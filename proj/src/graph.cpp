#include "rcascade/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace rcascade {

namespace {

void fill_csr(std::size_t n, const std::vector<Edge>& arcs, bool by_target,
              std::vector<std::size_t>& off, std::vector<Vertex>& adj) {
  off.assign(n + 1, 0);
  for (const auto& [u, v] : arcs) ++off[(by_target ? v : u) + 1];
  for (std::size_t i = 0; i < n; ++i) off[i + 1] += off[i];
  adj.resize(arcs.size());
  auto cursor = off;
  // arcs are sorted by (u, v); the in-lists come out sorted by u and the
  // out-lists by v.
  for (const auto& [u, v] : arcs) {
    if (by_target) {
      adj[cursor[v]++] = u;
    } else {
      adj[cursor[u]++] = v;
    }
  }
}

void require_undirected(const Graph& g, const char* op) {
  if (g.directed()) {
    throw GraphError(std::string(op) + " is defined for undirected graphs only");
  }
}

}  // namespace

Graph Graph::build(std::size_t n, std::span<const Edge> edges, Directedness dir) {
  if (n > std::size_t{0xffffffff}) throw GraphError("too many vertices");
  std::vector<Edge> arcs;
  arcs.reserve(dir == Directedness::undirected ? 2 * edges.size() : edges.size());
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") has an endpoint outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
    }
    if (u == v) {
      throw GraphError("self-loop (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    arcs.emplace_back(u, v);
    if (dir == Directedness::undirected) arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  Graph g;
  g.n_ = n;
  g.directed_ = dir == Directedness::directed;
  fill_csr(n, arcs, true, g.in_off_, g.in_adj_);
  fill_csr(n, arcs, false, g.out_off_, g.out_adj_);
  return g;
}

VertexSet Graph::in_neighbor_set(Vertex v) const { return VertexSet(n_, in_neighbors(v)); }

bool Graph::has_edge(Vertex u, Vertex v) const {
  auto out = out_neighbors(u);
  return std::binary_search(out.begin(), out.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : out_neighbors(u)) {
      if (directed_ || u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

VertexSet ball(const Graph& g, const VertexSet& from, std::size_t radius) {
  require_undirected(g, "ball");
  if (from.universe() != g.num_vertices()) throw GraphError("vertex set universe mismatch");
  VertexSet reached = from;
  std::vector<Vertex> frontier = from.members();
  for (std::size_t step = 0; step < radius && !frontier.empty(); ++step) {
    std::vector<Vertex> next;
    for (Vertex u : frontier) {
      for (Vertex w : g.out_neighbors(u)) {
        if (!reached.contains(w)) {
          reached.insert(w);
          next.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  return reached;
}

std::vector<std::optional<std::size_t>> bfs_distances(const Graph& g, Vertex source) {
  std::vector<std::optional<std::size_t>> dist(g.num_vertices());
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.out_neighbors(u)) {
      if (!dist[w]) {
        dist[w] = *dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  require_undirected(g, "is_connected");
  if (g.num_vertices() == 0) return false;
  const auto dist = bfs_distances(g, 0);
  return std::all_of(dist.begin(), dist.end(), [](const auto& d) { return d.has_value(); });
}

std::optional<std::size_t> diameter(const Graph& g) {
  require_undirected(g, "diameter");
  const std::size_t n = g.num_vertices();
  if (!is_connected(g)) return std::nullopt;

  // BFS from every vertex, 64 sources per pass: bit s of seen[v] records
  // that source (base + s) has reached v.
  std::size_t diam = 0;
  std::vector<std::uint64_t> seen(n), frontier(n), next(n);
  for (std::size_t base = 0; base < n; base += 64) {
    const std::size_t batch = std::min<std::size_t>(64, n - base);
    std::fill(seen.begin(), seen.end(), 0);
    std::fill(frontier.begin(), frontier.end(), 0);
    for (std::size_t s = 0; s < batch; ++s) {
      seen[base + s] = frontier[base + s] = std::uint64_t{1} << s;
    }
    for (std::size_t level = 1;; ++level) {
      bool grew = false;
      for (std::size_t v = 0; v < n; ++v) {
        std::uint64_t incoming = 0;
        for (Vertex u : g.in_neighbors(static_cast<Vertex>(v))) incoming |= frontier[u];
        next[v] = incoming & ~seen[v];
        grew = grew || next[v] != 0;
      }
      if (!grew) break;
      for (std::size_t v = 0; v < n; ++v) seen[v] |= next[v];
      std::swap(frontier, next);
      diam = std::max(diam, level);
    }
  }
  return diam;
}

std::map<std::size_t, std::size_t> degree_histogram(const Graph& g) {
  require_undirected(g, "degree_histogram");
  std::map<std::size_t, std::size_t> hist;
  for (Vertex v = 0; v < g.num_vertices(); ++v) ++hist[g.degree(v)];
  return hist;
}

double empirical_tail_constant(const Graph& g, double gamma) {
  const auto hist = degree_histogram(g);
  const double n = static_cast<double>(g.num_vertices());
  double worst = 0.0;
  for (const auto& [k, count] : hist) {
    if (k == 0) continue;
    worst = std::max(worst, static_cast<double>(count) / n * std::pow(static_cast<double>(k), gamma));
  }
  return worst;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError(1, "missing header 'n m directed|undirected'");
  std::istringstream header(line);
  long long n = -1, m = -1;
  std::string kind, extra;
  if (!(header >> n >> m >> kind) || (header >> extra) || n < 0 || m < 0) {
    throw ParseError(lineno, "malformed header '" + line + "'");
  }
  Directedness dir;
  if (kind == "directed") {
    dir = Directedness::directed;
  } else if (kind == "undirected") {
    dir = Directedness::undirected;
  } else {
    throw ParseError(lineno, "unknown graph kind '" + kind + "'");
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) {
      throw ParseError(lineno + 1, "expected " + std::to_string(m) + " edges, found " +
                                       std::to_string(i));
    }
    std::istringstream row(line);
    long long u = -1, v = -1;
    if (!(row >> u >> v) || (row >> extra) || u < 0 || v < 0) {
      throw ParseError(lineno, "malformed edge '" + line + "'");
    }
    if (u >= n || v >= n) throw ParseError(lineno, "endpoint out of range in '" + line + "'");
    if (u == v) throw ParseError(lineno, "self-loop '" + line + "'");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (next_line()) throw ParseError(lineno, "trailing content after " + std::to_string(m) + " edges");
  return Graph::build(static_cast<std::size_t>(n), edges, dir);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  const auto edges = g.edges();
  out << g.num_vertices() << ' ' << edges.size() << ' '
      << (g.directed() ? "directed" : "undirected") << '\n';
  for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return read_edge_list(in);
}

void save_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  write_edge_list(out, g);
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

}  // namespace rcascade
