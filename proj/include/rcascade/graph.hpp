#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rcascade/vertex_set.hpp"

namespace rcascade {

using Edge = std::pair<Vertex, Vertex>;

enum class Directedness { directed, undirected };

class GraphError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Immutable simple graph in CSR form. Undirected graphs store every edge in
// both directions, so in- and out-adjacency coincide. Adjacency lists are
// sorted by vertex id.
class Graph {
public:
  Graph() = default;

  // Duplicates collapse; undirected input is symmetrized. Throws GraphError
  // on self-loops or endpoints >= n.
  static Graph build(std::size_t n, std::span<const Edge> edges, Directedness dir);

  std::size_t num_vertices() const { return n_; }
  // Number of stored ordered pairs (2x the undirected edge count).
  std::size_t num_arcs() const { return in_adj_.size(); }
  // Undirected edge count, or arc count for directed graphs.
  std::size_t num_edges() const { return directed_ ? num_arcs() : num_arcs() / 2; }
  bool directed() const { return directed_; }

  std::span<const Vertex> in_neighbors(Vertex v) const {
    return {in_adj_.data() + in_off_[v], in_adj_.data() + in_off_[v + 1]};
  }
  std::span<const Vertex> out_neighbors(Vertex v) const {
    return {out_adj_.data() + out_off_[v], out_adj_.data() + out_off_[v + 1]};
  }
  std::size_t in_degree(Vertex v) const { return in_off_[v + 1] - in_off_[v]; }
  std::size_t out_degree(Vertex v) const { return out_off_[v + 1] - out_off_[v]; }
  // Undirected degree; equal to in_degree.
  std::size_t degree(Vertex v) const { return in_degree(v); }

  VertexSet in_neighbor_set(Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const;

  // Canonical edge list: ascending (u, v); undirected graphs list u < v only.
  std::vector<Edge> edges() const;

private:
  std::size_t n_ = 0;
  bool directed_ = false;
  std::vector<std::size_t> in_off_{0};
  std::vector<Vertex> in_adj_;
  std::vector<std::size_t> out_off_{0};
  std::vector<Vertex> out_adj_;
};

// Vertices within distance i of U. Undirected graphs only.
VertexSet ball(const Graph& g, const VertexSet& from, std::size_t radius);

// BFS distances from one source; unreachable vertices get nullopt.
std::vector<std::optional<std::size_t>> bfs_distances(const Graph& g, Vertex source);

bool is_connected(const Graph& g);

// Exact all-pairs BFS diameter; nullopt when disconnected. A graph with a
// single vertex has diameter 0; the empty graph is reported as disconnected.
std::optional<std::size_t> diameter(const Graph& g);

std::map<std::size_t, std::size_t> degree_histogram(const Graph& g);

// max over k >= 1 of (|{v : d(v) = k}| / n) * k^gamma: the smallest C for
// which the degree-tail condition holds at every k.
double empirical_tail_constant(const Graph& g, double gamma);

// Edge-list text format: header "n m directed|undirected", then m lines "u v".
class ParseError : public GraphError {
public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);
Graph load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const Graph& g);

}  // namespace rcascade
