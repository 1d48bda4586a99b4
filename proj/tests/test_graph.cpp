#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "rcascade/graph.hpp"
#include "test_support.hpp"

namespace rcascade {
namespace {

using testing::complete;
using testing::cycle;
using testing::path;
using testing::star;
using testing::undirected;

TEST(BuildGraph, SingleEdgeIsSymmetrized) {
  const auto g = undirected(2, {{0, 1}});
  EXPECT_EQ(g.num_edges(), 1U);
  EXPECT_EQ(g.num_arcs(), 2U);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_EQ(g.degree(0), 1U);
  EXPECT_EQ(g.degree(1), 1U);
}

TEST(BuildGraph, DuplicatesCollapse) {
  const auto g = undirected(3, {{0, 1}, {0, 1}, {1, 2}});
  EXPECT_EQ(g.num_edges(), 2U);
  const auto h = undirected(3, {{0, 1}, {1, 0}});
  EXPECT_EQ(h.num_edges(), 1U);
}

TEST(BuildGraph, RejectsSelfLoop) {
  const std::vector<Edge> e{{0, 0}};
  try {
    Graph::build(3, e, Directedness::directed);
    FAIL() << "self-loop accepted";
  } catch (const GraphError& err) {
    EXPECT_NE(std::string(err.what()).find("(0,0)"), std::string::npos);
  }
}

TEST(BuildGraph, RejectsOutOfRangeEndpoint) {
  const std::vector<Edge> e{{0, 3}};
  EXPECT_THROW(Graph::build(3, e, Directedness::directed), GraphError);
}

TEST(Neighbors, StarDegrees) {
  const auto g = star(4);
  EXPECT_EQ(g.degree(0), 4U);
  for (Vertex leaf = 1; leaf <= 4; ++leaf) EXPECT_EQ(g.degree(leaf), 1U);
}

TEST(Neighbors, DirectedPathIndegrees) {
  const std::vector<Edge> e{{0, 1}, {1, 2}};
  const auto g = Graph::build(3, e, Directedness::directed);
  EXPECT_EQ(g.in_degree(0), 0U);
  EXPECT_EQ(g.in_degree(1), 1U);
  EXPECT_EQ(g.in_neighbor_set(2), VertexSet(3, {1}));
  EXPECT_EQ(g.out_degree(0), 1U);
}

TEST(Neighbors, TriangleInNeighbors) {
  EXPECT_EQ(complete(3).in_neighbor_set(0), VertexSet(3, {1, 2}));
}

TEST(Ball, PathRadiusOne) {
  EXPECT_EQ(ball(path(5), VertexSet(5, {2}), 1), VertexSet(5, {1, 2, 3}));
}

TEST(Ball, RadiusZeroIsIdentity) {
  const auto g = cycle(7);
  EXPECT_EQ(ball(g, VertexSet::full(7), 0), VertexSet::full(7));
  EXPECT_EQ(ball(g, VertexSet(7, {3, 5}), 0), VertexSet(7, {3, 5}));
}

TEST(Ball, PathEndToEnd) {
  // Reference: every vertex is within distance 4 of vertex 0 on P5.
  const auto g = path(5);
  const auto d = testing::all_pairs(g);
  VertexSet expected(5);
  for (Vertex v = 0; v < 5; ++v)
    if (d[0][v] <= 4) expected.insert(v);
  EXPECT_EQ(expected, VertexSet::full(5));
  EXPECT_EQ(ball(g, VertexSet(5, {0}), 4), expected);
}

TEST(Ball, RejectsDirected) {
  const std::vector<Edge> e{{0, 1}};
  const auto g = Graph::build(2, e, Directedness::directed);
  EXPECT_THROW(ball(g, VertexSet(2, {0}), 1), GraphError);
}

TEST(Diameter, Examples) {
  EXPECT_TRUE(is_connected(path(5)));
  EXPECT_EQ(diameter(path(5)), 4U);
  EXPECT_FALSE(is_connected(undirected(2, {})));
  EXPECT_EQ(diameter(undirected(2, {})), std::nullopt);
  for (std::size_t n = 2; n <= 70; n += 17) EXPECT_EQ(diameter(complete(n)), 1U);
  EXPECT_EQ(diameter(undirected(1, {})), 0U);
}

// Random graphs up to 64+ vertices against Floyd-Warshall, also crossing the
// 64-source batch boundary of the diameter routine.
TEST(Diameter, MatchesAllPairsShortestPaths) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + rng() % 70;
    const double p = 0.01 + static_cast<double>(rng() % 100) / 800.0;
    std::vector<Edge> e;
    std::bernoulli_distribution coin(p);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (coin(rng)) e.emplace_back(u, v);
    const auto g = undirected(n, e);
    EXPECT_EQ(diameter(g), testing::naive_diameter(g)) << "trial " << trial;
    EXPECT_EQ(is_connected(g), testing::naive_connected(g));
  }
}

TEST(Ball, MonotoneAndReachesEverythingAtDiameter) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    const auto g = testing::random_connected(n, 0.05, rng);
    const auto dist = testing::all_pairs(g);
    VertexSet from(n);
    from.insert(static_cast<Vertex>(rng() % n));
    if (rng() % 2) from.insert(static_cast<Vertex>(rng() % n));
    const auto diam = *diameter(g);
    VertexSet previous = from;
    for (std::size_t i = 0; i <= diam + 1; ++i) {
      const auto b = ball(g, from, i);
      EXPECT_TRUE(previous.is_subset_of(b));
      for (Vertex v = 0; v < n; ++v) {
        bool near = false;
        for (Vertex u : from.members()) near = near || dist[u][v] <= i;
        EXPECT_EQ(b.contains(v), near);
      }
      previous = b;
    }
    EXPECT_TRUE(ball(g, from, diam).all());
  }
}

TEST(DegreeHistogram, CycleOfFour) {
  const auto g = cycle(4);
  const std::map<std::size_t, std::size_t> expected{{2, 4}};
  EXPECT_EQ(degree_histogram(g), expected);
  // (4/4) * 2^2.5
  EXPECT_NEAR(empirical_tail_constant(g, 2.5), 5.656854249, 1e-9);
}

TEST(DegreeHistogram, SingleEdge) {
  const auto g = undirected(2, {{0, 1}});
  const std::map<std::size_t, std::size_t> expected{{1, 2}};
  EXPECT_EQ(degree_histogram(g), expected);
  EXPECT_DOUBLE_EQ(empirical_tail_constant(g, 3.0), 1.0);
}

TEST(DegreeHistogram, StarOfNine) {
  const auto g = star(9);
  const std::map<std::size_t, std::size_t> expected{{1, 9}, {9, 1}};
  EXPECT_EQ(degree_histogram(g), expected);
  // max(0.9 * 1, 0.1 * 81)
  EXPECT_NEAR(empirical_tail_constant(g, 2.0), 8.1, 1e-12);
}

TEST(DegreeHistogram, HandshakeAndTightTailConstant) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 60;
    const auto g = testing::random_connected(n, 0.1, rng);
    const auto hist = degree_histogram(g);
    std::size_t total = 0, degree_sum = 0;
    for (auto [k, c] : hist) {
      total += c;
      degree_sum += k * c;
    }
    EXPECT_EQ(total, n);
    EXPECT_EQ(degree_sum, 2 * g.num_edges());

    const double gamma = 2.0 + static_cast<double>(rng() % 100) / 100.0;
    const double C = empirical_tail_constant(g, gamma);
    bool tight = false;
    for (auto [k, c] : hist) {
      if (k == 0) continue;
      const double needed = static_cast<double>(c) / static_cast<double>(n) * std::pow(static_cast<double>(k), gamma);
      EXPECT_LE(needed, C * (1 + 1e-12));
      tight = tight || std::abs(needed - C) <= 1e-12 * C;
    }
    EXPECT_TRUE(tight);
  }
}

TEST(EdgeList, CanonicalRoundTripIsByteExact) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 30;
    const auto g = trial % 2 ? testing::random_directed(n, 0.2, rng) : testing::random_connected(n, 0.2, rng);
    std::ostringstream first;
    write_edge_list(first, g);
    std::istringstream in(first.str());
    const auto back = read_edge_list(in);
    std::ostringstream second;
    write_edge_list(second, back);
    EXPECT_EQ(first.str(), second.str());
    EXPECT_EQ(back.edges(), g.edges());
    EXPECT_EQ(back.directed(), g.directed());
  }
}

TEST(EdgeList, Format) {
  std::ostringstream out;
  write_edge_list(out, undirected(3, {{2, 1}, {0, 1}}));
  EXPECT_EQ(out.str(), "3 2 undirected\n0 1\n1 2\n");
}

TEST(EdgeList, ParseErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_edge_list(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of(""), 1U);
  EXPECT_EQ(line_of("3 1 sideways\n0 1\n"), 1U);
  EXPECT_EQ(line_of("3 2 undirected\n0 1\n1 x\n"), 3U);
  EXPECT_EQ(line_of("3 2 undirected\n0 1\n1 1\n"), 3U);
  EXPECT_EQ(line_of("3 1 undirected\n0 5\n"), 2U);
  EXPECT_EQ(line_of("3 2 undirected\n0 1\n"), 3U);
  EXPECT_EQ(line_of("3 1 undirected\n0 1\n1 2\n"), 3U);
}

TEST(EdgeList, DuplicateLinesCollapse) {
  std::istringstream in("3 3 undirected\n0 1\n1 0\n1 2\n");
  EXPECT_EQ(read_edge_list(in).num_edges(), 2U);
}

}  // namespace
}  // namespace rcascade
