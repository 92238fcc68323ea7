#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "gic/builders.hpp"
#include "gic/graph.hpp"
#include "support/oracles.hpp"

using namespace gic;

TEST(NeighborhoodGraph, UnitSquareAtAlphaOne) {
  const auto p = PointCloud::from_rows({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const auto g = build_neighborhood_graph(p, 1.0);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_FALSE(g.has_edge(0, 3));
  EXPECT_FALSE(g.has_edge(1, 2));
  EXPECT_TRUE(g.has_edge(0, 1));
}

TEST(NeighborhoodGraph, ThresholdIsInclusive) {
  const auto p = PointCloud::from_rows({{0.0}, {0.5}});
  EXPECT_EQ(build_neighborhood_graph(p, 0.5).edge_count(), 1u);
  EXPECT_EQ(build_neighborhood_graph(p, 0.4999).edge_count(), 0u);
}

TEST(NeighborhoodGraph, AlphaZeroIsEdgeless) {
  const auto p = PointCloud::from_rows({{0, 0}, {1, 0}, {0, 1}});
  const auto g = build_neighborhood_graph(p, 0.0);
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(NeighborhoodGraph, SinglePoint) {
  const auto p = PointCloud::from_rows({{3, 4}});
  const auto g = build_neighborhood_graph(p, 1.0);
  EXPECT_EQ(g.size(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(NeighborhoodGraph, EdgeListOutput) {
  const auto p = PointCloud::from_rows({{0.0}, {0.5}, {3.0}});
  std::ostringstream out;
  write_edge_list(out, build_neighborhood_graph(p, 1.0));
  EXPECT_EQ(out.str(), "0 1 0.5\n");
}

TEST(NeighborhoodGraph, PropertyGridMatchesBruteForce) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t dim = 1 + trial % 4;
    const auto p = oracle::random_cloud(rng, 150, dim);
    const double alpha = 0.05 + 0.02 * trial;
    const auto a = detail::graph_brute_force(p, alpha);
    const auto b = detail::graph_grid(p, alpha);
    EXPECT_EQ(a.edges(), b.edges()) << "dim " << dim << " alpha " << alpha;
  }
}

TEST(GraphMetric, PropertyAgreesWithFloydWarshall) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = oracle::random_cloud(rng, 40, 2);
    const double alpha = 0.25;
    const auto g = build_neighborhood_graph(p, alpha);
    std::vector<std::vector<double>> w(p.size(), std::vector<double>(p.size(), kInfinity));
    for (const auto& [u, v, d] : g.edges()) w[u][v] = w[v][u] = d;
    const auto fw = oracle::floyd_warshall(w);
    for (Vertex s = 0; s < p.size(); ++s) {
      const auto d = graph_distances(g, s);
      for (Vertex t = 0; t < p.size(); ++t) {
        if (std::isinf(fw[s][t])) {
          EXPECT_TRUE(std::isinf(d[t]));
          continue;
        }
        EXPECT_NEAR(d[t], fw[s][t], 1e-12);
        // Shortest paths are never shorter than the straight segment.
        EXPECT_GE(d[t] + 1e-12, euclidean_distance(p[s], p[t]));
      }
    }
  }
}

TEST(GraphMetric, TriangleInequality) {
  std::mt19937_64 rng(8);
  const auto p = oracle::random_cloud(rng, 60, 3);
  const auto g = build_neighborhood_graph(p, 0.35);
  std::vector<std::vector<double>> d;
  for (Vertex s = 0; s < p.size(); ++s) d.push_back(graph_distances(g, s));
  for (Vertex a = 0; a < p.size(); ++a) {
    for (Vertex b = 0; b < p.size(); ++b) {
      if (!std::isinf(d[a][b])) {
        EXPECT_NEAR(d[a][b], d[b][a], 1e-12);
      }
      for (Vertex c = 0; c < p.size(); ++c) {
        if (std::isinf(d[a][b]) || std::isinf(d[b][c])) continue;
        EXPECT_LE(d[a][c], d[a][b] + d[b][c] + 1e-12);
      }
    }
  }
}

TEST(GraphMetric, BoundedSearchLeavesFarPointsInfinite) {
  const auto p = PointCloud::from_rows({{0.0}, {1.0}, {2.0}, {3.0}});
  const auto g = build_neighborhood_graph(p, 1.0);
  const auto d = graph_distances(g, 0, 1.5);
  EXPECT_DOUBLE_EQ(d[1], 1.0);
  EXPECT_TRUE(std::isinf(d[3]));
  EXPECT_DOUBLE_EQ(graph_distances(g, 0)[3], 3.0);
}

TEST(ConnectedComponents, TwoClusters) {
  const auto p = PointCloud::from_rows({{0.0}, {0.1}, {5.0}, {5.1}, {0.2}});
  const auto c = connected_components(build_neighborhood_graph(p, 0.15));
  EXPECT_EQ(c[0], c[1]);
  EXPECT_EQ(c[1], c[4]);
  EXPECT_EQ(c[2], c[3]);
  EXPECT_NE(c[0], c[2]);
}

namespace {

std::vector<std::vector<bool>> bool_adjacency(const Adjacency& adj) {
  std::vector<std::vector<bool>> m(adj.size(), std::vector<bool>(adj.size(), false));
  for (Vertex u = 0; u < adj.size(); ++u) {
    for (Vertex v : adj[u]) m[u][v] = true;
  }
  return m;
}

Adjacency random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution edge(p);
  Adjacency adj(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (edge(rng)) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
    }
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

}  // namespace

TEST(Cliques, PropertyEnumerationMatchesSubsetOracle) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const auto adj = random_graph(rng, 14, 0.2 + 0.015 * trial);
    for (std::size_t cap : {1u, 2u, 3u, 4u}) {
      std::vector<std::vector<Vertex>> got;
      for_each_clique(adj, cap, [&](const std::vector<Vertex>& c) { got.push_back(c); });
      auto expected = oracle::cliques_by_subsets(bool_adjacency(adj), cap);
      std::sort(got.begin(), got.end());
      std::sort(expected.begin(), expected.end());
      EXPECT_EQ(got, expected);
    }
  }
}

TEST(Cliques, PropertyMaximalCliquesExactlyOnce) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const auto adj = random_graph(rng, 13, 0.25 + 0.01 * trial);
    const auto all = oracle::cliques_by_subsets(bool_adjacency(adj), adj.size());
    std::set<std::vector<Vertex>> all_set(all.begin(), all.end());
    std::vector<std::vector<Vertex>> expected;
    for (const auto& c : all) {
      bool maximal = true;
      for (Vertex v = 0; v < adj.size() && maximal; ++v) {
        if (std::find(c.begin(), c.end(), v) != c.end()) continue;
        auto bigger = c;
        bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), v), v);
        if (all_set.count(bigger)) maximal = false;
      }
      if (maximal) expected.push_back(c);
    }
    std::vector<std::vector<Vertex>> got;
    for_each_maximal_clique(adj, [&](const std::vector<Vertex>& c) {
      auto s = c;
      std::sort(s.begin(), s.end());
      got.push_back(s);
    });
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(got, expected);
  }
}

TEST(Rips, FourPointsOnALineAtAlphaOne) {
  const auto p = PointCloud::from_rows({{0.0}, {1.0}, {2.0}, {3.0}});
  const auto k = build_rips(p, 1.0);
  EXPECT_EQ(k.count(0), 4u);
  EXPECT_EQ(k.count(1), 3u);
  EXPECT_EQ(k.count(2), 0u);
}

TEST(Rips, OneSkeletonIsTheGraph) {
  std::mt19937_64 rng(19);
  const auto p = oracle::random_cloud(rng, 80, 2);
  const auto g = build_neighborhood_graph(p, 0.2);
  const auto k = build_rips(p, 0.2);
  std::vector<std::vector<Vertex>> edges;
  for (const auto& [u, v, w] : g.edges()) edges.push_back({u, v});
  EXPECT_EQ(k.simplices(1), edges);
  EXPECT_EQ(k.count(0), p.size());
}

TEST(GraphMetric, PathAndFourCycle) {
  const NeighborhoodGraph path(3, 1.0, {{0, 1, 1.0}, {1, 2, 1.0}});
  EXPECT_EQ(graph_distances(path, 0), (std::vector<double>{0.0, 1.0, 2.0}));
  const NeighborhoodGraph square(4, 1.0, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}});
  EXPECT_DOUBLE_EQ(graph_distances(square, 0)[2], 2.0);
  const NeighborhoodGraph isolated(2, 1.0, {});
  EXPECT_TRUE(std::isinf(graph_distances(isolated, 0)[1]));
}

TEST(Rips, EquilateralTriangle) {
  const double h = std::sqrt(3.0) / 2.0;
  const auto p = PointCloud::from_rows({{0, 0}, {1, 0}, {0.5, h}});
  const auto k = build_rips(p, 1.0 + 1e-12, 2);
  EXPECT_EQ(k.count(2), 1u);
  EXPECT_EQ(k.size(), 7u);
  EXPECT_EQ(build_rips(p, 0.5, 2).size(), 3u);
}

TEST(Rips, SquareWithDiagonalsIsATetrahedron) {
  const auto p = PointCloud::from_rows({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const auto k = build_rips(p, 1.5, 3);
  EXPECT_EQ(k.count(3), 1u);
  EXPECT_EQ(k.size(), 15u);
}
