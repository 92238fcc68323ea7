#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <queue>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "gic/core/point_cloud.hpp"
#include "gic/core/types.hpp"

namespace gic {

struct Neighbor {
  Vertex id;
  double weight;
};

// The alpha-neighborhood graph G^alpha(P): p ~ p' iff ||p - p'|| <= alpha,
// weighted by Euclidean length. Adjacency is CSR with neighbor lists sorted
// by id.
class NeighborhoodGraph {
 public:
  NeighborhoodGraph() = default;

  // Edges are (u, v, w) with u != v in any order; duplicates are collapsed.
  NeighborhoodGraph(std::size_t n, double alpha, std::vector<std::tuple<Vertex, Vertex, double>> edges)
      : alpha_(alpha) {
    std::vector<std::vector<Neighbor>> adj(n);
    for (auto [u, v, w] : edges) {
      if (u == v) throw PreconditionError("self-loop in neighborhood graph");
      if (u >= n || v >= n) throw PreconditionError("edge endpoint out of range");
      adj[u].push_back({v, w});
      adj[v].push_back({u, w});
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t u = 0; u < n; ++u) {
      auto& list = adj[u];
      std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
      list.erase(std::unique(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.id == b.id; }),
                 list.end());
      offsets_[u + 1] = offsets_[u] + list.size();
    }
    neighbors_.reserve(offsets_[n]);
    for (auto& list : adj) neighbors_.insert(neighbors_.end(), list.begin(), list.end());
  }

  double alpha() const { return alpha_; }
  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::span<const Neighbor> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(Vertex u, Vertex v) const {
    const auto list = neighbors(u);
    auto it = std::lower_bound(list.begin(), list.end(), v, [](const Neighbor& a, Vertex key) { return a.id < key; });
    return it != list.end() && it->id == v;
  }

  // All edges (u, v, weight) with u < v, sorted.
  std::vector<std::tuple<Vertex, Vertex, double>> edges() const {
    std::vector<std::tuple<Vertex, Vertex, double>> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < size(); ++u) {
      for (const auto& nb : neighbors(u)) {
        if (u < nb.id) out.emplace_back(u, nb.id, nb.weight);
      }
    }
    return out;
  }

 private:
  double alpha_ = 0.0;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> neighbors_;
};

enum class GraphConstruction {
  Auto,        // grid when it pays off, otherwise brute force
  BruteForce,  // O(N^2) reference scan
  Grid,        // uniform grid on the first min(d, 3) coordinates
};

namespace detail {

inline NeighborhoodGraph graph_brute_force(const PointCloud& cloud, double alpha) {
  std::vector<std::tuple<Vertex, Vertex, double>> edges;
  const auto n = static_cast<Vertex>(cloud.size());
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      const double d = euclidean_distance(cloud[i], cloud[j]);
      if (d <= alpha) edges.emplace_back(i, j, d);
    }
  }
  return NeighborhoodGraph(cloud.size(), alpha, std::move(edges));
}

// Candidate pairs come from adjacent grid cells of side alpha on a coordinate
// projection; the projection never increases distances, so no edge is missed.
// The final test is the same predicate as the brute-force scan.
inline NeighborhoodGraph graph_grid(const PointCloud& cloud, double alpha) {
  const std::size_t m = std::min<std::size_t>(cloud.dim(), 3);
  using Key = std::array<std::int64_t, 3>;
  std::map<Key, std::vector<Vertex>> cells;
  auto key_of = [&](Vertex i) {
    Key k{0, 0, 0};
    const auto p = cloud[i];
    for (std::size_t c = 0; c < m; ++c) k[c] = static_cast<std::int64_t>(std::floor(p[c] / alpha));
    return k;
  };
  const auto n = static_cast<Vertex>(cloud.size());
  for (Vertex i = 0; i < n; ++i) cells[key_of(i)].push_back(i);

  std::vector<std::tuple<Vertex, Vertex, double>> edges;
  const int span0 = 1;
  const int span1 = m > 1 ? 1 : 0;
  const int span2 = m > 2 ? 1 : 0;
  for (const auto& [key, members] : cells) {
    for (int a = -span0; a <= span0; ++a) {
      for (int b = -span1; b <= span1; ++b) {
        for (int c = -span2; c <= span2; ++c) {
          const Key other{key[0] + a, key[1] + b, key[2] + c};
          if (other < key) continue;  // each unordered cell pair once
          auto it = cells.find(other);
          if (it == cells.end()) continue;
          const bool same = other == key;
          for (std::size_t x = 0; x < members.size(); ++x) {
            for (std::size_t y = same ? x + 1 : 0; y < it->second.size(); ++y) {
              const Vertex u = members[x];
              const Vertex v = it->second[y];
              const double d = euclidean_distance(cloud[u], cloud[v]);
              if (d <= alpha) edges.emplace_back(std::min(u, v), std::max(u, v), d);
            }
          }
        }
      }
    }
  }
  return NeighborhoodGraph(cloud.size(), alpha, std::move(edges));
}

}  // namespace detail

// Threshold is inclusive: an edge exists iff the Euclidean distance, as
// computed by euclidean_distance(), is <= alpha.
inline NeighborhoodGraph build_neighborhood_graph(const PointCloud& cloud, double alpha,
                                                  GraphConstruction how = GraphConstruction::Auto) {
  if (!(alpha >= 0.0)) throw PreconditionError("alpha must be non-negative");
  if (how == GraphConstruction::BruteForce || alpha == 0.0 || cloud.size() < 64) {
    return detail::graph_brute_force(cloud, alpha);
  }
  // Guard against absurd cell counts from a tiny alpha.
  const std::size_t m = std::min<std::size_t>(cloud.dim(), 3);
  for (std::size_t c = 0; c < m; ++c) {
    double lo = kInfinity;
    double hi = -kInfinity;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      lo = std::min(lo, cloud[i][c]);
      hi = std::max(hi, cloud[i][c]);
    }
    if ((hi - lo) / alpha > 1e9) return detail::graph_brute_force(cloud, alpha);
  }
  if (how == GraphConstruction::Auto && cloud.dim() > 6) return detail::graph_brute_force(cloud, alpha);
  return detail::graph_grid(cloud, alpha);
}

// Single-source shortest paths with Euclidean edge weights. Vertices farther
// than `bound` (or unreachable) are reported as infinity.
inline std::vector<double> graph_distances(const NeighborhoodGraph& graph, Vertex source, double bound = kInfinity) {
  if (source >= graph.size()) throw PreconditionError("source vertex out of range");
  std::vector<double> dist(graph.size(), kInfinity);
  std::vector<char> done(graph.size(), 0);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    if (d > bound) break;
    done[u] = 1;
    for (const auto& nb : graph.neighbors(u)) {
      const double nd = d + nb.weight;
      if (nd < dist[nb.id]) {
        dist[nb.id] = nd;
        heap.emplace(nd, nb.id);
      }
    }
  }
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (!done[v]) dist[v] = kInfinity;
  }
  return dist;
}

// Shortest-path tree: distances plus the predecessor of each reached vertex
// (kNoVertex for the source and unreachable vertices).
struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<Vertex> parent;
};

inline ShortestPathTree shortest_path_tree(const NeighborhoodGraph& graph, Vertex source) {
  ShortestPathTree t{std::vector<double>(graph.size(), kInfinity), std::vector<Vertex>(graph.size(), kNoVertex)};
  std::vector<char> done(graph.size(), 0);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  t.dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const auto& nb : graph.neighbors(u)) {
      const double nd = d + nb.weight;
      if (nd < t.dist[nb.id]) {
        t.dist[nb.id] = nd;
        t.parent[nb.id] = u;
        heap.emplace(nd, nb.id);
      }
    }
  }
  return t;
}

// Connected component label per vertex, labels numbered by first appearance.
inline std::vector<std::uint32_t> connected_components(const NeighborhoodGraph& graph) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(graph.size(), kUnset);
  std::uint32_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < graph.size(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (const auto& nb : graph.neighbors(u)) {
        if (label[nb.id] == kUnset) {
          label[nb.id] = next;
          stack.push_back(nb.id);
        }
      }
    }
    ++next;
  }
  return label;
}

// "u v weight" per line with u < v.
inline void write_edge_list(std::ostream& out, const NeighborhoodGraph& graph) {
  out << std::setprecision(17);
  for (const auto& [u, v, w] : graph.edges()) out << u << ' ' << v << ' ' << w << '\n';
}

}  // namespace gic
