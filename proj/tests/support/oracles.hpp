#pragma once

// Brute-force reference computations used by the tests. Nothing here calls
// into the library's algorithms beyond plain data types, so each oracle is an
// independent route to the value it checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "gic/core/point_cloud.hpp"
#include "gic/core/simplicial_complex.hpp"

namespace gic::oracle {

using Simplex = std::vector<Vertex>;
using SimplexSet = std::set<Simplex>;
using DenseMatrix = std::vector<std::vector<std::uint8_t>>;  // row-major 0/1

inline std::size_t dense_rank(DenseMatrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && !m[pivot][c]) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != rank && m[r][c]) {
        for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

inline SimplexSet all_simplices(const SimplicialComplex& k) {
  SimplexSet out;
  k.for_each_simplex([&](std::span<const Vertex> s, SimplicialComplex::NodeId) { out.emplace(s.begin(), s.end()); });
  return out;
}

// Closure of a family of simplices under taking faces.
inline SimplexSet closure(const std::vector<Simplex>& generators) {
  SimplexSet out;
  for (auto s : generators) {
    std::sort(s.begin(), s.end());
    const std::size_t n = s.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Simplex f;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) f.push_back(s[i]);
      }
      out.insert(f);
    }
  }
  return out;
}

inline std::vector<Simplex> of_dim(const SimplexSet& set, int k) {
  std::vector<Simplex> out;
  for (const auto& s : set) {
    if (static_cast<int>(s.size()) == k + 1) out.push_back(s);
  }
  return out;
}

// Dense d_k built from an explicit simplex set.
inline DenseMatrix dense_boundary(const SimplexSet& set, int k) {
  const auto rows = of_dim(set, k - 1);
  const auto cols = of_dim(set, k);
  std::map<Simplex, std::size_t> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = i;
  DenseMatrix m(rows.size(), std::vector<std::uint8_t>(cols.size(), 0));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t skip = 0; skip < cols[j].size(); ++skip) {
      Simplex f;
      for (std::size_t i = 0; i < cols[j].size(); ++i) {
        if (i != skip) f.push_back(cols[j][i]);
      }
      m[row_of.at(f)][j] ^= 1;
    }
  }
  return m;
}

// beta_k = n_k - rank d_k - rank d_{k+1}, every rank by naive elimination.
inline std::vector<std::size_t> betti(const SimplexSet& set, int max_k) {
  std::vector<std::size_t> out;
  for (int k = 0; k <= max_k; ++k) {
    const std::size_t n = of_dim(set, k).size();
    const std::size_t r_in = k >= 1 ? dense_rank(dense_boundary(set, k)) : 0;
    const std::size_t r_out = dense_rank(dense_boundary(set, k + 1));
    out.push_back(n - r_in - r_out);
  }
  return out;
}

// All cliques of size <= max_size by testing every vertex subset.
inline std::vector<Simplex> cliques_by_subsets(const std::vector<std::vector<bool>>& adj, std::size_t max_size) {
  const std::size_t n = adj.size();
  std::vector<Simplex> out;
  Simplex cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == max_size) return;
    for (std::size_t v = start; v < n; ++v) {
      bool ok = true;
      for (Vertex u : cur) ok = ok && adj[u][v];
      if (!ok) continue;
      cur.push_back(static_cast<Vertex>(v));
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// Literal graph induced complex: sigma' is a simplex iff some clique of the
// original graph maps onto it bijectively.
inline SimplexSet gic_by_definition(const std::vector<std::vector<bool>>& adj, const std::vector<Vertex>& nu,
                                    int max_dim) {
  SimplexSet out;
  for (const auto& c : cliques_by_subsets(adj, static_cast<std::size_t>(max_dim) + 1)) {
    Simplex img;
    for (Vertex v : c) img.push_back(nu[v]);
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(img.begin(), img.end()) == img.end()) out.insert(img);
  }
  return out;
}

// Pairwise shortest paths (Floyd-Warshall) on a weighted adjacency matrix;
// absent edges are infinite.
inline std::vector<std::vector<double>> floyd_warshall(std::vector<std::vector<double>> d) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

struct WeightedEdge {
  Vertex u, v;
  double w;
};

// Lightest non-bounding 1-cycle by enumerating every simple cycle of the
// 1-skeleton (each as an edge set) and testing membership in the span of the
// triangle boundaries with dense elimination. Returns half its weight, or
// infinity. Intended for graphs with at most ~12 vertices.
inline double hlfs_exhaustive(std::size_t n, const std::vector<WeightedEdge>& edges,
                              const std::vector<std::array<Vertex, 3>>& triangles) {
  std::map<std::pair<Vertex, Vertex>, std::size_t> id;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    id[{std::min(edges[e].u, edges[e].v), std::max(edges[e].u, edges[e].v)}] = e;
  }
  auto eid = [&](Vertex a, Vertex b) { return id.at({std::min(a, b), std::max(a, b)}); };
  std::vector<std::vector<Vertex>> nbr(n);
  for (const auto& e : edges) {
    nbr[e.u].push_back(e.v);
    nbr[e.v].push_back(e.u);
  }
  DenseMatrix boundary_rows;  // one row per triangle boundary (row space)
  for (const auto& t : triangles) {
    std::vector<std::uint8_t> row(edges.size(), 0);
    row[eid(t[0], t[1])] ^= 1;
    row[eid(t[1], t[2])] ^= 1;
    row[eid(t[0], t[2])] ^= 1;
    boundary_rows.push_back(row);
  }
  const std::size_t base_rank = dense_rank(boundary_rows);

  double best = std::numeric_limits<double>::infinity();
  std::vector<Vertex> path;
  std::vector<bool> on_path(n, false);
  // Cycles are enumerated from their smallest vertex s; direction duplicates
  // are harmless.
  std::function<void(Vertex, Vertex, double)> dfs = [&](Vertex s, Vertex u, double len) {
    for (Vertex w : nbr[u]) {
      const double nl = len + edges[eid(u, w)].w;
      if (w == s && path.size() >= 3) {
        if (nl >= best) continue;
        std::vector<std::uint8_t> row(edges.size(), 0);
        for (std::size_t i = 0; i + 1 < path.size(); ++i) row[eid(path[i], path[i + 1])] ^= 1;
        row[eid(path.back(), s)] ^= 1;
        auto m = boundary_rows;
        m.push_back(row);
        if (dense_rank(m) > base_rank) best = nl;
        continue;
      }
      if (w <= s || on_path[w]) continue;
      on_path[w] = true;
      path.push_back(w);
      dfs(s, w, nl);
      path.pop_back();
      on_path[w] = false;
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    path.assign(1, s);
    on_path.assign(n, false);
    on_path[s] = true;
    dfs(s, s, 0.0);
  }
  return 0.5 * best;
}

inline PointCloud random_cloud(std::mt19937_64& rng, std::size_t n, std::size_t dim, double extent = 1.0) {
  std::uniform_real_distribution<double> u(0.0, extent);
  std::vector<double> coords(n * dim);
  for (auto& c : coords) c = u(rng);
  return PointCloud(dim, std::move(coords));
}

}  // namespace gic::oracle
