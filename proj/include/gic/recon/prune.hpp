#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gic/core/point_cloud.hpp"
#include "gic/core/simplicial_complex.hpp"
#include "gic/recon/geometry.hpp"

namespace gic::recon {

using TriangleIds = std::array<Vertex, 3>;

inline std::vector<TriangleIds> triangles_of(const SimplicialComplex& complex) {
  std::vector<TriangleIds> out;
  if (complex.max_dim() < 2) return out;
  complex.for_each_simplex(2, [&](std::span<const Vertex> s, SimplicialComplex::NodeId) {
    out.push_back({s[0], s[1], s[2]});
  });
  return out;
}

// Index pairs (i < j) of triangles whose closed sets improperly intersect.
// Candidates come from a uniform grid over bounding boxes; the cell side is
// the largest box extent, so overlapping boxes have min corners in adjacent
// cells. Degenerate triangles are skipped and listed in `degenerate`.
inline std::vector<std::pair<std::size_t, std::size_t>> intersecting_pairs(const PointCloud& cloud,
                                                                           const std::vector<TriangleIds>& tris,
                                                                           std::vector<std::size_t>* degenerate = nullptr) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = tris.size();
  std::vector<Triangle> geo(n);
  std::vector<Vec3> lo(n), hi(n);
  std::vector<char> bad(n, 0);
  double cell = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    geo[i] = triangle_of(cloud, tris[i]);
    lo[i] = hi[i] = geo[i][0];
    for (const auto& p : geo[i]) {
      for (int a = 0; a < 3; ++a) {
        lo[i][a] = std::min(lo[i][a], p[a]);
        hi[i][a] = std::max(hi[i][a], p[a]);
      }
    }
    for (int a = 0; a < 3; ++a) cell = std::max(cell, hi[i][a] - lo[i][a]);
    if (!circumcircle(geo[i])) {
      bad[i] = 1;
      if (degenerate) degenerate->push_back(i);
    }
  }
  if (n < 2) return out;
  cell = cell > 0.0 ? cell * (1.0 + 1e-9) : 1.0;
  using Key = std::array<long long, 3>;
  auto key_of = [&](const Vec3& p) {
    return Key{static_cast<long long>(std::floor(p[0] / cell)), static_cast<long long>(std::floor(p[1] / cell)),
               static_cast<long long>(std::floor(p[2] / cell))};
  };
  std::map<Key, std::vector<std::size_t>> grid;
  for (std::size_t i = 0; i < n; ++i) {
    if (!bad[i]) grid[key_of(lo[i])].push_back(i);
  }
  const double slack = 1e-9 * cell;
  for (std::size_t i = 0; i < n; ++i) {
    if (bad[i]) continue;
    const Key k = key_of(lo[i]);
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        for (long long dz = -1; dz <= 1; ++dz) {
          const auto it = grid.find(Key{k[0] + dx, k[1] + dy, k[2] + dz});
          if (it == grid.end()) continue;
          for (std::size_t j : it->second) {
            if (j <= i) continue;
            bool overlap = true;
            for (int a = 0; a < 3; ++a) {
              overlap = overlap && lo[i][a] <= hi[j][a] + slack && lo[j][a] <= hi[i][a] + slack;
            }
            if (overlap && triangles_intersect(geo[i], tris[i], geo[j], tris[j])) out.emplace_back(i, j);
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Exhaustive O(T^2) version used to audit results.
inline std::vector<std::pair<std::size_t, std::size_t>> intersecting_pairs_exhaustive(
    const PointCloud& cloud, const std::vector<TriangleIds>& tris) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::vector<Triangle> geo;
  for (const auto& t : tris) geo.push_back(triangle_of(cloud, t));
  for (std::size_t i = 0; i < tris.size(); ++i) {
    for (std::size_t j = i + 1; j < tris.size(); ++j) {
      if (triangles_intersect(geo[i], tris[i], geo[j], tris[j])) out.emplace_back(i, j);
    }
  }
  return out;
}

struct PruneReport {
  std::vector<TriangleIds> removed;
  std::vector<TriangleIds> degenerate;    // removed as degenerate
  std::vector<std::string> notes;         // per-pair remarks (e.g. both pass)
};

namespace detail {

// Complex without the listed triangles and their cofaces; everything else,
// including edges and vertices of removed triangles, stays.
inline SimplicialComplex without_triangles(const SimplicialComplex& complex, const std::vector<TriangleIds>& drop) {
  if (drop.empty()) return complex;
  std::vector<TriangleIds> sorted = drop;
  std::sort(sorted.begin(), sorted.end());
  auto dropped = [&](std::span<const Vertex> s) {
    if (s.size() < 3) return false;
    if (s.size() == 3) return std::binary_search(sorted.begin(), sorted.end(), TriangleIds{s[0], s[1], s[2]});
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        for (std::size_t c = b + 1; c < s.size(); ++c) {
          if (std::binary_search(sorted.begin(), sorted.end(), TriangleIds{s[a], s[b], s[c]})) return true;
        }
      }
    }
    return false;
  };
  return complex.filtered([&](std::span<const Vertex> s) { return !dropped(s); });
}

inline std::string ids_string(const TriangleIds& t) {
  return "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "}";
}

}  // namespace detail

// For every improperly intersecting pair, the local Delaunay test runs on
// the at most six vertices of the pair. Triangles failing it are removed.
// If both pass (cospherical degeneracy), the one with the larger
// circumradius is removed (the later one on ties) and the pair is noted. Degenerate
// triangles are removed as well. Cofaces of removed triangles go with them.
inline SimplicialComplex prune_intersections(const SimplicialComplex& complex, const PointCloud& cloud,
                                             PruneReport* report = nullptr) {
  const auto tris = triangles_of(complex);
  std::vector<std::size_t> degenerate;
  const auto pairs = intersecting_pairs(cloud, tris, &degenerate);
  std::vector<char> remove(tris.size(), 0);
  for (auto i : degenerate) remove[i] = 1;

  for (const auto& [i, j] : pairs) {
    auto others = [&](const TriangleIds& t) {
      std::vector<Vec3> o;
      std::vector<Vertex> ids(tris[i].begin(), tris[i].end());
      for (Vertex x : tris[j]) {
        if (std::find(ids.begin(), ids.end(), x) == ids.end()) ids.push_back(x);
      }
      for (Vertex x : ids) {
        if (std::find(t.begin(), t.end(), x) == t.end()) o.push_back(point3(cloud, x));
      }
      return o;
    };
    const bool di = locally_delaunay(triangle_of(cloud, tris[i]), others(tris[i]));
    const bool dj = locally_delaunay(triangle_of(cloud, tris[j]), others(tris[j]));
    if (!di) remove[i] = 1;
    if (!dj) remove[j] = 1;
    if (di && dj) {
      const double ri = circumradius(triangle_of(cloud, tris[i]));
      const double rj = circumradius(triangle_of(cloud, tris[j]));
      const std::size_t loser = ri > rj ? i : j;
      remove[loser] = 1;
      if (report) {
        report->notes.push_back("both " + detail::ids_string(tris[i]) + " and " + detail::ids_string(tris[j]) +
                                " pass the local Delaunay test; removed " + detail::ids_string(tris[loser]));
      }
    }
  }
  std::vector<TriangleIds> drop;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    if (remove[i]) drop.push_back(tris[i]);
  }
  if (report) {
    report->removed.insert(report->removed.end(), drop.begin(), drop.end());
    for (auto i : degenerate) report->degenerate.push_back(tris[i]);
  }
  return detail::without_triangles(complex, drop);
}

// Drops triangles whose circumradius exceeds 2 delta (degenerate ones count
// as infinite) together with their cofaces.
inline SimplicialComplex prune_by_circumradius(const SimplicialComplex& complex, const PointCloud& cloud, double delta,
                                               PruneReport* report = nullptr) {
  std::vector<TriangleIds> drop;
  for (const auto& t : triangles_of(complex)) {
    const double r = circumradius(triangle_of(cloud, t));
    if (r > 2.0 * delta) {
      drop.push_back(t);
      if (report) {
        report->removed.push_back(t);
        if (std::isinf(r)) report->degenerate.push_back(t);
      }
    }
  }
  return detail::without_triangles(complex, drop);
}

}  // namespace gic::recon
