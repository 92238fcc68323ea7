#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "gic/core/point_cloud.hpp"
#include "gic/core/simplicial_complex.hpp"
#include "gic/recon/geometry.hpp"
#include "gic/recon/prune.hpp"

namespace gic::recon {

using Edge = std::array<Vertex, 2>;  // sorted point ids

// Oriented triangle mesh on a subset of the input points. Faces index into
// `vertex_ids` / `positions` and are ordered outward.
struct TriangleMesh {
  std::vector<Vertex> vertex_ids;  // original point ids, ascending
  std::vector<Vec3> positions;
  std::vector<std::array<std::uint32_t, 3>> faces;

  std::size_t vertex_count() const { return vertex_ids.size(); }
  std::size_t face_count() const { return faces.size(); }

  std::map<Edge, std::size_t> edge_incidence() const {
    std::map<Edge, std::size_t> out;
    for (const auto& f : faces) {
      for (int k = 0; k < 3; ++k) {
        Vertex a = vertex_ids[f[k]];
        Vertex b = vertex_ids[f[(k + 1) % 3]];
        if (a > b) std::swap(a, b);
        ++out[{a, b}];
      }
    }
    return out;
  }

  std::size_t edge_count() const { return edge_incidence().size(); }

  long long euler_characteristic() const {
    return static_cast<long long>(vertex_count()) - static_cast<long long>(edge_count()) +
           static_cast<long long>(face_count());
  }

  bool watertight() const {
    const auto inc = edge_incidence();
    return !faces.empty() && std::all_of(inc.begin(), inc.end(), [](const auto& e) { return e.second == 2; });
  }

  // The mesh as a simplicial complex over the original point ids.
  SimplicialComplex to_complex() const {
    SimplicialComplex k(2);
    for (const auto& f : faces) k.insert({vertex_ids[f[0]], vertex_ids[f[1]], vertex_ids[f[2]]});
    return k;
  }

  // Faces as sorted original-id triples.
  std::vector<TriangleIds> triangle_ids() const {
    std::vector<TriangleIds> out;
    for (const auto& f : faces) {
      TriangleIds t{vertex_ids[f[0]], vertex_ids[f[1]], vertex_ids[f[2]]};
      std::sort(t.begin(), t.end());
      out.push_back(t);
    }
    return out;
  }
};

struct MeshDefects {
  std::vector<Edge> boundary_edges;      // one incident face
  std::vector<Edge> nonmanifold_edges;   // more than two incident faces
  std::vector<Vertex> nonmanifold_vertices;  // link is not a single cycle
  std::size_t orientation_conflicts = 0;
  std::vector<std::string> notes;

  bool empty() const {
    return boundary_edges.empty() && nonmanifold_edges.empty() && nonmanifold_vertices.empty() &&
           orientation_conflicts == 0 && notes.empty();
  }
};

struct ExtractOptions {
  // An edge is sharp when its incident triangles all fit inside a wedge
  // narrower than this angle (degrees), or when it has a single triangle.
  double sharp_angle_deg = 60.0;
};

struct ExtractResult {
  TriangleMesh mesh;
  MeshDefects defects;
  std::size_t sharp_pruned = 0;  // triangles removed by sharp-edge pruning
  std::size_t interior = 0;      // surviving triangles the outside walk did not keep
};

namespace detail {

inline Edge edge_key(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

using EdgeMap = std::map<Edge, std::vector<std::size_t>>;

inline EdgeMap incidence(const std::vector<TriangleIds>& tris, const std::vector<char>& alive) {
  EdgeMap m;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    if (!alive[i]) continue;
    const auto& t = tris[i];
    m[edge_key(t[0], t[1])].push_back(i);
    m[edge_key(t[1], t[2])].push_back(i);
    m[edge_key(t[0], t[2])].push_back(i);
  }
  return m;
}

inline Vertex apex(const TriangleIds& t, const Edge& e) {
  for (Vertex v : t) {
    if (v != e[0] && v != e[1]) return v;
  }
  return kNoVertex;
}

// Unit direction from the edge line toward x, perpendicular to the edge.
inline Vec3 perpendicular(const Vec3& a, const Vec3& b, const Vec3& x) {
  const Vec3 u = normalized(b - a);
  const Vec3 r = x - a;
  return normalized(r - dot(r, u) * u);
}

inline bool sharp_edge(const PointCloud& cloud, const Edge& e, const std::vector<TriangleIds>& tris,
                       const std::vector<std::size_t>& around, double max_gap) {
  if (around.size() == 1) return true;
  const Vec3 a = point3(cloud, e[0]);
  const Vec3 b = point3(cloud, e[1]);
  const Vec3 base = perpendicular(a, b, point3(cloud, apex(tris[around[0]], e)));
  const Vec3 side = cross(normalized(b - a), base);
  std::vector<double> ang;
  for (auto t : around) {
    const Vec3 w = perpendicular(a, b, point3(cloud, apex(tris[t], e)));
    double th = std::atan2(dot(w, side), dot(w, base));
    if (th < 0.0) th += 2.0 * std::numbers::pi;
    ang.push_back(th);
  }
  std::sort(ang.begin(), ang.end());
  double gap = 2.0 * std::numbers::pi - (ang.back() - ang.front());
  for (std::size_t i = 0; i + 1 < ang.size(); ++i) gap = std::max(gap, ang[i + 1] - ang[i]);
  return gap > max_gap;
}

}  // namespace detail

// Sharp-edge pruning to a fixpoint, then a walk over the outside of what is
// left: from a triangle at the vertex of largest x, oriented away from the
// interior, each edge is crossed to the first triangle met when rotating
// about the edge through the outer side. Every disjoint part of the complex
// gets its own walk. Failures are reported in the defects, never thrown.
inline ExtractResult extract_manifold(const SimplicialComplex& complex, const PointCloud& cloud,
                                      const ExtractOptions& opt = {}) {
  ExtractResult result;
  const auto tris = triangles_of(complex);
  std::vector<char> alive(tris.size(), 1);
  for (std::size_t i = 0; i < tris.size(); ++i) {
    if (!circumcircle(triangle_of(cloud, tris[i]))) {
      alive[i] = 0;
      result.defects.notes.push_back("skipped degenerate triangle " + detail::ids_string(tris[i]));
    }
  }

  const double max_gap = 2.0 * std::numbers::pi - opt.sharp_angle_deg * std::numbers::pi / 180.0;
  for (bool changed = true; changed;) {
    changed = false;
    const auto inc = detail::incidence(tris, alive);
    std::vector<std::size_t> kill;
    for (const auto& [e, around] : inc) {
      if (detail::sharp_edge(cloud, e, tris, around, max_gap)) kill.insert(kill.end(), around.begin(), around.end());
    }
    for (auto t : kill) {
      if (alive[t]) {
        alive[t] = 0;
        ++result.sharp_pruned;
        changed = true;
      }
    }
  }

  const auto inc = detail::incidence(tris, alive);
  std::vector<char> visited(tris.size(), 0);
  std::vector<TriangleIds> oriented(tris.size());
  std::vector<char> vertex_touched;
  Vertex max_id = 0;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    if (alive[i]) max_id = std::max({max_id, tris[i][0], tris[i][1], tris[i][2]});
  }
  vertex_touched.assign(static_cast<std::size_t>(max_id) + 1, 0);

  auto normal_of = [&](const TriangleIds& t) {
    const Vec3 a = point3(cloud, t[0]);
    return cross(point3(cloud, t[1]) - a, point3(cloud, t[2]) - a);
  };

  for (;;) {
    // Seed: vertex of largest x among live triangles whose vertices are all untouched.
    std::size_t seed = tris.size();
    Vertex seed_v = kNoVertex;
    double best_x = -kInfinity;
    for (std::size_t i = 0; i < tris.size(); ++i) {
      if (!alive[i] || visited[i]) continue;
      const auto& t = tris[i];
      if (vertex_touched[t[0]] || vertex_touched[t[1]] || vertex_touched[t[2]]) continue;
      for (Vertex v : t) {
        const double x = cloud[v][0];
        if (x > best_x || (x == best_x && v < seed_v)) {
          best_x = x;
          seed_v = v;
        }
      }
    }
    if (seed_v == kNoVertex) break;
    double best_nx = -1.0;
    for (std::size_t i = 0; i < tris.size(); ++i) {
      if (!alive[i] || visited[i]) continue;
      const auto& t = tris[i];
      if (std::find(t.begin(), t.end(), seed_v) == t.end()) continue;
      const double nx = std::abs(normalized(normal_of(t))[0]);
      if (nx > best_nx) {
        best_nx = nx;
        seed = i;
      }
    }
    TriangleIds first = tris[seed];
    if (normal_of(first)[0] < 0.0) std::swap(first[1], first[2]);

    std::deque<std::size_t> queue;
    visited[seed] = 1;
    oriented[seed] = first;
    queue.push_back(seed);
    while (!queue.empty()) {
      const auto cur = queue.front();
      queue.pop_front();
      const auto& t = oriented[cur];
      for (Vertex v : t) vertex_touched[v] = 1;
      const Vec3 n = normalized(normal_of(t));
      for (int k = 0; k < 3; ++k) {
        const Vertex u = t[k];
        const Vertex v = t[(k + 1) % 3];
        const Vertex w = t[(k + 2) % 3];
        const auto e = detail::edge_key(u, v);
        const auto& around = inc.at(e);
        const Vec3 pu = point3(cloud, u);
        const Vec3 pv = point3(cloud, v);
        const Vec3 base = detail::perpendicular(pu, pv, point3(cloud, w));
        std::size_t next = tris.size();
        double best = kInfinity;
        for (auto cand : around) {
          if (cand == cur) continue;
          const Vec3 d = detail::perpendicular(pu, pv, point3(cloud, detail::apex(tris[cand], e)));
          double th = std::atan2(dot(d, n), dot(d, base));
          if (th <= 0.0) th += 2.0 * std::numbers::pi;
          if (th < best) {
            best = th;
            next = cand;
          }
        }
        if (next == tris.size()) continue;  // boundary edge, reported below
        const TriangleIds want{v, u, detail::apex(tris[next], e)};
        if (visited[next]) {
          // Same cyclic order as `want` means consistent orientation.
          const auto& have = oriented[next];
          bool same = false;
          for (int r = 0; r < 3; ++r) {
            same = same || (have[r] == want[0] && have[(r + 1) % 3] == want[1]);
          }
          if (!same) ++result.defects.orientation_conflicts;
          continue;
        }
        visited[next] = 1;
        oriented[next] = want;
        queue.push_back(next);
      }
    }
  }

  // Assemble the mesh.
  auto& mesh = result.mesh;
  std::vector<Vertex> ids;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    if (visited[i]) ids.insert(ids.end(), tris[i].begin(), tris[i].end());
    if (alive[i] && !visited[i]) ++result.interior;
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  mesh.vertex_ids = ids;
  for (Vertex v : ids) mesh.positions.push_back(point3(cloud, v));
  auto local = [&](Vertex v) {
    return static_cast<std::uint32_t>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  };
  for (std::size_t i = 0; i < tris.size(); ++i) {
    if (visited[i]) mesh.faces.push_back({local(oriented[i][0]), local(oriented[i][1]), local(oriented[i][2])});
  }

  for (const auto& [e, count] : mesh.edge_incidence()) {
    if (count == 1) result.defects.boundary_edges.push_back(e);
    if (count > 2) result.defects.nonmanifold_edges.push_back(e);
  }
  // Vertex links: the edges opposite each vertex must form one cycle.
  std::vector<std::vector<Edge>> link(ids.size());
  for (const auto& f : mesh.faces) {
    for (int k = 0; k < 3; ++k) link[f[k]].push_back(detail::edge_key(f[(k + 1) % 3], f[(k + 2) % 3]));
  }
  for (std::size_t v = 0; v < ids.size(); ++v) {
    std::map<Vertex, std::vector<Vertex>> adj;
    for (const auto& e : link[v]) {
      adj[e[0]].push_back(e[1]);
      adj[e[1]].push_back(e[0]);
    }
    bool ok = std::all_of(adj.begin(), adj.end(), [](const auto& x) { return x.second.size() == 2; });
    if (ok) {
      // Walk the cycle from one link vertex and check it covers the link.
      Vertex prev = adj.begin()->first;
      Vertex curv = adj.begin()->second[0];
      std::size_t steps = 1;
      while (curv != adj.begin()->first && steps <= adj.size()) {
        const auto& nb = adj[curv];
        const Vertex nxt = nb[0] == prev ? nb[1] : nb[0];
        prev = curv;
        curv = nxt;
        ++steps;
      }
      ok = steps == adj.size();
    }
    if (!ok) result.defects.nonmanifold_vertices.push_back(ids[v]);
  }
  if (mesh.faces.empty()) result.defects.notes.push_back("no closed surface found");
  return result;
}

// OFF: header, counts, vertex rows, "3 i j k" faces.
inline void write_off(std::ostream& out, const TriangleMesh& mesh) {
  out << "OFF\n" << mesh.vertex_count() << ' ' << mesh.face_count() << " 0\n";
  out << std::setprecision(17);
  for (const auto& p : mesh.positions) out << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
  for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

inline void write_defects(std::ostream& out, const MeshDefects& d) {
  out << "boundary_edges " << d.boundary_edges.size() << '\n';
  for (const auto& e : d.boundary_edges) out << "  " << e[0] << ' ' << e[1] << '\n';
  out << "nonmanifold_edges " << d.nonmanifold_edges.size() << '\n';
  for (const auto& e : d.nonmanifold_edges) out << "  " << e[0] << ' ' << e[1] << '\n';
  out << "nonmanifold_vertices " << d.nonmanifold_vertices.size() << '\n';
  for (auto v : d.nonmanifold_vertices) out << "  " << v << '\n';
  out << "orientation_conflicts " << d.orientation_conflicts << '\n';
  for (const auto& n : d.notes) out << "note " << n << '\n';
}

}  // namespace gic::recon
