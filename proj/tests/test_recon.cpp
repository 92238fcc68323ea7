#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "gic/homology.hpp"
#include "gic/recon.hpp"
#include "gic/samplers.hpp"

using namespace gic;
using namespace gic::recon;

namespace {

// Solves the n x n system a x = b by partial pivoting; false if singular.
bool solve(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    }
    if (std::abs(a[p][c]) < 1e-12) return false;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.resize(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

// Two triangles in general position meet iff some basic solution of
// sum l_i A_i = sum m_j B_j, sum l = sum m = 1 is non-negative. Each basic
// solution drops one of the six weights.
bool intersect_by_barycentrics(const Triangle& a, const Triangle& b) {
  for (int drop = 0; drop < 6; ++drop) {
    std::vector<std::vector<double>> m(5, std::vector<double>(5, 0.0));
    std::vector<double> rhs(5, 0.0);
    int col = 0;
    for (int v = 0; v < 6; ++v) {
      if (v == drop) continue;
      const Vec3& p = v < 3 ? a[v] : b[v - 3];
      const double sign = v < 3 ? 1.0 : -1.0;
      for (int k = 0; k < 3; ++k) m[k][col] = sign * p[k];
      m[3][col] = v < 3 ? 1.0 : 0.0;
      m[4][col] = v < 3 ? 0.0 : 1.0;
      ++col;
    }
    rhs[3] = rhs[4] = 1.0;
    std::vector<double> x;
    if (!solve(m, rhs, x)) continue;
    if (std::all_of(x.begin(), x.end(), [](double w) { return w >= 0.0; })) return true;
  }
  return false;
}

// Scans ball centers along the circumcircle axis for one with no point of
// `others` strictly inside; offsets sinh(u) reach both tiny and huge balls.
bool delaunay_by_scan(const Triangle& t, const std::vector<Vec3>& others) {
  const auto c = circumcircle(t);
  for (double u = -15.0; u <= 15.0; u += 1e-4) {
    const double s = std::sinh(u);
    const Vec3 center = c->center + s * c->normal;
    const double r2 = c->radius * c->radius + s * s;
    bool empty = true;
    for (const auto& x : others) {
      const Vec3 d = x - center;
      if (dot(d, d) < r2 * (1.0 - 1e-9)) {
        empty = false;
        break;
      }
    }
    if (empty) return true;
  }
  return false;
}

Vec3 random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng), u(rng)};
}

PointCloud cloud_of(const std::vector<Vec3>& pts) {
  PointCloud c(3);
  for (const auto& p : pts) c.push_back({p[0], p[1], p[2]});
  return c;
}

std::vector<Vec3> octahedron() { return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}; }

SimplicialComplex octahedron_complex() {
  SimplicialComplex k(2);
  for (Vertex x : {0u, 1u}) {
    for (Vertex y : {2u, 3u}) {
      for (Vertex z : {4u, 5u}) k.insert({x, y, z});
    }
  }
  return k;
}

}  // namespace

TEST(TrianglesIntersect, SharedEdgeIsProper) {
  const Triangle a{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}};
  const Triangle b{{{0, 0, 0}, {1, 0, 0}, {0, -1, 0.5}}};
  EXPECT_FALSE(triangles_intersect(a, b));
}

TEST(TrianglesIntersect, SharedEdgeFoldedOntoItself) {
  const Triangle a{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}};
  const Triangle b{{{0, 0, 0}, {1, 0, 0}, {0.5, 0.5, 0}}};
  EXPECT_TRUE(triangles_intersect(a, b));
}

TEST(TrianglesIntersect, CoplanarOverlap) {
  const Triangle a{{{0, 0, 0}, {2, 0, 0}, {0, 2, 0}}};
  const Triangle b{{{0.5, 0.5, 0}, {3, 0.5, 0}, {0.5, 3, 0}}};
  EXPECT_TRUE(triangles_intersect(a, b));
}

TEST(TrianglesIntersect, CoplanarNested) {
  const Triangle a{{{0, 0, 0}, {4, 0, 0}, {0, 4, 0}}};
  const Triangle b{{{0.5, 0.5, 0}, {1, 0.5, 0}, {0.5, 1, 0}}};
  EXPECT_TRUE(triangles_intersect(a, b));
  EXPECT_TRUE(triangles_intersect(b, a));
}

TEST(TrianglesIntersect, FarApart) {
  const Triangle a{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}};
  const Triangle b{{{10, 10, 10}, {11, 10, 10}, {10, 11, 10}}};
  EXPECT_FALSE(triangles_intersect(a, b));
}

TEST(TrianglesIntersect, Piercing) {
  const Triangle a{{{0, 0, 0}, {2, 0, 0}, {0, 2, 0}}};
  const Triangle b{{{0.5, 0.5, -1}, {0.5, 0.5, 1}, {3, 3, 0.2}}};
  EXPECT_TRUE(triangles_intersect(a, b));
}

TEST(TrianglesIntersect, SharedVertexOnly) {
  const Triangle a{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}};
  const Triangle b{{{0, 0, 0}, {-1, 0, 0.3}, {0, -1, 0.2}}};
  EXPECT_FALSE(triangles_intersect(a, b));
}

TEST(TrianglesIntersect, SharedVertexCoplanarOverlap) {
  const Triangle a{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}};
  const Triangle b{{{0, 0, 0}, {1, 1, 0}, {-1, 2, 0}}};
  EXPECT_TRUE(triangles_intersect(a, b));
}

TEST(TrianglesIntersect, SharedVertexOppositeEdgePierced) {
  const Triangle a{{{0, 0, 0}, {2, 0, 0}, {0, 2, 0}}};
  const Triangle b{{{0, 0, 0}, {1, 0.5, -1}, {0.5, 1, 1}}};
  EXPECT_TRUE(triangles_intersect(a, b));
}

TEST(TrianglesIntersect, TouchingAtAVertexIsImproper) {
  // A corner of b lies in the interior of a without being a shared vertex.
  const Triangle a{{{0, 0, 0}, {2, 0, 0}, {0, 2, 0}}};
  const Triangle b{{{0.5, 0.5, 0}, {1, 1, 1}, {0, 1, 1}}};
  EXPECT_TRUE(triangles_intersect(a, b));
}

TEST(TrianglesIntersect, DegenerateTriangle) {
  const Triangle a{{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}};
  const Triangle b{{{0, 0, 1}, {1, 0, 1}, {0, 1, 1}}};
  EXPECT_THROW(triangles_intersect(a, b), DegeneracyError);
}

TEST(TrianglesIntersect, ScaleInvariant) {
  const Triangle a{{{0, 0, 0}, {2, 0, 0}, {0, 2, 0}}};
  const Triangle b{{{0.5, 0.5, -1}, {0.5, 0.5, 1}, {3, 3, 0.2}}};
  for (double s : {1e-6, 1e6}) {
    Triangle as, bs;
    for (int i = 0; i < 3; ++i) {
      as[i] = s * a[i];
      bs[i] = s * b[i];
    }
    EXPECT_TRUE(triangles_intersect(as, bs));
  }
}

TEST(TrianglesIntersect, PropertyMatchesBarycentricOracle) {
  std::mt19937_64 rng(83);
  int hits = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const Triangle a{random_point(rng), random_point(rng), random_point(rng)};
    const Triangle b{random_point(rng), random_point(rng), random_point(rng)};
    const bool expected = intersect_by_barycentrics(a, b);
    EXPECT_EQ(triangles_intersect(a, b), expected) << "trial " << trial;
    EXPECT_EQ(triangles_intersect(b, a), expected) << "trial " << trial;
    hits += expected;
  }
  EXPECT_GT(hits, 100);
}

TEST(LocalDelaunay, PropertyMatchesCenterScan) {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 300; ++trial) {
    const Triangle t{random_point(rng), random_point(rng), random_point(rng)};
    std::vector<Vec3> others{random_point(rng), random_point(rng), random_point(rng)};
    const auto c = circumcircle(t);
    if (!c || c->radius > 5.0) continue;
    EXPECT_EQ(locally_delaunay(t, others), delaunay_by_scan(t, others)) << "trial " << trial;
  }
}

// Of two improperly intersecting triangles at most one is Delaunay with
// respect to their joint vertex set.
TEST(LocalDelaunay, PropertyCrossingPairsNeverBothPass) {
  std::mt19937_64 rng(97);
  int crossings = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const Triangle a{random_point(rng), random_point(rng), random_point(rng)};
    const Triangle b{random_point(rng), random_point(rng), random_point(rng)};
    if (!triangles_intersect(a, b)) continue;
    ++crossings;
    const bool da = locally_delaunay(a, std::vector<Vec3>(b.begin(), b.end()));
    const bool db = locally_delaunay(b, std::vector<Vec3>(a.begin(), a.end()));
    EXPECT_FALSE(da && db) << "trial " << trial;
  }
  EXPECT_GT(crossings, 100);
}

TEST(PruneIntersections, NoIntersectionsLeavesComplexUnchanged) {
  const auto cloud = cloud_of(octahedron());
  const auto k = octahedron_complex();
  PruneReport report;
  EXPECT_TRUE(prune_intersections(k, cloud, &report) == k);
  EXPECT_TRUE(report.removed.empty());
}

TEST(PruneIntersections, RemovesTheNonDelaunayTriangles) {
  std::mt19937_64 rng(101);
  bool saw_one = false;
  bool saw_both = false;
  for (int trial = 0; trial < 20000 && !(saw_one && saw_both); ++trial) {
    std::vector<Vec3> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(random_point(rng));
    const Triangle a{pts[0], pts[1], pts[2]};
    const Triangle b{pts[3], pts[4], pts[5]};
    if (!triangles_intersect(a, b)) continue;
    const bool da = delaunay_by_scan(a, {pts[3], pts[4], pts[5]});
    const bool db = delaunay_by_scan(b, {pts[0], pts[1], pts[2]});
    if (da == db && da) continue;
    SimplicialComplex k(2);
    k.insert({0, 1, 2});
    k.insert({3, 4, 5});
    const auto pruned = prune_intersections(k, cloud_of(pts));
    EXPECT_EQ(pruned.contains({0, 1, 2}), da);
    EXPECT_EQ(pruned.contains({3, 4, 5}), db);
    // Edges and vertices stay.
    EXPECT_EQ(pruned.count(1), 6u);
    EXPECT_EQ(pruned.count(0), 6u);
    (da != db ? saw_one : saw_both) = true;
  }
  EXPECT_TRUE(saw_one);
  EXPECT_TRUE(saw_both);
}

TEST(PruneIntersections, RemovesCofacesOfPrunedTriangles) {
  // Tetrahedron whose face 0-1-2 is pierced by a long triangle.
  const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0.2, 0.2, 1}, {0.3, 0.3, -3}, {0.3, 0.3, 3}, {5, 5, 0.1}};
  SimplicialComplex k(3);
  k.insert({0, 1, 2, 3});
  k.insert({4, 5, 6});
  PruneReport report;
  const auto pruned = prune_intersections(k, cloud_of(pts), &report);
  ASSERT_FALSE(report.removed.empty());
  const auto tris = triangles_of(pruned);
  EXPECT_TRUE(intersecting_pairs_exhaustive(cloud_of(pts), tris).empty());
  for (const auto& t : report.removed) {
    pruned.for_each_simplex([&](std::span<const Vertex> s, SimplicialComplex::NodeId) {
      if (s.size() < 3) return;
      EXPECT_FALSE(std::includes(s.begin(), s.end(), t.begin(), t.end()));
    });
  }
}

TEST(PruneByCircumradius, Equilateral) {
  const double s = 1.0;
  const double h = std::sqrt(3.0) / 2.0;
  const auto cloud = cloud_of({{0, 0, 0}, {s, 0, 0}, {s / 2, h, 0}});
  EXPECT_NEAR(circumradius(triangle_of(cloud, std::array<Vertex, 3>{0, 1, 2})), s / std::sqrt(3.0), 1e-12);
  SimplicialComplex k(2);
  k.insert({0, 1, 2});
  const double r = s / std::sqrt(3.0);
  EXPECT_EQ(prune_by_circumradius(k, cloud, r / 2.0 * 0.999).count(2), 0u);
  EXPECT_EQ(prune_by_circumradius(k, cloud, r / 2.0 * 1.001).count(2), 1u);
}

TEST(PruneByCircumradius, RightTriangle) {
  const auto cloud = cloud_of({{0, 0, 0}, {3, 0, 0}, {0, 4, 0}});
  SimplicialComplex k(2);
  k.insert({0, 1, 2});
  EXPECT_DOUBLE_EQ(circumradius(triangle_of(cloud, std::array<Vertex, 3>{0, 1, 2})), 2.5);
  EXPECT_EQ(prune_by_circumradius(k, cloud, 1.25).count(2), 1u);
  EXPECT_EQ(prune_by_circumradius(k, cloud, 1.2).count(2), 0u);
}

TEST(PruneByCircumradius, EmptyAndDegenerate) {
  const auto cloud = cloud_of({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
  EXPECT_TRUE(prune_by_circumradius(SimplicialComplex(2), cloud, 1.0).empty());
  SimplicialComplex k(2);
  k.insert({0, 1, 2});
  PruneReport report;
  EXPECT_EQ(prune_by_circumradius(k, cloud, 100.0, &report).count(2), 0u);
  EXPECT_EQ(report.degenerate.size(), 1u);
}

TEST(ExtractManifold, Octahedron) {
  const auto cloud = cloud_of(octahedron());
  const auto r = extract_manifold(octahedron_complex(), cloud);
  EXPECT_TRUE(r.defects.empty());
  EXPECT_EQ(r.mesh.face_count(), 8u);
  EXPECT_EQ(r.mesh.euler_characteristic(), 2);
  EXPECT_TRUE(r.mesh.watertight());
  EXPECT_TRUE(r.mesh.to_complex() == octahedron_complex());
  // Outward orientation: positive enclosed volume.
  double vol = 0.0;
  for (const auto& f : r.mesh.faces) {
    vol += dot(r.mesh.positions[f[0]], cross(r.mesh.positions[f[1]], r.mesh.positions[f[2]])) / 6.0;
  }
  EXPECT_NEAR(vol, 4.0 / 3.0, 1e-12);
}

TEST(ExtractManifold, FinIsRemoved) {
  auto pts = octahedron();
  pts.push_back({0.1, 0.1, 0.1});
  const auto cloud = cloud_of(pts);
  auto k = octahedron_complex();
  k.insert({0, 2, 6});
  const auto r = extract_manifold(k, cloud);
  EXPECT_EQ(r.sharp_pruned, 1u);
  EXPECT_TRUE(r.mesh.to_complex() == octahedron_complex());
}

TEST(ExtractManifold, InteriorMembraneIsDropped) {
  // Octahedron with the equatorial square split into two triangles inside.
  auto k = octahedron_complex();
  k.insert({0, 1, 2});
  k.insert({0, 1, 3});
  const auto r = extract_manifold(k, cloud_of(octahedron()));
  EXPECT_EQ(r.interior, 2u);
  EXPECT_TRUE(r.mesh.to_complex() == octahedron_complex());
  EXPECT_TRUE(r.defects.empty());
}

TEST(ExtractManifold, OpenSurfaceErodesAndIsReported) {
  SimplicialComplex k(2);
  k.insert({0, 1, 2});
  const auto r = extract_manifold(k, cloud_of({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
  EXPECT_EQ(r.mesh.face_count(), 0u);
  EXPECT_FALSE(r.defects.empty());
}

TEST(ExtractManifold, OffOutput) {
  const auto r = extract_manifold(octahedron_complex(), cloud_of(octahedron()));
  std::ostringstream out;
  write_off(out, r.mesh);
  std::istringstream in(out.str());
  std::string header;
  std::size_t nv = 0, nf = 0, ne = 0;
  in >> header >> nv >> nf >> ne;
  EXPECT_EQ(header, "OFF");
  EXPECT_EQ(nv, 6u);
  EXPECT_EQ(nf, 8u);
}

TEST(Reconstruct, RejectsPlanarInput) {
  const auto p = samplers::circle(100);
  EXPECT_THROW(reconstruct_surface(p, 0.3, 0.2), DimensionError);
}

TEST(Reconstruct, SmallSphere) {
  const auto p = samplers::sphere(1000, 1.0, false, 0.003);
  const auto r = reconstruct_surface(p, 0.4, 0.3);
  const auto& mesh = r.extraction.mesh;
  EXPECT_TRUE(r.subsample_check);
  EXPECT_TRUE(mesh.watertight());
  EXPECT_EQ(mesh.euler_characteristic(), 2);
  EXPECT_EQ(betti_numbers(mesh.to_complex(), 2, false).betti, (std::vector<std::size_t>{1, 0, 1}));
  EXPECT_TRUE(intersecting_pairs_exhaustive(p, mesh.triangle_ids()).empty());
  for (const auto& t : mesh.triangle_ids()) EXPECT_LE(circumradius(triangle_of(p, t)), 0.6);
}
