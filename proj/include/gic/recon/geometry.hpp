#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>

#include "gic/core/point_cloud.hpp"
#include "gic/core/types.hpp"

namespace gic::recon {

using Vec3 = std::array<double, 3>;
using Triangle = std::array<Vec3, 3>;

inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  return n > 0.0 ? (1.0 / n) * a : Vec3{0.0, 0.0, 0.0};
}

inline Vec3 point3(const PointCloud& cloud, Vertex v) {
  if (cloud.dim() != 3) throw DimensionError("surface reconstruction needs points in R^3");
  const auto p = cloud[v];
  return {p[0], p[1], p[2]};
}

inline Triangle triangle_of(const PointCloud& cloud, std::span<const Vertex> t) {
  return {point3(cloud, t[0]), point3(cloud, t[1]), point3(cloud, t[2])};
}

// Predicates work on coordinates translated and scaled into the unit box
// spanned by their inputs; kTolerance applies there.
inline constexpr double kTolerance = 1e-10;

// Circumcenter and circumradius of a triangle in its own plane; nullopt for
// (near-)collinear vertices.
struct Circle {
  Vec3 center;
  double radius;
  Vec3 normal;  // unit normal of the supporting plane
};

inline std::optional<Circle> circumcircle(const Triangle& t) {
  const Vec3 a = t[1] - t[0];
  const Vec3 b = t[2] - t[0];
  const Vec3 n = cross(a, b);
  const double nn = dot(n, n);
  const double scale = std::max({dot(a, a), dot(b, b), dot(t[2] - t[1], t[2] - t[1])});
  if (!(scale > 0.0) || nn <= kTolerance * kTolerance * scale * scale) return std::nullopt;
  const Vec3 off = (1.0 / (2.0 * nn)) * (dot(a, a) * cross(b, n) + dot(b, b) * cross(n, a));
  return Circle{t[0] + off, norm(off), normalized(n)};
}

inline double circumradius(const Triangle& t) {
  const auto c = circumcircle(t);
  return c ? c->radius : kInfinity;
}

namespace detail {

struct Frame {
  Vec3 origin;
  double scale;
  Vec3 map(const Vec3& p) const { return (1.0 / scale) * (p - origin); }
};

inline Frame unit_frame(std::span<const Vec3> pts) {
  Vec3 lo = pts[0];
  Vec3 hi = pts[0];
  for (const auto& p : pts) {
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  const double ext = std::max({hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]});
  return {lo, ext > 0.0 ? ext : 1.0};
}

inline void require_nondegenerate(const Triangle& t) {
  const double area2 = norm(cross(t[1] - t[0], t[2] - t[0]));
  const double scale = std::max({norm(t[1] - t[0]), norm(t[2] - t[0]), norm(t[2] - t[1])});
  if (!(area2 > kTolerance * scale * scale)) throw DegeneracyError("degenerate (collinear) triangle");
}

// 2-D helpers on the coordinate plane that drops axis `drop`.
struct Projector {
  int i, j;
  explicit Projector(const Vec3& normal) {
    const int drop = std::abs(normal[0]) >= std::abs(normal[1])
                         ? (std::abs(normal[0]) >= std::abs(normal[2]) ? 0 : 2)
                         : (std::abs(normal[1]) >= std::abs(normal[2]) ? 1 : 2);
    i = drop == 0 ? 1 : 0;
    j = drop == 2 ? 1 : 2;
  }
  std::array<double, 2> operator()(const Vec3& p) const { return {p[i], p[j]}; }
};

using P2 = std::array<double, 2>;

inline double orient2(const P2& a, const P2& b, const P2& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

inline bool point_in_triangle2(const P2& p, const P2& a, const P2& b, const P2& c) {
  const double s = orient2(a, b, c) > 0 ? 1.0 : -1.0;
  return s * orient2(a, b, p) >= -kTolerance && s * orient2(b, c, p) >= -kTolerance &&
         s * orient2(c, a, p) >= -kTolerance;
}

inline bool on_segment2(const P2& p, const P2& a, const P2& b) {
  return std::min(a[0], b[0]) - kTolerance <= p[0] && p[0] <= std::max(a[0], b[0]) + kTolerance &&
         std::min(a[1], b[1]) - kTolerance <= p[1] && p[1] <= std::max(a[1], b[1]) + kTolerance;
}

inline bool segments_meet2(const P2& a, const P2& b, const P2& c, const P2& d) {
  const double o1 = orient2(a, b, c);
  const double o2 = orient2(a, b, d);
  const double o3 = orient2(c, d, a);
  const double o4 = orient2(c, d, b);
  auto sgn = [](double x) { return x > kTolerance ? 1 : (x < -kTolerance ? -1 : 0); };
  const int s1 = sgn(o1), s2 = sgn(o2), s3 = sgn(o3), s4 = sgn(o4);
  if (s1 * s2 < 0 && s3 * s4 < 0) return true;
  if (s1 == 0 && on_segment2(c, a, b)) return true;
  if (s2 == 0 && on_segment2(d, a, b)) return true;
  if (s3 == 0 && on_segment2(a, c, d)) return true;
  if (s4 == 0 && on_segment2(b, c, d)) return true;
  return false;
}

inline bool point_in_triangle3(const Vec3& p, const Triangle& t, const Vec3& normal) {
  const Projector pr(normal);
  return point_in_triangle2(pr(p), pr(t[0]), pr(t[1]), pr(t[2]));
}

// Closed segment against closed triangle (unit-frame coordinates).
inline bool segment_meets_triangle(const Vec3& a, const Vec3& b, const Triangle& t) {
  const Vec3 n = normalized(cross(t[1] - t[0], t[2] - t[0]));
  const double da = dot(a - t[0], n);
  const double db = dot(b - t[0], n);
  if ((da > kTolerance && db > kTolerance) || (da < -kTolerance && db < -kTolerance)) return false;
  if (std::abs(da) <= kTolerance && std::abs(db) <= kTolerance) {
    const Projector pr(n);
    const P2 pa = pr(a), pb = pr(b);
    const P2 q0 = pr(t[0]), q1 = pr(t[1]), q2 = pr(t[2]);
    if (point_in_triangle2(pa, q0, q1, q2) || point_in_triangle2(pb, q0, q1, q2)) return true;
    return segments_meet2(pa, pb, q0, q1) || segments_meet2(pa, pb, q1, q2) || segments_meet2(pa, pb, q2, q0);
  }
  const double s = std::clamp(da / (da - db), 0.0, 1.0);
  return point_in_triangle3(a + s * (b - a), t, n);
}

// Does the ray from apex v along direction u enter triangle (v, c, d)?
// Only meaningful when u lies in that triangle's plane.
inline bool direction_in_wedge(const Vec3& v, const Vec3& u, const Vec3& c, const Vec3& d) {
  const Vec3 n = cross(c - v, d - v);
  const Vec3 un = normalized(u);
  if (std::abs(dot(un, normalized(n))) > kTolerance) return false;
  // u = lambda (c - v) + mu (d - v) with lambda, mu >= 0
  const Vec3 e1 = c - v;
  const Vec3 e2 = d - v;
  const double nn = dot(n, n);
  const double lambda = dot(cross(un, e2), n) / nn;
  const double mu = dot(cross(e1, un), n) / nn;
  const double tol = kTolerance * std::max(norm(e1), norm(e2));
  return lambda >= -tol && mu >= -tol && (lambda > tol || mu > tol);
}

}  // namespace detail

// True iff the closed triangles meet anywhere other than in a face they
// share. Shared faces are identified by vertex ids (a shared id must mean
// the same point); pass distinct ids for unrelated triangles.
inline bool triangles_intersect(const Triangle& t1_in, const std::array<Vertex, 3>& id1, const Triangle& t2_in,
                                const std::array<Vertex, 3>& id2) {
  detail::require_nondegenerate(t1_in);
  detail::require_nondegenerate(t2_in);
  const std::array<Vec3, 6> all{t1_in[0], t1_in[1], t1_in[2], t2_in[0], t2_in[1], t2_in[2]};
  const auto frame = detail::unit_frame(all);
  Triangle t1{frame.map(t1_in[0]), frame.map(t1_in[1]), frame.map(t1_in[2])};
  Triangle t2{frame.map(t2_in[0]), frame.map(t2_in[1]), frame.map(t2_in[2])};

  // Reorder so shared vertices come first, in matching positions.
  std::array<int, 3> o1{0, 1, 2}, o2{0, 1, 2};
  int shared = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = shared; j < 3; ++j) {
      if (id1[o1[i]] == id2[o2[j]]) {
        std::swap(o1[shared], o1[i]);
        std::swap(o2[shared], o2[j]);
        ++shared;
        break;
      }
    }
  }
  auto reorder = [](const Triangle& t, const std::array<int, 3>& o) { return Triangle{t[o[0]], t[o[1]], t[o[2]]}; };
  t1 = reorder(t1, o1);
  t2 = reorder(t2, o2);

  switch (shared) {
    case 3:
      return false;
    case 2: {
      // Shared edge uv: improper only if the two triangles fold onto the same
      // side within one plane.
      const Vec3 n = normalized(cross(t2[1] - t2[0], t2[2] - t2[0]));
      if (std::abs(dot(t1[2] - t2[0], n)) > kTolerance) return false;
      const Vec3 m = cross(t2[1] - t2[0], n);
      return dot(t1[2] - t2[0], m) * dot(t2[2] - t2[0], m) > 0.0;
    }
    case 1: {
      const Vec3& v = t1[0];
      if (detail::segment_meets_triangle(t1[1], t1[2], t2)) return true;
      if (detail::segment_meets_triangle(t2[1], t2[2], t1)) return true;
      for (int k = 1; k <= 2; ++k) {
        if (detail::direction_in_wedge(v, t1[k] - v, t2[1], t2[2])) return true;
        if (detail::direction_in_wedge(v, t2[k] - v, t1[1], t1[2])) return true;
      }
      return false;
    }
    default:
      for (int k = 0; k < 3; ++k) {
        if (detail::segment_meets_triangle(t1[k], t1[(k + 1) % 3], t2)) return true;
        if (detail::segment_meets_triangle(t2[k], t2[(k + 1) % 3], t1)) return true;
      }
      return false;
  }
}

// Coordinate-only form: vertices with identical coordinates count as shared.
inline bool triangles_intersect(const Triangle& t1, const Triangle& t2) {
  std::array<Vertex, 3> id1{0, 1, 2};
  std::array<Vertex, 3> id2{3, 4, 5};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (t1[i] == t2[j]) id2[j] = id1[i];
    }
  }
  return triangles_intersect(t1, id1, t2, id2);
}

// Is there a ball through the three vertices of t with none of `others` in
// its interior? The candidate centers are c0 + s n; a point x is strictly
// inside iff |x - c0|^2 - r0^2 < 2 s (x - c0).n, so emptiness is a set of
// linear constraints on s. Points on the sphere do not count as inside.
inline bool locally_delaunay(const Triangle& t_in, std::span<const Vec3> others_in) {
  std::vector<Vec3> all(t_in.begin(), t_in.end());
  all.insert(all.end(), others_in.begin(), others_in.end());
  const auto frame = detail::unit_frame(all);
  const Triangle t{frame.map(t_in[0]), frame.map(t_in[1]), frame.map(t_in[2])};
  const auto circle = circumcircle(t);
  if (!circle) throw DegeneracyError("degenerate (collinear) triangle");
  double lo = -kInfinity;
  double hi = kInfinity;
  for (const auto& x_in : others_in) {
    const Vec3 x = frame.map(x_in);
    const Vec3 r = x - circle->center;
    const double a = dot(r, r) - circle->radius * circle->radius;
    const double b = dot(r, circle->normal);
    if (std::abs(b) <= kTolerance) {
      if (a < -kTolerance) return false;
    } else if (b > 0.0) {
      hi = std::min(hi, (a + kTolerance) / (2.0 * b));
    } else {
      lo = std::max(lo, (a + kTolerance) / (2.0 * b));
    }
  }
  return lo <= hi;
}

}  // namespace gic::recon
