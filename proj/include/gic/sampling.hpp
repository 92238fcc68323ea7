#pragma once

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gic/core/point_cloud.hpp"
#include "gic/core/types.hpp"
#include "gic/metric.hpp"

namespace gic {

// How the next subsample point is picked once the current covers are known.
enum class SeedStrategy {
  FirstUncovered,  // lowest-index point outside every delta-cover
  FarthestPoint,   // point maximizing the distance to the current subsample
};

// A delta-sparse delta-sample Q of (P, d) with its nearest-point map nu.
struct Subsample {
  std::vector<Vertex> q_indices;  // Q in selection order
  std::vector<Vertex> nu;         // nu[p] in Q
  std::vector<double> nu_dist;    // d(p, nu[p])
  double delta = 0.0;
  MetricChoice metric = MetricChoice::euclidean();

  std::size_t size() const { return q_indices.size(); }

  std::vector<Vertex> sorted_q() const {
    std::vector<Vertex> q = q_indices;
    std::sort(q.begin(), q.end());
    return q;
  }
};

namespace detail {

// nu(p) moves to q only on a strictly smaller distance, or an equal distance
// to a lower-index q; the map therefore realizes argmin with lowest-index ties.
inline void claim_cover(Subsample& s, const std::vector<double>& dist, Vertex q) {
  for (std::size_t p = 0; p < dist.size(); ++p) {
    const double d = dist[p];
    if (!(d <= s.delta)) continue;
    if (d < s.nu_dist[p] || (d == s.nu_dist[p] && q < s.nu[p])) {
      s.nu[p] = q;
      s.nu_dist[p] = d;
    }
  }
}

}  // namespace detail

// Iterative delta-cover construction. Invariants after each selection:
// Q is delta-sparse, and every point inside some cover knows its nearest q.
// Points the metric cannot reach (graph metric, other component) stay
// uncovered until a seed is chosen among them, so every component gets its
// own subsample points.
inline Subsample greedy_subsample(const PointCloud& cloud, const MetricChoice& metric, double delta, Vertex seed = 0,
                                  SeedStrategy strategy = SeedStrategy::FirstUncovered) {
  if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
  metric.validate(cloud);
  Subsample s;
  s.delta = delta;
  s.metric = metric;
  const std::size_t n = cloud.size();
  s.nu.assign(n, kNoVertex);
  s.nu_dist.assign(n, kInfinity);
  if (n == 0) return s;
  if (seed >= n) throw PreconditionError("seed vertex out of range");

  if (strategy == SeedStrategy::FirstUncovered) {
    auto select = [&](Vertex q) {
      s.q_indices.push_back(q);
      detail::claim_cover(s, metric.distances_from(cloud, q, delta), q);
    };
    select(seed);
    for (std::size_t cursor = 0;; ++cursor) {
      while (cursor < n && s.nu[cursor] != kNoVertex) ++cursor;
      if (cursor == n) break;
      select(static_cast<Vertex>(cursor));
    }
    return s;
  }

  std::vector<double> gap(n, kInfinity);  // d(p, Q)
  Vertex q = seed;
  for (;;) {
    s.q_indices.push_back(q);
    const auto dist = metric.distances_from(cloud, q);
    detail::claim_cover(s, dist, q);
    for (std::size_t p = 0; p < n; ++p) gap[p] = std::min(gap[p], dist[p]);
    std::size_t far = 0;
    for (std::size_t p = 1; p < n; ++p) {
      if (gap[p] > gap[far]) far = p;
    }
    if (gap[far] <= delta) break;
    q = static_cast<Vertex>(far);
  }
  return s;
}

enum class SubsampleViolation { None, Structure, Sparsity, Cover, NearestMap };

struct SubsampleReport {
  bool passed = true;
  SubsampleViolation kind = SubsampleViolation::None;
  std::string message;

  explicit operator bool() const { return passed; }
};

// Exhaustive check of delta-sparsity, the delta-cover property, nu(q) = q and
// that nu(p) realizes the minimum distance with lowest-index ties. Reports
// the first violation found.
inline SubsampleReport verify_subsample(const Subsample& s, const PointCloud& cloud) {
  auto fail = [](SubsampleViolation kind, std::string msg) { return SubsampleReport{false, kind, std::move(msg)}; };
  const std::size_t n = cloud.size();
  if (s.nu.size() != n || s.nu_dist.size() != n) return fail(SubsampleViolation::Structure, "nu table size mismatch");
  if (n == 0) return {};
  if (s.q_indices.empty()) return fail(SubsampleViolation::Structure, "empty subsample of a nonempty cloud");
  std::vector<char> in_q(n, 0);
  for (Vertex q : s.q_indices) {
    if (q >= n) return fail(SubsampleViolation::Structure, "subsample index out of range");
    if (in_q[q]) return fail(SubsampleViolation::Structure, "subsample index repeated: " + std::to_string(q));
    in_q[q] = 1;
  }
  try {
    s.metric.validate(cloud);
  } catch (const Error& e) {
    return fail(SubsampleViolation::Structure, e.what());
  }

  const auto q_sorted = s.sorted_q();
  std::vector<double> best(n, kInfinity);
  std::vector<Vertex> best_q(n, kNoVertex);
  for (Vertex q : q_sorted) {
    const auto dist = s.metric.distances_from(cloud, q);
    for (Vertex other : q_sorted) {
      if (other != q && dist[other] < s.delta) {
        std::ostringstream msg;
        msg << "points " << q << " and " << other << " are at distance " << dist[other] << " < delta " << s.delta;
        return fail(SubsampleViolation::Sparsity, msg.str());
      }
    }
    // q_sorted ascends, so strict '<' keeps the lowest index on ties.
    for (std::size_t p = 0; p < n; ++p) {
      if (dist[p] < best[p]) {
        best[p] = dist[p];
        best_q[p] = q;
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (in_q[p] && s.nu[p] != p) {
      return fail(SubsampleViolation::NearestMap, "subsample point " + std::to_string(p) + " not mapped to itself");
    }
    if (!(s.nu_dist[p] <= s.delta) || s.nu[p] == kNoVertex) {
      std::ostringstream msg;
      msg << "point " << p << " is not covered (distance " << s.nu_dist[p] << " > delta " << s.delta << ")";
      return fail(SubsampleViolation::Cover, msg.str());
    }
    if (s.nu[p] != best_q[p] || s.nu_dist[p] != best[p]) {
      std::ostringstream msg;
      msg << "point " << p << " assigned to " << s.nu[p] << " at " << s.nu_dist[p] << " but nearest is " << best_q[p]
          << " at " << best[p];
      return fail(SubsampleViolation::NearestMap, msg.str());
    }
  }
  return {};
}

// Header "delta metric", then one "p nu(p) dist" row per point.
inline void write_subsample(std::ostream& out, const Subsample& s) {
  out << std::setprecision(17) << s.delta << ' ' << s.metric.name() << '\n';
  for (std::size_t p = 0; p < s.nu.size(); ++p) out << p << ' ' << s.nu[p] << ' ' << s.nu_dist[p] << '\n';
}

}  // namespace gic
