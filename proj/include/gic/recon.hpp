#pragma once

// Surface reconstruction from a graph induced complex of a sample in R^3.

#include <memory>

#include "gic/builders.hpp"
#include "gic/graph.hpp"
#include "gic/recon/geometry.hpp"
#include "gic/recon/mesh.hpp"
#include "gic/recon/prune.hpp"
#include "gic/sampling.hpp"

namespace gic::recon {

struct ReconstructOptions {
  Vertex seed = 0;
  SeedStrategy strategy = SeedStrategy::FirstUncovered;
  ExtractOptions extract;
};

struct ReconstructResult {
  Subsample subsample;
  SubsampleReport subsample_check;
  std::array<std::size_t, 3> gic_counts{};      // vertices, edges, triangles of the GIC
  std::array<std::size_t, 3> embedded_counts{}; // after intersection pruning
  std::array<std::size_t, 3> pruned_counts{};   // after circumradius pruning
  PruneReport intersection_report;
  PruneReport radius_report;
  ExtractResult extraction;
};

// G^alpha(P) -> Euclidean delta-subsample Q -> GIC 2-skeleton -> remove
// improperly intersecting triangles -> remove circumradius > 2 delta ->
// sharp-edge pruning and outside walk.
inline ReconstructResult reconstruct_surface(const PointCloud& cloud, double alpha, double delta,
                                             const ReconstructOptions& opt = {}) {
  if (cloud.dim() != 3) throw DimensionError("surface reconstruction needs points in R^3, got dimension " +
                                             std::to_string(cloud.dim()));
  ReconstructResult r;
  const auto graph = build_neighborhood_graph(cloud, alpha);
  r.subsample = greedy_subsample(cloud, MetricChoice::euclidean(), delta, opt.seed, opt.strategy);
  r.subsample_check = verify_subsample(r.subsample, cloud);
  if (!r.subsample_check) throw ContractError("subsample check failed: " + r.subsample_check.message);
  const auto gic = build_gic(graph, r.subsample, 2);
  auto counts = [](const SimplicialComplex& k) {
    return std::array<std::size_t, 3>{k.count(0), k.count(1), k.count(2)};
  };
  r.gic_counts = counts(*gic.complex);
  const auto embedded = prune_intersections(*gic.complex, cloud, &r.intersection_report);
  r.embedded_counts = counts(embedded);
  const auto small = prune_by_circumradius(embedded, cloud, delta, &r.radius_report);
  r.pruned_counts = counts(small);
  r.extraction = extract_manifold(small, cloud, opt.extract);
  return r;
}

}  // namespace gic::recon
