#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gic/core/point_cloud.hpp"
#include "gic/core/types.hpp"
#include "gic/graph.hpp"

namespace gic {

enum class MetricKind { Euclidean, Graph };

// Distance used for subsampling and nearest-point assignment: Euclidean, or
// shortest-path length in a neighborhood graph over the same point set.
class MetricChoice {
 public:
  static MetricChoice euclidean() { return MetricChoice(MetricKind::Euclidean, nullptr); }

  static MetricChoice graph(std::shared_ptr<const NeighborhoodGraph> g) {
    if (!g) throw PreconditionError("graph metric requires a neighborhood graph");
    return MetricChoice(MetricKind::Graph, std::move(g));
  }

  MetricKind kind() const { return kind_; }
  const NeighborhoodGraph* graph() const { return graph_.get(); }
  const std::shared_ptr<const NeighborhoodGraph>& graph_ptr() const { return graph_; }

  std::string name() const { return kind_ == MetricKind::Euclidean ? "euclidean" : "graph"; }

  void validate(const PointCloud& cloud) const {
    if (kind_ == MetricKind::Graph && graph_->size() != cloud.size()) {
      throw ContractError("graph metric: graph has " + std::to_string(graph_->size()) + " vertices but the cloud has " +
                          std::to_string(cloud.size()) + " points");
    }
  }

  // Distances from `source` to every point; entries beyond `bound` may be
  // reported as infinity (the graph metric stops its search there).
  std::vector<double> distances_from(const PointCloud& cloud, Vertex source, double bound = kInfinity) const {
    if (kind_ == MetricKind::Graph) return graph_distances(*graph_, source, bound);
    std::vector<double> d(cloud.size());
    const auto p = cloud[source];
    for (std::size_t i = 0; i < cloud.size(); ++i) d[i] = euclidean_distance(p, cloud[i]);
    return d;
  }

  double distance(const PointCloud& cloud, Vertex a, Vertex b) const {
    if (kind_ == MetricKind::Euclidean) return euclidean_distance(cloud[a], cloud[b]);
    return graph_distances(*graph_, a)[b];
  }

 private:
  MetricChoice(MetricKind kind, std::shared_ptr<const NeighborhoodGraph> g) : kind_(kind), graph_(std::move(g)) {}

  MetricKind kind_;
  std::shared_ptr<const NeighborhoodGraph> graph_;
};

}  // namespace gic
