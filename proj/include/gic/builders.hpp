#pragma once

#include <algorithm>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "gic/cliques.hpp"
#include "gic/core/point_cloud.hpp"
#include "gic/core/simplicial_complex.hpp"
#include "gic/core/types.hpp"
#include "gic/graph.hpp"
#include "gic/metric.hpp"
#include "gic/sampling.hpp"

namespace gic {

inline Adjacency adjacency_of(const NeighborhoodGraph& graph) {
  Adjacency adj(graph.size());
  for (Vertex u = 0; u < graph.size(); ++u) {
    for (const auto& nb : graph.neighbors(u)) adj[u].push_back(nb.id);
  }
  return adj;
}

// Clique complex of a graph truncated at max_dim.
inline SimplicialComplex clique_complex(const Adjacency& adj, int max_dim) {
  SimplicialComplex complex(max_dim);
  for_each_clique(adj, static_cast<std::size_t>(max_dim) + 1,
                  [&](const std::vector<Vertex>& clique) { complex.insert_sorted(clique); });
  return complex;
}

// Rips^alpha(P): the clique complex of G^alpha(P).
inline SimplicialComplex build_rips(const PointCloud& cloud, double alpha, int max_dim = 3) {
  return clique_complex(adjacency_of(build_neighborhood_graph(cloud, alpha)), max_dim);
}

// Rips complex on the subsample points only, with edge threshold `threshold`.
// Vertex ids are the original point ids.
inline SimplicialComplex build_rips_on_subset(const PointCloud& cloud, std::span<const Vertex> subset,
                                              double threshold, int max_dim) {
  std::vector<Vertex> ids(subset.begin(), subset.end());
  std::sort(ids.begin(), ids.end());
  PointCloud sub(cloud.dim());
  for (Vertex id : ids) sub.push_back(cloud[id]);
  const auto local = clique_complex(adjacency_of(build_neighborhood_graph(sub, threshold)), max_dim);
  SimplicialComplex out(max_dim);
  std::vector<Vertex> mapped;
  local.for_each_simplex([&](std::span<const Vertex> s, SimplicialComplex::NodeId) {
    mapped.clear();
    for (Vertex v : s) mapped.push_back(ids[v]);
    out.insert_sorted(mapped);  // ids ascending, so order is preserved
  });
  return out;
}

enum class CliqueStrategy {
  Expansion,     // ordered k-clique extension, truncated at max_dim + 1
  BronKerbosch,  // maximal cliques with pivoting, then truncated faces
  FiberSearch,   // extend image simplices, one witness clique per candidate
};

namespace detail {

// Inserts every (max_dim + 1)-subset of `image` (or image itself when small).
inline void insert_truncated(SimplicialComplex& complex, std::vector<Vertex> image) {
  std::sort(image.begin(), image.end());
  const std::size_t cap = static_cast<std::size_t>(complex.max_dim()) + 1;
  if (image.size() <= cap) {
    complex.insert_sorted(image);
    return;
  }
  std::vector<std::size_t> pick(cap);
  for (std::size_t i = 0; i < cap; ++i) pick[i] = i;
  std::vector<Vertex> face(cap);
  for (;;) {
    for (std::size_t i = 0; i < cap; ++i) face[i] = image[pick[i]];
    complex.insert_sorted(face);
    std::size_t i = cap;
    while (i-- > 0 && pick[i] == image.size() - cap + i) {
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++pick[i];
    for (std::size_t j = i + 1; j < cap; ++j) pick[j] = pick[j - 1] + 1;
  }
}

// Image simplices grown one vertex at a time in the graph of images. A
// candidate image set is accepted once a single clique with exactly those
// images is found by backtracking over the fibers nu^-1(q); every face of an
// accepted set is accepted too, so only accepted sets are extended.
class FiberSearch {
 public:
  FiberSearch(const Adjacency& sparse, std::span<const Vertex> nu, SimplicialComplex& out)
      : sparse_(sparse), out_(out) {
    std::vector<Vertex> images(nu.begin(), nu.end());
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    images_ = images;
    local_.assign(sparse.size(), 0);
    fibers_.resize(images_.size());
    for (Vertex p = 0; p < nu.size(); ++p) {
      local_[p] = static_cast<Vertex>(std::lower_bound(images_.begin(), images_.end(), nu[p]) - images_.begin());
      fibers_[local_[p]].push_back(p);
    }
    image_adj_.resize(images_.size());
    for (Vertex u = 0; u < sparse.size(); ++u) {
      for (Vertex v : sparse[u]) image_adj_[local_[u]].push_back(local_[v]);
    }
    for (auto& row : image_adj_) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
  }

  void run(std::size_t max_size) {
    std::vector<Vertex> set;
    std::vector<Vertex> cand;
    for (Vertex q = 0; q < images_.size(); ++q) {
      set.assign(1, q);
      emit(set);
      if (max_size < 2) continue;
      cand.assign(std::upper_bound(image_adj_[q].begin(), image_adj_[q].end(), q), image_adj_[q].end());
      extend(set, cand, max_size);
    }
  }

 private:
  void emit(const std::vector<Vertex>& set) {
    image_.clear();
    for (Vertex q : set) image_.push_back(images_[q]);
    out_.insert_sorted(image_);
  }

  void extend(std::vector<Vertex>& set, const std::vector<Vertex>& cand, std::size_t max_size) {
    std::vector<Vertex> next;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      set.push_back(cand[i]);
      if (has_witness(set)) {
        emit(set);
        if (set.size() < max_size) {
          next.clear();
          const auto& nq = image_adj_[cand[i]];
          std::set_intersection(cand.begin() + static_cast<std::ptrdiff_t>(i) + 1, cand.end(), nq.begin(), nq.end(),
                                std::back_inserter(next));
          if (!next.empty()) extend(set, next, max_size);
        }
      }
      set.pop_back();
    }
  }

  bool has_witness(const std::vector<Vertex>& set) {
    std::vector<std::vector<Vertex>> pools;
    pools.reserve(set.size());
    for (Vertex q : set) pools.push_back(fibers_[q]);
    return search(pools);
  }

  // Forward checking: pick a point from the smallest pool, restrict the
  // remaining pools to its neighbors.
  bool search(std::vector<std::vector<Vertex>>& pools) {
    if (pools.empty()) return true;
    std::size_t best = 0;
    for (std::size_t i = 1; i < pools.size(); ++i) {
      if (pools[i].size() < pools[best].size()) best = i;
    }
    std::swap(pools[best], pools.back());
    const std::vector<Vertex> mine = std::move(pools.back());
    pools.pop_back();
    bool found = false;
    for (Vertex p : mine) {
      std::vector<std::vector<Vertex>> rest(pools.size());
      bool dead = false;
      for (std::size_t i = 0; i < pools.size() && !dead; ++i) {
        std::set_intersection(pools[i].begin(), pools[i].end(), sparse_[p].begin(), sparse_[p].end(),
                              std::back_inserter(rest[i]));
        dead = rest[i].empty();
      }
      if (!dead && search(rest)) {
        found = true;
        break;
      }
    }
    pools.push_back(mine);
    return found;
  }

  const Adjacency& sparse_;
  SimplicialComplex& out_;
  std::vector<Vertex> images_;                 // distinct images, ascending
  std::vector<Vertex> local_;                  // point -> index into images_
  std::vector<std::vector<Vertex>> fibers_;    // per image: its points, ascending
  std::vector<std::vector<Vertex>> image_adj_; // image graph on local indices
  std::vector<Vertex> image_;
};

}  // namespace detail

// Graph induced complex of an abstract graph under a vertex map nu: V -> V.
// Edges joining vertices with equal images are deleted first; every clique of
// what remains has pairwise distinct images, and those images are the
// simplices. Returns the complex and the number of surviving edges.
inline std::pair<SimplicialComplex, std::size_t> graph_induced_complex(
    const Adjacency& adj, std::span<const Vertex> nu, int max_dim, CliqueStrategy strategy = CliqueStrategy::FiberSearch) {
  if (nu.size() != adj.size()) throw PreconditionError("vertex map size differs from graph size");
  Adjacency sparse(adj.size());
  std::size_t kept = 0;
  for (Vertex u = 0; u < adj.size(); ++u) {
    if (nu[u] >= adj.size()) throw PreconditionError("vertex map image out of range");
    for (Vertex v : adj[u]) {
      if (nu[u] != nu[v]) {
        sparse[u].push_back(v);
        if (u < v) ++kept;
      }
    }
  }
  SimplicialComplex complex(max_dim);
  std::vector<Vertex> image;
  if (strategy == CliqueStrategy::Expansion) {
    for_each_clique(sparse, static_cast<std::size_t>(max_dim) + 1, [&](const std::vector<Vertex>& clique) {
      image.clear();
      for (Vertex p : clique) image.push_back(nu[p]);
      std::sort(image.begin(), image.end());
      complex.insert_sorted(image);
    });
  } else if (strategy == CliqueStrategy::BronKerbosch) {
    for_each_maximal_clique(sparse, [&](const std::vector<Vertex>& clique) {
      image.clear();
      for (Vertex p : clique) image.push_back(nu[p]);
      detail::insert_truncated(complex, image);
    });
  } else {
    detail::FiberSearch(sparse, nu, complex).run(static_cast<std::size_t>(max_dim) + 1);
  }
  return {std::move(complex), kept};
}

struct GicResult {
  std::shared_ptr<const SimplicialComplex> complex;  // vertex ids are point ids of Q
  double alpha = 0.0;
  std::shared_ptr<const Subsample> subsample;
  std::size_t sparsified_edge_count = 0;
};

// GIC^alpha(P, Q, d) from G^alpha(P) and a subsample (Q, nu) of P.
inline GicResult build_gic(const NeighborhoodGraph& graph, const Subsample& subsample, int max_dim = 3,
                           CliqueStrategy strategy = CliqueStrategy::FiberSearch) {
  if (subsample.nu.size() != graph.size()) throw PreconditionError("subsample and graph cover different point sets");
  auto [complex, kept] = graph_induced_complex(adjacency_of(graph), subsample.nu, max_dim, strategy);
  GicResult r;
  r.complex = std::make_shared<const SimplicialComplex>(std::move(complex));
  r.alpha = graph.alpha();
  r.subsample = std::make_shared<const Subsample>(subsample);
  r.sparsified_edge_count = kept;
  return r;
}

// Simplicial map between two complexes given by a vertex table. Instances
// from induced_vertex_map() have been checked simplex by simplex.
class VertexMap {
 public:
  // No simpliciality check; verified() is false. induced_map_rank rejects
  // such maps.
  static VertexMap unchecked(std::shared_ptr<const SimplicialComplex> domain,
                             std::shared_ptr<const SimplicialComplex> codomain, std::vector<Vertex> table) {
    return VertexMap(std::move(domain), std::move(codomain), std::move(table), false);
  }

  const SimplicialComplex& domain() const { return *domain_; }
  const SimplicialComplex& codomain() const { return *codomain_; }
  const std::shared_ptr<const SimplicialComplex>& domain_ptr() const { return domain_; }
  const std::shared_ptr<const SimplicialComplex>& codomain_ptr() const { return codomain_; }
  const std::vector<Vertex>& table() const { return table_; }
  bool verified() const { return verified_; }

  Vertex operator()(Vertex v) const { return v < table_.size() ? table_[v] : kNoVertex; }

  // Sorted vertex set of the image simplex (repeats collapsed).
  std::vector<Vertex> image_of(std::span<const Vertex> simplex) const {
    std::vector<Vertex> img;
    img.reserve(simplex.size());
    for (Vertex v : simplex) img.push_back((*this)(v));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return img;
  }

 private:
  friend VertexMap induced_vertex_map(std::shared_ptr<const SimplicialComplex>, std::shared_ptr<const SimplicialComplex>,
                                      std::vector<Vertex>);

  VertexMap(std::shared_ptr<const SimplicialComplex> domain, std::shared_ptr<const SimplicialComplex> codomain,
            std::vector<Vertex> table, bool verified)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)), verified_(verified) {}

  std::shared_ptr<const SimplicialComplex> domain_;
  std::shared_ptr<const SimplicialComplex> codomain_;
  std::vector<Vertex> table_;
  bool verified_ = false;
};

namespace detail {

inline std::string simplex_string(std::span<const Vertex> s) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
  out << '}';
  return out.str();
}

}  // namespace detail

// Vertex map defined by `table` (indexed by domain vertex id). Throws
// SimplicialityError naming the first domain simplex whose image is missing
// from the codomain.
inline VertexMap induced_vertex_map(std::shared_ptr<const SimplicialComplex> domain,
                                    std::shared_ptr<const SimplicialComplex> codomain, std::vector<Vertex> table) {
  if (!domain || !codomain) throw PreconditionError("vertex map needs both complexes");
  VertexMap map(domain, codomain, std::move(table), false);
  for (Vertex v : domain->vertex_ids()) {
    if (map(v) == kNoVertex) throw SimplicialityError("vertex " + std::to_string(v) + " has no image");
  }
  domain->for_each_simplex([&](std::span<const Vertex> s, SimplicialComplex::NodeId) {
    const auto img = map.image_of(s);
    if (!codomain->find_sorted(img)) {
      throw SimplicialityError("image " + detail::simplex_string(img) + " of simplex " + detail::simplex_string(s) +
                               " is not in the codomain");
    }
  });
  map.verified_ = true;
  return map;
}

// g after f.
inline VertexMap compose(const VertexMap& f, const VertexMap& g) {
  std::vector<Vertex> table(f.table().size(), kNoVertex);
  for (std::size_t v = 0; v < table.size(); ++v) {
    if (f.table()[v] != kNoVertex) table[v] = g(f.table()[v]);
  }
  return induced_vertex_map(f.domain_ptr(), g.codomain_ptr(), std::move(table));
}

struct GicPair {
  GicResult first;   // GIC^alpha(P, Q, d)
  GicResult second;  // GIC^{m(alpha + 2 delta)}(P, Q', d)
  VertexMap map;     // q -> nearest q' in Q'
};

struct PairOptions {
  double multiplier = 4.0;
  int max_dim = 3;
  Vertex seed = 0;
  SeedStrategy strategy = SeedStrategy::FirstUncovered;
  CliqueStrategy cliques = CliqueStrategy::FiberSearch;
};

// Both subsamples are drawn independently from P under the same metric d
// (for the graph metric: shortest paths in G^alpha(P)). The second complex
// uses the graph at scale multiplier * (alpha + 2 delta).
inline GicPair build_gic_pair(const PointCloud& cloud, double alpha, double delta, double delta2, MetricKind kind,
                              const PairOptions& opt = {}) {
  if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
  if (!(delta2 > delta)) throw PreconditionError("delta2 must exceed delta");
  if (!(opt.multiplier >= 1.0)) throw PreconditionError("scale multiplier must be at least 1");
  auto g1 = std::make_shared<const NeighborhoodGraph>(build_neighborhood_graph(cloud, alpha));
  const auto metric = kind == MetricKind::Euclidean ? MetricChoice::euclidean() : MetricChoice::graph(g1);
  const auto s1 = greedy_subsample(cloud, metric, delta, opt.seed, opt.strategy);
  const auto s2 = greedy_subsample(cloud, metric, delta2, opt.seed, opt.strategy);
  const auto g2 = build_neighborhood_graph(cloud, opt.multiplier * (alpha + 2.0 * delta));
  GicResult k1 = build_gic(*g1, s1, opt.max_dim, opt.cliques);
  GicResult k2 = build_gic(g2, s2, opt.max_dim, opt.cliques);
  auto map = induced_vertex_map(k1.complex, k2.complex, s2.nu);
  return {std::move(k1), std::move(k2), std::move(map)};
}

}  // namespace gic
