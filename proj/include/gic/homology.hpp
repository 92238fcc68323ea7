#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gic/builders.hpp"
#include "gic/core/point_cloud.hpp"
#include "gic/core/simplicial_complex.hpp"
#include "gic/core/types.hpp"
#include "gic/core/z2_matrix.hpp"
#include "gic/graph.hpp"

namespace gic {

// Dense numbering of the simplices of each dimension in lexicographic order.
// Holds a pointer to the complex, which must outlive the index.
class SimplexIndex {
 public:
  explicit SimplexIndex(const SimplicialComplex& complex)
      : complex_(&complex), flat_(static_cast<std::size_t>(complex.max_dim()) + 1) {
    std::size_t nodes = 0;
    for (auto c : complex.counts()) nodes += c;
    node_index_.assign(nodes + 1, 0);
    complex.for_each_simplex([&](std::span<const Vertex> s, SimplicialComplex::NodeId id) {
      auto& flat = flat_[s.size() - 1];
      node_index_[id] = static_cast<std::uint32_t>(flat.size() / s.size());
      flat.insert(flat.end(), s.begin(), s.end());
    });
  }

  const SimplicialComplex& complex() const { return *complex_; }

  std::size_t count(int k) const { return k < 0 || k > complex_->max_dim() ? 0 : complex_->count(k); }

  std::span<const Vertex> simplex(int k, std::size_t i) const {
    const auto w = static_cast<std::size_t>(k) + 1;
    return {flat_[static_cast<std::size_t>(k)].data() + i * w, w};
  }

  std::optional<std::uint32_t> index_of(std::span<const Vertex> sorted) const {
    const auto node = complex_->find_sorted(sorted);
    if (!node) return std::nullopt;
    return node_index_[*node];
  }

  // Column j lists the facets of k-simplex j as (k-1)-simplex indices.
  std::vector<Z2Matrix::Column> boundary_columns(int k) const {
    std::vector<Z2Matrix::Column> cols(count(k));
    std::vector<Vertex> facet;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const auto s = simplex(k, j);
      auto& col = cols[j];
      for (std::size_t skip = 0; skip < s.size(); ++skip) {
        facet.clear();
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (i != skip) facet.push_back(s[i]);
        }
        col.push_back(*index_of(facet));
      }
      std::sort(col.begin(), col.end());
    }
    return cols;
  }

 private:
  const SimplicialComplex* complex_;
  std::vector<std::vector<Vertex>> flat_;
  std::vector<std::uint32_t> node_index_;
};

// Boundary operator d_k over Z2: rows are (k-1)-simplices, columns are
// k-simplices, both in lexicographic order.
inline Z2Matrix boundary_matrix(const SimplicialComplex& complex, int k) {
  if (k < 1 || k > complex.max_dim()) {
    throw PreconditionError("boundary dimension " + std::to_string(k) + " outside [1, " +
                            std::to_string(complex.max_dim()) + "]");
  }
  const SimplexIndex index(complex);
  Z2Matrix m(index.count(k - 1), 0);
  for (auto& col : index.boundary_columns(k)) m.append_column(std::move(col));
  return m;
}

// A Z2 chain as the sorted indices of its simplices in one dimension.
using Chain = std::vector<std::uint32_t>;

struct HomologyResult {
  std::vector<std::size_t> betti;               // beta_0 .. beta_max_k
  std::vector<std::vector<Chain>> cycle_basis;  // per k: beta_k representative cycles
};

namespace detail {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent[a] = b;
    return true;
  }
};

struct Reduction {
  std::size_t rank = 0;
  std::vector<char> pivot_rows;   // rows that are the low entry of some reduced column
  std::vector<Chain> essential;   // cycle representatives of unpaired zero columns
};

// Column reduction of d_k. Columns flagged in `cleared` are known to reduce
// to zero and are skipped. With `track`, the V matrix is maintained so that
// zero columns yield kernel vectors; those whose simplex is not in
// `killed` (low entries of d_{k+1}) are returned as representatives.
inline Reduction reduce_boundary(const SimplexIndex& index, int k, const std::vector<char>& cleared,
                                 const std::vector<char>* killed, bool track) {
  Reduction out;
  const std::size_t rows = index.count(k - 1);
  out.pivot_rows.assign(rows, 0);
  auto columns = index.boundary_columns(k);
  std::vector<std::int64_t> pivot_of_row(rows, -1);
  std::vector<Chain> v;
  if (track) v.resize(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (!cleared.empty() && cleared[j]) {
      columns[j].clear();
      continue;
    }
    auto& col = columns[j];
    if (track) v[j] = {static_cast<std::uint32_t>(j)};
    while (!col.empty()) {
      const auto p = pivot_of_row[col.back()];
      if (p < 0) break;
      Z2Matrix::add_into(col, columns[static_cast<std::size_t>(p)]);
      if (track) Z2Matrix::add_into(v[j], v[static_cast<std::size_t>(p)]);
    }
    if (!col.empty()) {
      pivot_of_row[col.back()] = static_cast<std::int64_t>(j);
      out.pivot_rows[col.back()] = 1;
      ++out.rank;
    } else if (track && !(killed && !killed->empty() && (*killed)[j])) {
      out.essential.push_back(std::move(v[j]));
    }
  }
  return out;
}

inline HomologyResult homology_of(const SimplexIndex& index, int max_k, bool with_cycles) {
  const auto& complex = index.complex();
  HomologyResult result;
  if (max_k < 0) return result;
  result.betti.assign(static_cast<std::size_t>(max_k) + 1, 0);
  result.cycle_basis.assign(static_cast<std::size_t>(max_k) + 1, {});
  const int top = std::min(max_k + 1, complex.max_dim());

  std::vector<std::size_t> rank(static_cast<std::size_t>(top) + 2, 0);
  // killed[k][i]: k-simplex i is the low entry of a reduced column of d_{k+1}.
  std::vector<std::vector<char>> killed(static_cast<std::size_t>(top) + 1);
  for (int k = top; k >= 1; --k) {
    const bool track = with_cycles && k <= max_k;
    if (k == 1 && !track) {
      UnionFind uf(index.count(0));
      std::size_t r = 0;
      for (std::size_t e = 0; e < index.count(1); ++e) {
        const auto s = index.simplex(1, e);
        if (uf.unite(*index.index_of(s.subspan(0, 1)), *index.index_of(s.subspan(1, 1)))) ++r;
      }
      rank[1] = r;
      break;
    }
    const auto& cleared = killed[static_cast<std::size_t>(k)];
    const std::vector<char>* kill = k <= max_k ? &killed[static_cast<std::size_t>(k)] : nullptr;
    auto red = reduce_boundary(index, k, cleared, kill, track);
    rank[static_cast<std::size_t>(k)] = red.rank;
    killed[static_cast<std::size_t>(k) - 1] = std::move(red.pivot_rows);
    if (track) result.cycle_basis[static_cast<std::size_t>(k)] = std::move(red.essential);
  }
  for (int k = 0; k <= max_k; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const std::size_t n = index.count(k);
    const std::size_t r_in = uk < rank.size() ? rank[uk] : 0;
    const std::size_t r_out = uk + 1 < rank.size() ? rank[uk + 1] : 0;
    result.betti[uk] = n - r_in - r_out;
  }
  if (with_cycles) {
    // One vertex per connected component: the lowest-index one.
    UnionFind uf(index.count(0));
    for (std::size_t e = 0; e < index.count(1); ++e) {
      const auto s = index.simplex(1, e);
      uf.unite(*index.index_of(s.subspan(0, 1)), *index.index_of(s.subspan(1, 1)));
    }
    for (std::uint32_t v = 0; v < index.count(0); ++v) {
      if (uf.find(v) == v) result.cycle_basis[0].push_back({v});
    }
  }
  return result;
}

}  // namespace detail

// Z2 Betti numbers beta_0..beta_max_k via beta_k = n_k - rank d_k - rank d_{k+1},
// with one representative cycle per homology generator when requested.
// Cycles index the k-simplices in lexicographic order (SimplexIndex order).
inline HomologyResult betti_numbers(const SimplicialComplex& complex, int max_k, bool with_cycles = true) {
  const SimplexIndex index(complex);
  return detail::homology_of(index, max_k, with_cycles);
}

inline long long euler_characteristic(const SimplicialComplex& complex) {
  long long chi = 0;
  for (int k = 0; k <= complex.max_dim(); ++k) {
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(complex.count(k));
  }
  return chi;
}

struct InducedMapRank {
  int k = 0;
  std::size_t rank = 0;
  std::size_t domain_betti = 0;
  std::size_t codomain_betti = 0;
};

// Rank of h_*: H_k(K1) -> H_k(K2): push every domain generator forward
// (simplices with repeated image vertices go to zero) and count how many
// stay independent modulo the codomain boundaries B_k(K2).
inline InducedMapRank induced_map_rank(const VertexMap& map, int k) {
  if (!map.verified()) throw ContractError("induced_map_rank requires a verified simplicial map");
  if (k < 0) throw PreconditionError("homology dimension must be non-negative");
  const SimplexIndex dom(map.domain());
  const SimplexIndex cod(map.codomain());
  const auto dom_h = detail::homology_of(dom, k, true);
  const auto cod_h = detail::homology_of(cod, k, false);

  ColumnReducer reducer;
  if (k + 1 <= map.codomain().max_dim()) {
    for (auto& col : cod.boundary_columns(k + 1)) reducer.add(std::move(col));
  }
  const std::size_t boundary_rank = reducer.rank();
  for (const auto& cycle : dom_h.cycle_basis[static_cast<std::size_t>(k)]) {
    Z2Matrix::Column pushed;
    for (auto idx : cycle) {
      const auto img = map.image_of(dom.simplex(k, idx));
      if (static_cast<int>(img.size()) != k + 1) continue;
      pushed.push_back(*cod.index_of(img));
    }
    Z2Matrix col(cod.count(k), 0);
    col.append_column(std::move(pushed));  // cancels pairs
    reducer.add(col.column(0));
  }
  return {k, reducer.rank() - boundary_rank, dom_h.betti[static_cast<std::size_t>(k)],
          cod_h.betti[static_cast<std::size_t>(k)]};
}

using EdgeWeight = std::function<double(Vertex, Vertex)>;

inline EdgeWeight euclidean_weights(const PointCloud& cloud) {
  return [&cloud](Vertex a, Vertex b) { return euclidean_distance(cloud[a], cloud[b]); };
}

struct CycleCandidate {
  double weight = 0.0;
  Chain edges;  // edge indices in SimplexIndex order
};

// Candidate cycles for the shortest non-bounding 1-cycle: for every root v
// and every non-tree edge xy of the shortest-path tree at v, the chain
// path(v,x) + xy + path(y,v). Paths that overlap cancel mod 2. Sorted by
// weight, duplicates removed.
inline std::vector<CycleCandidate> horton_candidates(const SimplexIndex& index, const EdgeWeight& weight) {
  const std::size_t nv = index.count(0);
  const std::size_t ne = index.count(1);
  std::vector<double> w(ne);
  std::vector<std::tuple<Vertex, Vertex, double>> local_edges;
  std::unordered_map<std::uint64_t, std::uint32_t> edge_id;
  auto key = [](std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  };
  for (std::size_t e = 0; e < ne; ++e) {
    const auto s = index.simplex(1, e);
    w[e] = weight(s[0], s[1]);
    if (!(w[e] >= 0.0)) throw PreconditionError("edge weights must be non-negative");
    const auto a = *index.index_of(s.subspan(0, 1));
    const auto b = *index.index_of(s.subspan(1, 1));
    local_edges.emplace_back(a, b, w[e]);
    edge_id[key(a, b)] = static_cast<std::uint32_t>(e);
  }
  const NeighborhoodGraph graph(nv, 0.0, local_edges);
  std::vector<CycleCandidate> out;
  Chain chain;
  for (Vertex root = 0; root < nv; ++root) {
    const auto tree = shortest_path_tree(graph, root);
    auto climb = [&](Vertex u) {
      while (tree.parent[u] != kNoVertex) {
        chain.push_back(edge_id[key(u, tree.parent[u])]);
        u = tree.parent[u];
      }
    };
    for (const auto& [x, y, wxy] : local_edges) {
      if (tree.dist[x] == kInfinity || tree.dist[y] == kInfinity) continue;
      if (tree.parent[y] == x || tree.parent[x] == y) continue;
      chain.clear();
      climb(x);
      climb(y);
      chain.push_back(edge_id[key(x, y)]);
      Z2Matrix col(ne, 0);
      col.append_column(chain);
      CycleCandidate c;
      c.edges = col.column(0);
      if (c.edges.empty()) continue;
      for (auto e : c.edges) c.weight += w[e];
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const CycleCandidate& a, const CycleCandidate& b) {
    return a.weight != b.weight ? a.weight < b.weight : a.edges < b.edges;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const CycleCandidate& a, const CycleCandidate& b) { return a.edges == b.edges; }),
            out.end());
  return out;
}

// Homological loop feature size: half the weight of the lightest 1-cycle
// that is not a boundary; infinity when every 1-cycle bounds.
inline double hlfs_bruteforce(const SimplicialComplex& complex, const EdgeWeight& weight) {
  const SimplexIndex index(complex);
  ColumnReducer boundaries;
  if (complex.max_dim() >= 2) {
    for (auto& col : index.boundary_columns(2)) boundaries.add(std::move(col));
  }
  for (auto& cand : horton_candidates(index, weight)) {
    if (boundaries.reduce(cand.edges)) return 0.5 * cand.weight;
  }
  return kInfinity;
}

enum class SixTermOutcome {
  Holds,         // rank(A->F) = rank(C->D) and rank(B->E) = rank(C->D)
  Violated,      // hypothesis true, conclusion false
  Inapplicable,  // rank(A->F) != rank(C->D)
};

// maps[i] is the matrix of the i-th arrow of A -> B -> C -> D -> E -> F
// (rows = target dimension, columns = source dimension).
inline SixTermOutcome six_term_rank_check(const std::array<Z2Matrix, 5>& maps) {
  for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
    if (maps[i + 1].cols() != maps[i].rows()) {
      throw PreconditionError("maps " + std::to_string(i) + " and " + std::to_string(i + 1) + " are not composable");
    }
  }
  const auto c_to_d = z2_rank(maps[2]);
  const auto b_to_e = z2_rank(maps[3] * maps[2] * maps[1]);
  const auto a_to_f = z2_rank(maps[4] * maps[3] * maps[2] * maps[1] * maps[0]);
  if (a_to_f != c_to_d) return SixTermOutcome::Inapplicable;
  return b_to_e == c_to_d ? SixTermOutcome::Holds : SixTermOutcome::Violated;
}

}  // namespace gic
