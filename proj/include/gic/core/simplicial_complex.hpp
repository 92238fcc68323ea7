#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gic/core/point_cloud.hpp"
#include "gic/core/types.hpp"

namespace gic {

// Simplicial complex stored as a simplex tree: every simplex is a path from
// the root labelled by its sorted vertex ids, so node <-> simplex is a
// bijection. Children are kept sorted by vertex id, which makes depth-first
// traversal lexicographic and deterministic.
class SimplicialComplex {
 public:
  using NodeId = std::uint32_t;
  static constexpr NodeId kRoot = 0;
  static constexpr int kDefaultMaxDim = 3;

  explicit SimplicialComplex(int max_dim = kDefaultMaxDim) : max_dim_(max_dim) {
    if (max_dim < 0) throw PreconditionError("max_dim must be non-negative");
    nodes_.push_back(Node{kNoVertex, kRoot, 0, {}});
    counts_.assign(static_cast<std::size_t>(max_dim) + 1, 0);
  }

  int max_dim() const { return max_dim_; }

  // Highest dimension actually present; -1 for the empty complex.
  int dimension() const {
    for (int k = max_dim_; k >= 0; --k) {
      if (counts_[static_cast<std::size_t>(k)] > 0) return k;
    }
    return -1;
  }

  std::size_t size() const { return nodes_.size() - 1; }
  bool empty() const { return size() == 0; }

  std::size_t count(int dim) const {
    if (dim < 0 || dim > max_dim_) return 0;
    return counts_[static_cast<std::size_t>(dim)];
  }

  // f-vector (n_0, ..., n_max_dim).
  const std::vector<std::size_t>& counts() const { return counts_; }

  // Inserts the simplex and all of its faces. Returns false when the simplex
  // was already present (insertion is idempotent).
  bool insert(std::span<const Vertex> verts) {
    std::vector<Vertex> sorted(verts.begin(), verts.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw PreconditionError("simplex has repeated vertices");
    }
    return insert_sorted(sorted);
  }

  bool insert(std::initializer_list<Vertex> verts) {
    return insert(std::span<const Vertex>(verts.begin(), verts.size()));
  }

  // As insert(), but the caller guarantees sorted, repeat-free input.
  bool insert_sorted(std::span<const Vertex> sorted) {
    if (sorted.empty()) return false;
    if (static_cast<int>(sorted.size()) > max_dim_ + 1) {
      throw DimensionError("simplex of dimension " + std::to_string(sorted.size() - 1) +
                           " exceeds max_dim " + std::to_string(max_dim_));
    }
    if (sorted.size() > 30) throw DimensionError("simplices above dimension 29 are not supported");
    if (find_sorted(sorted)) return false;
    const std::size_t n = sorted.size();
    std::vector<Vertex> face;
    face.reserve(n);
    // Every nonempty subset; each walk creates missing prefixes, which are
    // themselves subsets, so the result is face-closed.
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      face.clear();
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) face.push_back(sorted[i]);
      }
      insert_path(face);
    }
    return true;
  }

  bool contains(std::span<const Vertex> verts) const {
    std::vector<Vertex> sorted(verts.begin(), verts.end());
    std::sort(sorted.begin(), sorted.end());
    return find_sorted(sorted).has_value();
  }

  bool contains(std::initializer_list<Vertex> verts) const {
    return contains(std::span<const Vertex>(verts.begin(), verts.size()));
  }

  std::optional<NodeId> find_sorted(std::span<const Vertex> sorted) const {
    NodeId node = kRoot;
    for (Vertex v : sorted) {
      node = child(node, v);
      if (node == kRoot) return std::nullopt;
    }
    if (node == kRoot) return std::nullopt;
    return node;
  }

  int dim_of(NodeId node) const { return static_cast<int>(nodes_[node].depth) - 1; }

  std::vector<Vertex> vertices_of(NodeId node) const {
    std::vector<Vertex> out(nodes_[node].depth);
    for (std::size_t i = out.size(); i-- > 0;) {
      out[i] = nodes_[node].vertex;
      node = nodes_[node].parent;
    }
    return out;
  }

  // Visits every simplex in lexicographic order as f(span<const Vertex>, NodeId).
  template <class F>
  void for_each_simplex(F&& f) const {
    std::vector<Vertex> path;
    walk(kRoot, path, -1, f);
  }

  // Visits the simplices of one dimension in lexicographic order.
  template <class F>
  void for_each_simplex(int dim, F&& f) const {
    if (dim < 0 || dim > max_dim_) return;
    std::vector<Vertex> path;
    walk(kRoot, path, dim, f);
  }

  std::vector<std::vector<Vertex>> simplices(int dim) const {
    std::vector<std::vector<Vertex>> out;
    out.reserve(count(dim));
    for_each_simplex(dim, [&](std::span<const Vertex> s, NodeId) { out.emplace_back(s.begin(), s.end()); });
    return out;
  }

  std::vector<Vertex> vertex_ids() const {
    std::vector<Vertex> out;
    out.reserve(nodes_[kRoot].children.size());
    for (NodeId c : nodes_[kRoot].children) out.push_back(nodes_[c].vertex);
    return out;
  }

  // Simplices that are not a proper face of any other simplex.
  std::vector<std::vector<Vertex>> maximal_simplices() const {
    std::vector<char> has_coface(nodes_.size(), 0);
    std::vector<Vertex> facet;
    for_each_simplex([&](std::span<const Vertex> s, NodeId) {
      if (s.size() < 2) return;
      for (std::size_t skip = 0; skip < s.size(); ++skip) {
        facet.clear();
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (i != skip) facet.push_back(s[i]);
        }
        if (auto f = find_sorted(facet)) has_coface[*f] = 1;
      }
    });
    std::vector<std::vector<Vertex>> out;
    for_each_simplex([&](std::span<const Vertex> s, NodeId id) {
      if (!has_coface[id]) out.emplace_back(s.begin(), s.end());
    });
    return out;
  }

  // Complex of all simplices satisfying keep(span<const Vertex>). keep should
  // describe a face-closed set; any faces it rejects are re-added by closure.
  template <class Pred>
  SimplicialComplex filtered(Pred&& keep) const {
    SimplicialComplex out(max_dim_);
    for_each_simplex([&](std::span<const Vertex> s, NodeId) {
      if (keep(s)) out.insert_sorted(s);
    });
    return out;
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    if (a.size() != b.size()) return false;
    std::vector<std::vector<Vertex>> sa;
    std::vector<std::vector<Vertex>> sb;
    a.for_each_simplex([&](std::span<const Vertex> s, NodeId) { sa.emplace_back(s.begin(), s.end()); });
    b.for_each_simplex([&](std::span<const Vertex> s, NodeId) { sb.emplace_back(s.begin(), s.end()); });
    return sa == sb;
  }

 private:
  struct Node {
    Vertex vertex;
    NodeId parent;
    std::uint16_t depth;
    std::vector<NodeId> children;
  };

  NodeId child(NodeId node, Vertex v) const {
    const auto& ch = nodes_[node].children;
    auto it = std::lower_bound(ch.begin(), ch.end(), v,
                               [&](NodeId id, Vertex key) { return nodes_[id].vertex < key; });
    if (it != ch.end() && nodes_[*it].vertex == v) return *it;
    return kRoot;
  }

  void insert_path(std::span<const Vertex> sorted) {
    NodeId node = kRoot;
    for (Vertex v : sorted) {
      auto& ch = nodes_[node].children;
      auto it = std::lower_bound(ch.begin(), ch.end(), v,
                                 [&](NodeId id, Vertex key) { return nodes_[id].vertex < key; });
      if (it != ch.end() && nodes_[*it].vertex == v) {
        node = *it;
        continue;
      }
      const auto id = static_cast<NodeId>(nodes_.size());
      const auto depth = static_cast<std::uint16_t>(nodes_[node].depth + 1);
      nodes_[node].children.insert(it, id);
      nodes_.push_back(Node{v, node, depth, {}});
      ++counts_[depth - 1u];
      node = id;
    }
  }

  template <class F>
  void walk(NodeId node, std::vector<Vertex>& path, int dim, F& f) const {
    for (NodeId c : nodes_[node].children) {
      path.push_back(nodes_[c].vertex);
      const int d = static_cast<int>(path.size()) - 1;
      if (dim < 0 || d == dim) f(std::span<const Vertex>(path), c);
      if (dim < 0 || d < dim) walk(c, path, dim, f);
      path.pop_back();
    }
  }

  int max_dim_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> counts_;
};

// Complex file: one simplex per line, space-separated sorted vertex ids.
// Only maximal simplices are written; closure is rebuilt on read.
inline void write_complex(std::ostream& out, const SimplicialComplex& complex) {
  for (const auto& s : complex.maximal_simplices()) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << '\n';
  }
}

// max_dim defaults to the larger of the library default and the widest line.
inline SimplicialComplex parse_complex(std::istream& in, std::optional<int> max_dim = std::nullopt) {
  std::vector<std::vector<Vertex>> rows;
  std::string line;
  std::size_t line_no = 0;
  int widest = -1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::vector<Vertex> row;
    for (auto token : detail::split_fields(body)) {
      unsigned long long v = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc{} || ptr != token.data() + token.size() || v >= kNoVertex) {
        throw FormatError("line " + std::to_string(line_no) + ": bad vertex id '" + std::string(token) + "'");
      }
      row.push_back(static_cast<Vertex>(v));
    }
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end()) {
      throw FormatError("line " + std::to_string(line_no) + ": repeated vertex id");
    }
    widest = std::max(widest, static_cast<int>(row.size()) - 1);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw EmptyInputError("complex input contains no simplices");
  SimplicialComplex complex(max_dim.value_or(std::max(SimplicialComplex::kDefaultMaxDim, widest)));
  for (const auto& row : rows) complex.insert_sorted(row);
  return complex;
}

inline SimplicialComplex load_complex(const std::string& path, std::optional<int> max_dim = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open complex file '" + path + "'");
  return parse_complex(in, max_dim);
}

}  // namespace gic
