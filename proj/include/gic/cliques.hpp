#pragma once

#include <algorithm>
#include <iterator>
#include <vector>

#include "gic/core/types.hpp"

namespace gic {

// Undirected graph as sorted, symmetric neighbor lists.
using Adjacency = std::vector<std::vector<Vertex>>;

namespace detail {

template <class F>
void extend_cliques(const Adjacency& adj, std::vector<Vertex>& clique, const std::vector<Vertex>& candidates,
                    std::size_t max_size, F& f) {
  f(static_cast<const std::vector<Vertex>&>(clique));
  if (clique.size() >= max_size) return;
  std::vector<Vertex> next;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Vertex w = candidates[i];
    next.clear();
    const auto& nw = adj[w];
    std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1, candidates.end(), nw.begin(),
                          nw.end(), std::back_inserter(next));
    clique.push_back(w);
    extend_cliques(adj, clique, next, max_size, f);
    clique.pop_back();
  }
}

template <class F>
void bron_kerbosch(const Adjacency& adj, std::vector<Vertex>& r, std::vector<Vertex> p, std::vector<Vertex> x, F& f) {
  if (p.empty()) {
    if (x.empty()) f(static_cast<const std::vector<Vertex>&>(r));
    return;
  }
  // Tomita pivot: the vertex of P u X with the most neighbors in P.
  Vertex pivot = p.front();
  std::size_t best = 0;
  std::vector<Vertex> scratch;
  for (const auto* set : {&p, &x}) {
    for (Vertex u : *set) {
      scratch.clear();
      std::set_intersection(p.begin(), p.end(), adj[u].begin(), adj[u].end(), std::back_inserter(scratch));
      if (scratch.size() > best) {
        best = scratch.size();
        pivot = u;
      }
    }
  }
  std::vector<Vertex> branch;
  std::set_difference(p.begin(), p.end(), adj[pivot].begin(), adj[pivot].end(), std::back_inserter(branch));
  for (Vertex v : branch) {
    std::vector<Vertex> np;
    std::vector<Vertex> nx;
    std::set_intersection(p.begin(), p.end(), adj[v].begin(), adj[v].end(), std::back_inserter(np));
    std::set_intersection(x.begin(), x.end(), adj[v].begin(), adj[v].end(), std::back_inserter(nx));
    r.push_back(v);
    bron_kerbosch(adj, r, std::move(np), std::move(nx), f);
    r.pop_back();
    p.erase(std::lower_bound(p.begin(), p.end(), v));
    x.insert(std::lower_bound(x.begin(), x.end(), v), v);
  }
}

}  // namespace detail

// Every clique with at most max_size vertices, each exactly once, as a sorted
// vertex list (ordered extension over higher-numbered neighbors).
template <class F>
void for_each_clique(const Adjacency& adj, std::size_t max_size, F&& f) {
  if (max_size == 0) return;
  std::vector<Vertex> clique;
  std::vector<Vertex> candidates;
  for (Vertex v = 0; v < adj.size(); ++v) {
    const auto& nv = adj[v];
    candidates.assign(std::upper_bound(nv.begin(), nv.end(), v), nv.end());
    clique.assign(1, v);
    detail::extend_cliques(adj, clique, candidates, max_size, f);
  }
}

// Every maximal clique exactly once (Bron-Kerbosch with pivoting, outer loop
// over vertices in index order). Vertex order inside a reported clique is the
// recursion order, not sorted.
template <class F>
void for_each_maximal_clique(const Adjacency& adj, F&& f) {
  std::vector<Vertex> r;
  for (Vertex v = 0; v < adj.size(); ++v) {
    const auto& nv = adj[v];
    const auto split = std::upper_bound(nv.begin(), nv.end(), v);
    std::vector<Vertex> p(split, nv.end());
    std::vector<Vertex> x(nv.begin(), std::lower_bound(nv.begin(), nv.end(), v));
    r.assign(1, v);
    detail::bron_kerbosch(adj, r, std::move(p), std::move(x), f);
  }
}

}  // namespace gic
