#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dynmis/dynamic_graph.hpp"
#include "dynmis/types.hpp"

namespace dynmis {

// Immutable weighted graph stored as adjacency lists. Used for extracted
// subproblems, parsed input files and the brute-force oracle. Neighbor lists
// keep insertion order; from_edges() and induced_subgraph() sort them.
template <vertex_weight W>
class basic_static_graph {
 public:
  using weight_type = W;

  basic_static_graph() = default;

  basic_static_graph(std::vector<W> weights, std::vector<std::vector<vertex_id>> adjacency)
      : weights_(std::move(weights)), adjacency_(std::move(adjacency)) {
    if (weights_.size() != adjacency_.size()) {
      throw std::invalid_argument("weights and adjacency differ in size");
    }
    for (std::size_t v = 0; v < adjacency_.size(); ++v) {
      if (!(weights_[v] >= W{0})) throw std::invalid_argument("negative weight on vertex " + std::to_string(v));
      for (vertex_id u : adjacency_[v]) {
        if (u >= adjacency_.size()) throw std::out_of_range("neighbor id out of range");
      }
      edge_ends_ += adjacency_[v].size();
    }
  }

  // Builds a simple graph; self-loops and duplicate edges are dropped.
  static basic_static_graph from_edges(std::vector<W> weights,
                                       std::span<const std::pair<vertex_id, vertex_id>> edges) {
    std::vector<std::vector<vertex_id>> adj(weights.size());
    for (auto [u, v] : edges) {
      if (u >= adj.size() || v >= adj.size()) throw std::out_of_range("edge endpoint out of range");
      if (u == v) continue;
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (auto& list : adj) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return basic_static_graph(std::move(weights), std::move(adj));
  }

  static basic_static_graph from_dynamic(const basic_dynamic_graph<W>& g) {
    std::vector<std::vector<vertex_id>> adj(g.num_vertices());
    for (vertex_id v = 0; v < g.num_vertices(); ++v) adj[v] = g.sorted_neighbors(v);
    return basic_static_graph(std::vector<W>(g.weights().begin(), g.weights().end()), std::move(adj));
  }

  std::size_t num_vertices() const { return adjacency_.size(); }
  std::size_t num_edges() const { return edge_ends_ / 2; }
  std::size_t degree(vertex_id v) const { return adjacency_[v].size(); }
  std::span<const vertex_id> neighbors(vertex_id v) const { return adjacency_[v]; }
  W weight(vertex_id v) const { return weights_[v]; }
  std::span<const W> weights() const { return weights_; }

  W total_weight() const {
    W sum{0};
    for (W w : weights_) sum += w;
    return sum;
  }

  W weight_of(std::span<const vertex_id> set) const {
    W sum{0};
    for (vertex_id v : set) sum += weights_[v];
    return sum;
  }

  bool has_edge(vertex_id u, vertex_id v) const {
    const auto& list = adjacency_[u];
    return std::find(list.begin(), list.end(), v) != list.end();
  }

  basic_dynamic_graph<W> to_dynamic() const {
    basic_dynamic_graph<W> g(num_vertices(), weights_);
    for (vertex_id v = 0; v < num_vertices(); ++v)
      for (vertex_id u : adjacency_[v]) g.insert_edge(v, u);
    return g;
  }

 private:
  std::vector<W> weights_;
  std::vector<std::vector<vertex_id>> adjacency_;
  std::size_t edge_ends_ = 0;
};

using static_graph = basic_static_graph<std::int64_t>;

}  // namespace dynmis
