#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "dynmis/types.hpp"

namespace dynmis {

// Undirected simple graph with a fixed vertex set and non-negative vertex
// weights. Edges can be inserted and deleted; each vertex keeps a hashed
// neighbor set, so membership tests are O(1) expected and neighborhood scans
// are O(deg). Iteration order over a neighborhood is unspecified.
template <vertex_weight W>
class basic_dynamic_graph {
 public:
  using weight_type = W;
  using neighbor_set = std::unordered_set<vertex_id>;

  basic_dynamic_graph() = default;

  basic_dynamic_graph(std::size_t n, std::vector<W> weights)
      : weights_(std::move(weights)), adjacency_(n) {
    if (weights_.size() != n) {
      throw std::invalid_argument("weight vector has " + std::to_string(weights_.size()) +
                                  " entries, expected " + std::to_string(n));
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (!(weights_[v] >= W{0})) {
        throw std::invalid_argument("negative weight on vertex " + std::to_string(v));
      }
    }
  }

  // Unit weights.
  explicit basic_dynamic_graph(std::size_t n) : basic_dynamic_graph(n, std::vector<W>(n, W{1})) {}

  std::size_t num_vertices() const { return adjacency_.size(); }
  std::size_t num_edges() const { return edges_; }

  // Returns false for self-loops and already present edges.
  bool insert_edge(vertex_id u, vertex_id v) {
    check(u);
    check(v);
    if (u == v) return false;
    if (!adjacency_[u].insert(v).second) return false;
    adjacency_[v].insert(u);
    ++edges_;
    return true;
  }

  bool delete_edge(vertex_id u, vertex_id v) {
    check(u);
    check(v);
    if (u == v || adjacency_[u].erase(v) == 0) return false;
    adjacency_[v].erase(u);
    --edges_;
    return true;
  }

  bool has_edge(vertex_id u, vertex_id v) const {
    check(u);
    check(v);
    return adjacency_[u].contains(v);
  }

  std::size_t degree(vertex_id u) const {
    check(u);
    return adjacency_[u].size();
  }

  const neighbor_set& neighbors(vertex_id u) const {
    check(u);
    return adjacency_[u];
  }

  // Neighborhood as a sorted list.
  std::vector<vertex_id> sorted_neighbors(vertex_id u) const {
    const auto& set = neighbors(u);
    std::vector<vertex_id> out(set.begin(), set.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  W weight(vertex_id u) const {
    check(u);
    return weights_[u];
  }

  void set_weight(vertex_id u, W w) {
    check(u);
    if (!(w >= W{0})) throw std::invalid_argument("negative weight on vertex " + std::to_string(u));
    weights_[u] = w;
  }

  std::span<const W> weights() const { return weights_; }

  // w(N(u))
  W neighborhood_weight(vertex_id u) const {
    W sum{0};
    for (vertex_id x : neighbors(u)) sum += weights_[x];
    return sum;
  }

  bool contains(vertex_id u) const { return u < adjacency_.size(); }

 private:
  void check(vertex_id u) const {
    if (u >= adjacency_.size()) {
      throw std::out_of_range("vertex " + std::to_string(u) + " out of range (n = " +
                              std::to_string(adjacency_.size()) + ")");
    }
  }

  std::vector<W> weights_;
  std::vector<neighbor_set> adjacency_;
  std::size_t edges_ = 0;
};

using dynamic_graph = basic_dynamic_graph<std::int64_t>;

}  // namespace dynmis
