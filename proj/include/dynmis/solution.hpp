#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynmis/dynamic_graph.hpp"
#include "dynmis/types.hpp"

namespace dynmis {

// An independent set I of a basic_dynamic_graph together with, for every
// vertex, the number of its neighbors in I. With these counts an addability
// test is O(1) and toggling membership of u costs O(deg(u)).
//
// The graph is passed to every mutating call rather than stored, but a
// solution is only meaningful for the graph it was built on. Edge updates
// must be reported through on_edge_inserted / on_edge_deleted so the counts
// stay consistent.
template <vertex_weight W>
class basic_solution {
 public:
  using weight_type = W;

  basic_solution() = default;

  // Empty set on g.
  explicit basic_solution(const basic_dynamic_graph<W>& g)
      : in_set_(g.num_vertices(), 0), tight_(g.num_vertices(), 0) {}

  // Every vertex. Only valid (and the unique maximal set) when g has no edges.
  static basic_solution all_vertices(const basic_dynamic_graph<W>& g) {
    if (g.num_edges() != 0) throw std::invalid_argument("all_vertices needs an edgeless graph");
    basic_solution s(g);
    for (vertex_id v = 0; v < g.num_vertices(); ++v) s.add_vertex(g, v);
    return s;
  }

  // Greedy maximal set: scans vertices in ascending id order.
  static basic_solution greedy_maximal(const basic_dynamic_graph<W>& g) {
    basic_solution s(g);
    for (vertex_id v = 0; v < g.num_vertices(); ++v)
      if (s.can_be_independent(v)) s.add_vertex(g, v);
    return s;
  }

  std::size_t num_vertices() const { return in_set_.size(); }
  bool contains(vertex_id u) const { return in_set_.at(u) != 0; }
  std::uint32_t tight_count(vertex_id u) const { return tight_.at(u); }
  W total_weight() const { return weight_; }
  std::size_t cardinality() const { return cardinality_; }

  bool can_be_independent(vertex_id u) const { return in_set_.at(u) == 0 && tight_[u] == 0; }

  void add_vertex(const basic_dynamic_graph<W>& g, vertex_id u) {
    if (!can_be_independent(u)) {
      throw std::logic_error("cannot add vertex " + std::to_string(u) +
                             (in_set_[u] ? ": already in the set" : ": has a neighbor in the set"));
    }
    in_set_[u] = 1;
    for (vertex_id x : g.neighbors(u)) ++tight_[x];
    weight_ += g.weight(u);
    ++cardinality_;
  }

  void remove_vertex(const basic_dynamic_graph<W>& g, vertex_id u) {
    if (!contains(u)) throw std::logic_error("vertex " + std::to_string(u) + " is not in the set");
    in_set_[u] = 0;
    for (vertex_id x : g.neighbors(u)) --tight_[x];
    weight_ -= g.weight(u);
    --cardinality_;
  }

  // Must be called right after the edge {u,v} was inserted into g. If both
  // endpoints are in the set the solution is temporarily not independent;
  // the caller resolves the conflict by removing one of them.
  void on_edge_inserted(vertex_id u, vertex_id v) {
    if (in_set_.at(u)) ++tight_.at(v);
    if (in_set_.at(v)) ++tight_.at(u);
  }

  // Must be called right after the edge {u,v} was removed from g.
  void on_edge_deleted(vertex_id u, vertex_id v) {
    if (in_set_.at(u)) --tight_.at(v);
    if (in_set_.at(v)) --tight_.at(u);
  }

  // Must be called after g.set_weight(u, new_weight) with the previous weight.
  void on_weight_changed(vertex_id u, W old_weight, W new_weight) {
    if (contains(u)) weight_ = weight_ - old_weight + new_weight;
  }

  // I <- (I \ region) U replacement. The replacement has to be a subset of
  // the region, independent in G, and free of conflicts with I outside the
  // region. Everything is validated before the first change is made.
  void replace_region(const basic_dynamic_graph<W>& g, std::span<const vertex_id> region,
                      std::span<const vertex_id> replacement) {
    std::vector<vertex_id> in_region(region.begin(), region.end());
    std::sort(in_region.begin(), in_region.end());
    auto member = [&](vertex_id v) { return std::binary_search(in_region.begin(), in_region.end(), v); };

    std::vector<vertex_id> incoming(replacement.begin(), replacement.end());
    std::sort(incoming.begin(), incoming.end());
    incoming.erase(std::unique(incoming.begin(), incoming.end()), incoming.end());
    auto chosen = [&](vertex_id v) { return std::binary_search(incoming.begin(), incoming.end(), v); };

    for (vertex_id v : incoming) {
      if (!member(v)) throw std::invalid_argument("replacement vertex " + std::to_string(v) + " not in region");
      for (vertex_id x : g.neighbors(v)) {
        if (chosen(x)) throw std::invalid_argument("replacement is not independent");
        if (!member(x) && contains(x)) {
          throw std::logic_error("replacement vertex " + std::to_string(v) +
                                 " conflicts with solution vertex " + std::to_string(x) + " outside the region");
        }
      }
    }
    for (vertex_id v : in_region)
      if (contains(v) && !chosen(v)) remove_vertex(g, v);
    for (vertex_id v : incoming)
      if (!contains(v)) add_vertex(g, v);
  }

  std::vector<vertex_id> members() const {
    std::vector<vertex_id> out;
    out.reserve(cardinality_);
    for (vertex_id v = 0; v < in_set_.size(); ++v)
      if (in_set_[v]) out.push_back(v);
    return out;
  }

  // Full recount against g. Returns an empty string when every cached value
  // matches, otherwise a description of the first mismatch.
  std::string audit(const basic_dynamic_graph<W>& g) const {
    if (in_set_.size() != g.num_vertices()) return "vertex count mismatch";
    W weight{0};
    std::size_t card = 0;
    for (vertex_id v = 0; v < g.num_vertices(); ++v) {
      std::uint32_t count = 0;
      for (vertex_id x : g.neighbors(v)) count += in_set_[x] ? 1 : 0;
      if (count != tight_[v]) {
        return "tight count of " + std::to_string(v) + " is " + std::to_string(tight_[v]) + ", recount " +
               std::to_string(count);
      }
      if (in_set_[v]) {
        if (count != 0) return "vertices " + std::to_string(v) + " and a neighbor are both in the set";
        weight += g.weight(v);
        ++card;
      }
    }
    if (card != cardinality_) return "cardinality cache mismatch";
    if (weight != weight_) return "weight cache mismatch";
    return {};
  }

  // I is maximal iff no vertex is addable.
  bool is_maximal() const {
    for (vertex_id v = 0; v < in_set_.size(); ++v)
      if (can_be_independent(v)) return false;
    return true;
  }

  friend bool operator==(const basic_solution&, const basic_solution&) = default;

 private:
  std::vector<std::uint8_t> in_set_;
  std::vector<std::uint32_t> tight_;
  W weight_{0};
  std::size_t cardinality_ = 0;
};

using solution = basic_solution<std::int64_t>;

}  // namespace dynmis
