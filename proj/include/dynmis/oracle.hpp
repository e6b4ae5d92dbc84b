#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynmis/dynamic_graph.hpp"
#include "dynmis/static_graph.hpp"
#include "dynmis/types.hpp"

// Brute-force reference implementations. Deliberately independent of the
// solver: bitmask state, no reductions, no bounds.
namespace dynmis::oracle {

inline constexpr std::size_t max_vertices = 30;

template <vertex_weight W>
struct mwis_result {
  std::vector<vertex_id> set;
  W weight{0};
};

namespace detail {

template <vertex_weight W>
class exhaustive {
 public:
  exhaustive(std::vector<std::uint64_t> adjacency, std::vector<W> weights)
      : adj_(std::move(adjacency)), w_(std::move(weights)) {}

  mwis_result<W> run() {
    const std::uint64_t all = adj_.empty() ? 0 : (~std::uint64_t{0} >> (64 - adj_.size()));
    recurse(all, 0, W{0});
    mwis_result<W> out;
    for (std::size_t v = 0; v < adj_.size(); ++v)
      if (best_mask_ >> v & 1) out.set.push_back(static_cast<vertex_id>(v));
    out.weight = best_weight_;
    return out;
  }

 private:
  // Lexicographic order on the sorted member lists of two sets.
  static bool lex_less(std::uint64_t a, std::uint64_t b) {
    while (a != 0 && b != 0) {
      const int x = std::countr_zero(a);
      const int y = std::countr_zero(b);
      if (x != y) return x < y;
      a &= a - 1;
      b &= b - 1;
    }
    return a == 0 && b != 0;
  }

  void offer(std::uint64_t chosen, W weight) {
    if (!found_ || weight > best_weight_ || (weight == best_weight_ && lex_less(chosen, best_mask_))) {
      found_ = true;
      best_mask_ = chosen;
      best_weight_ = weight;
    }
  }

  // Branches on the vertex of highest degree inside `left`. Once no edges
  // are left, positive-weight vertices are always taken and zero-weight ones
  // are branched on so the lexicographic tie-break stays exact.
  void recurse(std::uint64_t left, std::uint64_t chosen, W weight) {
    int pick = -1;
    int best_degree = -1;
    for (std::uint64_t rest = left; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const int d = std::popcount(adj_[v] & left);
      if (d > best_degree) {
        best_degree = d;
        pick = v;
      }
    }
    if (pick < 0) {
      offer(chosen, weight);
      return;
    }
    if (best_degree == 0) {
      std::uint64_t zero = 0;
      for (std::uint64_t rest = left; rest != 0; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        if (w_[v] > W{0}) {
          chosen |= std::uint64_t{1} << v;
          weight += w_[v];
        } else {
          zero |= std::uint64_t{1} << v;
        }
      }
      // Every subset of the zero-weight vertices has the same weight.
      for (std::uint64_t sub = zero;; sub = (sub - 1) & zero) {
        offer(chosen | sub, weight);
        if (sub == 0) break;
      }
      return;
    }
    const std::uint64_t bit = std::uint64_t{1} << pick;
    recurse(left & ~bit & ~adj_[pick], chosen | bit, weight + w_[pick]);
    recurse(left & ~bit, chosen, weight);
  }

  std::vector<std::uint64_t> adj_;
  std::vector<W> w_;
  std::uint64_t best_mask_ = 0;
  W best_weight_{0};
  bool found_ = false;
};

}  // namespace detail

// Maximum weight independent set by exhaustive branching. Ties are broken
// towards the lexicographically smallest sorted member list.
template <vertex_weight W>
mwis_result<W> brute_force_mwis(const basic_static_graph<W>& g) {
  if (g.num_vertices() > max_vertices) {
    throw std::invalid_argument("brute force limited to " + std::to_string(max_vertices) + " vertices, got " +
                                std::to_string(g.num_vertices()));
  }
  std::vector<std::uint64_t> adj(g.num_vertices(), 0);
  std::vector<W> w(g.num_vertices());
  for (vertex_id v = 0; v < g.num_vertices(); ++v) {
    w[v] = g.weight(v);
    for (vertex_id u : g.neighbors(v))
      if (u != v) adj[v] |= std::uint64_t{1} << u;
  }
  return detail::exhaustive<W>(std::move(adj), std::move(w)).run();
}

template <vertex_weight W>
mwis_result<W> brute_force_mwis(const basic_dynamic_graph<W>& g) {
  return brute_force_mwis(basic_static_graph<W>::from_dynamic(g));
}

template <class Graph>
bool verify_independent(const Graph& g, std::span<const vertex_id> set) {
  std::vector<std::uint8_t> in(g.num_vertices(), 0);
  for (vertex_id v : set) {
    if (v >= g.num_vertices()) return false;
    in[v] = 1;
  }
  for (vertex_id v : set)
    for (vertex_id u : g.neighbors(v))
      if (in[u]) return false;
  return true;
}

template <class Graph>
bool verify_maximal(const Graph& g, std::span<const vertex_id> set) {
  if (!verify_independent(g, set)) return false;
  std::vector<std::uint8_t> in(g.num_vertices(), 0);
  for (vertex_id v : set) in[v] = 1;
  for (vertex_id v = 0; v < g.num_vertices(); ++v) {
    if (in[v]) continue;
    bool blocked = false;
    for (vertex_id u : g.neighbors(v)) blocked = blocked || in[u];
    if (!blocked) return false;
  }
  return true;
}

}  // namespace dynmis::oracle
