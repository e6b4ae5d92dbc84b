#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "dynmis/dynamic_graph.hpp"
#include "dynmis/solution.hpp"
#include "dynmis/types.hpp"

namespace dynmis {

enum class greedy_variant { deg_greedy, greedy };

struct greedy_outcome {
  std::optional<vertex_id> removed;
  std::vector<vertex_id> added;
  bool added_any = false;
};

// w(v) / w(N(v)), +inf when the neighborhood weighs nothing.
template <vertex_weight W>
double phi(const basic_dynamic_graph<W>& g, vertex_id v) {
  const W denom = g.neighborhood_weight(v);
  if (denom == W{0}) return std::numeric_limits<double>::infinity();
  return static_cast<double>(g.weight(v)) / static_cast<double>(denom);
}

namespace detail {

__extension__ typedef __int128 int128;

template <vertex_weight W>
using wide_t = std::conditional_t<std::is_integral_v<W>, int128, long double>;

// Three-way comparison of phi(u) and phi(v) by cross multiplication:
// negative if phi(u) < phi(v), zero on a tie.
template <vertex_weight W>
int compare_phi(const basic_dynamic_graph<W>& g, vertex_id u, vertex_id v) {
  using wide = wide_t<W>;
  const W nu = g.neighborhood_weight(u);
  const W nv = g.neighborhood_weight(v);
  const bool inf_u = nu == W{0};
  const bool inf_v = nv == W{0};
  if (inf_u || inf_v) return static_cast<int>(inf_u) - static_cast<int>(inf_v);
  const wide lhs = static_cast<wide>(g.weight(u)) * static_cast<wide>(nv);
  const wide rhs = static_cast<wide>(g.weight(v)) * static_cast<wide>(nu);
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

template <vertex_weight W>
void readd_neighbors(const basic_dynamic_graph<W>& g, basic_solution<W>& sol, vertex_id removed,
                     greedy_outcome& out) {
  for (vertex_id x : g.sorted_neighbors(removed)) {
    if (sol.can_be_independent(x)) {
      sol.add_vertex(g, x);
      out.added.push_back(x);
    }
  }
}

template <vertex_weight W>
void try_add(const basic_dynamic_graph<W>& g, basic_solution<W>& sol, vertex_id x, greedy_outcome& out) {
  if (sol.can_be_independent(x)) {
    sol.add_vertex(g, x);
    out.added.push_back(x);
  }
}

}  // namespace detail

// Graph mutation plus tight-count bookkeeping. Returns false (and changes
// nothing) for self-loops, duplicate insertions and missing deletions.
template <vertex_weight W>
bool insert_edge(basic_dynamic_graph<W>& g, basic_solution<W>& sol, vertex_id u, vertex_id v) {
  if (!g.insert_edge(u, v)) return false;
  sol.on_edge_inserted(u, v);
  return true;
}

template <vertex_weight W>
bool delete_edge(basic_dynamic_graph<W>& g, basic_solution<W>& sol, vertex_id u, vertex_id v) {
  if (!g.delete_edge(u, v)) return false;
  sol.on_edge_deleted(u, v);
  return true;
}

// Repairs the solution after {u,v} was inserted into g (and reported via
// sol.on_edge_inserted). On a conflict the endpoint chosen by the variant is
// removed and its neighbors are re-added where possible, in ascending id
// order. DegGreedy removes the endpoint with the smaller w(x)/w(N(x)); Greedy
// removes the lighter endpoint. Ties are broken with rng.
template <vertex_weight W>
greedy_outcome greedy_repair_insertion(const basic_dynamic_graph<W>& g, basic_solution<W>& sol, vertex_id u,
                                       vertex_id v, greedy_variant variant, splitmix64& rng) {
  greedy_outcome out;
  if (!sol.contains(u) || !sol.contains(v)) return out;

  int cmp;
  if (variant == greedy_variant::deg_greedy) {
    cmp = detail::compare_phi(g, u, v);
  } else {
    cmp = g.weight(u) < g.weight(v) ? -1 : (g.weight(v) < g.weight(u) ? 1 : 0);
  }
  vertex_id victim = cmp < 0 ? u : v;
  if (cmp == 0) victim = rng.coin() ? u : v;

  sol.remove_vertex(g, victim);
  out.removed = victim;
  detail::readd_neighbors(g, sol, victim, out);
  out.added_any = !out.added.empty();
  return out;
}

// Repairs the solution after {u,v} was deleted from g (and reported via
// sol.on_edge_deleted): each endpoint outside the set joins it if it can.
template <vertex_weight W>
greedy_outcome greedy_repair_deletion(const basic_dynamic_graph<W>& g, basic_solution<W>& sol, vertex_id u,
                                      vertex_id v) {
  greedy_outcome out;
  detail::try_add(g, sol, u, out);
  detail::try_add(g, sol, v, out);
  out.added_any = !out.added.empty();
  return out;
}

template <vertex_weight W>
greedy_outcome deg_greedy_insert(const basic_dynamic_graph<W>& g, basic_solution<W>& sol, vertex_id u, vertex_id v,
                                 splitmix64& rng) {
  return greedy_repair_insertion(g, sol, u, v, greedy_variant::deg_greedy, rng);
}

template <vertex_weight W>
greedy_outcome greedy_insert(const basic_dynamic_graph<W>& g, basic_solution<W>& sol, vertex_id u, vertex_id v,
                             splitmix64& rng) {
  return greedy_repair_insertion(g, sol, u, v, greedy_variant::greedy, rng);
}

template <vertex_weight W>
greedy_outcome deg_greedy_delete(const basic_dynamic_graph<W>& g, basic_solution<W>& sol, vertex_id u,
                                 vertex_id v) {
  return greedy_repair_deletion(g, sol, u, v);
}

template <vertex_weight W>
greedy_outcome greedy_delete(const basic_dynamic_graph<W>& g, basic_solution<W>& sol, vertex_id u, vertex_id v) {
  return greedy_repair_deletion(g, sol, u, v);
}

}  // namespace dynmis
