#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dynmis/dynamic_graph.hpp"
#include "dynmis/solution.hpp"
#include "dynmis/static_graph.hpp"
#include "dynmis/types.hpp"

namespace dynmis {

struct exploration_params {
  std::size_t depth = 10;         // BFS depth d
  std::size_t max_size = 2500;    // cap on |H'| (nu_max)
  double pinch_factor = 1.25;     // delta
  bool pinch = true;
  bool tight_completion = true;
};

// A vertex set H' of G whose outside neighborhood holds no solution vertex,
// the induced subgraph G[H'] relabelled to 0..|H'|-1 (in ascending global id
// order), and the current solution restricted to it.
template <vertex_weight W>
struct basic_subproblem {
  std::vector<vertex_id> vertices;  // global ids, ascending; index = local id
  basic_static_graph<W> local_graph;
  std::vector<vertex_id> incumbent;  // local ids of I n H'
  W incumbent_weight{0};

  std::size_t size() const { return vertices.size(); }
  vertex_id to_global(vertex_id local) const { return vertices.at(local); }

  std::optional<vertex_id> to_local(vertex_id global) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), global);
    if (it == vertices.end() || *it != global) return std::nullopt;
    return static_cast<vertex_id>(it - vertices.begin());
  }

  std::vector<vertex_id> to_global(std::span<const vertex_id> local) const {
    std::vector<vertex_id> out;
    out.reserve(local.size());
    for (vertex_id v : local) out.push_back(vertices.at(v));
    return out;
  }
};

using subproblem = basic_subproblem<std::int64_t>;

namespace detail {

// Removes from `region` every non-solution vertex whose degree inside the
// region exceeds factor times the largest in-region degree of a solution
// vertex. When that largest degree is zero there is no degree signal and the
// region is returned unchanged.
template <vertex_weight W, class Member>
std::vector<vertex_id> pinch_region(const basic_dynamic_graph<W>& g, const basic_solution<W>& sol,
                                    std::span<const vertex_id> region, double factor, Member&& is_member) {
  std::vector<std::size_t> inner_degree(region.size(), 0);
  std::size_t max_solution_degree = 0;
  for (std::size_t i = 0; i < region.size(); ++i) {
    for (vertex_id x : g.neighbors(region[i]))
      if (is_member(x)) ++inner_degree[i];
    if (sol.contains(region[i])) max_solution_degree = std::max(max_solution_degree, inner_degree[i]);
  }
  std::vector<vertex_id> kept;
  kept.reserve(region.size());
  const double threshold = factor * static_cast<double>(max_solution_degree);
  for (std::size_t i = 0; i < region.size(); ++i) {
    const bool drop = max_solution_degree > 0 && !sol.contains(region[i]) &&
                      static_cast<double>(inner_degree[i]) > threshold;
    if (!drop) kept.push_back(region[i]);
  }
  return kept;
}

}  // namespace detail

// Pinching on an explicit vertex set. Returns the kept vertices, sorted.
template <vertex_weight W>
std::vector<vertex_id> pinch(const basic_dynamic_graph<W>& g, const basic_solution<W>& sol,
                             std::span<const vertex_id> region, double factor) {
  if (!(factor > 1.0)) throw std::invalid_argument("pinch factor must be > 1");
  std::vector<vertex_id> sorted(region.begin(), region.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return detail::pinch_region(g, sol, std::span<const vertex_id>(sorted), factor, [&](vertex_id x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
  });
}

// Builds subproblems around update locations. Holds O(n) scratch space that
// is reused between calls, so one explorer should live as long as the graph.
template <vertex_weight W>
class basic_neighborhood_explorer {
 public:
  // Returns nullopt when there is nothing to optimize: the region is empty or
  // consists of solution vertices only.
  std::optional<basic_subproblem<W>> build(const basic_dynamic_graph<W>& g, const basic_solution<W>& sol,
                                           std::span<const vertex_id> seeds, const exploration_params& params) {
    if (seeds.empty()) throw std::invalid_argument("no seed vertices");
    for (vertex_id s : seeds)
      if (!g.contains(s)) throw std::out_of_range("seed vertex out of range");
    if (params.max_size < 1) throw std::invalid_argument("max_size must be >= 1");
    if (params.pinch && !(params.pinch_factor > 1.0)) throw std::invalid_argument("pinch factor must be > 1");
    if (state_.size() < g.num_vertices()) {
      state_.assign(g.num_vertices(), kNone);
      queued_.assign(g.num_vertices(), 0);
    }

    core_.clear();
    ext_count_ = 0;

    // Level-synchronous BFS. Seeds form level 0 (in the given order), every
    // later level is admitted in ascending vertex id order.
    std::vector<vertex_id> frontier;
    for (vertex_id s : seeds) {
      if (state_[s] == kCore) continue;
      if (admit(g, sol, s, params.max_size)) frontier.push_back(s);
      else mark(s, kRejected);
    }
    std::vector<vertex_id> candidates;
    for (std::size_t level = 1; level <= params.depth && !frontier.empty(); ++level) {
      candidates.clear();
      for (vertex_id x : frontier) {
        for (vertex_id y : g.neighbors(x)) {
          if (queued_[y] || state_[y] == kCore || state_[y] == kRejected) continue;
          queued_[y] = 1;
          candidates.push_back(y);
          touched_.push_back(y);
        }
      }
      std::sort(candidates.begin(), candidates.end());
      frontier.clear();
      for (vertex_id y : candidates) {
        queued_[y] = 0;
        if (admit(g, sol, y, params.max_size)) frontier.push_back(y);
        else mark(y, kRejected);
      }
    }

    if (params.pinch) {
      std::sort(core_.begin(), core_.end());
      auto kept = detail::pinch_region(g, sol, std::span<const vertex_id>(core_), params.pinch_factor,
                                       [&](vertex_id x) { return state_[x] == kCore; });
      if (kept.size() != core_.size()) {
        for (vertex_id v : core_) state_[v] = kRejected;
        for (vertex_id v : kept) state_[v] = kCore;
        core_ = std::move(kept);
      }
    }

    // H' = H u (N(H) n I). Recomputed from scratch since pinching may have
    // orphaned part of the bookkeeping.
    std::vector<vertex_id> region;
    region.reserve(params.max_size);
    for (vertex_id v : core_) region.push_back(v);
    for (vertex_id v : touched_)
      if (state_[v] == kExtension) state_[v] = kRejected;
    for (vertex_id v : core_) {
      if (sol.contains(v)) continue;
      for (vertex_id x : g.neighbors(v)) {
        if (sol.contains(x) && state_[x] != kCore && state_[x] != kExtension) {
          mark(x, kExtension);
          region.push_back(x);
        }
      }
    }

    if (params.tight_completion && region.size() < params.max_size) {
      // Non-solution vertices just outside H' whose solution neighbors all lie
      // in H'. Without them an optimal local swap can leave I non-maximal.
      candidates.clear();
      for (vertex_id v : region) {
        for (vertex_id x : g.neighbors(v)) {
          if (queued_[x] || sol.contains(x) || state_[x] == kCore || state_[x] == kExtension) continue;
          queued_[x] = 1;
          touched_.push_back(x);
          candidates.push_back(x);
        }
      }
      std::sort(candidates.begin(), candidates.end());
      for (vertex_id x : candidates) {
        queued_[x] = 0;
        if (region.size() >= params.max_size) continue;
        bool tight = true;
        for (vertex_id y : g.neighbors(x)) {
          if (sol.contains(y) && state_[y] != kCore && state_[y] != kExtension) {
            tight = false;
            break;
          }
        }
        if (tight) region.push_back(x);
      }
    }

    std::optional<basic_subproblem<W>> result;
    const bool has_candidate =
        std::any_of(region.begin(), region.end(), [&](vertex_id v) { return !sol.contains(v); });
    if (!region.empty() && has_candidate) result = extract(g, sol, std::move(region));
    reset();
    return result;
  }

 private:
  enum : std::uint8_t { kNone = 0, kCore, kExtension, kRejected };

  void mark(vertex_id v, std::uint8_t s) {
    if (state_[v] == kNone) touched_.push_back(v);
    state_[v] = s;
  }

  // Admits v into H if |H u {v}| + |N(H u {v}) n I \ (H u {v})| stays within
  // the cap. The extension part is tracked exactly, so the final |H'| before
  // tight completion never exceeds max_size.
  bool admit(const basic_dynamic_graph<W>& g, const basic_solution<W>& sol, vertex_id v, std::size_t max_size) {
    std::size_t cost;
    if (sol.contains(v)) {
      cost = state_[v] == kExtension ? 0 : 1;
    } else {
      cost = 1;
      for (vertex_id x : g.neighbors(v))
        if (sol.contains(x) && state_[x] != kCore && state_[x] != kExtension) ++cost;
    }
    if (core_.size() + ext_count_ + cost > max_size) return false;
    if (state_[v] == kExtension) --ext_count_;
    mark(v, kCore);
    core_.push_back(v);
    if (!sol.contains(v)) {
      for (vertex_id x : g.neighbors(v)) {
        if (sol.contains(x) && state_[x] != kCore && state_[x] != kExtension) {
          mark(x, kExtension);
          ++ext_count_;
        }
      }
    }
    return true;
  }

  basic_subproblem<W> extract(const basic_dynamic_graph<W>& g, const basic_solution<W>& sol,
                              std::vector<vertex_id> region) {
    std::sort(region.begin(), region.end());
    if (local_.size() < g.num_vertices()) local_.assign(g.num_vertices(), invalid_vertex);
    for (std::size_t i = 0; i < region.size(); ++i) local_[region[i]] = static_cast<vertex_id>(i);

    basic_subproblem<W> sub;
    std::vector<W> weights(region.size());
    std::vector<std::vector<vertex_id>> adj(region.size());
    for (std::size_t i = 0; i < region.size(); ++i) {
      const vertex_id v = region[i];
      weights[i] = g.weight(v);
      for (vertex_id x : g.neighbors(v))
        if (local_[x] != invalid_vertex) adj[i].push_back(local_[x]);
      std::sort(adj[i].begin(), adj[i].end());
      if (sol.contains(v)) {
        sub.incumbent.push_back(static_cast<vertex_id>(i));
        sub.incumbent_weight += weights[i];
      }
    }
    for (vertex_id v : region) local_[v] = invalid_vertex;
    sub.vertices = std::move(region);
    sub.local_graph = basic_static_graph<W>(std::move(weights), std::move(adj));
    return sub;
  }

  void reset() {
    for (vertex_id v : touched_) {
      state_[v] = kNone;
      queued_[v] = 0;
    }
    touched_.clear();
  }

  std::vector<std::uint8_t> state_;
  std::vector<std::uint8_t> queued_;
  std::vector<vertex_id> touched_;
  std::vector<vertex_id> core_;
  std::vector<vertex_id> local_;
  std::size_t ext_count_ = 0;
};

using neighborhood_explorer = basic_neighborhood_explorer<std::int64_t>;

// One-shot convenience wrapper around basic_neighborhood_explorer.
template <vertex_weight W>
std::optional<basic_subproblem<W>> build_subproblem(const basic_dynamic_graph<W>& g, const basic_solution<W>& sol,
                                                    std::span<const vertex_id> seeds,
                                                    const exploration_params& params) {
  basic_neighborhood_explorer<W> explorer;
  return explorer.build(g, sol, seeds, params);
}

}  // namespace dynmis
