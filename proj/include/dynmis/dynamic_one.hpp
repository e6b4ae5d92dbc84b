#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dynmis/branch_and_reduce.hpp"
#include "dynmis/dynamic_graph.hpp"
#include "dynmis/edit_sequence.hpp"
#include "dynmis/greedy.hpp"
#include "dynmis/neighborhood.hpp"
#include "dynmis/solution.hpp"
#include "dynmis/types.hpp"

namespace dynmis {

struct config {
  mode weighting = mode::cardinality;
  greedy_variant greedy = greedy_variant::deg_greedy;
  bool exploration = true;  // false: greedy updates only
  std::size_t depth = 10;
  std::size_t max_size = 2500;
  double pinch_factor = 1.25;
  bool pinch = true;
  bool prune = true;
  bool rare = false;
  std::size_t rare_period = 3;
  clock::duration solver_time_limit = std::chrono::seconds(10);
  std::uint64_t seed = 0;

  static config greedy_only() {
    config c;
    c.greedy = greedy_variant::greedy;
    c.exploration = false;
    return c;
  }

  static config deg_greedy_only() {
    config c;
    c.exploration = false;
    return c;
  }

  static config one_strong() { return config{}; }

  static config one_fast() {
    config c;
    c.max_size = 200;
    c.rare = true;
    c.rare_period = 3;
    return c;
  }

  // Every update re-solves the whole components of both endpoints exactly.
  static config exhaustive(std::size_t n) {
    config c;
    c.depth = n;
    c.max_size = std::max<std::size_t>(n, 1);
    c.pinch = false;
    c.prune = false;
    c.rare = false;
    c.solver_time_limit = clock::duration::max();
    return c;
  }

  void validate() const {
    if (max_size < 1) throw std::invalid_argument("max_size must be >= 1");
    if (pinch && !(pinch_factor > 1.0)) throw std::invalid_argument("pinch factor must be > 1");
    if (rare && rare_period < 1) throw std::invalid_argument("rare period must be >= 1");
    if (solver_time_limit <= clock::duration::zero()) throw std::invalid_argument("solver time limit must be > 0");
  }

  exploration_params exploration_settings() const { return {depth, max_size, pinch_factor, pinch, true}; }
};

template <vertex_weight W>
struct basic_update_stats {
  std::size_t update_index = 0;  // 1-based count of applied updates
  update_kind kind = update_kind::insert;
  bool greedy_added = false;
  bool solved = false;  // a subproblem was built and handed to the solver
  bool solver_optimal = false;
  bool improved = false;
  W greedy_weight{0};  // after the greedy repair, before any solving
  W weight{0};
  std::size_t cardinality = 0;
  clock::duration elapsed{};
};

using update_stats = basic_update_stats<std::int64_t>;

// Fully dynamic maximal (weight) independent set. Every update first runs
// the configured greedy repair; if that adds no vertex (or pruning is off)
// and the rare-update schedule allows it, a bounded subproblem around the
// update is solved exactly and swapped in when it is strictly heavier.
// After every update the solution is independent and maximal.
template <vertex_weight W>
class basic_dynamic_one {
 public:
  basic_dynamic_one(basic_dynamic_graph<W> g, config cfg)
      : graph_(std::move(g)), config_(cfg), rng_(cfg.seed), inactive_(graph_.num_vertices(), 0) {
    config_.validate();
    if (config_.weighting == mode::cardinality) {
      for (vertex_id v = 0; v < graph_.num_vertices(); ++v) graph_.set_weight(v, W{1});
    }
    solution_ = graph_.num_edges() == 0 ? basic_solution<W>::all_vertices(graph_)
                                        : basic_solution<W>::greedy_maximal(graph_);
  }

  const basic_dynamic_graph<W>& graph() const { return graph_; }
  const basic_solution<W>& solution() const { return solution_; }
  const config& settings() const { return config_; }
  std::size_t updates_applied() const { return applied_; }
  std::size_t obsolete_updates() const { return obsolete_; }

  // nullopt for obsolete updates (self-loop or existing edge).
  std::optional<basic_update_stats<W>> insert_edge(vertex_id u, vertex_id v) {
    const auto start = clock::now();
    check(u);
    check(v);
    if (!dynmis::insert_edge(graph_, solution_, u, v)) {
      ++obsolete_;
      return std::nullopt;
    }
    basic_update_stats<W> stats;
    stats.kind = update_kind::insert;
    const greedy_outcome out = greedy_repair_insertion(graph_, solution_, u, v, config_.greedy, rng_);
    stats.greedy_added = out.added_any;
    const vertex_id seeds[] = {u, v};
    explore(seeds, out.added_any, stats);
    return finish(stats, start);
  }

  // nullopt for obsolete updates (missing edge).
  std::optional<basic_update_stats<W>> delete_edge(vertex_id u, vertex_id v) {
    const auto start = clock::now();
    check(u);
    check(v);
    if (!dynmis::delete_edge(graph_, solution_, u, v)) {
      ++obsolete_;
      return std::nullopt;
    }
    basic_update_stats<W> stats;
    stats.kind = update_kind::erase;
    const greedy_outcome out = greedy_repair_deletion(graph_, solution_, u, v);
    stats.greedy_added = out.added_any;
    const vertex_id seeds[] = {u, v};
    explore(seeds, out.added_any, stats);
    return finish(stats, start);
  }

  // Activates the isolated vertex u with the given weight and edges. Edges are
  // inserted with greedy conflict repair, then a single subproblem seeded at
  // u is solved unless u ended up in the solution or the repair added a
  // vertex (with pruning on).
  basic_update_stats<W> insert_node(vertex_id u, std::span<const vertex_id> edges, W weight) {
    const auto start = clock::now();
    check(u);
    if (graph_.degree(u) != 0) throw std::logic_error("inserted node " + std::to_string(u) + " is not isolated");
    for (vertex_id x : edges) check(x);
    if (config_.weighting == mode::cardinality) weight = W{1};
    const W old = graph_.weight(u);
    graph_.set_weight(u, weight);
    solution_.on_weight_changed(u, old, weight);
    inactive_[u] = 0;

    basic_update_stats<W> stats;
    stats.kind = update_kind::node_insert;
    bool added = false;
    for (vertex_id x : edges) {
      if (!dynmis::insert_edge(graph_, solution_, u, x)) continue;
      added = greedy_repair_insertion(graph_, solution_, u, x, config_.greedy, rng_).added_any || added;
    }
    if (solution_.can_be_independent(u)) solution_.add_vertex(graph_, u);
    stats.greedy_added = added || solution_.contains(u);
    const vertex_id seeds[] = {u};
    explore(seeds, stats.greedy_added, stats);
    return finish(stats, start);
  }

  // Removes every edge of u and sets its weight to zero. The vertex stays in
  // the graph as an isolated placeholder. One subproblem seeded at the former
  // neighbors is solved unless greedy re-adds one of them (with pruning on).
  basic_update_stats<W> delete_node(vertex_id u) {
    const auto start = clock::now();
    check(u);
    if (inactive_[u]) throw std::logic_error("node " + std::to_string(u) + " was already deleted");
    const std::vector<vertex_id> former = graph_.sorted_neighbors(u);

    basic_update_stats<W> stats;
    stats.kind = update_kind::node_erase;
    if (solution_.contains(u)) solution_.remove_vertex(graph_, u);
    for (vertex_id x : former) dynmis::delete_edge(graph_, solution_, u, x);
    const W old = graph_.weight(u);
    graph_.set_weight(u, W{0});
    solution_.on_weight_changed(u, old, W{0});
    inactive_[u] = 1;

    bool added = false;
    for (vertex_id x : former) {
      if (solution_.can_be_independent(x)) {
        solution_.add_vertex(graph_, x);
        added = true;
      }
    }
    if (solution_.can_be_independent(u)) solution_.add_vertex(graph_, u);
    stats.greedy_added = added;
    stats.greedy_weight = solution_.total_weight();
    if (!former.empty()) explore(std::span<const vertex_id>(former), added, stats);
    return finish(stats, start);
  }

 private:
  void check(vertex_id v) const {
    if (v >= graph_.num_vertices()) {
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range (n = " +
                              std::to_string(graph_.num_vertices()) + ")");
    }
  }

  void explore(std::span<const vertex_id> seeds, bool greedy_added, basic_update_stats<W>& stats) {
    stats.greedy_weight = solution_.total_weight();
    if (!config_.exploration) return;
    if (config_.prune && greedy_added) return;
    if (config_.rare && ++rare_candidates_ % config_.rare_period != 0) return;

    auto sub = explorer_.build(graph_, solution_, seeds, config_.exploration_settings());
    if (!sub) return;
    const auto result = solve_mwis(*sub, config_.solver_time_limit);
    stats.solved = true;
    stats.solver_optimal = result.proven_optimal;
    if (!improves(result, *sub)) return;

    const std::vector<vertex_id> chosen = sub->to_global(result.set);
    solution_.replace_region(graph_, sub->vertices, chosen);
    stats.improved = true;
    sweep(sub->vertices);
  }

  // Only vertices in or next to the replaced region can have lost their last
  // solution neighbor.
  void sweep(const std::vector<vertex_id>& region) {
    std::vector<vertex_id> candidates = region;
    for (vertex_id v : region)
      for (vertex_id x : graph_.neighbors(v)) candidates.push_back(x);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (vertex_id x : candidates)
      if (solution_.can_be_independent(x)) solution_.add_vertex(graph_, x);
  }

  basic_update_stats<W> finish(basic_update_stats<W>& stats, clock::time_point start) {
    stats.update_index = ++applied_;
    stats.weight = solution_.total_weight();
    stats.cardinality = solution_.cardinality();
    stats.elapsed = clock::now() - start;
    return stats;
  }

  basic_dynamic_graph<W> graph_;
  basic_solution<W> solution_;
  config config_;
  splitmix64 rng_;
  basic_neighborhood_explorer<W> explorer_;
  std::vector<std::uint8_t> inactive_;
  std::size_t applied_ = 0;
  std::size_t obsolete_ = 0;
  std::uint64_t rare_candidates_ = 0;
};

using dynamic_one = basic_dynamic_one<std::int64_t>;

template <vertex_weight W>
struct basic_run_result {
  basic_dynamic_graph<W> graph;  // final graph
  basic_solution<W> solution;
  std::vector<basic_update_stats<W>> trace;
  std::size_t obsolete_count = 0;
  clock::duration total_update_time{};
};

using run_result = basic_run_result<std::int64_t>;

// Replays `seq` on g0. Events with out-of-range ids abort the run with an
// exception naming the event index. The optional observer is called after
// every applied update with the engine and the update's statistics.
template <vertex_weight W, class Observer>
basic_run_result<W> run_sequence(basic_dynamic_graph<W> g0, const edit_sequence& seq, const config& cfg,
                                 Observer&& observer) {
  if (seq.n > g0.num_vertices()) throw std::invalid_argument("sequence addresses more vertices than the graph has");
  basic_dynamic_one<W> engine(std::move(g0), cfg);
  basic_run_result<W> out;
  out.trace.reserve(seq.events.size());
  for (std::size_t i = 0; i < seq.events.size(); ++i) {
    const edit_event& e = seq.events[i];
    if (e.u >= engine.graph().num_vertices() || e.v >= engine.graph().num_vertices()) {
      throw std::out_of_range("event " + std::to_string(i) + ": vertex id out of range");
    }
    std::optional<basic_update_stats<W>> stats;
    switch (e.kind) {
      case update_kind::insert: stats = engine.insert_edge(e.u, e.v); break;
      case update_kind::erase: stats = engine.delete_edge(e.u, e.v); break;
      default: throw std::invalid_argument("event " + std::to_string(i) + ": unsupported event kind");
    }
    if (!stats) continue;
    out.total_update_time += stats->elapsed;
    observer(engine, *stats);
    out.trace.push_back(*stats);
  }
  out.obsolete_count = seq.obsolete_count + engine.obsolete_updates();
  out.graph = engine.graph();
  out.solution = engine.solution();
  return out;
}

template <vertex_weight W>
basic_run_result<W> run_sequence(basic_dynamic_graph<W> g0, const edit_sequence& seq, const config& cfg) {
  return run_sequence(std::move(g0), seq, cfg, [](const auto&, const auto&) {});
}

}  // namespace dynmis
