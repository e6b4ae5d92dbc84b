#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dynmis/neighborhood.hpp"
#include "dynmis/reductions.hpp"
#include "dynmis/static_graph.hpp"
#include "dynmis/types.hpp"

namespace dynmis {

struct solver_options {
  clock::duration time_limit = std::chrono::seconds(10);
  reduction_rules rules{};
  // The weighted clique cover bound is computed when at most this many
  // vertices remain; above it the bound is the total remaining weight.
  std::size_t clique_cover_limit = 512;
  // The clock is read once per this many search nodes.
  std::uint64_t clock_check_interval = 1024;
};

template <vertex_weight W>
struct basic_solver_result {
  std::vector<vertex_id> set;  // sorted ids of the solved graph
  W weight{0};
  bool proven_optimal = false;
  std::uint64_t nodes_explored = 0;
  clock::duration elapsed{};
};

using solver_result = basic_solver_result<std::int64_t>;

// Exact anytime solver for maximum weight independent set on small graphs.
// Branch-and-reduce: every search node first applies the data reductions
// exhaustively, splits the remainder into connected components (solved
// independently), prunes with a clique cover bound and otherwise branches on
// the vertex maximizing w(N(v)) - w(v), exclusion first.
//
// Not thread-safe; use one instance per thread.
template <vertex_weight W>
class branch_and_reduce {
 public:
  explicit branch_and_reduce(const basic_static_graph<W>& g, solver_options options = {})
      : input_(g), options_(options), graph_(g) {}

  // Starts from `incumbent` (must be independent) and never returns anything
  // lighter than it. proven_optimal is false iff the time limit hit.
  basic_solver_result<W> solve(std::span<const vertex_id> incumbent = {}) {
    const auto start = clock::now();
    deadline_ = deadline_after(options_.time_limit);
    nodes_ = 0;
    timed_out_ = false;

    component best;
    best.set.assign(incumbent.begin(), incumbent.end());
    std::sort(best.set.begin(), best.set.end());
    best.weight = input_.weight_of(best.set);

    std::vector<vertex_id> scope = graph_.active_vertices();
    component greedy = greedy_set(scope);
    if (greedy.weight > best.weight) best = std::move(greedy);

    context ctx{graph_.mark(), graph_.gain(), std::move(best)};
    search(scope, ctx);

    basic_solver_result<W> result;
    result.set = std::move(ctx.best.set);
    result.weight = input_.weight_of(result.set);
    result.proven_optimal = !timed_out_;
    result.nodes_explored = nodes_;
    result.elapsed = clock::now() - start;
    assert(is_independent(result.set));
    return result;
  }

 private:
  struct component {
    std::vector<vertex_id> set;
    W weight{0};
  };

  // Search state of one connected component. Solutions are stored in terms of
  // the vertices that were active when the component search started.
  struct context {
    std::size_t mark;
    W gain;
    component best;
  };

  void search(std::vector<vertex_id> scope, context& ctx) {
    if (timed_out_) return;
    if (++nodes_ % options_.clock_check_interval == 0 && clock::now() >= deadline_) {
      timed_out_ = true;
      return;
    }
    const std::size_t mark = graph_.mark();
    graph_.reduce(scope, options_.rules);

    std::vector<vertex_id> remaining;
    remaining.reserve(scope.size());
    for (vertex_id v : scope)
      if (graph_.active(v)) remaining.push_back(v);
    const W current = graph_.gain() - ctx.gain;

    if (remaining.empty()) {
      record(ctx, current, {});
    } else if (current + upper_bound(remaining) > ctx.best.weight) {
      auto parts = components(remaining);
      if (parts.size() > 1) {
        std::sort(parts.begin(), parts.end(),
                  [](const auto& a, const auto& b) { return a.size() < b.size(); });
        W total = current;
        std::vector<vertex_id> chosen;
        for (auto& part : parts) {
          component sub = solve_component(std::move(part));
          total += sub.weight;
          chosen.insert(chosen.end(), sub.set.begin(), sub.set.end());
        }
        record(ctx, total, chosen);
      } else {
        const vertex_id v = branching_vertex(remaining);
        const std::size_t before = graph_.mark();
        graph_.exclude(v);
        search(remaining, ctx);
        graph_.undo(before);
        if (!timed_out_) {
          graph_.include(v);
          search(remaining, ctx);
          graph_.undo(before);
        }
      }
    }
    graph_.undo(mark);
  }

  component solve_component(std::vector<vertex_id> scope) {
    context ctx{graph_.mark(), graph_.gain(), greedy_set(scope)};
    search(std::move(scope), ctx);
    return std::move(ctx.best);
  }

  void record(context& ctx, W total, std::span<const vertex_id> chosen) {
    if (!(total > ctx.best.weight)) return;
    ctx.best.set = graph_.lift(chosen, ctx.mark);
    ctx.best.weight = total;
  }

  // Heaviest-first greedy on the active vertices of scope.
  component greedy_set(const std::vector<vertex_id>& scope) {
    std::vector<vertex_id> order;
    for (vertex_id v : scope)
      if (graph_.active(v)) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](vertex_id a, vertex_id b) {
      if (graph_.weight(a) != graph_.weight(b)) return graph_.weight(a) > graph_.weight(b);
      if (graph_.degree(a) != graph_.degree(b)) return graph_.degree(a) < graph_.degree(b);
      return a < b;
    });
    grow(blocked_);
    component out;
    std::vector<vertex_id> touched;
    for (vertex_id v : order) {
      if (blocked_[v]) continue;
      out.set.push_back(v);
      out.weight += graph_.weight(v);
      blocked_[v] = 1;
      touched.push_back(v);
      graph_.for_each_neighbor(v, [&](vertex_id x) {
        if (!blocked_[x]) touched.push_back(x);
        blocked_[x] = 1;
      });
    }
    for (vertex_id x : touched) blocked_[x] = 0;
    std::sort(out.set.begin(), out.set.end());
    return out;
  }

  // Greedy weighted clique cover: vertices in descending weight order join the
  // first clique they are fully adjacent to. An independent set takes at most
  // one vertex per clique, so the sum of the clique maxima bounds it.
  W upper_bound(const std::vector<vertex_id>& remaining) {
    W total{0};
    if (remaining.size() > options_.clique_cover_limit) {
      for (vertex_id v : remaining) total += graph_.weight(v);
      return total;
    }
    std::vector<vertex_id> order = remaining;
    std::sort(order.begin(), order.end(), [&](vertex_id a, vertex_id b) {
      if (graph_.weight(a) != graph_.weight(b)) return graph_.weight(a) > graph_.weight(b);
      return a < b;
    });
    grow(clique_of_);
    grow(hits_);
    std::vector<std::uint32_t> clique_size;
    std::vector<vertex_id> seen;
    for (vertex_id v : order) {
      seen.clear();
      graph_.for_each_neighbor(v, [&](vertex_id x) {
        const std::uint32_t c = clique_of_[x];
        if (c == 0) return;
        if (hits_[c - 1]++ == 0) seen.push_back(c - 1);
      });
      std::uint32_t target = 0;
      for (vertex_id c : seen) {
        if (target == 0 && hits_[c] == clique_size[c]) target = c + 1;
        hits_[c] = 0;
      }
      if (target == 0) {
        clique_size.push_back(1);
        clique_of_[v] = static_cast<std::uint32_t>(clique_size.size());
        total += graph_.weight(v);
      } else {
        ++clique_size[target - 1];
        clique_of_[v] = target;
      }
    }
    for (vertex_id v : remaining) clique_of_[v] = 0;
    return total;
  }

  std::vector<std::vector<vertex_id>> components(const std::vector<vertex_id>& remaining) {
    grow(blocked_);
    std::vector<std::vector<vertex_id>> parts;
    for (vertex_id root : remaining) {
      if (blocked_[root]) continue;
      std::vector<vertex_id> part{root};
      blocked_[root] = 1;
      for (std::size_t i = 0; i < part.size(); ++i) {
        graph_.for_each_neighbor(part[i], [&](vertex_id x) {
          if (!blocked_[x]) {
            blocked_[x] = 1;
            part.push_back(x);
          }
        });
      }
      parts.push_back(std::move(part));
    }
    for (vertex_id v : remaining) blocked_[v] = 0;
    return parts;
  }

  vertex_id branching_vertex(const std::vector<vertex_id>& remaining) const {
    vertex_id best = remaining.front();
    W best_score = graph_.neighborhood_weight(best) - graph_.weight(best);
    for (vertex_id v : remaining) {
      const W score = graph_.neighborhood_weight(v) - graph_.weight(v);
      if (score > best_score || (score == best_score && graph_.degree(v) > graph_.degree(best))) {
        best = v;
        best_score = score;
      }
    }
    return best;
  }

  template <class T>
  void grow(std::vector<T>& buffer) const {
    if (buffer.size() < graph_.id_bound()) buffer.resize(graph_.id_bound() + graph_.input_size() / 2 + 1, T{0});
  }

  bool is_independent(std::span<const vertex_id> set) const {
    for (vertex_id v : set)
      for (vertex_id u : set)
        if (u < v && input_.has_edge(u, v)) return false;
    return true;
  }

  const basic_static_graph<W>& input_;
  solver_options options_;
  reduction_graph<W> graph_;
  clock::time_point deadline_{};
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
  std::vector<std::uint8_t> blocked_;
  std::vector<std::uint32_t> clique_of_;
  std::vector<std::uint32_t> hits_;
};

template <vertex_weight W>
basic_solver_result<W> solve_mwis(const basic_static_graph<W>& g, std::span<const vertex_id> incumbent,
                                  solver_options options = {}) {
  branch_and_reduce<W> solver(g, options);
  return solver.solve(incumbent);
}

// Solves G[H'] starting from I n H'. With a positive time limit the result is
// optimal unless proven_optimal is false, and never worse than the incumbent.
template <vertex_weight W>
basic_solver_result<W> solve_mwis(const basic_subproblem<W>& sub, clock::duration time_limit) {
  solver_options options;
  options.time_limit = time_limit;
  return solve_mwis(sub.local_graph, std::span<const vertex_id>(sub.incumbent), options);
}

// Strict improvement over the incumbent of the subproblem.
template <vertex_weight W>
bool improves(const basic_solver_result<W>& result, const basic_subproblem<W>& sub) {
  return result.weight > sub.incumbent_weight;
}

}  // namespace dynmis
