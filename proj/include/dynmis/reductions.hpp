#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "dynmis/static_graph.hpp"
#include "dynmis/types.hpp"

namespace dynmis {

// Which data reductions the branch-and-reduce solver applies. All rules are
// sound for maximum weight independent set with non-negative weights.
struct reduction_rules {
  bool isolated = true;              // deg(v) = 0: take v
  bool neighborhood_removal = true;  // w(v) >= w(N(v)): take v
  bool pendant = true;               // deg(v) = 1: take v, or fold v into its neighbor
  bool simplicial = true;            // N(v) is a clique and v is its heaviest vertex: take v
  bool domination = true;            // N[v] subset of N[u], w(u) <= w(v): drop u
  bool degree_two_fold = true;       // deg(v) = 2, w(v) >= max(w(a), w(b)) and < w(a) + w(b): fold

  static constexpr reduction_rules none() { return {false, false, false, false, false, false}; }
};

// Mutable view of a static graph for branch-and-reduce. Vertices are never
// physically removed; they change status and every change is recorded on a
// trail so that undo(mark) restores any earlier state exactly. Folding a
// degree-two vertex creates a new vertex, so ids can exceed the input size.
//
// gain() is the weight already committed: included vertices plus fold
// offsets. For the active remainder R, alpha(input) = gain() + alpha(R), and
// lift() turns a solution of R back into one of the state at a given mark.
template <vertex_weight W>
class reduction_graph {
 public:
  enum class status : std::uint8_t { active, included, excluded, folded };

  explicit reduction_graph(const basic_static_graph<W>& g)
      : input_size_(g.num_vertices()),
        capacity_(g.num_vertices() + g.num_vertices() / 2 + 1),
        adjacency_(capacity_),
        weights_(capacity_, W{0}),
        degree_(capacity_, 0),
        status_(capacity_, status::folded),
        scratch_(capacity_, 0),
        queued_(capacity_, 0) {
    for (vertex_id v = 0; v < input_size_; ++v) {
      auto nb = g.neighbors(v);
      adjacency_[v].assign(nb.begin(), nb.end());
      weights_[v] = g.weight(v);
      degree_[v] = static_cast<std::uint32_t>(nb.size());
      status_[v] = status::active;
    }
    next_id_ = static_cast<vertex_id>(input_size_);
  }

  std::size_t input_size() const { return input_size_; }
  std::size_t id_bound() const { return next_id_; }
  bool active(vertex_id v) const { return status_[v] == status::active; }
  status state(vertex_id v) const { return status_[v]; }
  W weight(vertex_id v) const { return weights_[v]; }
  std::size_t degree(vertex_id v) const { return degree_[v]; }
  W gain() const { return gain_; }

  template <class F>
  void for_each_neighbor(vertex_id v, F&& f) const {
    for (vertex_id x : adjacency_[v])
      if (status_[x] == status::active) f(x);
  }

  W neighborhood_weight(vertex_id v) const {
    W sum{0};
    for_each_neighbor(v, [&](vertex_id x) { sum += weights_[x]; });
    return sum;
  }

  std::vector<vertex_id> active_vertices() const {
    std::vector<vertex_id> out;
    for (vertex_id v = 0; v < next_id_; ++v)
      if (active(v)) out.push_back(v);
    return out;
  }

  std::size_t mark() const { return trail_.size(); }

  void undo(std::size_t to) {
    while (trail_.size() > to) {
      const entry e = trail_.back();
      trail_.pop_back();
      switch (e.kind) {
        case action::deactivate:
          status_[e.v] = status::active;
          for_each_neighbor(e.v, [&](vertex_id x) { ++degree_[x]; });
          break;
        case action::set_weight:
          weights_[e.v] = e.w;
          break;
        case action::set_gain:
          gain_ = e.w;
          break;
        case action::create:
          for (vertex_id x : adjacency_[e.v]) {
            adjacency_[x].pop_back();
            --degree_[x];
          }
          adjacency_[e.v].clear();
          status_[e.v] = status::folded;
          degree_[e.v] = 0;
          --next_id_;
          break;
        case action::fold_one:
        case action::fold_two:
          break;
      }
    }
  }

  // Takes v into the solution and removes N[v].
  void include(vertex_id v) {
    require_active(v);
    push_gain(gain_ + weights_[v]);
    deactivate(v, status::included);
    for (vertex_id x : adjacency_[v])
      if (active(x)) deactivate(x, status::excluded);
  }

  void exclude(vertex_id v) {
    require_active(v);
    deactivate(v, status::excluded);
  }

  // v has the single neighbor u and w(v) < w(u). Either u is in the solution,
  // or v is and u is not: remove v, move w(v) into the gain and lower w(u).
  void fold_pendant(vertex_id v, vertex_id u) {
    require_active(v);
    require_active(u);
    push_gain(gain_ + weights_[v]);
    trail_.push_back({action::set_weight, u, 0, 0, 0, weights_[u]});
    weights_[u] -= weights_[v];
    deactivate(v, status::folded);
    trail_.push_back({action::fold_one, v, u, 0, 0, W{0}});
  }

  // v has exactly the non-adjacent neighbors a and b and
  // max(w(a), w(b)) <= w(v) < w(a) + w(b). Some optimum contains v or both a
  // and b, so {v, a, b} collapses into one vertex of weight
  // w(a) + w(b) - w(v) adjacent to N(a) u N(b) \ {v}. Returns the new id.
  vertex_id fold_degree_two(vertex_id v, vertex_id a, vertex_id b) {
    require_active(v);
    require_active(a);
    require_active(b);
    if (next_id_ >= capacity_) throw std::logic_error("fold capacity exhausted");
    const vertex_id merged = next_id_;
    std::vector<vertex_id> nb;
    for (vertex_id end : {a, b}) {
      for_each_neighbor(end, [&](vertex_id x) {
        if (x != v && x != a && x != b && !scratch_[x]) {
          scratch_[x] = 1;
          nb.push_back(x);
        }
      });
    }
    for (vertex_id x : nb) scratch_[x] = 0;
    std::sort(nb.begin(), nb.end());

    const W merged_weight = weights_[a] + weights_[b] - weights_[v];
    push_gain(gain_ + weights_[v]);
    deactivate(v, status::folded);
    deactivate(a, status::folded);
    deactivate(b, status::folded);

    ++next_id_;
    weights_[merged] = merged_weight;
    status_[merged] = status::active;
    adjacency_[merged] = nb;
    degree_[merged] = static_cast<std::uint32_t>(nb.size());
    for (vertex_id x : nb) {
      adjacency_[x].push_back(merged);
      ++degree_[x];
    }
    trail_.push_back({action::create, merged, 0, 0, 0, W{0}});
    trail_.push_back({action::fold_two, v, a, b, merged, W{0}});
    return merged;
  }

  // Tries the enabled rules on v. On success returns true and appends the
  // vertices whose rules may have become applicable to `affected`.
  bool reduce_vertex(vertex_id v, const reduction_rules& rules, std::vector<vertex_id>& affected) {
    if (!active(v)) return false;
    const std::size_t d = degree_[v];

    if (d == 0 && (rules.isolated || rules.neighborhood_removal)) {
      include(v);
      return true;
    }
    if (rules.neighborhood_removal && weights_[v] >= neighborhood_weight(v)) {
      collect_two_hop(v, affected);
      include(v);
      return true;
    }
    if (rules.pendant && d == 1) {
      vertex_id u = invalid_vertex;
      for_each_neighbor(v, [&](vertex_id x) { u = x; });
      if (weights_[v] >= weights_[u]) {
        collect_two_hop(v, affected);
        include(v);
      } else {
        affected.push_back(u);
        for_each_neighbor(u, [&](vertex_id x) { affected.push_back(x); });
        fold_pendant(v, u);
      }
      return true;
    }
    if (rules.simplicial && d <= kSimplicialDegreeLimit && is_simplicial_heaviest(v)) {
      collect_two_hop(v, affected);
      include(v);
      return true;
    }
    if (rules.domination && d <= kDominationDegreeLimit) {
      const vertex_id dominated = find_dominated_neighbor(v);
      if (dominated != invalid_vertex) {
        collect_two_hop(dominated, affected);
        affected.push_back(v);
        exclude(dominated);
        return true;
      }
    }
    if (rules.degree_two_fold && d == 2) {
      vertex_id ends[2];
      int k = 0;
      for_each_neighbor(v, [&](vertex_id x) { ends[k++] = x; });
      const vertex_id a = ends[0], b = ends[1];
      const W heavier = std::max(weights_[a], weights_[b]);
      if (weights_[v] >= heavier && weights_[v] < weights_[a] + weights_[b] && !adjacent(a, b)) {
        const vertex_id merged = fold_degree_two(v, a, b);
        affected.push_back(merged);
        for_each_neighbor(merged, [&](vertex_id x) {
          affected.push_back(x);
          for_each_neighbor(x, [&](vertex_id y) { affected.push_back(y); });
        });
        return true;
      }
    }
    return false;
  }

  // Applies the rules until none fires on any vertex of `scope`. Vertices
  // created by folding are appended to `scope`.
  void reduce(std::vector<vertex_id>& scope, const reduction_rules& rules) {
    std::vector<vertex_id> queue;
    queue.reserve(scope.size());
    for (vertex_id v : scope) {
      if (active(v) && !queued_[v]) {
        queued_[v] = 1;
        queue.push_back(v);
      }
    }
    std::vector<vertex_id> affected;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const vertex_id v = queue[head];
      queued_[v] = 0;
      affected.clear();
      const vertex_id before = next_id_;
      if (!reduce_vertex(v, rules, affected)) continue;
      for (vertex_id x = before; x < next_id_; ++x) scope.push_back(x);
      for (vertex_id x : affected) {
        if (active(x) && !queued_[x]) {
          queued_[x] = 1;
          queue.push_back(x);
        }
      }
    }
  }

  void reduce_all(const reduction_rules& rules) {
    std::vector<vertex_id> scope = active_vertices();
    reduce(scope, rules);
  }

  // Maps a solution of the state at the current top of the trail back to the
  // state at `from`: `extra` holds vertices chosen for the active remainder,
  // and everything included since `from` is added. Folds made since `from`
  // are resolved newest first. The result only contains vertices that were
  // active at `from`, sorted.
  std::vector<vertex_id> lift(std::span<const vertex_id> extra, std::size_t from) {
    std::vector<vertex_id> touched;
    auto set = [&](vertex_id x) {
      if (!scratch_[x]) touched.push_back(x);
      scratch_[x] = 1;
    };
    for (std::size_t i = from; i < trail_.size(); ++i)
      if (trail_[i].kind == action::deactivate && trail_[i].to == status::included) set(trail_[i].v);
    for (vertex_id x : extra) set(x);
    for (std::size_t i = trail_.size(); i-- > from;) {
      const entry& e = trail_[i];
      if (e.kind == action::fold_one) {
        if (!scratch_[e.a]) set(e.v);
      } else if (e.kind == action::fold_two) {
        if (scratch_[e.c]) {
          scratch_[e.c] = 0;
          set(e.a);
          set(e.b);
        } else {
          set(e.v);
        }
      }
    }
    std::vector<vertex_id> out;
    for (vertex_id x : touched) {
      if (scratch_[x]) out.push_back(x);
      scratch_[x] = 0;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // The active remainder as a standalone graph; ids[i] is the reduction_graph
  // id of vertex i.
  basic_static_graph<W> active_subgraph(std::vector<vertex_id>& ids) const {
    ids = active_vertices();
    std::vector<vertex_id> local(next_id_, invalid_vertex);
    for (std::size_t i = 0; i < ids.size(); ++i) local[ids[i]] = static_cast<vertex_id>(i);
    std::vector<W> w(ids.size());
    std::vector<std::vector<vertex_id>> adj(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      w[i] = weights_[ids[i]];
      for_each_neighbor(ids[i], [&](vertex_id x) { adj[i].push_back(local[x]); });
      std::sort(adj[i].begin(), adj[i].end());
    }
    return basic_static_graph<W>(std::move(w), std::move(adj));
  }

  bool adjacent(vertex_id a, vertex_id b) const {
    const vertex_id probe = degree_[a] <= degree_[b] ? a : b;
    const vertex_id other = probe == a ? b : a;
    for (vertex_id x : adjacency_[probe])
      if (x == other && active(x)) return true;
    return false;
  }

 private:
  static constexpr std::size_t kSimplicialDegreeLimit = 32;
  static constexpr std::size_t kDominationDegreeLimit = 64;

  enum class action : std::uint8_t { deactivate, set_weight, set_gain, create, fold_one, fold_two };

  struct entry {
    action kind;
    vertex_id v, a, b, c;
    W w;
    status to = status::active;
  };

  void require_active(vertex_id v) const {
    if (v >= next_id_ || !active(v)) throw std::logic_error("vertex is not active");
  }

  void push_gain(W next) {
    trail_.push_back({action::set_gain, 0, 0, 0, 0, gain_});
    gain_ = next;
  }

  void deactivate(vertex_id v, status to) {
    for_each_neighbor(v, [&](vertex_id x) { --degree_[x]; });
    status_[v] = to;
    entry e{action::deactivate, v, 0, 0, 0, W{0}};
    e.to = to;
    trail_.push_back(e);
  }

  void collect_two_hop(vertex_id v, std::vector<vertex_id>& affected) const {
    for_each_neighbor(v, [&](vertex_id x) {
      for_each_neighbor(x, [&](vertex_id y) { affected.push_back(y); });
    });
  }

  bool is_simplicial_heaviest(vertex_id v) {
    bool heaviest = true;
    for_each_neighbor(v, [&](vertex_id x) { heaviest = heaviest && weights_[x] <= weights_[v]; });
    if (!heaviest) return false;
    std::vector<vertex_id> nb;
    for_each_neighbor(v, [&](vertex_id x) {
      scratch_[x] = 1;
      nb.push_back(x);
    });
    bool clique = true;
    for (vertex_id x : nb) {
      std::size_t inside = 0;
      for_each_neighbor(x, [&](vertex_id y) { inside += scratch_[y]; });
      if (inside + 1 != nb.size()) {
        clique = false;
        break;
      }
    }
    for (vertex_id x : nb) scratch_[x] = 0;
    return clique;
  }

  vertex_id find_dominated_neighbor(vertex_id v) {
    const std::size_t d = degree_[v];
    std::vector<vertex_id> closed{v};
    for_each_neighbor(v, [&](vertex_id x) { closed.push_back(x); });
    for (vertex_id x : closed) scratch_[x] = 1;
    vertex_id found = invalid_vertex;
    for (std::size_t i = 1; i < closed.size() && found == invalid_vertex; ++i) {
      const vertex_id u = closed[i];
      if (degree_[u] < d || weights_[u] > weights_[v]) continue;
      std::size_t common = 1;  // u itself
      for_each_neighbor(u, [&](vertex_id y) { common += scratch_[y]; });
      if (common == d + 1) found = u;
    }
    for (vertex_id x : closed) scratch_[x] = 0;
    return found;
  }

  std::size_t input_size_;
  std::size_t capacity_;
  std::vector<std::vector<vertex_id>> adjacency_;
  std::vector<W> weights_;
  std::vector<std::uint32_t> degree_;
  std::vector<status> status_;
  std::vector<std::uint8_t> scratch_;
  std::vector<std::uint8_t> queued_;
  std::vector<entry> trail_;
  W gain_{0};
  vertex_id next_id_ = 0;
};

}  // namespace dynmis
