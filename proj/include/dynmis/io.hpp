#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "dynmis/dynamic_one.hpp"
#include "dynmis/edit_sequence.hpp"
#include "dynmis/static_graph.hpp"
#include "dynmis/types.hpp"

namespace dynmis::io {

class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

template <class T>
T number(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw parse_error(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
  }
  return value;
}

inline std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

struct pair_hash {
  std::size_t operator()(std::uint64_t key) const { return std::hash<std::uint64_t>{}(key * 0x9e3779b97f4a7c15ULL); }
};

inline std::uint64_t edge_key(vertex_id u, vertex_id v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t{u} << 32) | v;
}

}  // namespace detail

struct metis_graph {
  static_graph graph;
  std::size_t self_loops = 0;
  std::size_t parallel_edges = 0;  // repeated entries within one adjacency list
  std::size_t asymmetric = 0;      // entries whose reverse is missing (symmetrized)
  std::size_t header_edges = 0;    // m as declared
  bool vertex_weights = false;
};

// METIS adjacency format: "n m [fmt [ncon]]", then one line per vertex with
// 1-indexed neighbors. fmt digit 1 = edge weights (ignored), digit 10 =
// vertex weights. Lines starting with '%' are comments. Without vertex
// weights every vertex weighs 1.
inline metis_graph parse_metis(std::istream& in) {
  metis_graph out;
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line[0] == '%') continue;
      return true;
    }
    return false;
  };

  std::vector<std::string_view> tok;
  do {
    if (!next()) throw parse_error(line_no, "missing header");
    tok = detail::tokens(line);
  } while (tok.empty());
  if (tok.size() < 2 || tok.size() > 4) throw parse_error(line_no, "header must be 'n m [fmt [ncon]]'");
  const auto n = detail::number<std::uint64_t>(tok[0], line_no, "vertex count");
  out.header_edges = detail::number<std::uint64_t>(tok[1], line_no, "edge count");
  if (n >= invalid_vertex) throw parse_error(line_no, "too many vertices");
  bool vertex_weights = false;
  bool edge_weights = false;
  std::size_t ncon = 1;
  if (tok.size() >= 3) {
    const std::string_view fmt = tok[2];
    if (fmt.size() > 3 || fmt.find_first_not_of("01") != std::string_view::npos) {
      throw parse_error(line_no, "bad format code '" + std::string(fmt) + "'");
    }
    const std::string padded = std::string(3 - fmt.size(), '0') + std::string(fmt);
    if (padded[0] == '1') throw parse_error(line_no, "vertex sizes are not supported");
    vertex_weights = padded[1] == '1';
    edge_weights = padded[2] == '1';
  }
  if (tok.size() == 4) ncon = detail::number<std::size_t>(tok[3], line_no, "constraint count");
  if (ncon != 1) throw parse_error(line_no, "only one vertex weight per vertex is supported");

  std::vector<std::int64_t> weights(n, 1);
  std::vector<std::vector<vertex_id>> adj(n);
  std::unordered_set<vertex_id> seen;
  for (std::uint64_t v = 0; v < n; ++v) {
    if (!next()) throw parse_error(line_no, "expected " + std::to_string(n) + " vertex lines, found " + std::to_string(v));
    tok = detail::tokens(line);
    std::size_t i = 0;
    if (vertex_weights) {
      if (tok.empty()) throw parse_error(line_no, "missing vertex weight");
      weights[v] = detail::number<std::int64_t>(tok[0], line_no, "vertex weight");
      if (weights[v] < 0) throw parse_error(line_no, "negative vertex weight");
      i = 1;
    }
    const std::size_t step = edge_weights ? 2 : 1;
    if ((tok.size() - i) % step != 0) throw parse_error(line_no, "neighbor without edge weight");
    seen.clear();
    for (; i < tok.size(); i += step) {
      const auto x = detail::number<std::uint64_t>(tok[i], line_no, "neighbor");
      if (x < 1 || x > n) throw parse_error(line_no, "neighbor " + std::to_string(x) + " out of range 1.." + std::to_string(n));
      const auto u = static_cast<vertex_id>(x - 1);
      if (u == v) {
        ++out.self_loops;
        continue;
      }
      if (!seen.insert(u).second) {
        ++out.parallel_edges;
        continue;
      }
      adj[v].push_back(u);
    }
  }
  while (next()) {
    if (!detail::tokens(line).empty()) throw parse_error(line_no, "trailing data after vertex lines");
  }

  // Symmetrize: an entry u in N(v) without v in N(u) still defines the edge.
  std::unordered_set<std::uint64_t, detail::pair_hash> present;
  for (vertex_id v = 0; v < n; ++v)
    for (vertex_id u : adj[v]) present.insert((std::uint64_t{v} << 32) | u);
  for (vertex_id v = 0; v < n; ++v) {
    const std::size_t original = adj[v].size();
    for (std::size_t k = 0; k < original; ++k) {
      const vertex_id u = adj[v][k];
      if (!present.count((std::uint64_t{u} << 32) | v)) {
        ++out.asymmetric;
        adj[u].push_back(v);
        present.insert((std::uint64_t{u} << 32) | v);
      }
    }
  }
  out.vertex_weights = vertex_weights;
  out.graph = static_graph(std::move(weights), std::move(adj));
  return out;
}

inline metis_graph parse_metis_file(const std::string& path) {
  auto in = detail::open(path);
  return parse_metis(in);
}

// One insertion per undirected edge in order of first appearance when the
// adjacency lists are read top to bottom.
template <vertex_weight W>
edit_sequence static_to_sequence(const basic_static_graph<W>& g) {
  edit_sequence seq;
  seq.n = g.num_vertices();
  std::unordered_set<std::uint64_t, detail::pair_hash> emitted;
  for (vertex_id v = 0; v < g.num_vertices(); ++v) {
    for (vertex_id u : g.neighbors(v)) {
      if (u == v || !emitted.insert(detail::edge_key(u, v)).second) continue;
      seq.events.push_back({update_kind::insert, std::min(u, v), std::max(u, v)});
    }
  }
  return seq;
}

// "n <count>" header, then "i u v" / "d u v" per line with 0-indexed ids.
// '#' starts a comment. Self-loops are dropped and counted as obsolete.
inline edit_sequence parse_sequence(std::istream& in) {
  edit_sequence seq;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const auto tok = detail::tokens(view);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "n") throw parse_error(line_no, "expected header 'n <count>'");
      const auto n = detail::number<std::uint64_t>(tok[1], line_no, "vertex count");
      if (n >= invalid_vertex) throw parse_error(line_no, "too many vertices");
      seq.n = n;
      header = true;
      continue;
    }
    if (tok.size() != 3) throw parse_error(line_no, "expected '<op> u v'");
    update_kind kind;
    if (tok[0] == "i") {
      kind = update_kind::insert;
    } else if (tok[0] == "d") {
      kind = update_kind::erase;
    } else {
      throw parse_error(line_no, "unknown opcode '" + std::string(tok[0]) + "'");
    }
    const auto u = detail::number<std::uint64_t>(tok[1], line_no, "vertex");
    const auto v = detail::number<std::uint64_t>(tok[2], line_no, "vertex");
    if (u >= seq.n || v >= seq.n) throw parse_error(line_no, "vertex id out of range (n = " + std::to_string(seq.n) + ")");
    if (u == v) {
      ++seq.obsolete_count;
      continue;
    }
    seq.events.push_back({kind, static_cast<vertex_id>(u), static_cast<vertex_id>(v)});
  }
  if (!header) throw parse_error(line_no, "missing header 'n <count>'");
  return seq;
}

inline edit_sequence parse_sequence_file(const std::string& path) {
  auto in = detail::open(path);
  return parse_sequence(in);
}

inline void write_sequence(std::ostream& out, const edit_sequence& seq) {
  out << "n " << seq.n << '\n';
  for (const edit_event& e : seq.events) {
    if (e.kind != update_kind::insert && e.kind != update_kind::erase) {
      throw std::invalid_argument("only edge events can be written");
    }
    out << (e.kind == update_kind::insert ? 'i' : 'd') << ' ' << e.u << ' ' << e.v << '\n';
  }
}

struct loaded_instance {
  edit_sequence sequence;
  std::vector<std::int64_t> vertex_weights;  // empty unless the file has them
  std::size_t dropped = 0;                   // self-loops, parallel and asymmetric entries
};

// Reads an edit sequence (format "seq") or a METIS graph turned into its
// insertion sequence (format "metis"). An empty format is inferred from the
// extension: .seq is a sequence, anything else METIS.
inline loaded_instance load_instance(const std::string& path, std::string format = {}) {
  if (format.empty()) format = path.size() >= 4 && path.compare(path.size() - 4, 4, ".seq") == 0 ? "seq" : "metis";
  loaded_instance out;
  if (format == "seq") {
    out.sequence = parse_sequence_file(path);
  } else if (format == "metis") {
    metis_graph parsed = parse_metis_file(path);
    out.sequence = static_to_sequence(parsed.graph);
    out.dropped = parsed.self_loops + parsed.parallel_edges + parsed.asymmetric;
    if (parsed.vertex_weights) {
      auto w = parsed.graph.weights();
      out.vertex_weights.assign(w.begin(), w.end());
    }
  } else {
    throw std::invalid_argument("unknown format '" + format + "'");
  }
  return out;
}

// Integers uniform in [lo, hi] from splitmix64(seed), one draw per vertex in
// id order.
inline std::vector<std::int64_t> assign_random_weights(std::size_t n, std::uint64_t seed, std::int64_t lo = 1,
                                                       std::int64_t hi = 100) {
  if (lo > hi) throw std::invalid_argument("weight range is empty");
  if (lo < 0) throw std::invalid_argument("weights must be non-negative");
  splitmix64 rng(seed);
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  std::vector<std::int64_t> w(n);
  for (auto& x : w) x = lo + static_cast<std::int64_t>(rng.below(span));
  return w;
}

inline constexpr std::string_view csv_header =
    "update_index,kind,greedy_added,solved,solver_optimal,weight,cardinality,elapsed_ns";

template <vertex_weight W>
void write_csv_row(std::ostream& out, const basic_update_stats<W>& s, bool timing = true) {
  out << s.update_index << ',' << to_string(s.kind) << ',' << int{s.greedy_added} << ',' << int{s.solved} << ','
      << int{s.solver_optimal} << ',' << s.weight << ',' << s.cardinality << ',';
  if (timing) out << std::chrono::duration_cast<std::chrono::nanoseconds>(s.elapsed).count();
  out << '\n';
}

template <vertex_weight W>
void write_csv(std::ostream& out, const std::vector<basic_update_stats<W>>& trace, bool timing = true) {
  out << csv_header << '\n';
  for (const auto& s : trace) write_csv_row(out, s, timing);
}

}  // namespace dynmis::io
