#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "dynmis/types.hpp"

namespace dynmis {

enum class update_kind : std::uint8_t { insert, erase, node_insert, node_erase };

inline std::string_view to_string(update_kind kind) {
  switch (kind) {
    case update_kind::insert: return "insert";
    case update_kind::erase: return "delete";
    case update_kind::node_insert: return "node_insert";
    case update_kind::node_erase: return "node_delete";
  }
  return "?";
}

struct edit_event {
  update_kind kind;
  vertex_id u;
  vertex_id v;

  friend bool operator==(const edit_event&, const edit_event&) = default;
};

// Ordered edge insertions and deletions over the vertex set {0, ..., n-1}.
// obsolete_count counts events dropped while reading (self-loops) or while
// replaying (duplicate insertions, deletions of missing edges).
struct edit_sequence {
  std::size_t n = 0;
  std::vector<edit_event> events;
  std::size_t obsolete_count = 0;

  friend bool operator==(const edit_sequence&, const edit_sequence&) = default;
};

}  // namespace dynmis
