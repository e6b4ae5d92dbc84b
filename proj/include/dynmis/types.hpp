#pragma once

#include <chrono>
#include <concepts>
#include <cstdint>
#include <limits>
#include <type_traits>

namespace dynmis {

using vertex_id = std::uint32_t;

inline constexpr vertex_id invalid_vertex = std::numeric_limits<vertex_id>::max();

// Vertex weights: any non-negative arithmetic type. The benchmark harness uses
// integers; the algorithms only need +, -, * and ordering.
template <class W>
concept vertex_weight = std::is_arithmetic_v<W> && !std::is_same_v<W, bool>;

enum class mode { cardinality, weighted };

using clock = std::chrono::steady_clock;

// Deadline from a duration; saturates instead of overflowing for "untimed" runs.
inline clock::time_point deadline_after(clock::duration limit) {
  auto now = clock::now();
  if (limit >= clock::time_point::max() - now) return clock::time_point::max();
  return now + limit;
}

// SplitMix64 (Steele, Lea, Flood 2014). Used for every random decision so
// results are reproducible across platforms and standard libraries.
class splitmix64 {
 public:
  using result_type = std::uint64_t;

  explicit splitmix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return 0;
    const std::uint64_t limit = max() - (max() % bound);
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % bound;
  }

  bool coin() { return ((*this)() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace dynmis
