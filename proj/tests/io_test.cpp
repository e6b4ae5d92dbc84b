#include <gtest/gtest.h>

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "support/generators.hpp"

using namespace dynmis;

namespace {

io::metis_graph metis(const std::string& text) {
  std::istringstream in(text);
  return io::parse_metis(in);
}

edit_sequence sequence(const std::string& text) {
  std::istringstream in(text);
  return io::parse_sequence(in);
}

std::size_t error_line(auto&& f) {
  try {
    f();
  } catch (const io::parse_error& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Metis, Path) {
  const auto g = metis("3 2\n2\n1 3\n2\n").graph;
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(1, 2));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(Metis, VertexWeights) {
  const auto parsed = metis("% comment\n3 2 10\n5 2\n7 1 3\n9 2\n");
  EXPECT_TRUE(parsed.vertex_weights);
  EXPECT_EQ(parsed.graph.weight(0), 5);
  EXPECT_EQ(parsed.graph.weight(1), 7);
  EXPECT_EQ(parsed.graph.weight(2), 9);
  EXPECT_EQ(parsed.graph.num_edges(), 2u);
}

TEST(Metis, EdgeWeightsAreSkipped) {
  const auto g = metis("3 2 11\n4 2 10\n4 1 10 3 20\n4 2 20\n").graph;
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.weight(1), 4);
}

TEST(Metis, SelfLoopsAndDuplicatesDropped) {
  const auto parsed = metis("2 1\n1 2 2\n1\n");
  EXPECT_EQ(parsed.self_loops, 1u);
  EXPECT_EQ(parsed.parallel_edges, 1u);
  EXPECT_EQ(parsed.graph.num_edges(), 1u);
}

TEST(Metis, AsymmetricEntriesAreSymmetrized) {
  const auto parsed = metis("3 1\n2\n\n\n");
  EXPECT_EQ(parsed.asymmetric, 1u);
  EXPECT_TRUE(parsed.graph.has_edge(1, 0));
}

TEST(Metis, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line([] { metis("3 2\n2\n1 4\n2\n"); }), 3u);
  EXPECT_EQ(error_line([] { metis("3 two\n"); }), 1u);
  EXPECT_EQ(error_line([] { metis("3 2\n2\n1 3\n"); }), 3u);
  EXPECT_EQ(error_line([] { metis("1 0 10\n-4\n"); }), 2u);
  EXPECT_EQ(error_line([] { metis("1 0\n\n5\n"); }), 3u);
}

TEST(StaticToSequence, FirstAppearanceOrder) {
  const auto g = metis("3 3\n2 3\n1 3\n1 2\n").graph;
  const edit_sequence seq = io::static_to_sequence(g);
  const std::vector<edit_event> expected{
      {update_kind::insert, 0, 1}, {update_kind::insert, 0, 2}, {update_kind::insert, 1, 2}};
  EXPECT_EQ(seq.events, expected);
  EXPECT_EQ(testgen::replay(dynamic_graph(3), seq).num_edges(), 3u);
}

TEST(StaticToSequence, EdgesListedTwiceAppearOnce) {
  const auto g = metis("3 1\n\n3\n2\n").graph;
  const edit_sequence seq = io::static_to_sequence(g);
  ASSERT_EQ(seq.events.size(), 1u);
  EXPECT_EQ(seq.events[0], (edit_event{update_kind::insert, 1, 2}));
}

TEST(StaticToSequence, EmptyGraph) { EXPECT_TRUE(io::static_to_sequence(static_graph{}).events.empty()); }

TEST(Sequence, Parse) {
  const edit_sequence seq = sequence("# demo\nn 3\ni 0 1\nd 0 1 # trailing\n");
  EXPECT_EQ(seq.n, 3u);
  ASSERT_EQ(seq.events.size(), 2u);
  EXPECT_EQ(seq.events[1], (edit_event{update_kind::erase, 0, 1}));
}

TEST(Sequence, SelfLoopsAreObsolete) {
  const edit_sequence seq = sequence("n 2\ni 0 0\ni 0 1\n");
  EXPECT_EQ(seq.events.size(), 1u);
  EXPECT_EQ(seq.obsolete_count, 1u);
}

TEST(Sequence, Errors) {
  EXPECT_EQ(error_line([] { sequence("n 3\nx 0 1\n"); }), 2u);
  EXPECT_EQ(error_line([] { sequence("i 0 1\n"); }), 1u);
  EXPECT_EQ(error_line([] { sequence("n 3\n\ni 0 3\n"); }), 3u);
  EXPECT_EQ(error_line([] { sequence("n 3\ni 0\n"); }), 2u);
}

TEST(Sequence, RoundTrip) {
  splitmix64 rng(81);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.below(50);
    const edit_sequence seq = testgen::mixed_sequence(n, rng.below(200), 0.6, rng);
    std::stringstream buffer;
    io::write_sequence(buffer, seq);
    EXPECT_EQ(io::parse_sequence(buffer), seq);
  }
}

TEST(Weights, DeterministicPerSeed) {
  EXPECT_EQ(io::assign_random_weights(1000, 5), io::assign_random_weights(1000, 5));
  EXPECT_NE(io::assign_random_weights(1000, 5), io::assign_random_weights(1000, 6));
}

TEST(Weights, DegenerateRange) {
  for (auto w : io::assign_random_weights(100, 3, 1, 1)) EXPECT_EQ(w, 1);
  EXPECT_THROW(io::assign_random_weights(10, 3, 5, 4), std::invalid_argument);
}

TEST(Weights, MeanOfUniformOneToHundred) {
  // Mean 50.5, standard error about 0.09 at n = 1e5.
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 12345ull}) {
    const auto w = io::assign_random_weights(100000, seed);
    const double mean = static_cast<double>(std::accumulate(w.begin(), w.end(), std::int64_t{0})) / 1e5;
    EXPECT_GE(mean, 48.0);
    EXPECT_LE(mean, 53.0);
    EXPECT_EQ(*std::min_element(w.begin(), w.end()), 1);
    EXPECT_EQ(*std::max_element(w.begin(), w.end()), 100);
  }
}

TEST(Csv, IdenticalWithoutTiming) {
  splitmix64 rng(82);
  const std::size_t n = 60;
  const edit_sequence seq = testgen::mixed_sequence(n, 300, 0.7, rng);
  const dynamic_graph g(n, io::assign_random_weights(n, 3));
  config cfg = config::one_fast();
  cfg.weighting = mode::weighted;
  std::ostringstream a, b;
  io::write_csv(a, run_sequence(g, seq, cfg).trace, false);
  io::write_csv(b, run_sequence(g, seq, cfg).trace, false);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, io::csv_header.size()), io::csv_header);
}
