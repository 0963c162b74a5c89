#include <gtest/gtest.h>

#include "cdia/c4_graph.hpp"
#include "cdia/error.hpp"
#include "cdia/generators.hpp"
#include "cdia/oracle.hpp"
#include "oracles.hpp"

namespace cdia {
namespace {

TEST(RandomBipartite, SaturatedIsK33) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = gen_random_bipartite(3, 3, 9, seed);
    EXPECT_EQ(r.graph.num_edges(), 9u);
    for (Vertex x = 0; x < 3; ++x)
      for (Vertex y = 3; y < 6; ++y) EXPECT_TRUE(r.graph.has_edge(x, y));
  }
}

TEST(RandomBipartite, Empty) {
  const auto r = gen_random_bipartite(5, 5, 0, 1);
  EXPECT_EQ(r.graph.num_vertices(), 10u);
  EXPECT_EQ(r.graph.num_edges(), 0u);
}

TEST(RandomBipartite, Handshake) {
  const auto r = gen_random_bipartite(50, 50, 400, 3);
  std::size_t sum = 0;
  for (Vertex v = 0; v < 100; ++v) sum += r.graph.degree(v);
  EXPECT_EQ(sum, 800u);
  EXPECT_TRUE(r.sides.is_valid_for(r.graph));
}

TEST(RandomBipartite, TooManyEdges) { EXPECT_THROW(gen_random_bipartite(2, 3, 7, 0), ArgumentError); }

TEST(RandomBipartite, DeterministicAndSeedSensitive) {
  const auto a = gen_random_bipartite(20, 20, 100, 5).graph;
  const auto b = gen_random_bipartite(20, 20, 100, 5).graph;
  const auto c = gen_random_bipartite(20, 20, 100, 6).graph;
  EXPECT_TRUE(std::equal(a.edges().begin(), a.edges().end(), b.edges().begin()));
  EXPECT_FALSE(std::equal(a.edges().begin(), a.edges().end(), c.edges().begin()));
}

TEST(IncidencePG2, HeawoodGraph) {
  const auto r = gen_incidence_pg2(2);
  EXPECT_EQ(r.graph.num_vertices(), 14u);
  EXPECT_EQ(r.graph.num_edges(), 21u);
  for (Vertex v = 0; v < 14; ++v) EXPECT_EQ(r.graph.degree(v), 3u);
  EXPECT_EQ(testing::girth_bfs(r.graph), 6u);
}

TEST(IncidencePG2, FormulasAndGirth) {
  for (std::int64_t q : {2, 3, 5, 7}) {
    const auto r = gen_incidence_pg2(q);
    const auto pts = static_cast<std::size_t>(q * q + q + 1);
    EXPECT_EQ(r.graph.num_vertices(), 2 * pts);
    EXPECT_EQ(r.graph.num_edges(), pts * static_cast<std::size_t>(q + 1));
    for (Vertex v = 0; v < r.graph.num_vertices(); ++v) EXPECT_EQ(r.graph.degree(v), static_cast<std::size_t>(q + 1));
    EXPECT_EQ(testing::girth_bfs(r.graph), 6u) << "q=" << q;
    EXPECT_TRUE(r.sides.is_valid_for(r.graph));
  }
}

TEST(IncidencePG2, NoFourCycles) {
  const auto r = gen_incidence_pg2(3);
  EXPECT_EQ(r.graph.num_edges(), 52u);
  EXPECT_EQ(count_c4(r.graph, r.sides), 0u);
  EXPECT_EQ(testing::count_c4_by_subsets(r.graph), 0u);
}

TEST(IncidencePG2, CompositeUnsupported) {
  EXPECT_THROW(gen_incidence_pg2(4), UnsupportedError);
  EXPECT_THROW(gen_polarity(9), UnsupportedError);
}

TEST(Polarity, SmallCases) {
  const Graph g2 = gen_polarity(2);
  EXPECT_EQ(g2.num_vertices(), 7u);
  EXPECT_EQ(testing::count_c4_by_subsets(g2), 0u);
  const Graph g3 = gen_polarity(3);
  EXPECT_EQ(g3.num_vertices(), 13u);
  // (q^2+q+1)(q+1) degree slots minus q+1 loops: q(q+1)^2 / 2 edges.
  EXPECT_EQ(g3.num_edges(), 3u * 16u / 2u);
  EXPECT_EQ(testing::count_c4_by_subsets(g3), 0u);
}

TEST(Polarity, NoDiagonalCycles) {
  for (std::int64_t q : {2, 3, 5}) {
    const Graph g = gen_polarity(q);
    const auto r = oracle::brute_force_cdia(g, 7, 50'000'000);
    EXPECT_FALSE(r.witness.has_value()) << "q=" << q;
    EXPECT_TRUE(r.exhaustive) << "q=" << q;
  }
}

TEST(Cdia, K4AndK33) {
  const Graph k4 = gen_cdia(2);
  EXPECT_EQ(k4.num_edges(), 6u);
  for (Vertex u = 0; u < 4; ++u)
    for (Vertex v = u + 1; v < 4; ++v) EXPECT_TRUE(k4.has_edge(u, v));

  // C^dia_6 is K_{3,3} with parts {0,2,4} and {1,3,5}.
  const Graph k33 = gen_cdia(3);
  EXPECT_EQ(k33.num_edges(), 9u);
  for (Vertex x : {0u, 2u, 4u})
    for (Vertex y : {1u, 3u, 5u}) EXPECT_TRUE(k33.has_edge(x, y));
}

TEST(Cdia, SizesAndParity) {
  for (std::size_t l = 2; l <= 12; ++l) {
    const Graph g = gen_cdia(l);
    EXPECT_EQ(g.num_vertices(), 2 * l);
    EXPECT_EQ(g.num_edges(), 3 * l);
    EXPECT_EQ(testing::is_bipartite_bfs(g), l % 2 == 1) << "l=" << l;
  }
  EXPECT_THROW(gen_cdia(1), ArgumentError);
}

TEST(Prism, Shape) {
  const Graph g = gen_prism(5);
  EXPECT_EQ(g.num_vertices(), 10u);
  EXPECT_EQ(g.num_edges(), 15u);
  EXPECT_THROW(gen_prism(2), ArgumentError);
}

TEST(GeneratorSpec, ValidationAndJson) {
  GeneratorSpec s;
  s.kind = GeneratorKind::RandomBipartite;
  s.params = {{"nx", 4}, {"ny", 4}, {"m", 5}};
  s.seed = 11;
  EXPECT_NO_THROW(s.validate());
  const auto back = generator_spec_from_json(to_json(s));
  EXPECT_EQ(to_json(back), to_json(s));
  EXPECT_EQ(describe(s), "random-bipartite:m=5,nx=4,ny=4");

  GeneratorSpec bad;
  bad.kind = GeneratorKind::Cdia;
  EXPECT_THROW(bad.validate(), ArgumentError);
  bad.params = {{"l", 3}, {"extra", 1}};
  EXPECT_THROW(bad.validate(), ArgumentError);
}

TEST(GeneratorSpec, PureFunctionOfSpec) {
  GeneratorSpec s;
  s.kind = GeneratorKind::RandomBipartite;
  s.params = {{"nx", 10}, {"ny", 12}, {"m", 40}};
  s.seed = 4;
  const auto a = generate(s);
  const auto b = generate(s);
  EXPECT_TRUE(std::equal(a.graph.edges().begin(), a.graph.edges().end(), b.graph.edges().begin()));
  ASSERT_TRUE(a.sides.has_value());
}

}  // namespace
}  // namespace cdia
