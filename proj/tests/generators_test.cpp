#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "rulingsim/edge_list.hpp"
#include "rulingsim/errors.hpp"
#include "rulingsim/generators.hpp"
#include "rulingsim/random.hpp"
#include "test_graphs.hpp"

namespace rulingsim {
namespace {

std::string serialize(const Graph& g) {
  std::ostringstream out;
  write_edge_list(g, out);
  return out.str();
}

TEST(GenerateGnp, ZeroAndOneProbability) {
  Graph empty = generate_gnp({Family::kGnp, 4, 0.0, 1});
  EXPECT_EQ(empty.num_vertices(), 4u);
  EXPECT_EQ(empty.num_edges(), 0u);
  EXPECT_EQ(generate_gnp({Family::kGnp, 3, 1.0, 1}), testing::complete_graph(3));
}

TEST(GenerateGnp, EdgeCountWithinFourSigmaOfBinomialMean) {
  const double pairs = 1000.0 * 999.0 / 2.0;
  const double p = 8.0 / 1000.0;
  const double mean = pairs * p;
  const double sigma = std::sqrt(pairs * p * (1.0 - p));
  Graph g = generate_gnp({Family::kGnp, 1000, p, 7});
  EXPECT_TRUE(g.validate());
  EXPECT_LE(std::abs(double(g.num_edges()) - mean), 4.0 * sigma);
}

TEST(GenerateGnp, PairFrequenciesAreUniform) {
  // Over many seeds every pair of a 6-vertex graph should appear at about
  // rate p; skipping must not favor early or late pairs.
  const double p = 0.3;
  const int runs = 4000;
  std::vector<int> hits(36, 0);
  for (int s = 0; s < runs; ++s) {
    Graph g = generate_gnp({Family::kGnp, 6, p, std::uint64_t(s)});
    for (const Edge& e : g.edges()) ++hits[e.u * 6 + e.v];
  }
  const double sigma = std::sqrt(runs * p * (1 - p));
  for (VertexId u = 0; u < 6; ++u) {
    for (VertexId v = u + 1; v < 6; ++v) EXPECT_LE(std::abs(hits[u * 6 + v] - runs * p), 5 * sigma) << u << "," << v;
  }
}

TEST(GenerateGnp, RejectsProbabilityOutsideUnitInterval) {
  EXPECT_THROW(generate_gnp({Family::kGnp, 10, 1.5, 1}), InputError);
  EXPECT_THROW(generate_gnp({Family::kGnp, 10, -0.1, 1}), InputError);
  EXPECT_THROW(generate_gnp({Family::kTree, 10, 0.5, 1}), InputError);
  EXPECT_THROW(generate_gnp({Family::kGnp, 0, 0.5, 1}), InputError);
}

TEST(GenerateTree, SmallCases) {
  EXPECT_EQ(generate_random_tree({Family::kTree, 1, 0, 1}).num_edges(), 0u);
  Graph two = generate_random_tree({Family::kTree, 2, 0, 1});
  ASSERT_EQ(two.num_edges(), 1u);
  EXPECT_TRUE(two.has_edge(0, 1));
}

TEST(GenerateTree, AcyclicWithNMinusOneEdges) {
  Graph t = generate_random_tree({Family::kTree, 500, 0, 3});
  EXPECT_EQ(t.num_edges(), 499u);
  EXPECT_EQ(girth(t), kInfinite);
  EXPECT_TRUE(t.validate());
}

TEST(GenerateHighGirth, TrivialCases) {
  Graph two = generate_high_girth({Family::kGirth6, 2, 1.0, 1});
  EXPECT_LE(two.num_edges(), 1u);
  EXPECT_EQ(girth(two), kInfinite);
  EXPECT_EQ(generate_high_girth({Family::kGirth6, 50, 0.0, 1}).num_edges(), 0u);
  EXPECT_EQ(generate_high_girth({Family::kGirth6, 1, 3.0, 1}).num_edges(), 0u);
}

TEST(GenerateHighGirth, LargeInstanceHasGirthAtLeastSix) {
  Graph g = generate_high_girth({Family::kGirth6, 2000, 3.0, 11});
  EXPECT_GE(girth(g), 6u);
  EXPECT_TRUE(g.validate());
  // Sparse targets are reached well within the proposal budget.
  EXPECT_EQ(g.num_edges(), 3000u);
}

TEST(GenerateHighGirth, HundredSeedsAllHaveGirthAtLeastSix) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 50 + 19 * seed;  // up to 1931
    Graph g = generate_high_girth({Family::kGirth6, n, 4.0, seed});
    ASSERT_GE(girth(g), 6u) << "seed " << seed;
    ASSERT_TRUE(g.validate());
  }
}

TEST(GenerateHighGirth, DenseTargetStopsAtBudgetWithoutShortCycles) {
  // Far too dense for girth 6 on 30 vertices: the budget ends the loop.
  Graph g = generate_high_girth({Family::kGirth6, 30, 20.0, 5});
  EXPECT_LT(g.num_edges(), 300u);
  EXPECT_GE(girth(g), 6u);
}

TEST(GenerateArboricity, OneForestIsATree) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Graph g = generate_bounded_arboricity({Family::kArboricity, 1 + seed * 7, 1.0, seed});
    ASSERT_EQ(girth(g), kInfinite) << seed;
    ASSERT_EQ(g.num_edges(), g.num_vertices() - 1);
  }
}

TEST(GenerateArboricity, EdgeCountBound) {
  Graph g = generate_bounded_arboricity({Family::kArboricity, 10, 2.0, 4});
  EXPECT_LE(g.num_edges(), 18u);
}

TEST(GenerateArboricity, DensityOfGraphAndSampledSubgraphsBounded) {
  Graph g = generate_bounded_arboricity({Family::kArboricity, 1000, 3.0, 5});
  EXPECT_LE(density(g), 3u);
  RandomStream rng(99, 0, 0);
  for (int sample = 0; sample < 100; ++sample) {
    VertexSet s(g.num_vertices());
    // Mixed sizes, from a handful of vertices up to most of the graph.
    const double keep = 0.02 + 0.96 * rng.uniform01();
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (rng.bernoulli(keep)) s.insert(v);
    }
    if (s.empty()) s.insert(0);
    ASSERT_LE(density(induced_subgraph(g, s).graph), 3u) << "sample " << sample;
  }
}

TEST(GenerateArboricity, RejectsNonIntegerOrZeroForests) {
  EXPECT_THROW(generate_bounded_arboricity({Family::kArboricity, 10, 0.0, 1}), InputError);
  EXPECT_THROW(generate_bounded_arboricity({Family::kArboricity, 10, 1.5, 1}), InputError);
}

TEST(Generators, DeterministicAndValidForEveryFamily) {
  const GenSpec specs[] = {{Family::kGnp, 300, 0.02, 9},
                           {Family::kTree, 300, 0, 9},
                           {Family::kGirth6, 300, 3, 9},
                           {Family::kArboricity, 300, 2, 9}};
  for (const GenSpec& spec : specs) {
    Graph a = generate(spec);
    Graph b = generate(spec);
    EXPECT_TRUE(a.validate());
    EXPECT_EQ(serialize(a), serialize(b)) << family_name(spec.family);
    GenSpec other = spec;
    other.seed = 10;
    EXPECT_NE(serialize(a), serialize(generate(other))) << family_name(spec.family);
  }
}

TEST(Generators, FamilyNamesRoundTrip) {
  for (Family f : {Family::kGnp, Family::kTree, Family::kGirth6, Family::kArboricity}) {
    EXPECT_EQ(parse_family(family_name(f)), f);
  }
  EXPECT_THROW(parse_family("grid"), InputError);
}

}  // namespace
}  // namespace rulingsim
