#include <gtest/gtest.h>

#include "rulingsim/errors.hpp"
#include "rulingsim/generators.hpp"
#include "rulingsim/metrics.hpp"
#include "test_graphs.hpp"

namespace rulingsim {
namespace {

using nlohmann::json;

TEST(Metrics, GeneralRunFields) {
  Graph g = generate({Family::kGnp, 600, 0.05, 2});
  RulingResult r = ruling_set_gg(g, 0.25, 3);
  MetricsDocument doc = make_metrics(g, r, {"rulingsim", "run"});
  EXPECT_EQ(doc.params.algorithm, "gg");
  EXPECT_EQ(doc.params.n, 600u);
  EXPECT_EQ(doc.params.delta, g.max_degree());
  ASSERT_TRUE(doc.params.epsilon.has_value());
  EXPECT_DOUBLE_EQ(*doc.params.epsilon, 0.25);
  EXPECT_FALSE(doc.params.arboricity.has_value());
  EXPECT_EQ(doc.params.seed, 3u);
  EXPECT_EQ(doc.result.t_claimed, 2u);
  EXPECT_EQ(doc.result.size, r.ruling_set.size());
  EXPECT_TRUE(doc.result.verified);
  EXPECT_EQ(doc.rounds.total, doc.rounds.sparsification + doc.rounds.mis);
  EXPECT_EQ(doc.stages.size(), r.params.i_star);
  EXPECT_NE(doc.lemmas.find(kGgRemainingDegree), nullptr);
}

TEST(Metrics, VerifiedFlagIsRecomputed) {
  Graph p3 = testing::path_graph(3);
  RulingResult fake = ruling_set_hg(p3, 1);
  fake.ruling_set = VertexSet::of(3, {0, 1});
  MetricsDocument doc = make_metrics(p3, fake, {});
  EXPECT_FALSE(doc.result.independent);
  EXPECT_FALSE(doc.result.verified);

  fake.ruling_set = VertexSet(3);
  doc = make_metrics(p3, fake, {});
  EXPECT_TRUE(doc.result.independent);
  EXPECT_FALSE(doc.result.ruling_distance.has_value());
  EXPECT_FALSE(doc.result.verified);
}

TEST(Metrics, MisDocument) {
  Graph g = generate({Family::kGnp, 100, 0.1, 5});
  MisResult mis = metivier_mis(g, VertexSet::all(100), 5);
  MetricsDocument doc = make_mis_metrics(g, mis, 5, {"x"});
  EXPECT_EQ(doc.params.algorithm, "mis");
  EXPECT_EQ(doc.result.t_claimed, 1u);
  EXPECT_TRUE(doc.result.verified);
  EXPECT_EQ(doc.rounds.mis, mis.stats.rounds);
  EXPECT_TRUE(doc.stages.empty());
}

TEST(Metrics, RoundTripEmitsIdenticalText) {
  std::vector<std::pair<Graph, RulingResult>> runs;
  Graph dense = generate({Family::kGnp, 700, 0.06, 1});
  runs.emplace_back(dense, ruling_set_gg(dense, 0.25, 1));
  Graph hub = generate({Family::kArboricity, 300, 2, 4});
  runs.emplace_back(hub, ruling_set_arb(hub, 2, 4));
  Graph split = Graph::from_edges(4, {{0, 1}});
  runs.emplace_back(split, ruling_set_hg(split, 2));
  for (const auto& [g, r] : runs) {
    MetricsDocument doc = make_metrics(g, r, {"rulingsim", "run", "--seed", "1"});
    const std::string text = dump_metrics(doc);
    MetricsDocument back = json::parse(text).get<MetricsDocument>();
    EXPECT_EQ(dump_metrics(back), text);
    EXPECT_EQ(back.params, doc.params);
    EXPECT_EQ(back.result, doc.result);
    EXPECT_EQ(back.stages, doc.stages);
    EXPECT_EQ(text.back(), '\n');
  }
}

TEST(Metrics, RejectsOtherSchemaVersions) {
  Graph g = testing::path_graph(4);
  json j = make_metrics(g, ruling_set_hg(g, 1), {});
  j["schema_version"] = 2;
  EXPECT_THROW(j.get<MetricsDocument>(), InputError);
  j["schema_version"] = 1;
  j.erase("rounds");
  EXPECT_THROW(j.get<MetricsDocument>(), json::exception);
}

}  // namespace
}  // namespace rulingsim
