#include <gtest/gtest.h>

#include <queue>

#include "rulingsim/engine.hpp"
#include "rulingsim/generators.hpp"
#include "rulingsim/mis.hpp"
#include "test_graphs.hpp"

namespace rulingsim {
namespace {

struct HaltAtInit {
  using Message = int;
  using State = int;
  using Verdict = int;
  State init(const NodeContext&, Outbox<Message>& out) const {
    out.halt();
    return 7;
  }
  void step(State&, const NodeContext&, std::span<const Envelope<Message>>, Outbox<Message>&) const {
    ADD_FAILURE() << "step after halting in init";
  }
  Verdict output(const State& s) const { return s; }
  static std::size_t payload_bits(const Message&) { return 32; }
};

// Vertex 0 starts informed; everyone forwards once on first contact.
struct Flood {
  using Message = std::size_t;  // round in which the message was sent
  struct State {
    std::size_t informed_at = 0;
  };
  using Verdict = std::size_t;
  VertexId source = 0;

  State init(const NodeContext& ctx, Outbox<Message>& out) const {
    if (ctx.id != source) return {};
    out.broadcast(0);
    out.halt();
    return {0};
  }
  void step(State& s, const NodeContext& ctx, std::span<const Envelope<Message>> inbox,
            Outbox<Message>& out) const {
    for (const auto& env : inbox) EXPECT_EQ(env.payload + 1, ctx.round) << "causality";
    if (inbox.empty()) return;
    s.informed_at = ctx.round;
    out.broadcast(ctx.round);
    out.halt();
  }
  Verdict output(const State& s) const { return s.informed_at; }
  static std::size_t payload_bits(const Message&) { return 1; }
};

std::vector<std::size_t> bfs_distances(const Graph& g, VertexId source) {
  std::vector<std::size_t> dist(g.num_vertices(), kInfinite);
  std::queue<VertexId> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    VertexId x = q.front();
    q.pop();
    for (VertexId y : g.neighbors(x)) {
      if (dist[y] == kInfinite) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
  }
  return dist;
}

// Node v halts after exactly v steps and counts them.
struct Staggered {
  using Message = char;
  struct State {
    std::size_t steps = 0;
  };
  using Verdict = std::size_t;
  State init(const NodeContext& ctx, Outbox<Message>& out) const {
    if (ctx.id == 0) out.halt();
    return {};
  }
  void step(State& s, const NodeContext& ctx, std::span<const Envelope<Message>>, Outbox<Message>& out) const {
    ++s.steps;
    if (s.steps == ctx.id) out.halt();
  }
  Verdict output(const State& s) const { return s.steps; }
  static std::size_t payload_bits(const Message&) { return 8; }
};

struct NeverHalts {
  using Message = char;
  using State = char;
  using Verdict = char;
  State init(const NodeContext&, Outbox<Message>&) const { return 0; }
  void step(State&, const NodeContext&, std::span<const Envelope<Message>>, Outbox<Message>& out) const {
    out.broadcast('x');
  }
  Verdict output(const State& s) const { return s; }
  static std::size_t payload_bits(const Message&) { return 8; }
};

// Each node tells every neighbor that neighbor's own id, then checks the
// replies it got.
struct PerNeighbor {
  using Message = VertexId;
  struct State {
    bool ok = false;
  };
  using Verdict = bool;
  State init(const NodeContext& ctx, Outbox<Message>& out) const {
    for (VertexId w : ctx.neighbors) out.send(w, w);
    return {};
  }
  void step(State& s, const NodeContext& ctx, std::span<const Envelope<Message>> inbox,
            Outbox<Message>& out) const {
    s.ok = inbox.size() == ctx.degree();
    for (std::size_t k = 0; k < inbox.size(); ++k) {
      s.ok = s.ok && inbox[k].payload == ctx.id && inbox[k].from == ctx.neighbors[k];
    }
    out.halt();
  }
  Verdict output(const State& s) const { return s.ok; }
  static std::size_t payload_bits(const Message&) { return 32; }
};

struct SendsToStranger {
  using Message = char;
  using State = char;
  using Verdict = char;
  State init(const NodeContext& ctx, Outbox<Message>& out) const {
    if (ctx.id == 0) out.send(2, 'x');
    out.halt();
    return 0;
  }
  void step(State&, const NodeContext&, std::span<const Envelope<Message>>, Outbox<Message>&) const {}
  Verdict output(const State& s) const { return s; }
  static std::size_t payload_bits(const Message&) { return 8; }
};

TEST(Engine, HaltingInInitTakesZeroRounds) {
  auto record = run_synchronous(testing::path_graph(4), HaltAtInit{}, 1);
  EXPECT_EQ(record.stats.rounds, 0u);
  EXPECT_EQ(record.verdicts, std::vector<int>(4, 7));
  EXPECT_EQ(record.ids, (std::vector<VertexId>{0, 1, 2, 3}));
}

TEST(Engine, FloodOnPathTakesKMinusOneRounds) {
  for (std::size_t k : {1u, 2u, 5u, 17u}) {
    Graph p = testing::path_graph(k);
    auto record = run_synchronous(p, Flood{}, 1);
    EXPECT_EQ(record.stats.rounds, k - 1);
  }
}

TEST(Engine, FloodMatchesBfsEccentricityOnRandomTrees) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph t = generate({Family::kTree, 200, 0, seed});
    const auto source = static_cast<VertexId>(seed * 13 % 200);
    auto dist = bfs_distances(t, source);
    auto record = run_synchronous(t, Flood{source}, seed);
    EXPECT_EQ(record.stats.rounds, *std::max_element(dist.begin(), dist.end()));
    for (VertexId v = 0; v < 200; ++v) EXPECT_EQ(record.verdicts[v], dist[v]);
  }
}

TEST(Engine, RoundsEqualLongestRunningNode) {
  auto record = run_synchronous(testing::edgeless_graph(9), Staggered{}, 1);
  EXPECT_EQ(record.stats.rounds, 8u);
  for (VertexId v = 0; v < 9; ++v) EXPECT_EQ(record.verdicts[v], v);
}

TEST(Engine, RoundCapExceededCarriesPartialStats) {
  EngineOptions options;
  options.round_cap = 5;
  try {
    run_synchronous(testing::path_graph(3), NeverHalts{}, 1, options);
    FAIL() << "expected timeout";
  } catch (const RoundCapExceeded& e) {
    EXPECT_EQ(e.partial().rounds, 5u);
    EXPECT_EQ(e.unhalted(), 3u);
    EXPECT_EQ(e.partial().messages, 5u * 4u);
  }
}

TEST(Engine, PerNeighborPayloadsReachTheRightNode) {
  Graph g = generate({Family::kGnp, 40, 0.2, 3});
  auto record = run_synchronous(g, PerNeighbor{}, 1);
  for (bool ok : record.verdicts) EXPECT_TRUE(ok);
  EXPECT_EQ(record.stats.messages, 2 * g.num_edges());
  EXPECT_EQ(record.stats.payload_bits, 64 * g.num_edges());
}

TEST(Engine, SendingToNonNeighborIsAProgramBug) {
  EXPECT_THROW(run_synchronous(testing::path_graph(3), SendsToStranger{}, 1), std::logic_error);
}

TEST(Engine, BroadcastBitAccounting) {
  Graph star = testing::star_graph(5);
  EngineOptions options;
  options.record_snapshots = true;
  auto record = run_synchronous(star, Flood{}, 1, options);
  // Round 0: the center reaches 5 leaves; round 1: each leaf answers once.
  EXPECT_EQ(record.stats.messages, 10u);
  EXPECT_EQ(record.stats.payload_bits, 10u);
  EXPECT_EQ(record.stats.max_payload_bits, 1u);
  ASSERT_EQ(record.stats.snapshots.size(), 2u);
  EXPECT_EQ(record.stats.snapshots[0].messages, 5u);
  EXPECT_EQ(record.stats.snapshots[1].active_nodes, 5u);
}

TEST(Engine, DeterministicAcrossRunsAndStepOrders) {
  Graph g = generate({Family::kGnp, 300, 0.03, 8});
  EngineOptions plain;
  plain.record_snapshots = true;
  auto a = run_synchronous(g, MetivierMisProgram{}, 42, plain);
  auto b = run_synchronous(g, MetivierMisProgram{}, 42, plain);
  EXPECT_EQ(a, b);
  for (std::uint64_t order : {1u, 2u, 99u}) {
    EngineOptions shuffled = plain;
    shuffled.step_order_seed = order;
    EXPECT_EQ(run_synchronous(g, MetivierMisProgram{}, 42, shuffled), a);
  }
  EXPECT_NE(run_synchronous(g, MetivierMisProgram{}, 43, plain).verdicts, a.verdicts);
}

TEST(RunOnInduced, RejectsEmptySet) {
  EXPECT_THROW(run_on_induced(testing::path_graph(3), VertexSet(3), MetivierMisProgram{}, 1), InputError);
}

TEST(RunOnInduced, IsolatedVertexJoinsWithinOnePhase) {
  Graph g = testing::path_graph(5);
  auto record = run_on_induced(g, VertexSet::of(5, {3}), MetivierMisProgram{}, 1);
  ASSERT_EQ(record.ids, (std::vector<VertexId>{3}));
  EXPECT_EQ(record.verdicts[0], MisStatus::kIn);
  EXPECT_LE(record.stats.rounds, MetivierMisProgram::kRoundsPerPhase);
}

TEST(RunOnInduced, MatchesRunOnMaterializedSubgraph) {
  Graph g = generate({Family::kGnp, 120, 0.08, 2});
  RandomStream rng(5, 0, 0);
  for (int trial = 0; trial < 20; ++trial) {
    VertexSet s(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (rng.bernoulli(0.5)) s.insert(v);
    }
    if (s.empty()) continue;
    auto direct = run_on_induced(g, s, MetivierMisProgram{}, trial);
    InducedSubgraph sub = induced_subgraph(g, s);
    auto materialized = run_synchronous(sub.graph, MetivierMisProgram{}, trial);
    EXPECT_EQ(direct.verdicts, materialized.verdicts);
    EXPECT_EQ(direct.stats, materialized.stats);
    EXPECT_EQ(direct.ids, sub.original);
  }
}

TEST(RandomStream, KeyedByTriple) {
  RandomStream a(1, 2, 3), b(1, 2, 3), c(1, 2, 4), d(1, 3, 3), e(2, 2, 3);
  const auto first = a();
  EXPECT_EQ(first, b());
  EXPECT_NE(first, c());
  EXPECT_NE(first, d());
  EXPECT_NE(first, e());
}

TEST(RandomStream, UniformAndBelowAreCalibrated) {
  RandomStream rng(7, 0, 0);
  double sum = 0;
  std::vector<int> buckets(6, 0);
  const int draws = 60000;
  for (int k = 0; k < draws; ++k) {
    sum += rng.uniform01();
    ++buckets[rng.below(6)];
  }
  EXPECT_NEAR(sum / draws, 0.5, 0.01);
  for (int count : buckets) EXPECT_NEAR(count, draws / 6.0, 500);
  EXPECT_FALSE(rng.bernoulli(0.0));
  EXPECT_TRUE(rng.bernoulli(1.0));
}

TEST(Engine, DefaultRoundCap) {
  EXPECT_EQ(default_round_cap(1), 64u);
  EXPECT_EQ(default_round_cap(1024), 6400u);
}

}  // namespace
}  // namespace rulingsim
