#pragma once

// Synchronous message-passing simulator. Every non-halted node runs one step
// per round; whatever a node emits in round r is in its neighbors' inboxes
// in round r + 1. Init counts as round 0: it may already send and halt.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rulingsim/errors.hpp"
#include "rulingsim/graph.hpp"
#include "rulingsim/random.hpp"

namespace rulingsim {

/// What a node can see about itself in a given round.
struct NodeContext {
  VertexId id;
  std::span<const VertexId> neighbors;
  std::size_t round;  // 0 during init
  std::uint64_t seed;

  std::size_t degree() const { return neighbors.size(); }
  RandomStream random(std::uint64_t tag) const { return RandomStream(seed, id, tag); }
};

/// Inboxes list envelopes in ascending sender id.
template <typename Msg>
struct Envelope {
  VertexId from;
  Msg payload;
};

template <typename Msg>
class Outbox {
 public:
  /// Same payload to every neighbor.
  void broadcast(Msg msg) { broadcasts_.push_back(std::move(msg)); }
  /// Payload to a single neighbor; `to` must be adjacent.
  void send(VertexId to, Msg msg) { directed_.emplace_back(to, std::move(msg)); }
  /// No further steps after this one; this step's messages still go out.
  void halt() { halted_ = true; }
  bool halted() const { return halted_; }

 private:
  template <typename>
  friend class SynchronousEngine;

  void clear() {
    broadcasts_.clear();
    directed_.clear();
    halted_ = false;
  }

  std::vector<Msg> broadcasts_;
  std::vector<std::pair<VertexId, Msg>> directed_;
  bool halted_ = false;
};

/// Per-node behavior under the engine. `init` builds the node state, `step`
/// consumes the previous round's inbox, `output` reports the final verdict.
template <typename P>
concept NodeProgram =
    requires(const P& program, typename P::State& state, const NodeContext& ctx,
             std::span<const Envelope<typename P::Message>> inbox,
             Outbox<typename P::Message>& out, const typename P::Message& msg) {
      { program.init(ctx, out) } -> std::same_as<typename P::State>;
      { program.step(state, ctx, inbox, out) } -> std::same_as<void>;
      { program.output(std::as_const(state)) } -> std::same_as<typename P::Verdict>;
      { P::payload_bits(msg) } -> std::convertible_to<std::size_t>;
    };

struct RoundSnapshot {
  std::size_t round = 0;
  std::size_t active_nodes = 0;
  std::size_t messages = 0;
  std::size_t payload_bits = 0;

  friend bool operator==(const RoundSnapshot&, const RoundSnapshot&) = default;
};

struct RunStats {
  std::size_t rounds = 0;
  std::size_t messages = 0;      // one per (sender, receiver) delivery
  std::size_t payload_bits = 0;  // summed over messages
  std::size_t max_payload_bits = 0;
  std::vector<RoundSnapshot> snapshots;  // filled when requested

  RunStats& operator+=(const RunStats& other) {
    rounds += other.rounds;
    messages += other.messages;
    payload_bits += other.payload_bits;
    max_payload_bits = std::max(max_payload_bits, other.max_payload_bits);
    return *this;
  }

  friend bool operator==(const RunStats&, const RunStats&) = default;
};

template <typename Verdict>
struct RunRecord {
  RunStats stats;
  // ids[k] is the vertex (in the caller's graph) whose verdict is verdicts[k].
  std::vector<VertexId> ids;
  std::vector<Verdict> verdicts;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Thrown when nodes are still running after the round cap.
class RoundCapExceeded : public std::runtime_error {
 public:
  RoundCapExceeded(RunStats partial, std::size_t unhalted)
      : std::runtime_error("round cap of " + std::to_string(partial.rounds) + " reached with " +
                           std::to_string(unhalted) + " node(s) still running"),
        partial_(std::move(partial)),
        unhalted_(unhalted) {}

  const RunStats& partial() const { return partial_; }
  std::size_t unhalted() const { return unhalted_; }

 private:
  RunStats partial_;
  std::size_t unhalted_;
};

struct EngineOptions {
  std::size_t round_cap = 0;  // 0 selects default_round_cap(n)
  bool record_snapshots = false;
  // Nonzero: step nodes in a per-round shuffled order derived from this
  // value. Results must not change; used to exercise the round barrier.
  std::uint64_t step_order_seed = 0;
};

/// 64 * (log2 n)^2, at least 64.
inline std::size_t default_round_cap(std::size_t n) {
  const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  return std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(64.0 * lg * lg)));
}

template <typename Msg>
class SynchronousEngine {
 public:
  template <NodeProgram P>
    requires std::same_as<typename P::Message, Msg>
  static RunRecord<typename P::Verdict> run(const Graph& g, const P& program, std::uint64_t seed,
                                            const EngineOptions& options) {
    const std::size_t n = g.num_vertices();
    const std::size_t cap = options.round_cap == 0 ? default_round_cap(n) : options.round_cap;

    RunRecord<typename P::Verdict> record;
    RunStats& stats = record.stats;
    std::vector<typename P::State> states;
    states.reserve(n);
    std::vector<std::uint8_t> halted(n, 0);
    std::vector<std::vector<Envelope<Msg>>> inbox(n);
    std::vector<std::vector<Envelope<Msg>>> next(n);
    Outbox<Msg> out;
    RoundSnapshot snapshot;
    std::vector<std::size_t> order(n);
    for (std::size_t v = 0; v < n; ++v) order[v] = v;

    auto deliver = [&](VertexId from) {
      const auto adj = g.neighbors(from);
      for (const Msg& msg : out.broadcasts_) {
        const std::size_t bits = P::payload_bits(msg);
        for (VertexId to : adj) {
          if (!halted[to]) next[to].push_back({from, msg});
        }
        snapshot.messages += adj.size();
        snapshot.payload_bits += bits * adj.size();
        if (!adj.empty()) stats.max_payload_bits = std::max(stats.max_payload_bits, bits);
      }
      for (auto& [to, msg] : out.directed_) {
        if (!std::binary_search(adj.begin(), adj.end(), to)) {
          throw std::logic_error("node " + std::to_string(from) + " sent to non-neighbor " +
                                 std::to_string(to));
        }
        const std::size_t bits = P::payload_bits(msg);
        snapshot.messages += 1;
        snapshot.payload_bits += bits;
        stats.max_payload_bits = std::max(stats.max_payload_bits, bits);
        if (!halted[to]) next[to].push_back({from, std::move(msg)});
      }
      if (out.halted()) halted[from] = 1;
    };

    auto close_round = [&](std::size_t round, std::size_t active) {
      stats.messages += snapshot.messages;
      stats.payload_bits += snapshot.payload_bits;
      if (options.record_snapshots) {
        snapshot.round = round;
        snapshot.active_nodes = active;
        stats.snapshots.push_back(snapshot);
      }
      snapshot = RoundSnapshot{};
    };

    for (std::size_t v = 0; v < n; ++v) {
      const auto id = static_cast<VertexId>(v);
      out.clear();
      states.push_back(program.init(NodeContext{id, g.neighbors(id), 0, seed}, out));
      deliver(id);
    }
    close_round(0, n);
    // A node that halted after mail was queued for it never reads that mail.
    purge_halted(next, halted);

    std::size_t running = static_cast<std::size_t>(std::count(halted.begin(), halted.end(), 0));
    while (running > 0) {
      if (stats.rounds == cap) throw RoundCapExceeded(stats, running);
      ++stats.rounds;
      std::swap(inbox, next);
      const std::size_t active = running;
      if (options.step_order_seed != 0) {
        RandomStream shuffle(options.step_order_seed, stats.rounds, 0);
        for (std::size_t k = n; k > 1; --k) std::swap(order[k - 1], order[shuffle.below(k)]);
      }
      for (std::size_t v : order) {
        if (halted[v]) continue;
        const auto id = static_cast<VertexId>(v);
        out.clear();
        program.step(states[v], NodeContext{id, g.neighbors(id), stats.rounds, seed},
                     std::span<const Envelope<Msg>>(inbox[v]), out);
        deliver(id);
      }
      for (auto& box : inbox) box.clear();
      purge_halted(next, halted);
      if (options.step_order_seed != 0) {
        // Inboxes are always ordered by sender id.
        for (auto& box : next) {
          std::stable_sort(box.begin(), box.end(),
                           [](const Envelope<Msg>& a, const Envelope<Msg>& b) { return a.from < b.from; });
        }
      }
      close_round(stats.rounds, active);
      running = static_cast<std::size_t>(std::count(halted.begin(), halted.end(), 0));
    }

    record.ids.resize(n);
    record.verdicts.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
      record.ids[v] = static_cast<VertexId>(v);
      record.verdicts.push_back(program.output(states[v]));
    }
    return record;
  }

 private:
  static void purge_halted(std::vector<std::vector<Envelope<Msg>>>& boxes,
                           const std::vector<std::uint8_t>& halted) {
    for (std::size_t v = 0; v < boxes.size(); ++v) {
      if (halted[v]) boxes[v].clear();
    }
  }
};

/// Runs `program` on every vertex of g until all nodes halt.
template <NodeProgram P>
RunRecord<typename P::Verdict> run_synchronous(const Graph& g, const P& program, std::uint64_t seed,
                                               const EngineOptions& options = {}) {
  return SynchronousEngine<typename P::Message>::run(g, program, seed, options);
}

/// Runs `program` on g[s]; record.ids holds the original ids of s. Node
/// contexts (ids, randomness) are those of the induced graph.
template <NodeProgram P>
RunRecord<typename P::Verdict> run_on_induced(const Graph& g, const VertexSet& s, const P& program,
                                              std::uint64_t seed, const EngineOptions& options = {}) {
  if (s.empty()) throw InputError("run_on_induced needs a nonempty vertex set");
  InducedSubgraph sub = induced_subgraph(g, s);
  auto record = run_synchronous(sub.graph, program, seed, options);
  record.ids = std::move(sub.original);
  return record;
}

}  // namespace rulingsim
