#pragma once

#include <cstdint>
#include <span>

#include "rulingsim/engine.hpp"
#include "rulingsim/graph.hpp"

namespace rulingsim {

enum class MisStatus : std::uint8_t { kUndecided, kIn, kOut };

struct MisMessage {
  enum class Kind : std::uint8_t { kValue, kJoined, kRetired };
  Kind kind = Kind::kValue;
  std::uint64_t value = 0;
  VertexId id = 0;
};

/// Local-maximum MIS. Each phase takes three rounds: active nodes broadcast a
/// fresh 64-bit value with their id; a node whose (value, id) beats every
/// active neighbor joins and announces; neighbors of joiners retire and
/// announce so the survivors can drop them before the next phase.
class MetivierMisProgram {
 public:
  using Message = MisMessage;
  using Verdict = MisStatus;

  struct State {
    MisStatus status = MisStatus::kUndecided;
    std::uint64_t value = 0;
    std::size_t active_degree = 0;
  };

  State init(const NodeContext& ctx, Outbox<Message>& out) const;
  void step(State& state, const NodeContext& ctx, std::span<const Envelope<Message>> inbox,
            Outbox<Message>& out) const;
  Verdict output(const State& state) const { return state.status; }

  static std::size_t payload_bits(const Message& msg) {
    return msg.kind == Message::Kind::kValue ? 64 + 32 : 1;
  }

  static constexpr std::size_t kRoundsPerPhase = 3;
};

struct MisResult {
  VertexSet members;
  RunStats stats;
};

/// MIS of g[s]; an empty s yields an empty set without running the engine.
MisResult metivier_mis(const Graph& g, const VertexSet& s, std::uint64_t seed,
                       const EngineOptions& options = {});

struct TwoStageMisResult {
  VertexSet members;
  RunStats first;   // MIS of g[m1]
  RunStats second;  // MIS of g[m2 \ N(I1)]
};

/// I1 = MIS(g[m1]), I2 = MIS(g[m2 \ N(I1)]), result I1 u I2, which is an MIS
/// of g[m1 u m2]. Throws InputError when m1 and m2 intersect.
TwoStageMisResult mis_two_stage(const Graph& g, const VertexSet& m1, const VertexSet& m2,
                                std::uint64_t seed, const EngineOptions& options = {});

/// True iff candidate is an independent set of g[s] dominating all of s.
bool check_mis(const Graph& g, const VertexSet& s, const VertexSet& candidate);

}  // namespace rulingsim
