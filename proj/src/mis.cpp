#include "rulingsim/mis.hpp"

#include <cassert>
#include <utility>

#include "rulingsim/errors.hpp"
#include "rulingsim/random.hpp"

namespace rulingsim {
namespace {

constexpr std::uint32_t kMisValueTag = 0x4d4953;  // "MIS"

std::uint64_t draw(const NodeContext& ctx, std::size_t phase) {
  return ctx.random(make_tag(kMisValueTag, static_cast<std::uint32_t>(phase)))();
}

}  // namespace

MetivierMisProgram::State MetivierMisProgram::init(const NodeContext& ctx,
                                                   Outbox<Message>& out) const {
  State state;
  state.active_degree = ctx.degree();
  state.value = draw(ctx, 0);
  out.broadcast({Message::Kind::kValue, state.value, ctx.id});
  return state;
}

void MetivierMisProgram::step(State& state, const NodeContext& ctx,
                              std::span<const Envelope<Message>> inbox,
                              Outbox<Message>& out) const {
  switch (ctx.round % kRoundsPerPhase) {
    case 1: {
      assert(inbox.size() == state.active_degree);
      bool local_max = true;
      for (const auto& env : inbox) {
        const auto& m = env.payload;
        if (std::pair(m.value, m.id) > std::pair(state.value, ctx.id)) {
          local_max = false;
          break;
        }
      }
      if (local_max) {
        state.status = MisStatus::kIn;
        out.broadcast({Message::Kind::kJoined, 0, ctx.id});
        out.halt();
      }
      break;
    }
    case 2:
      if (!inbox.empty()) {
        state.status = MisStatus::kOut;
        out.broadcast({Message::Kind::kRetired, 0, ctx.id});
        out.halt();
      }
      break;
    default:
      state.active_degree -= inbox.size();
      state.value = draw(ctx, ctx.round / kRoundsPerPhase);
      out.broadcast({Message::Kind::kValue, state.value, ctx.id});
      break;
  }
}

MisResult metivier_mis(const Graph& g, const VertexSet& s, std::uint64_t seed,
                       const EngineOptions& options) {
  MisResult result{VertexSet(g.num_vertices()), {}};
  if (s.empty()) return result;
  auto record = run_on_induced(g, s, MetivierMisProgram{}, seed, options);
  for (std::size_t k = 0; k < record.ids.size(); ++k) {
    if (record.verdicts[k] == MisStatus::kIn) result.members.insert(record.ids[k]);
  }
  result.stats = std::move(record.stats);
  return result;
}

TwoStageMisResult mis_two_stage(const Graph& g, const VertexSet& m1, const VertexSet& m2,
                                std::uint64_t seed, const EngineOptions& options) {
  for (VertexId v : m1.members()) {
    if (m2.contains(v)) throw InputError("mis_two_stage needs disjoint sets; both contain " + std::to_string(v));
  }
  MisResult first = metivier_mis(g, m1, derive_seed(seed, 1), options);

  VertexSet rest(g.num_vertices());
  for (VertexId v : m2.members()) {
    bool dominated = false;
    for (VertexId w : g.neighbors(v)) {
      if (first.members.contains(w)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) rest.insert(v);
  }
  MisResult second = metivier_mis(g, rest, derive_seed(seed, 2), options);

  TwoStageMisResult result{std::move(first.members), std::move(first.stats), std::move(second.stats)};
  result.members |= second.members;
  return result;
}

bool check_mis(const Graph& g, const VertexSet& s, const VertexSet& candidate) {
  const std::size_t n = g.num_vertices();
  for (VertexId v : candidate.members()) {
    if (v >= n || !s.contains(v)) return false;
  }
  for (VertexId v : s.members()) {
    if (v >= n) return false;
    bool covered = candidate.contains(v);
    for (VertexId w : g.neighbors(v)) {
      if (!s.contains(w)) continue;
      if (candidate.contains(v) && candidate.contains(w)) return false;
      covered = covered || candidate.contains(w);
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace rulingsim
