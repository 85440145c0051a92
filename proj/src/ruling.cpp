#include "rulingsim/ruling.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "rulingsim/errors.hpp"
#include "rulingsim/mis.hpp"
#include "rulingsim/random.hpp"

namespace rulingsim {
namespace {

constexpr std::uint32_t kStageCoinTag = 0x535447;  // "STG"
constexpr std::uint32_t kStageMisTag = 0x534d49;   // "SMI"
constexpr std::uint32_t kFinalMisTag = 0x464d49;   // "FMI"

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

double gg_f(std::size_t n, double epsilon) {
  return std::exp2(std::pow(std::log2(static_cast<double>(n)), epsilon));
}

// Membership announcements during sparsification are single bits; the round
// they arrive in tells the receiver what they mean.
enum class Signal : std::uint8_t { kMarked, kNear, kLeaving };

// Per-node knowledge carried from one stage to the next.
struct NodeInputs {
  std::span<const std::uint8_t> active;
  std::span<const std::size_t> active_degree;
};

struct StageState {
  bool active = false;
  std::size_t degree = 0;  // neighbors still active
  bool marked = false;
  bool marked_low = false;
  bool near = false;  // adjacent to a marked vertex (high-girth stages)
  bool buffered = false;

  bool leaving() const { return marked || marked_low || buffered; }
};

// One stage of the general-graph algorithm. Round 1: neighbors of M_i join
// W_i, and every leaver says so. Round 2: survivors drop leavers from their
// active degree.
class GeneralStageProgram {
 public:
  using Message = Signal;
  using State = StageState;
  using Verdict = StageState;

  GeneralStageProgram(NodeInputs inputs, std::size_t stage, double threshold, double probability)
      : inputs_(inputs), stage_(stage), threshold_(threshold), probability_(probability) {}

  State init(const NodeContext& ctx, Outbox<Message>& out) const {
    State s;
    s.active = inputs_.active[ctx.id] != 0;
    s.degree = inputs_.active_degree[ctx.id];
    if (!s.active) return s;
    auto coin = ctx.random(make_tag(kStageCoinTag, static_cast<std::uint32_t>(stage_)));
    if (static_cast<double>(s.degree) > threshold_ && coin.bernoulli(probability_)) {
      s.marked = true;
      out.broadcast(Signal::kMarked);
    }
    return s;
  }

  void step(State& s, const NodeContext& ctx, std::span<const Envelope<Message>> inbox,
            Outbox<Message>& out) const {
    if (ctx.round == 1) {
      if (s.active && !s.marked && !inbox.empty()) s.buffered = true;
      if (s.active && s.leaving()) out.broadcast(Signal::kLeaving);
      return;
    }
    if (s.active && !s.leaving()) s.degree -= inbox.size();
    out.halt();
  }

  Verdict output(const State& s) const { return s; }
  static std::size_t payload_bits(const Message&) { return 1; }

 private:
  NodeInputs inputs_;
  std::size_t stage_;
  double threshold_;
  double probability_;
};

// One stage of the high-girth / arboricity algorithm. Round 1: neighbors of
// M1 u M2 relay a bit. Round 2: anything within two active hops joins W and
// every leaver says so. Round 3: survivors update their active degree.
class HighGirthStageProgram {
 public:
  using Message = Signal;
  using State = StageState;
  using Verdict = StageState;

  HighGirthStageProgram(NodeInputs inputs, std::size_t stage, double threshold, double high_p,
                        double low_p)
      : inputs_(inputs), stage_(stage), threshold_(threshold), high_p_(high_p), low_p_(low_p) {}

  State init(const NodeContext& ctx, Outbox<Message>& out) const {
    State s;
    s.active = inputs_.active[ctx.id] != 0;
    s.degree = inputs_.active_degree[ctx.id];
    if (!s.active) return s;
    auto coin = ctx.random(make_tag(kStageCoinTag, static_cast<std::uint32_t>(stage_)));
    if (static_cast<double>(s.degree) > threshold_) {
      s.marked = coin.bernoulli(high_p_);
    } else {
      s.marked_low = coin.bernoulli(low_p_);
    }
    if (s.marked || s.marked_low) out.broadcast(Signal::kMarked);
    return s;
  }

  void step(State& s, const NodeContext& ctx, std::span<const Envelope<Message>> inbox,
            Outbox<Message>& out) const {
    const bool in_m = s.marked || s.marked_low;
    switch (ctx.round) {
      case 1:
        if (s.active && !in_m && !inbox.empty()) {
          s.near = true;
          out.broadcast(Signal::kNear);
        }
        return;
      case 2:
        if (s.active && !in_m && (s.near || !inbox.empty())) s.buffered = true;
        if (s.active && s.leaving()) out.broadcast(Signal::kLeaving);
        return;
      default:
        if (s.active && !s.leaving()) s.degree -= inbox.size();
        out.halt();
    }
  }

  Verdict output(const State& s) const { return s; }
  static std::size_t payload_bits(const Message&) { return 1; }

 private:
  NodeInputs inputs_;
  std::size_t stage_;
  double threshold_;
  double high_p_;
  double low_p_;
};

// State the orchestrator keeps between engine invocations.
struct Residual {
  std::vector<std::uint8_t> active;
  std::vector<std::size_t> degree;

  explicit Residual(const Graph& g) : active(g.num_vertices(), 1), degree(g.num_vertices()) {
    for (std::size_t v = 0; v < g.num_vertices(); ++v) degree[v] = g.degree(static_cast<VertexId>(v));
  }

  NodeInputs inputs() const { return {active, degree}; }

  std::size_t count() const { return static_cast<std::size_t>(std::count(active.begin(), active.end(), 1)); }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (std::size_t v = 0; v < active.size(); ++v) {
      if (active[v]) best = std::max(best, degree[v]);
    }
    return best;
  }

  VertexSet as_set() const {
    VertexSet s(active.size());
    for (std::size_t v = 0; v < active.size(); ++v) {
      if (active[v]) s.insert(static_cast<VertexId>(v));
    }
    return s;
  }
};

struct StageSets {
  VertexSet marked;
  VertexSet marked_low;
  std::size_t buffered = 0;
};

// Folds a stage run back into the residual graph and the placement table.
template <typename Verdict>
StageSets absorb(const RunRecord<Verdict>& record, std::uint32_t stage, Residual& residual,
                 std::vector<Placement>& placement) {
  const std::size_t n = residual.active.size();
  StageSets sets{VertexSet(n), VertexSet(n), 0};
  for (std::size_t k = 0; k < record.ids.size(); ++k) {
    const VertexId v = record.ids[k];
    const StageState& s = record.verdicts[k];
    if (!s.active) continue;
    if (s.marked) {
      sets.marked.insert(v);
      placement[v] = {stage, Role::kMarked};
    } else if (s.marked_low) {
      sets.marked_low.insert(v);
      placement[v] = {stage, Role::kMarkedLow};
    } else if (s.buffered) {
      ++sets.buffered;
      placement[v] = {stage, Role::kBuffer};
    }
    residual.active[v] = s.leaving() ? 0 : 1;
    residual.degree[v] = s.degree;
  }
  return sets;
}

template <typename Program>
auto run_stage(const Graph& g, const Program& program, std::uint64_t seed, const RulingOptions& options,
               const std::vector<StageTrace>& completed) {
  try {
    return run_synchronous(g, program, seed, options.engine);
  } catch (const RoundCapExceeded& e) {
    throw RulingTimeout(e, completed);
  }
}

template <typename Fn>
auto guard_mis(const std::vector<StageTrace>& completed, Fn&& fn) {
  try {
    return fn();
  } catch (const RoundCapExceeded& e) {
    throw RulingTimeout(e, completed);
  }
}

void require_vertices(const Graph& g) {
  if (g.num_vertices() == 0) throw InputError("ruling set algorithms need n >= 1");
}

RulingResult run_high_girth(const Graph& g, Algorithm algorithm, std::size_t a, std::uint64_t seed,
                            const RulingOptions& options) {
  require_vertices(g);
  if (a < 1) throw InputError("arboricity bound must be >= 1");
  const std::size_t n = g.num_vertices();
  const std::size_t delta = g.max_degree();

  RulingResult result;
  result.algorithm = algorithm;
  result.t_claimed = 3;
  result.seed = seed;
  if (n >= 2 && delta >= 1) {
    result.params = hg_params(n, delta);
  } else {
    result.params.n = n;
    result.params.delta = delta;
  }
  result.params.arboricity = a;
  const AlgoParams& params = result.params;
  result.ruling_set = VertexSet(n);
  result.placement.assign(n, Placement{});

  Residual residual(g);
  for (std::size_t i = 1; i <= params.i_star; ++i) {
    StageTrace trace;
    trace.index = i;
    trace.degree_threshold = params.hg_degree_threshold(i);
    trace.join_probability = params.hg_high_join_probability(i);
    trace.low_join_probability = params.hg_low_join_probability(i);
    trace.active_before = residual.count();

    HighGirthStageProgram program(residual.inputs(), i, trace.degree_threshold, trace.join_probability,
                                  trace.low_join_probability);
    auto record = run_stage(g, program, seed, options, result.stages);
    StageSets sets = absorb(record, static_cast<std::uint32_t>(i), residual, result.placement);

    auto two = guard_mis(result.stages, [&] {
      return mis_two_stage(g, sets.marked, sets.marked_low,
                           derive_seed(seed, make_tag(kStageMisTag, static_cast<std::uint32_t>(i))),
                           options.engine);
    });
    result.ruling_set |= two.members;

    trace.marked = sets.marked.size();
    trace.marked_low = sets.marked_low.size();
    trace.buffered = sets.buffered;
    trace.remaining = residual.count();
    trace.remaining_max_degree = residual.max_degree();
    trace.marked_max_degree = induced_max_degree(g, sets.marked);
    trace.marked_low_max_degree = induced_max_degree(g, sets.marked_low);
    trace.sparsification_rounds = record.stats.rounds;
    trace.mis_rounds = two.first.rounds + two.second.rounds;
    result.sparsification += record.stats;
    result.mis += two.first;
    result.mis += two.second;
    result.stages.push_back(trace);
  }

  const VertexSet rest = residual.as_set();
  result.final_mis_input = rest.size();
  auto closing = guard_mis(result.stages, [&] {
    return metivier_mis(g, rest, derive_seed(seed, make_tag(kFinalMisTag, 0)), options.engine);
  });
  result.final_mis_rounds = closing.stats.rounds;
  result.mis += closing.stats;
  result.ruling_set |= closing.members;
  return result;
}

}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kGeneral: return "gg";
    case Algorithm::kHighGirth: return "hg";
    case Algorithm::kArboricity: return "arb";
  }
  return "?";
}

double AlgoParams::log_n() const { return n >= 1 ? std::log2(static_cast<double>(n)) : 0.0; }

double AlgoParams::gg_degree_threshold(std::size_t i) const {
  return static_cast<double>(delta) / std::pow(f, static_cast<double>(i));
}

double AlgoParams::gg_join_probability(std::size_t i) const {
  if (delta == 0) return 1.0;
  return clamp_probability(c_join * log_n() * std::pow(f, static_cast<double>(i)) / static_cast<double>(delta));
}

double AlgoParams::gg_induced_bound() const { return c_deg * log_n() * f; }

double AlgoParams::hg_degree_threshold(std::size_t i) const {
  return std::pow(static_cast<double>(delta), std::ldexp(1.0, -static_cast<int>(i)));
}

double AlgoParams::hg_high_join_probability(std::size_t i) const {
  const double scale = hg_degree_threshold(i - 1);
  return clamp_probability(c_join * static_cast<double>(arboricity) * log_n() / scale);
}

double AlgoParams::hg_low_join_probability(std::size_t i) const {
  const double scale = hg_degree_threshold(i);
  return clamp_probability(c_join * static_cast<double>(arboricity) * log_n() / scale);
}

double AlgoParams::hg_induced_bound() const { return c_deg * static_cast<double>(arboricity) * log_n(); }

AlgoParams gg_params(std::size_t n, std::size_t delta, double epsilon) {
  if (n < 1) throw InputError("gg_params needs n >= 1");
  if (delta < 1 || delta >= n) {
    throw InputError("gg_params needs 1 <= delta < n, got delta = " + std::to_string(delta) +
                     ", n = " + std::to_string(n));
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie strictly between 0 and 1");
  AlgoParams p;
  p.n = n;
  p.delta = delta;
  p.epsilon = epsilon;
  p.f = gg_f(n, epsilon);
  // Smallest k >= 1 with f^k >= delta; i* = k - 1.
  std::size_t k = 1;
  while (std::pow(p.f, static_cast<double>(k)) < static_cast<double>(delta)) ++k;
  p.i_star = k - 1;
  return p;
}

AlgoParams hg_params(std::size_t n, std::size_t delta) {
  if (n < 2) throw InputError("hg_params needs n >= 2");
  if (delta < 1) throw InputError("hg_params needs delta >= 1");
  AlgoParams p;
  p.n = n;
  p.delta = delta;
  const double limit = p.c_join * p.log_n();
  if (static_cast<double>(delta) > limit) {
    std::size_t i = 1;
    while (p.hg_degree_threshold(i) > limit) ++i;
    p.i_star = i;
  }
  return p;
}

RulingResult ruling_set_gg(const Graph& g, double epsilon, std::uint64_t seed, const RulingOptions& options) {
  require_vertices(g);
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie strictly between 0 and 1");
  const std::size_t n = g.num_vertices();
  const std::size_t delta = g.max_degree();

  RulingResult result;
  result.algorithm = Algorithm::kGeneral;
  result.t_claimed = 2;
  result.seed = seed;
  if (delta >= 1) {
    result.params = gg_params(n, delta, epsilon);
  } else {
    result.params.n = n;
    result.params.epsilon = epsilon;
    result.params.f = gg_f(n, epsilon);
  }
  const AlgoParams& params = result.params;
  result.placement.assign(n, Placement{});

  Residual residual(g);
  VertexSet closing_input(n);
  for (std::size_t i = 1; i <= params.i_star; ++i) {
    StageTrace trace;
    trace.index = i;
    trace.degree_threshold = params.gg_degree_threshold(i);
    trace.join_probability = params.gg_join_probability(i);
    trace.active_before = residual.count();

    GeneralStageProgram program(residual.inputs(), i, trace.degree_threshold, trace.join_probability);
    auto record = run_stage(g, program, seed, options, result.stages);
    StageSets sets = absorb(record, static_cast<std::uint32_t>(i), residual, result.placement);

    trace.marked = sets.marked.size();
    trace.buffered = sets.buffered;
    trace.remaining = residual.count();
    trace.remaining_max_degree = residual.max_degree();
    trace.marked_max_degree = induced_max_degree(g, sets.marked);
    trace.sparsification_rounds = record.stats.rounds;
    result.sparsification += record.stats;
    result.stages.push_back(trace);
    closing_input |= sets.marked;
  }

  closing_input |= residual.as_set();
  result.final_mis_input = closing_input.size();
  auto closing = guard_mis(result.stages, [&] {
    return metivier_mis(g, closing_input, derive_seed(seed, make_tag(kFinalMisTag, 0)), options.engine);
  });
  result.final_mis_rounds = closing.stats.rounds;
  result.mis = closing.stats;
  result.ruling_set = std::move(closing.members);
  return result;
}

RulingResult ruling_set_hg(const Graph& g, std::uint64_t seed, const RulingOptions& options) {
  return run_high_girth(g, Algorithm::kHighGirth, 1, seed, options);
}

RulingResult ruling_set_arb(const Graph& g, std::size_t a, std::uint64_t seed, const RulingOptions& options) {
  return run_high_girth(g, Algorithm::kArboricity, a, seed, options);
}

}  // namespace rulingsim
