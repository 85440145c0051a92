#include "rulingsim/verify.hpp"

#include <algorithm>
#include <bitset>
#include <queue>

#include "rulingsim/errors.hpp"

namespace rulingsim {

bool is_independent(const Graph& g, const VertexSet& s) {
  for (const Edge& e : g.edges()) {
    if (s.contains(e.u) && s.contains(e.v)) return false;
  }
  return true;
}

std::size_t ruling_distance(const Graph& g, const VertexSet& s) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> dist(n, kInfinite);
  std::queue<VertexId> frontier;
  for (std::size_t v = 0; v < n; ++v) {
    if (s.contains(static_cast<VertexId>(v))) {
      dist[v] = 0;
      frontier.push(static_cast<VertexId>(v));
    }
  }
  std::size_t reached = frontier.size();
  std::size_t farthest = 0;
  while (!frontier.empty()) {
    const VertexId x = frontier.front();
    frontier.pop();
    farthest = std::max(farthest, dist[x]);
    for (VertexId y : g.neighbors(x)) {
      if (dist[y] != kInfinite) continue;
      dist[y] = dist[x] + 1;
      ++reached;
      frontier.push(y);
    }
  }
  return reached == n ? farthest : kInfinite;
}

bool check_ruling(const Graph& g, const VertexSet& s, std::size_t t) {
  return is_independent(g, s) && ruling_distance(g, s) <= t;
}

bool brute_force_ruling_check(const Graph& g, const VertexSet& s, std::size_t t) {
  using Row = std::bitset<kBruteForceMaxVertices>;
  const std::size_t n = g.num_vertices();
  if (n > kBruteForceMaxVertices) {
    throw InputError("brute_force_ruling_check supports at most 256 vertices, got " + std::to_string(n));
  }
  std::vector<Row> adjacency(n);
  for (const Edge& e : g.edges()) {
    adjacency[e.u].set(e.v);
    adjacency[e.v].set(e.u);
  }
  Row members;
  for (std::size_t v = 0; v < n; ++v) members[v] = s.contains(static_cast<VertexId>(v));

  for (std::size_t v = 0; v < n; ++v) {
    if (members[v] && (adjacency[v] & members).any()) return false;
  }

  Row all;
  for (std::size_t v = 0; v < n; ++v) all.set(v);
  Row covered = members;
  for (std::size_t round = 0; round < t && covered != all; ++round) {
    Row grown = covered;
    for (std::size_t v = 0; v < n; ++v) {
      if (!covered[v] && (adjacency[v] & covered).any()) grown.set(v);
    }
    if (grown == covered) break;
    covered = grown;
  }
  return covered == all;
}

std::size_t count_buffer_violations(const Graph& g, const RulingResult& result) {
  if (result.placement.size() != g.num_vertices()) {
    throw InputError("placement table does not match the graph");
  }
  std::size_t violations = 0;
  for (const Edge& e : g.edges()) {
    const Placement a = result.placement[e.u];
    const Placement b = result.placement[e.v];
    const bool a_marked = a.role == Role::kMarked;
    const bool b_marked = b.role == Role::kMarked;
    if (a_marked && b_marked && a.stage != b.stage) ++violations;
    if ((a_marked && b.role == Role::kRemaining) || (b_marked && a.role == Role::kRemaining)) {
      ++violations;
    }
  }
  return violations;
}

double BoundSummary::max_stage_failure_rate() const {
  double worst = 0.0;
  for (const StageTally& s : stages) worst = std::max(worst, s.failure_rate());
  return worst;
}

const BoundSummary* LemmaReport::find(const std::string& id) const {
  for (const BoundSummary& b : bounds) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

bool LemmaReport::all_passed() const {
  return std::all_of(bounds.begin(), bounds.end(), [](const BoundSummary& b) { return b.failed_runs == 0; });
}

LemmaReport& LemmaReport::merge(const LemmaReport& other) {
  for (const BoundSummary& incoming : other.bounds) {
    auto it = std::find_if(bounds.begin(), bounds.end(),
                           [&](const BoundSummary& b) { return b.id == incoming.id; });
    if (it == bounds.end()) {
      bounds.push_back(incoming);
      continue;
    }
    it->runs += incoming.runs;
    it->failed_runs += incoming.failed_runs;
    it->last_run = incoming.last_run;
    for (const StageTally& tally : incoming.stages) {
      auto st = std::find_if(it->stages.begin(), it->stages.end(),
                             [&](const StageTally& s) { return s.stage == tally.stage; });
      if (st == it->stages.end()) {
        it->stages.push_back(tally);
      } else {
        st->trials += tally.trials;
        st->failures += tally.failures;
        st->worst_ratio = std::max(st->worst_ratio, tally.worst_ratio);
      }
    }
    std::sort(it->stages.begin(), it->stages.end(),
              [](const StageTally& x, const StageTally& y) { return x.stage < y.stage; });
  }
  return *this;
}

namespace {

void require_consistent(std::span<const StageTrace> traces, const AlgoParams& params) {
  if (traces.size() != params.i_star) {
    throw InputError("expected " + std::to_string(params.i_star) + " stage traces, got " +
                     std::to_string(traces.size()));
  }
  for (std::size_t k = 0; k < traces.size(); ++k) {
    const StageTrace& t = traces[k];
    if (t.index != k + 1) throw InputError("stage traces out of order at position " + std::to_string(k));
    if (t.marked + t.marked_low + t.buffered + t.remaining > params.n ||
        t.remaining_max_degree > params.delta || t.marked_max_degree > params.delta ||
        t.marked_low_max_degree > params.delta) {
      throw InputError("stage " + std::to_string(t.index) + " trace exceeds the graph parameters");
    }
  }
}

// Builds a single-run summary from per-stage (observed, bound) pairs.
template <typename Observe, typename Bound>
BoundSummary summarize(std::string id, std::span<const StageTrace> traces, Observe&& observe,
                       Bound&& bound) {
  BoundSummary summary;
  summary.id = std::move(id);
  summary.runs = 1;
  bool failed = false;
  for (const StageTrace& t : traces) {
    StageCheck check;
    check.stage = t.index;
    check.observed = observe(t);
    check.bound = bound(t.index);
    check.passed = check.observed <= check.bound;
    failed = failed || !check.passed;
    summary.last_run.push_back(check);

    StageTally tally;
    tally.stage = t.index;
    tally.trials = 1;
    tally.failures = check.passed ? 0 : 1;
    tally.worst_ratio = check.bound > 0.0 ? check.observed / check.bound : 0.0;
    summary.stages.push_back(tally);
  }
  summary.failed_runs = failed ? 1 : 0;
  return summary;
}

}  // namespace

LemmaReport check_lemma_gg(std::span<const StageTrace> traces, const AlgoParams& params) {
  require_consistent(traces, params);
  LemmaReport report;
  report.bounds.push_back(summarize(
      kGgRemainingDegree, traces, [](const StageTrace& t) { return double(t.remaining_max_degree); },
      [&](std::size_t i) { return params.gg_degree_threshold(i); }));
  report.bounds.push_back(summarize(
      kGgInducedDegree, traces, [](const StageTrace& t) { return double(t.marked_max_degree); },
      [&](std::size_t) { return params.gg_induced_bound(); }));
  return report;
}

LemmaReport check_lemma_hg(std::span<const StageTrace> traces, const AlgoParams& params,
                           GirthVariant variant) {
  require_consistent(traces, params);
  const bool arb = variant == GirthVariant::kArboricity;
  if (!arb && params.arboricity != 1) {
    throw InputError("high-girth bounds need arboricity factor 1");
  }
  LemmaReport report;
  report.bounds.push_back(summarize(
      arb ? kArbRemainingDegree : kHgRemainingDegree, traces,
      [](const StageTrace& t) { return double(t.remaining_max_degree); },
      [&](std::size_t i) { return params.hg_degree_threshold(i); }));
  report.bounds.push_back(summarize(
      arb ? kArbInducedDegree : kHgInducedDegree, traces,
      [](const StageTrace& t) { return double(std::max(t.marked_max_degree, t.marked_low_max_degree)); },
      [&](std::size_t) { return params.hg_induced_bound(); }));
  return report;
}

LemmaReport check_lemmas(const RulingResult& result) {
  switch (result.algorithm) {
    case Algorithm::kGeneral: return check_lemma_gg(result.stages, result.params);
    case Algorithm::kHighGirth: return check_lemma_hg(result.stages, result.params, GirthVariant::kHighGirth);
    case Algorithm::kArboricity:
      return check_lemma_hg(result.stages, result.params, GirthVariant::kArboricity);
  }
  return {};
}

}  // namespace rulingsim
