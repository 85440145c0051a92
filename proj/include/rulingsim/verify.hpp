#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rulingsim/graph.hpp"
#include "rulingsim/ruling.hpp"

namespace rulingsim {

/// No edge of g has both endpoints in s.
bool is_independent(const Graph& g, const VertexSet& s);

/// max_v dist(v, s) by multi-source BFS; kInfinite when some component has
/// no member of s (in particular when s is empty and n > 0).
std::size_t ruling_distance(const Graph& g, const VertexSet& s);

/// Independent and every vertex within distance t of s.
bool check_ruling(const Graph& g, const VertexSet& s, std::size_t t);

/// Same answer as check_ruling, computed by t-fold neighborhood expansion
/// over adjacency-matrix rows instead of BFS. Graphs up to 256 vertices.
bool brute_force_ruling_check(const Graph& g, const VertexSet& s, std::size_t t);

inline constexpr std::size_t kBruteForceMaxVertices = 256;

/// Edges that cross between M_i and M_j (i != j) or between some M_i and the
/// vertices still active after the last stage. Zero for every general-graph
/// run.
std::size_t count_buffer_violations(const Graph& g, const RulingResult& result);

// Degree-bound checks over recorded stages. One LemmaReport holds any number
// of bounds; reports from separate runs merge into batch failure rates.

struct StageCheck {
  std::size_t stage = 0;
  double observed = 0.0;
  double bound = 0.0;
  bool passed = true;
};

struct StageTally {
  std::size_t stage = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_ratio = 0.0;  // max observed / bound

  double failure_rate() const { return trials == 0 ? 0.0 : double(failures) / double(trials); }
};

struct BoundSummary {
  std::string id;
  std::size_t runs = 0;
  std::size_t failed_runs = 0;
  std::vector<StageTally> stages;
  std::vector<StageCheck> last_run;

  double failure_rate() const { return runs == 0 ? 0.0 : double(failed_runs) / double(runs); }
  double max_stage_failure_rate() const;
};

struct LemmaReport {
  std::vector<BoundSummary> bounds;

  const BoundSummary* find(const std::string& id) const;
  bool all_passed() const;
  /// Folds another report in; bounds with the same id accumulate.
  LemmaReport& merge(const LemmaReport& other);
};

// Bound ids.
inline constexpr const char* kGgRemainingDegree = "gg-remaining-degree";
inline constexpr const char* kGgInducedDegree = "gg-induced-degree";
inline constexpr const char* kHgRemainingDegree = "hg-remaining-degree";
inline constexpr const char* kHgInducedDegree = "hg-induced-degree";
inline constexpr const char* kArbRemainingDegree = "arb-remaining-degree";
inline constexpr const char* kArbInducedDegree = "arb-induced-degree";

/// Per stage i: remaining max degree <= delta / f^i and max degree of H[M_i]
/// <= 12 log n f. Throws InputError when the traces do not fit the params.
LemmaReport check_lemma_gg(std::span<const StageTrace> traces, const AlgoParams& params);

enum class GirthVariant { kHighGirth, kArboricity };

/// Per stage i: remaining max degree <= delta^(1/2^i) and max degree of
/// G[M1], G[M2] <= 12 a log n (a = 1 for the high-girth variant).
LemmaReport check_lemma_hg(std::span<const StageTrace> traces, const AlgoParams& params,
                           GirthVariant variant);

/// check_lemma_gg or check_lemma_hg according to result.algorithm.
LemmaReport check_lemmas(const RulingResult& result);

}  // namespace rulingsim
