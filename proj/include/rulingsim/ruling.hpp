#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "rulingsim/engine.hpp"
#include "rulingsim/graph.hpp"

namespace rulingsim {

enum class Algorithm { kGeneral, kHighGirth, kArboricity };

std::string_view algorithm_name(Algorithm algorithm);  // "gg", "hg", "arb"

/// Inputs shared by every node. All logarithms are base 2.
struct AlgoParams {
  std::size_t n = 0;
  std::size_t delta = 0;
  double epsilon = 0.0;  // general graphs only
  double f = 0.0;        // 2^((log n)^epsilon), general graphs only
  std::size_t i_star = 0;
  std::size_t arboricity = 1;
  double c_join = 6.0;
  double c_deg = 12.0;

  double log_n() const;

  // General graphs, stage i >= 1.
  double gg_degree_threshold(std::size_t i) const;  // delta / f^i
  double gg_join_probability(std::size_t i) const;  // min(1, c_join log n f^i / delta)
  double gg_induced_bound() const;                  // c_deg log n f

  // High-girth and bounded-arboricity graphs, stage i >= 1. The join
  // probabilities and the induced bound carry the factor `arboricity`,
  // which is 1 for the high-girth algorithm.
  double hg_degree_threshold(std::size_t i) const;  // delta^(1/2^i)
  double hg_high_join_probability(std::size_t i) const;
  double hg_low_join_probability(std::size_t i) const;
  double hg_induced_bound() const;  // c_deg a log n

  friend bool operator==(const AlgoParams&, const AlgoParams&) = default;
};

/// f = 2^((log2 n)^epsilon) and i* = max(0, ceil(log_f delta) - 1).
/// Requires n >= 1, 1 <= delta < n and 0 < epsilon < 1.
AlgoParams gg_params(std::size_t n, std::size_t delta, double epsilon);

/// i* = 0 when delta <= 6 log2 n, else the smallest i >= 1 with
/// delta^(1/2^i) <= 6 log2 n. Requires n >= 2 and delta >= 1.
AlgoParams hg_params(std::size_t n, std::size_t delta);

enum class Role : std::uint8_t {
  kRemaining,  // still active when the stage loop ended
  kMarked,     // M_i (general) or M1 (high girth)
  kMarkedLow,  // M2 (high girth)
  kBuffer,     // W_i / W
};

struct Placement {
  std::uint32_t stage = 0;  // 0 for kRemaining
  Role role = Role::kRemaining;

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct StageTrace {
  std::size_t index = 0;
  double degree_threshold = 0.0;
  double join_probability = 0.0;      // M_i, or M1
  double low_join_probability = 0.0;  // M2; 0 for general graphs
  std::size_t active_before = 0;
  std::size_t marked = 0;      // |M_i| or |M1|
  std::size_t marked_low = 0;  // |M2|
  std::size_t buffered = 0;    // |W_i| or |W|
  std::size_t remaining = 0;   // active vertices after the stage
  std::size_t remaining_max_degree = 0;
  std::size_t marked_max_degree = 0;      // max degree of H[M_i] or G[M1]
  std::size_t marked_low_max_degree = 0;  // max degree of G[M2]
  std::size_t sparsification_rounds = 0;
  std::size_t mis_rounds = 0;

  friend bool operator==(const StageTrace&, const StageTrace&) = default;
};

struct RulingResult {
  Algorithm algorithm = Algorithm::kGeneral;
  VertexSet ruling_set;
  std::size_t t_claimed = 0;
  std::vector<StageTrace> stages;
  AlgoParams params;
  std::uint64_t seed = 0;
  std::vector<Placement> placement;  // per vertex of the input graph
  std::size_t final_mis_input = 0;   // vertices handed to the closing MIS
  std::size_t final_mis_rounds = 0;
  RunStats sparsification;  // summed over stage programs
  RunStats mis;             // summed over every MIS call

  std::size_t total_rounds() const { return sparsification.rounds + mis.rounds; }
};

struct RulingOptions {
  EngineOptions engine;
};

/// An engine run inside the algorithm hit its round cap.
class RulingTimeout : public std::runtime_error {
 public:
  RulingTimeout(const RoundCapExceeded& cause, std::vector<StageTrace> completed)
      : std::runtime_error(cause.what()), partial_(cause.partial()), stages_(std::move(completed)) {}

  const RunStats& partial_run() const { return partial_; }
  const std::vector<StageTrace>& completed_stages() const { return stages_; }

 private:
  RunStats partial_;
  std::vector<StageTrace> stages_;
};

/// 2-ruling set of any graph: i* sparsification stages (two rounds each)
/// followed by one MIS on H[(u M_i) u V].
RulingResult ruling_set_gg(const Graph& g, double epsilon, std::uint64_t seed,
                           const RulingOptions& options = {});

/// 3-ruling set aimed at girth >= 6 graphs and trees: per stage three
/// sparsification rounds plus a two-stage MIS over M1 and M2.
RulingResult ruling_set_hg(const Graph& g, std::uint64_t seed, const RulingOptions& options = {});

/// ruling_set_hg with both join probabilities scaled by the arboricity bound a.
RulingResult ruling_set_arb(const Graph& g, std::size_t a, std::uint64_t seed,
                            const RulingOptions& options = {});

}  // namespace rulingsim
