#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rulingsim/graph.hpp"
#include "rulingsim/mis.hpp"
#include "rulingsim/ruling.hpp"
#include "rulingsim/verify.hpp"

namespace rulingsim {

inline constexpr int kMetricsSchemaVersion = 1;

/// Machine-readable record of one algorithm run; see docs/metrics.schema.json.
struct MetricsDocument {
  struct Params {
    std::string algorithm;  // gg | hg | arb | mis
    std::size_t n = 0;
    std::size_t delta = 0;
    std::optional<double> epsilon;
    std::optional<double> f;
    std::optional<std::size_t> arboricity;
    std::size_t i_star = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const Params&, const Params&) = default;
  };
  struct Summary {
    std::size_t size = 0;
    std::size_t t_claimed = 0;
    bool independent = false;
    std::optional<std::size_t> ruling_distance;  // empty means unbounded
    bool verified = false;

    friend bool operator==(const Summary&, const Summary&) = default;
  };
  struct Rounds {
    std::size_t total = 0;
    std::size_t sparsification = 0;
    std::size_t mis = 0;
    std::size_t final_mis = 0;

    friend bool operator==(const Rounds&, const Rounds&) = default;
  };
  struct Messages {
    std::size_t sparsification_messages = 0;
    std::size_t sparsification_bits = 0;
    std::size_t sparsification_max_payload_bits = 0;
    std::size_t mis_messages = 0;
    std::size_t mis_bits = 0;

    friend bool operator==(const Messages&, const Messages&) = default;
  };

  int schema_version = kMetricsSchemaVersion;
  std::vector<std::string> command;
  Params params;
  Summary result;
  Rounds rounds;
  Messages messages;
  std::vector<StageTrace> stages;
  LemmaReport lemmas;
};

/// Verification fields are recomputed from g and the result's set here.
MetricsDocument make_metrics(const Graph& g, const RulingResult& result, std::vector<std::string> command);
MetricsDocument make_mis_metrics(const Graph& g, const MisResult& mis, std::uint64_t seed,
                                 std::vector<std::string> command);

void to_json(nlohmann::json& j, const MetricsDocument& doc);
void from_json(const nlohmann::json& j, MetricsDocument& doc);

/// Lemma report in the metrics layout (also used by sweep aggregates).
nlohmann::json lemmas_to_json(const LemmaReport& report);

/// Two-space indented JSON with a trailing newline.
std::string dump_metrics(const MetricsDocument& doc);

}  // namespace rulingsim
