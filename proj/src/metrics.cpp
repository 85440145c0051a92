#include "rulingsim/metrics.hpp"

#include "rulingsim/errors.hpp"

namespace rulingsim {

using nlohmann::json;

namespace {

template <typename T>
json nullable(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

template <typename T>
std::optional<T> read_nullable(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

json stage_to_json(const StageTrace& t) {
  return json{{"index", t.index},
              {"degree_threshold", t.degree_threshold},
              {"join_probability", t.join_probability},
              {"low_join_probability", t.low_join_probability},
              {"active_before", t.active_before},
              {"marked", t.marked},
              {"marked_low", t.marked_low},
              {"buffered", t.buffered},
              {"remaining", t.remaining},
              {"remaining_max_degree", t.remaining_max_degree},
              {"marked_max_degree", t.marked_max_degree},
              {"marked_low_max_degree", t.marked_low_max_degree},
              {"sparsification_rounds", t.sparsification_rounds},
              {"mis_rounds", t.mis_rounds}};
}

StageTrace stage_from_json(const json& j) {
  StageTrace t;
  j.at("index").get_to(t.index);
  j.at("degree_threshold").get_to(t.degree_threshold);
  j.at("join_probability").get_to(t.join_probability);
  j.at("low_join_probability").get_to(t.low_join_probability);
  j.at("active_before").get_to(t.active_before);
  j.at("marked").get_to(t.marked);
  j.at("marked_low").get_to(t.marked_low);
  j.at("buffered").get_to(t.buffered);
  j.at("remaining").get_to(t.remaining);
  j.at("remaining_max_degree").get_to(t.remaining_max_degree);
  j.at("marked_max_degree").get_to(t.marked_max_degree);
  j.at("marked_low_max_degree").get_to(t.marked_low_max_degree);
  j.at("sparsification_rounds").get_to(t.sparsification_rounds);
  j.at("mis_rounds").get_to(t.mis_rounds);
  return t;
}

}  // namespace

json lemmas_to_json(const LemmaReport& report) {
  json bounds = json::array();
  for (const BoundSummary& b : report.bounds) {
    json stages = json::array();
    for (const StageTally& s : b.stages) {
      stages.push_back({{"stage", s.stage},
                        {"trials", s.trials},
                        {"failures", s.failures},
                        {"failure_rate", s.failure_rate()},
                        {"worst_ratio", s.worst_ratio}});
    }
    json checks = json::array();
    for (const StageCheck& c : b.last_run) {
      checks.push_back({{"stage", c.stage}, {"observed", c.observed}, {"bound", c.bound}, {"passed", c.passed}});
    }
    bounds.push_back({{"id", b.id},
                      {"runs", b.runs},
                      {"failed_runs", b.failed_runs},
                      {"failure_rate", b.failure_rate()},
                      {"stages", stages},
                      {"checks", checks}});
  }
  return json{{"bounds", bounds}};
}

namespace {

LemmaReport lemmas_from_json(const json& j) {
  LemmaReport report;
  for (const json& jb : j.at("bounds")) {
    BoundSummary b;
    jb.at("id").get_to(b.id);
    jb.at("runs").get_to(b.runs);
    jb.at("failed_runs").get_to(b.failed_runs);
    for (const json& js : jb.at("stages")) {
      StageTally s;
      js.at("stage").get_to(s.stage);
      js.at("trials").get_to(s.trials);
      js.at("failures").get_to(s.failures);
      js.at("worst_ratio").get_to(s.worst_ratio);
      b.stages.push_back(s);
    }
    for (const json& jc : jb.at("checks")) {
      StageCheck c;
      jc.at("stage").get_to(c.stage);
      jc.at("observed").get_to(c.observed);
      jc.at("bound").get_to(c.bound);
      jc.at("passed").get_to(c.passed);
      b.last_run.push_back(c);
    }
    report.bounds.push_back(std::move(b));
  }
  return report;
}

void fill_verification(MetricsDocument& doc, const Graph& g, const VertexSet& set, std::size_t t) {
  doc.result.size = set.size();
  doc.result.t_claimed = t;
  doc.result.independent = is_independent(g, set);
  const std::size_t distance = ruling_distance(g, set);
  if (distance != kInfinite) doc.result.ruling_distance = distance;
  doc.result.verified = doc.result.independent && distance <= t;
}

}  // namespace

MetricsDocument make_metrics(const Graph& g, const RulingResult& result, std::vector<std::string> command) {
  MetricsDocument doc;
  doc.command = std::move(command);
  const AlgoParams& p = result.params;
  doc.params.algorithm = std::string(algorithm_name(result.algorithm));
  doc.params.n = p.n;
  doc.params.delta = p.delta;
  if (result.algorithm == Algorithm::kGeneral) {
    doc.params.epsilon = p.epsilon;
    doc.params.f = p.f;
  } else {
    doc.params.arboricity = p.arboricity;
  }
  doc.params.i_star = p.i_star;
  doc.params.seed = result.seed;
  fill_verification(doc, g, result.ruling_set, result.t_claimed);
  doc.rounds = {result.total_rounds(), result.sparsification.rounds, result.mis.rounds, result.final_mis_rounds};
  doc.messages = {result.sparsification.messages, result.sparsification.payload_bits,
                  result.sparsification.max_payload_bits, result.mis.messages, result.mis.payload_bits};
  doc.stages = result.stages;
  doc.lemmas = check_lemmas(result);
  return doc;
}

MetricsDocument make_mis_metrics(const Graph& g, const MisResult& mis, std::uint64_t seed,
                                 std::vector<std::string> command) {
  MetricsDocument doc;
  doc.command = std::move(command);
  doc.params.algorithm = "mis";
  doc.params.n = g.num_vertices();
  doc.params.delta = g.max_degree();
  doc.params.seed = seed;
  fill_verification(doc, g, mis.members, 1);
  doc.rounds = {mis.stats.rounds, 0, mis.stats.rounds, mis.stats.rounds};
  doc.messages.mis_messages = mis.stats.messages;
  doc.messages.mis_bits = mis.stats.payload_bits;
  return doc;
}

void to_json(json& j, const MetricsDocument& doc) {
  json stages = json::array();
  for (const StageTrace& t : doc.stages) stages.push_back(stage_to_json(t));
  j = json{{"schema_version", doc.schema_version},
           {"command", doc.command},
           {"params",
            {{"algorithm", doc.params.algorithm},
             {"n", doc.params.n},
             {"delta", doc.params.delta},
             {"epsilon", nullable(doc.params.epsilon)},
             {"f", nullable(doc.params.f)},
             {"arboricity", nullable(doc.params.arboricity)},
             {"i_star", doc.params.i_star},
             {"seed", doc.params.seed}}},
           {"result",
            {{"size", doc.result.size},
             {"t_claimed", doc.result.t_claimed},
             {"independent", doc.result.independent},
             {"ruling_distance", nullable(doc.result.ruling_distance)},
             {"verified", doc.result.verified}}},
           {"rounds",
            {{"total", doc.rounds.total},
             {"sparsification", doc.rounds.sparsification},
             {"mis", doc.rounds.mis},
             {"final_mis", doc.rounds.final_mis}}},
           {"messages",
            {{"sparsification_messages", doc.messages.sparsification_messages},
             {"sparsification_bits", doc.messages.sparsification_bits},
             {"sparsification_max_payload_bits", doc.messages.sparsification_max_payload_bits},
             {"mis_messages", doc.messages.mis_messages},
             {"mis_bits", doc.messages.mis_bits}}},
           {"stages", stages},
           {"lemmas", lemmas_to_json(doc.lemmas)}};
}

void from_json(const json& j, MetricsDocument& doc) {
  j.at("schema_version").get_to(doc.schema_version);
  if (doc.schema_version != kMetricsSchemaVersion) {
    throw InputError("unsupported metrics schema version " + std::to_string(doc.schema_version));
  }
  j.at("command").get_to(doc.command);
  const json& p = j.at("params");
  p.at("algorithm").get_to(doc.params.algorithm);
  p.at("n").get_to(doc.params.n);
  p.at("delta").get_to(doc.params.delta);
  doc.params.epsilon = read_nullable<double>(p, "epsilon");
  doc.params.f = read_nullable<double>(p, "f");
  doc.params.arboricity = read_nullable<std::size_t>(p, "arboricity");
  p.at("i_star").get_to(doc.params.i_star);
  p.at("seed").get_to(doc.params.seed);
  const json& r = j.at("result");
  r.at("size").get_to(doc.result.size);
  r.at("t_claimed").get_to(doc.result.t_claimed);
  r.at("independent").get_to(doc.result.independent);
  doc.result.ruling_distance = read_nullable<std::size_t>(r, "ruling_distance");
  r.at("verified").get_to(doc.result.verified);
  const json& rd = j.at("rounds");
  rd.at("total").get_to(doc.rounds.total);
  rd.at("sparsification").get_to(doc.rounds.sparsification);
  rd.at("mis").get_to(doc.rounds.mis);
  rd.at("final_mis").get_to(doc.rounds.final_mis);
  const json& m = j.at("messages");
  m.at("sparsification_messages").get_to(doc.messages.sparsification_messages);
  m.at("sparsification_bits").get_to(doc.messages.sparsification_bits);
  m.at("sparsification_max_payload_bits").get_to(doc.messages.sparsification_max_payload_bits);
  m.at("mis_messages").get_to(doc.messages.mis_messages);
  m.at("mis_bits").get_to(doc.messages.mis_bits);
  doc.stages.clear();
  for (const json& t : j.at("stages")) doc.stages.push_back(stage_from_json(t));
  doc.lemmas = lemmas_from_json(j.at("lemmas"));
}

std::string dump_metrics(const MetricsDocument& doc) { return json(doc).dump(2) + "\n"; }

}  // namespace rulingsim
