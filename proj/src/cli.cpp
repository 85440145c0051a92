#include "rulingsim/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rulingsim/edge_list.hpp"
#include "rulingsim/errors.hpp"
#include "rulingsim/generators.hpp"
#include "rulingsim/metrics.hpp"
#include "rulingsim/mis.hpp"
#include "rulingsim/random.hpp"
#include "rulingsim/ruling.hpp"
#include "rulingsim/verify.hpp"

namespace rulingsim {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kRoundCapEnv = "RULINGSIM_ROUND_CAP";

std::string distance_text(std::size_t d) { return d == kInfinite ? "inf" : std::to_string(d); }

// Writes to a sibling temporary first so readers never see a partial file.
void write_atomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    if (!out) throw InputError("failed writing '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

EngineOptions engine_options_from_env() {
  EngineOptions options;
  if (const char* raw = std::getenv(kRoundCapEnv); raw != nullptr && *raw != '\0') {
    std::size_t cap = 0;
    const char* end = raw + std::char_traits<char>::length(raw);
    auto [ptr, ec] = std::from_chars(raw, end, cap);
    if (ec != std::errc() || ptr != end || cap == 0) {
      throw InputError(std::string(kRoundCapEnv) + " must be a positive integer, got '" + raw + "'");
    }
    options.round_cap = cap;
  }
  return options;
}

struct AlgorithmFlags {
  std::string alg;
  std::optional<double> epsilon;
  std::optional<std::size_t> arboricity;
};

void check_algorithm_flags(const AlgorithmFlags& flags) {
  if (flags.alg == "gg" && !flags.epsilon) throw InputError("--alg gg requires --epsilon");
  if (flags.alg == "arb" && !flags.arboricity) throw InputError("--alg arb requires --arboricity");
}

struct Outcome {
  MetricsDocument doc;
  VertexSet set;
};

Outcome run_algorithm(const Graph& g, const AlgorithmFlags& flags, std::uint64_t seed,
                      const EngineOptions& engine, std::vector<std::string> command) {
  const RulingOptions options{engine};
  if (flags.alg == "mis") {
    MisResult mis = metivier_mis(g, VertexSet::all(g.num_vertices()), seed, engine);
    MetricsDocument doc = make_mis_metrics(g, mis, seed, std::move(command));
    return {std::move(doc), std::move(mis.members)};
  }
  RulingResult result;
  if (flags.alg == "gg") {
    result = ruling_set_gg(g, *flags.epsilon, seed, options);
  } else if (flags.alg == "hg") {
    result = ruling_set_hg(g, seed, options);
  } else {
    result = ruling_set_arb(g, *flags.arboricity, seed, options);
  }
  MetricsDocument doc = make_metrics(g, result, std::move(command));
  return {std::move(doc), std::move(result.ruling_set)};
}

std::vector<std::string> command_echo(const std::vector<std::string>& args) {
  std::vector<std::string> command{"rulingsim"};
  command.insert(command.end(), args.begin(), args.end());
  return command;
}

// ---- generate ---------------------------------------------------------------

struct GenerateFlags {
  std::string family;
  std::size_t n = 0;
  double param = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  bool check_girth = false;
};

int cmd_generate(const GenerateFlags& flags, std::ostream& out) {
  GenSpec spec{parse_family(flags.family), flags.n, flags.param, flags.seed};
  Graph g = generate(spec);
  write_edge_list(g, fs::path(flags.out));
  out << "n " << g.num_vertices() << '\n';
  out << "m " << g.num_edges() << '\n';
  out << "max_degree " << g.max_degree() << '\n';
  if (flags.check_girth) out << "girth " << distance_text(girth(g)) << '\n';
  out << "density " << density(g) << '\n';
  return kExitOk;
}

// ---- run --------------------------------------------------------------------

struct RunFlags {
  AlgorithmFlags algorithm;
  std::string graph;
  std::uint64_t seed = 0;
  std::string metrics;
  std::string set_out;
};

int cmd_run(const RunFlags& flags, const std::vector<std::string>& command, std::ostream& out) {
  check_algorithm_flags(flags.algorithm);
  const EngineOptions engine = engine_options_from_env();
  Graph g = read_edge_list(fs::path(flags.graph));
  Outcome outcome = run_algorithm(g, flags.algorithm, flags.seed, engine, command);
  const MetricsDocument& doc = outcome.doc;

  if (!flags.metrics.empty()) write_atomically(flags.metrics, dump_metrics(doc));
  if (!flags.set_out.empty()) {
    std::ostringstream ids;
    write_vertex_ids(outcome.set, ids);
    write_atomically(flags.set_out, ids.str());
  }
  out << "algorithm " << doc.params.algorithm << '\n';
  out << "size " << doc.result.size << '\n';
  out << "t_claimed " << doc.result.t_claimed << '\n';
  out << "independent " << (doc.result.independent ? "true" : "false") << '\n';
  out << "ruling_distance "
      << (doc.result.ruling_distance ? std::to_string(*doc.result.ruling_distance) : "inf") << '\n';
  out << "i_star " << doc.params.i_star << '\n';
  out << "rounds " << doc.rounds.total << " (sparsification " << doc.rounds.sparsification << ", mis "
      << doc.rounds.mis << ")\n";
  out << "verified " << (doc.result.verified ? "true" : "false") << '\n';
  return doc.result.verified ? kExitOk : kExitFailed;
}

// ---- verify -----------------------------------------------------------------

struct VerifyFlags {
  std::string graph;
  std::string set;
  std::size_t t = 0;
};

int cmd_verify(const VerifyFlags& flags, std::ostream& out) {
  Graph g = read_edge_list(fs::path(flags.graph));
  VertexSet s(g.num_vertices());
  for (VertexId v : read_vertex_ids(fs::path(flags.set))) {
    if (v >= g.num_vertices()) {
      throw InputError("vertex id " + std::to_string(v) + " out of range for n = " +
                       std::to_string(g.num_vertices()));
    }
    s.insert(v);
  }
  const bool independent = is_independent(g, s);
  const std::size_t distance = ruling_distance(g, s);
  const bool pass = independent && distance <= flags.t;
  out << "independent " << (independent ? "true" : "false") << '\n';
  out << "ruling_distance " << distance_text(distance) << '\n';
  out << "t " << flags.t << '\n';
  out << "result " << (pass ? "pass" : "fail") << '\n';
  return pass ? kExitOk : kExitFailed;
}

// ---- sweep ------------------------------------------------------------------

struct SweepFlags {
  std::string family;
  std::vector<std::size_t> sizes;
  std::size_t seeds = 0;
  double param = 0.0;
  AlgorithmFlags algorithm;
  std::uint64_t seed_base = 0;
  std::string out_dir;
  std::optional<double> lemma_gate;
};

// Stage count recomputed from the graph alone, independent of the run.
std::size_t expected_stages(const std::string& alg, const Graph& g, std::optional<double> epsilon) {
  const std::size_t n = g.num_vertices();
  const std::size_t delta = g.max_degree();
  if (alg == "mis" || delta == 0) return 0;
  if (alg == "gg") return gg_params(n, delta, *epsilon).i_star;
  return hg_params(n, delta).i_star;
}

int cmd_sweep(const SweepFlags& flags, const std::vector<std::string>& command, std::ostream& out) {
  if (flags.seeds == 0) throw InputError("--seeds must be at least 1");
  if (flags.sizes.empty()) throw InputError("--n needs at least one size");
  AlgorithmFlags alg = flags.algorithm;
  const Family family = parse_family(flags.family);
  if (alg.alg == "arb" && !alg.arboricity && family == Family::kArboricity) {
    alg.arboricity = static_cast<std::size_t>(flags.param);
  }
  check_algorithm_flags(alg);
  for (std::size_t n : flags.sizes) validate(GenSpec{family, n, flags.param, 0});
  const EngineOptions engine = engine_options_from_env();

  fs::create_directories(flags.out_dir);
  bool all_verified = true;
  LemmaReport overall;
  json cells = json::array();
  for (std::size_t n : flags.sizes) {
    LemmaReport cell_lemmas;
    std::size_t verified = 0;
    std::size_t errors = 0;
    bool stages_match = true;
    double rounds_total = 0, rounds_sparse = 0, rounds_mis = 0, set_size = 0;
    json stage_counts = json::array();
    json expected_counts = json::array();
    json failures = json::array();
    for (std::size_t k = 0; k < flags.seeds; ++k) {
      const std::uint64_t graph_seed = hash_combine(flags.seed_base, hash_combine(n, k));
      const std::uint64_t alg_seed = hash_combine(graph_seed, 1);
      const std::string name = "cell_n" + std::to_string(n) + "_s" + std::to_string(k) + ".json";
      try {
        Graph g = generate(GenSpec{family, n, flags.param, graph_seed});
        std::vector<std::string> cell_command = command;
        cell_command.push_back("#cell n=" + std::to_string(n) + " seed_index=" + std::to_string(k));
        Outcome outcome = run_algorithm(g, alg, alg_seed, engine, cell_command);
        const MetricsDocument& doc = outcome.doc;
        write_atomically(fs::path(flags.out_dir) / name, dump_metrics(doc));
        const std::size_t expected = expected_stages(alg.alg, g, alg.epsilon);
        stage_counts.push_back(doc.stages.size());
        expected_counts.push_back(expected);
        stages_match = stages_match && doc.stages.size() == expected;
        if (doc.result.verified) {
          ++verified;
        } else {
          failures.push_back({{"seed_index", k}, {"reason", "verification failed"}});
        }
        rounds_total += double(doc.rounds.total);
        rounds_sparse += double(doc.rounds.sparsification);
        rounds_mis += double(doc.rounds.mis);
        set_size += double(doc.result.size);
        cell_lemmas.merge(doc.lemmas);
      } catch (const std::exception& e) {
        ++errors;
        failures.push_back({{"seed_index", k}, {"reason", e.what()}});
      }
    }
    const double runs = double(flags.seeds - errors);
    auto mean = [&](double sum) { return runs > 0 ? sum / runs : 0.0; };
    cells.push_back({{"n", n},
                     {"runs", flags.seeds},
                     {"verified_runs", verified},
                     {"errors", errors},
                     {"failures", failures},
                     {"stage_counts", stage_counts},
                     {"expected_stage_counts", expected_counts},
                     {"stage_counts_match", stages_match},
                     {"mean_rounds_total", mean(rounds_total)},
                     {"mean_rounds_sparsification", mean(rounds_sparse)},
                     {"mean_rounds_mis", mean(rounds_mis)},
                     {"mean_set_size", mean(set_size)},
                     {"lemmas", lemmas_to_json(cell_lemmas)}});
    all_verified = all_verified && verified == flags.seeds;
    overall.merge(cell_lemmas);
    out << "n " << n << ": verified " << verified << "/" << flags.seeds << ", mean rounds " << mean(rounds_total)
        << ", stage counts " << (stages_match ? "match" : "MISMATCH") << '\n';
  }

  bool gate_ok = true;
  if (flags.lemma_gate) {
    for (const BoundSummary& b : overall.bounds) gate_ok = gate_ok && b.max_stage_failure_rate() <= *flags.lemma_gate;
  }
  json aggregate = {{"schema_version", kMetricsSchemaVersion},
                    {"command", command},
                    {"family", flags.family},
                    {"param", flags.param},
                    {"algorithm", alg.alg},
                    {"seeds", flags.seeds},
                    {"seed_base", flags.seed_base},
                    {"cells", cells},
                    {"lemmas", lemmas_to_json(overall)},
                    {"lemma_gate", flags.lemma_gate ? json(*flags.lemma_gate) : json(nullptr)},
                    {"lemma_gate_passed", gate_ok},
                    {"all_verified", all_verified}};
  write_atomically(fs::path(flags.out_dir) / "aggregate.json", aggregate.dump(2) + "\n");
  out << "aggregate " << (fs::path(flags.out_dir) / "aggregate.json").string() << '\n';
  return all_verified && gate_ok ? kExitOk : kExitFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synchronous simulator for randomized ruling-set algorithms", "rulingsim"};
  app.require_subcommand(1);
  const std::vector<std::string> algs{"gg", "hg", "arb", "mis"};
  const std::vector<std::string> families{"gnp", "tree", "girth6", "arboricity"};

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Write a random graph as an edge list");
  generate->add_option("--family", gen.family, "gnp | tree | girth6 | arboricity")
      ->required()
      ->check(CLI::IsMember(families));
  generate->add_option("--n", gen.n, "Vertex count")->required();
  generate->add_option("--param", gen.param, "p (gnp), target degree (girth6), forest count (arboricity)");
  generate->add_option("--seed", gen.seed, "Generator seed")->required();
  generate->add_option("--out", gen.out, "Output edge-list path")->required();
  generate->add_flag("--check-girth", gen.check_girth, "Also compute and print the girth");

  RunFlags run;
  std::optional<double> run_epsilon;
  std::optional<std::size_t> run_arboricity;
  auto* run_cmd = app.add_subcommand("run", "Run an algorithm on a graph and self-verify");
  run_cmd->add_option("--alg", run.algorithm.alg, "gg | hg | arb | mis")->required()->check(CLI::IsMember(algs));
  run_cmd->add_option("--graph", run.graph, "Edge-list file")->required();
  run_cmd->add_option("--epsilon", run_epsilon, "Sparsification exponent for gg, in (0, 1)");
  run_cmd->add_option("--arboricity", run_arboricity, "Arboricity bound for arb, >= 1");
  run_cmd->add_option("--seed", run.seed, "Algorithm seed")->required();
  run_cmd->add_option("--metrics", run.metrics, "Write the metrics JSON here");
  run_cmd->add_option("--set-out", run.set_out, "Write the computed vertex set here");

  VerifyFlags ver;
  auto* verify = app.add_subcommand("verify", "Check that a vertex set is a t-ruling set");
  verify->add_option("--graph", ver.graph, "Edge-list file")->required();
  verify->add_option("--set", ver.set, "Vertex ids, one per line")->required();
  verify->add_option("--t", ver.t, "Ruling distance")->required();

  SweepFlags sweep;
  std::optional<double> sweep_epsilon;
  std::optional<std::size_t> sweep_arboricity;
  std::optional<double> sweep_gate;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an algorithm over generated graphs for a grid of sizes");
  sweep_cmd->add_option("--family", sweep.family)->required()->check(CLI::IsMember(families));
  sweep_cmd->add_option("--n", sweep.sizes, "Vertex counts")->required();
  sweep_cmd->add_option("--seeds", sweep.seeds, "Runs per size")->required();
  sweep_cmd->add_option("--param", sweep.param, "Generator parameter");
  sweep_cmd->add_option("--alg", sweep.algorithm.alg)->required()->check(CLI::IsMember(algs));
  sweep_cmd->add_option("--epsilon", sweep_epsilon);
  sweep_cmd->add_option("--arboricity", sweep_arboricity);
  sweep_cmd->add_option("--seed-base", sweep.seed_base, "Base seed for all cells")->required();
  sweep_cmd->add_option("--out", sweep.out_dir, "Output directory")->required();
  sweep_cmd->add_option("--lemma-gate", sweep_gate, "Fail when a per-stage bound failure rate exceeds this");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::vector<std::string> command = command_echo(args);
  try {
    if (generate->parsed()) return cmd_generate(gen, out);
    if (run_cmd->parsed()) {
      run.algorithm.epsilon = run_epsilon;
      run.algorithm.arboricity = run_arboricity;
      return cmd_run(run, command, out);
    }
    if (verify->parsed()) return cmd_verify(ver, out);
    if (sweep_cmd->parsed()) {
      sweep.algorithm.epsilon = sweep_epsilon;
      sweep.algorithm.arboricity = sweep_arboricity;
      sweep.lemma_gate = sweep_gate;
      return cmd_sweep(sweep, command, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RulingTimeout& e) {
    err << "error: " << e.what() << " after " << e.completed_stages().size() << " completed stage(s)\n";
    return kExitFailed;
  } catch (const RoundCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}

}  // namespace rulingsim
