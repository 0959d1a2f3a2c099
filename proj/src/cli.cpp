// Copyright 2026 The qromlift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qromlift/cli.hpp"

#include <chrono>
#include <map>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "qromlift/adversary.hpp"
#include "qromlift/bounds.hpp"
#include "qromlift/errors.hpp"
#include "qromlift/games.hpp"
#include "qromlift/oracle.hpp"
#include "qromlift/report.hpp"
#include "qromlift/reprogram.hpp"
#include "qromlift/rng.hpp"

namespace qromlift {

namespace {

using nlohmann::json;

const std::set<std::string> kSuites = {
    "verify-lift",  "uniform-images", "game-value",  "bounds-table",
    "p-of-r",       "compare-losses", "classical-mr"};
const std::set<std::string> kAdversaries = {"guess", "classical", "grover",
                                            "random"};
const std::set<std::string> kRelations = {"inversion", "k-collision",
                                          "k-search-zero"};

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["suite"] = cfg.suite;
  j["M"] = cfg.M;
  j["N"] = cfg.N;
  j["k"] = cfg.k;
  j["q"] = cfg.q;
  j["g"] = cfg.g;
  j["K"] = cfg.K;
  j["S"] = cfg.S;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["adversary"] = cfg.adversary;
  j["relation"] = cfg.relation;
  j["oracle_budget"] = cfg.oracle_budget;
  j["state_dim_budget"] = cfg.state_dim_budget;
  j["branch_budget"] = cfg.branch_budget;
  j["tuple_budget"] = cfg.tuple_budget;
  j["out"] = cfg.out_path;
  j["format"] = cfg.format;
  return j;
}

// Reads one field if present, else installs the default and records it.
template <typename T>
void take(const json& raw, const char* key, T& slot,
          std::vector<std::string>& defaults,
          std::vector<std::string>& diagnostics) {
  if (!raw.contains(key)) {
    std::ostringstream note;
    note << key << "=" << json(slot).dump();
    defaults.push_back(note.str());
    return;
  }
  try {
    slot = raw.at(key).get<T>();
  } catch (const json::exception&) {
    diagnostics.push_back(std::string(key) + ": wrong type");
  }
}

bool suite_uses_adversary(const std::string& suite) {
  return suite == "verify-lift" || suite == "uniform-images" ||
         suite == "game-value" || suite == "classical-mr";
}

bool suite_uses_relation(const std::string& suite) {
  return suite == "game-value" || suite == "p-of-r";
}

AdversaryCircuit build_suite_adversary(const ExperimentConfig& cfg) {
  if (cfg.adversary == "guess") {
    InputTuple outputs(static_cast<std::size_t>(cfg.k));
    for (int i = 0; i < cfg.k; ++i) outputs[static_cast<std::size_t>(i)] = i;
    return constant_adversary(cfg.M, cfg.N, outputs);
  }
  if (cfg.adversary == "classical") {
    // Depth-1 probe: query point 0, shift every output by the answer.
    DecisionTree tree;
    tree.nodes.push_back({0, {}});
    for (int a = 0; a < cfg.N; ++a) {
      InputTuple outputs(static_cast<std::size_t>(cfg.k));
      for (int j = 0; j < cfg.k; ++j) {
        outputs[static_cast<std::size_t>(j)] = (a + j) % cfg.M;
      }
      tree.nodes[0].child.push_back(~static_cast<int>(tree.leaves.size()));
      tree.leaves.push_back({std::move(outputs)});
    }
    tree.root = 0;
    return classical_strategy(cfg.M, cfg.N, tree, cfg.k);
  }
  if (cfg.adversary == "grover") {
    std::vector<bool> marked(static_cast<std::size_t>(cfg.M), false);
    marked[0] = true;
    return grover_adversary(cfg.M, cfg.N, marked, cfg.q);
  }
  return random_adversary(cfg.M, cfg.N, cfg.k, cfg.q,
                          derive_seed(cfg.seed, "adversary"));
}

RelationSpec build_suite_relation(const ExperimentConfig& cfg) {
  if (cfg.relation == "inversion") {
    OutputTuple targets(static_cast<std::size_t>(cfg.k));
    for (int i = 0; i < cfg.k; ++i) targets[static_cast<std::size_t>(i)] = i;
    return inversion_relation(cfg.N, targets);
  }
  if (cfg.relation == "k-collision") return collision_relation(cfg.N, cfg.k);
  return search_zero_relation(cfg.N, cfg.k);
}

// --- suites ------------------------------------------------------------------

void suite_verify_lift(const ExperimentConfig& cfg, json& report, bool& all) {
  const AdversaryCircuit circ = build_suite_adversary(cfg);
  const WrappedAdversary wrapped = wrap_with_readout(circ, cfg.k);
  const Predicate v = trivial_predicate(cfg.k);
  OracleEnumeration tables(cfg.M, cfg.N, cfg.oracle_budget);
  const std::vector<InputTuple> points = distinct_tuples(cfg.M, cfg.k);

  json rows = json::array();
  for (long long hi = 0; hi < tables.size(); ++hi) {
    const OracleTable h = tables.at(hi);
    for (long long gi = 0; gi < tables.size(); ++gi) {
      const OracleTable g = tables.at(gi);
      for (const auto& x_o : points) {
        const ExperimentResult r = coherent_sim_exact(
            wrapped, h, g, x_o, v, false, cfg.branch_budget);
        all = all && r.holds;
        json row = result_to_json(r);
        row["h_index"] = hi;
        row["g_index"] = gi;
        rows.push_back(std::move(row));
      }
    }
  }
  report["adversary_queries"] = circ.q;
  report["results"] = std::move(rows);
}

void suite_uniform_images(const ExperimentConfig& cfg, json& report,
                          bool& all) {
  const AdversaryCircuit circ = build_suite_adversary(cfg);
  const WrappedAdversary wrapped = wrap_with_readout(circ, cfg.k);
  const OracleTable h =
      sample_oracle(cfg.M, cfg.N, derive_seed(cfg.seed, "suite-h"));
  const std::vector<BranchChoice> branches =
      enumerate_branches(circ.q + cfg.k, cfg.k, cfg.branch_budget);

  double max_dev = 0.0;
  json rows = json::array();
  for (const auto& choice : branches) {
    const UniformImagesReport rep =
        uniform_images_check(wrapped, h, choice, cfg.oracle_budget);
    max_dev = std::max(max_dev, rep.averaged_deviation);
    json row = uniform_images_to_json(rep);
    row["positions"] = choice.positions;
    row["bits"] = choice.bits;
    rows.push_back(std::move(row));
  }
  all = all && max_dev <= kInequalitySlack;
  report["oracle"] = oracle_to_json(h);
  report["max_averaged_deviation"] = max_dev;
  report["results"] = std::move(rows);
}

void suite_game_value(const ExperimentConfig& cfg, json& report, bool& all) {
  const GameSpec game = make_game(cfg.relation, cfg.M, cfg.N, cfg.k);
  const AdversaryCircuit circ = build_suite_adversary(cfg);
  const GameAdversary adv = fixed_adversary(circ);
  const double value = game_value_exact(game, adv, cfg.oracle_budget);
  const double p_r = game_p_of_r(game, cfg.tuple_budget);
  const double bound = lifted_bound(circ.q, cfg.k, p_r);
  const bool holds = value <= bound + kInequalitySlack;
  all = all && holds;

  report["game"] = game_to_json(game);
  report["adversary_queries"] = circ.q;
  report["value"] = value;
  report["p_of_r"] = p_r;
  report["loss"] = loss_factor(circ.q, cfg.k);
  report["lifted_bound"] = bound;
  report["holds"] = holds;
}

void suite_bounds_table(const ExperimentConfig& cfg, json& report, bool& all,
                        std::string& csv) {
  json rows = json::array();
  std::vector<std::vector<std::string>> csv_rows;
  const auto cell = [](double v) {
    std::ostringstream s;
    s << v;
    return s.str();
  };
  for (int q = 0; q <= cfg.q; ++q) {
    for (int k = 1; k <= cfg.k; ++k) {
      const LossComparison cmp = compare_losses(q, k);
      const double inv = bound_inversion(q, k, cfg.N);
      const double coll = bound_collision(q, k, cfg.N);
      const double srch = bound_search(q, k, cfg.N);
      const bool stirling_ok = stirling_chain_check(q, k, cfg.N);
      all = all && stirling_ok;

      json row;
      row["q"] = q;
      row["k"] = k;
      row["N"] = cfg.N;
      row["loss"] = cmp.coherent;
      row["yz_loss"] = cmp.classical;
      row["ratio"] = cmp.ratio;
      row["bounds"] = json::array(
          {bound_to_json(make_bound_report(
               "inversion",
               {{"q", q}, {"k", k}, {"N", cfg.N}}, inv,
               "(4e(q+k)^2/(Nk))^k")),
           bound_to_json(make_bound_report(
               "k-collision",
               {{"q", q}, {"k", k}, {"N", cfg.N}}, coll,
               "(2e(q+k)/k)^{2k}/N^{k-1}")),
           bound_to_json(make_bound_report(
               "k-search-zero",
               {{"q", q}, {"k", k}, {"N", cfg.N}}, srch,
               "(4e^2(q+k)^2/(Nk^2))^k"))});
      row["stirling_ok"] = stirling_ok;
      rows.push_back(std::move(row));

      csv_rows.push_back({std::to_string(q), std::to_string(k),
                          std::to_string(cfg.N), cell(cmp.coherent),
                          cell(cmp.classical), cell(cmp.ratio), cell(inv),
                          cell(coll), cell(srch),
                          stirling_ok ? "true" : "false"});
    }
  }
  report["results"] = std::move(rows);
  csv = csv_table({"q", "k", "N", "loss", "yz_loss", "ratio", "inversion",
                   "collision", "search", "stirling_ok"},
                  csv_rows);
}

void suite_p_of_r(const ExperimentConfig& cfg, json& report, std::string& csv) {
  const RelationSpec rel = build_suite_relation(cfg);
  const Rational exact = p_of_r_exact(rel, cfg.tuple_budget);
  report["relation"] = rel.name;
  report["k"] = rel.k;
  report["N"] = rel.N;
  report["value"] = exact.value();
  report["numerator"] = exact.num;
  report["denominator"] = exact.den;
  if (cfg.trials > 0) {
    report["mc"] = estimate_to_json(
        p_of_r_mc(rel, cfg.trials, derive_seed(cfg.seed, "p-of-r-suite")));
  }
  csv = csv_table({"relation", "k", "N", "value", "numerator", "denominator"},
                  {{rel.name, std::to_string(rel.k), std::to_string(rel.N),
                    std::to_string(exact.value()), std::to_string(exact.num),
                    std::to_string(exact.den)}});
}

void suite_compare_losses(const ExperimentConfig& cfg, json& report,
                          std::string& csv) {
  json rows = json::array();
  std::vector<std::vector<std::string>> csv_rows;
  const auto cell = [](double v) {
    std::ostringstream s;
    s << v;
    return s.str();
  };
  for (int q = 0; q <= cfg.q; ++q) {
    const LossComparison cmp = compare_losses(q, cfg.k);
    rows.push_back(loss_comparison_to_json(cmp));
    csv_rows.push_back({std::to_string(q), std::to_string(cfg.k),
                        cell(cmp.coherent), cell(cmp.classical),
                        cell(cmp.ratio), cell(cmp.factorial_sq),
                        cell(cmp.trend)});
  }
  report["results"] = std::move(rows);
  csv = csv_table(
      {"q", "k", "coherent", "classical", "ratio", "factorial_sq", "trend"},
      csv_rows);
}

void suite_classical_mr(const ExperimentConfig& cfg, json& report, bool& all) {
  const AdversaryCircuit circ = build_suite_adversary(cfg);
  const OracleTable h =
      sample_oracle(cfg.M, cfg.N, derive_seed(cfg.seed, "suite-h"));
  InputTuple x_o(static_cast<std::size_t>(cfg.k));
  for (int i = 0; i < cfg.k; ++i) x_o[static_cast<std::size_t>(i)] = i;
  auto target_rng = make_engine(derive_seed(cfg.seed, "suite-y"));
  OutputTuple y_target(static_cast<std::size_t>(cfg.k));
  for (int i = 0; i < cfg.k; ++i) {
    y_target[static_cast<std::size_t>(i)] = uniform_below(target_rng, cfg.N);
  }
  const Predicate v = trivial_predicate(cfg.k);

  const double direct = classical_direct_value(circ, h, x_o, y_target, v);
  const SampleEstimate est =
      classical_mr_sample(circ, h, x_o, y_target, v, cfg.trials, cfg.seed);
  const double loss = yz_loss(circ.q, cfg.k);
  const bool holds = est.estimate * loss >=
                     direct - 3.0 * est.std_error * loss - kInequalitySlack;
  all = all && holds;

  report["oracle"] = oracle_to_json(h);
  report["x_o"] = x_o;
  report["y_target"] = y_target;
  report["adversary_queries"] = circ.q;
  report["direct_value"] = direct;
  report["estimate"] = estimate_to_json(est);
  report["classical_loss"] = loss;
  report["holds"] = holds;
}

}  // namespace

ConfigOutcome validate_config(const json& raw) {
  ConfigOutcome outcome;
  std::vector<std::string>& diag = outcome.diagnostics;
  if (!raw.is_object()) {
    diag.push_back("config: expected a JSON object");
    return outcome;
  }

  ExperimentConfig cfg;
  if (!raw.contains("suite")) {
    diag.push_back("suite: required");
  } else if (!raw.at("suite").is_string() ||
             !kSuites.count(raw.at("suite").get<std::string>())) {
    diag.push_back(
        "suite: expected one of verify-lift | uniform-images | game-value | "
        "bounds-table | p-of-r | compare-losses | classical-mr");
  } else {
    cfg.suite = raw.at("suite").get<std::string>();
  }

  take(raw, "M", cfg.M, cfg.defaults_applied, diag);
  take(raw, "N", cfg.N, cfg.defaults_applied, diag);
  take(raw, "k", cfg.k, cfg.defaults_applied, diag);
  take(raw, "q", cfg.q, cfg.defaults_applied, diag);
  take(raw, "g", cfg.g, cfg.defaults_applied, diag);
  take(raw, "K", cfg.K, cfg.defaults_applied, diag);
  take(raw, "S", cfg.S, cfg.defaults_applied, diag);
  take(raw, "trials", cfg.trials, cfg.defaults_applied, diag);
  take(raw, "seed", cfg.seed, cfg.defaults_applied, diag);
  take(raw, "adversary", cfg.adversary, cfg.defaults_applied, diag);
  take(raw, "relation", cfg.relation, cfg.defaults_applied, diag);
  take(raw, "oracle_budget", cfg.oracle_budget, cfg.defaults_applied, diag);
  take(raw, "state_dim_budget", cfg.state_dim_budget, cfg.defaults_applied,
       diag);
  take(raw, "branch_budget", cfg.branch_budget, cfg.defaults_applied, diag);
  take(raw, "tuple_budget", cfg.tuple_budget, cfg.defaults_applied, diag);
  take(raw, "out", cfg.out_path, cfg.defaults_applied, diag);
  take(raw, "format", cfg.format, cfg.defaults_applied, diag);

  static const std::set<std::string> known = {
      "suite",      "M",         "N",        "k",
      "q",          "g",         "K",        "S",
      "trials",     "seed",      "adversary", "relation",
      "oracle_budget", "state_dim_budget", "branch_budget", "tuple_budget",
      "out",        "format"};
  for (const auto& [key, value] : raw.items()) {
    if (!known.count(key)) diag.push_back(key + ": unknown field");
  }

  if (cfg.M < 1) diag.push_back("M: need M >= 1");
  if (cfg.N < 1) diag.push_back("N: need N >= 1");
  if (cfg.k < 1) diag.push_back("k: need k >= 1");
  if (cfg.q < 0) diag.push_back("q: need q >= 0");
  if (cfg.g < 1) diag.push_back("g: need g >= 1");
  if (cfg.K < 1) diag.push_back("K: need K >= 1");
  if (cfg.S < 1) diag.push_back("S: need S >= 1");
  if (cfg.trials < 0) diag.push_back("trials: must not be negative");
  if (suite_uses_adversary(cfg.suite) && cfg.k > cfg.M) {
    diag.push_back("k: distinct k-tuples require k <= M");
  }
  if (cfg.oracle_budget < 1) diag.push_back("oracle_budget: need >= 1");
  if (cfg.state_dim_budget < 1) diag.push_back("state_dim_budget: need >= 1");
  if (cfg.branch_budget < 1) diag.push_back("branch_budget: need >= 1");
  if (cfg.tuple_budget < 1) diag.push_back("tuple_budget: need >= 1");
  if (!kAdversaries.count(cfg.adversary)) {
    diag.push_back(
        "adversary: expected one of guess | classical | grover | random");
  }
  if (!kRelations.count(cfg.relation)) {
    diag.push_back(
        "relation: expected one of inversion | k-collision | k-search-zero");
  }
  if (cfg.format != "json" && cfg.format != "csv") {
    diag.push_back("format: expected json or csv");
  }
  if (suite_uses_adversary(cfg.suite) && cfg.adversary == "grover" &&
      cfg.k != 1) {
    diag.push_back("adversary: the amplification fixture outputs one point; "
                   "needs k = 1");
  }
  if (suite_uses_relation(cfg.suite) && cfg.relation == "inversion" &&
      cfg.k > cfg.N) {
    diag.push_back("relation: inversion needs k <= N");
  }
  if ((cfg.suite == "classical-mr" ||
       (cfg.suite == "p-of-r" && cfg.trials > 0)) &&
      cfg.trials < 1) {
    diag.push_back("trials: need trials >= 1 for sampling suites");
  }

  if (diag.empty()) outcome.config = std::move(cfg);
  return outcome;
}

ConfigOutcome validate_config_text(const std::string& raw_text) {
  json parsed = json::parse(raw_text, nullptr, false);
  if (parsed.is_discarded()) {
    ConfigOutcome outcome;
    outcome.diagnostics.push_back("config: not valid JSON");
    return outcome;
  }
  return validate_config(parsed);
}

SuiteOutput run_suite(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  SuiteOutput out;
  bool all = true;

  json report;
  report["version"] = kArtifactVersion;
  report["suite"] = cfg.suite;
  report["config"] = config_to_json(cfg);
  report["defaults_applied"] = cfg.defaults_applied;
  report["tolerances"] = {{"unitarity", kUnitarityTol},
                          {"equality", kEqualityTol},
                          {"inequality_slack", kInequalitySlack}};

  if (cfg.suite == "verify-lift") {
    suite_verify_lift(cfg, report, all);
  } else if (cfg.suite == "uniform-images") {
    suite_uniform_images(cfg, report, all);
  } else if (cfg.suite == "game-value") {
    suite_game_value(cfg, report, all);
  } else if (cfg.suite == "bounds-table") {
    suite_bounds_table(cfg, report, all, out.csv);
  } else if (cfg.suite == "p-of-r") {
    suite_p_of_r(cfg, report, out.csv);
  } else if (cfg.suite == "compare-losses") {
    suite_compare_losses(cfg, report, out.csv);
  } else if (cfg.suite == "classical-mr") {
    suite_classical_mr(cfg, report, all);
  } else {
    throw ConfigError("unknown suite: " + cfg.suite);
  }

  report["all_inequalities_hold"] = all;
  const auto end = std::chrono::steady_clock::now();
  report["timing"] = {
      {"wall_ms",
       std::chrono::duration_cast<std::chrono::milliseconds>(end - start)
           .count()}};
  out.report = std::move(report);
  out.all_hold = all;
  out.exit_status = all ? 0 : 1;
  return out;
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Exact desk-scale verification of oracle reprogramming "
               "simulators and the game bounds built on them"};
  app.require_subcommand(1);

  struct Flags {
    int M = 2, N = 2, k = 1, q = 1, g = 1, K = 1;
    long long S = 1, trials = 1000;
    std::uint64_t seed = 0;
    std::string adversary, relation, out, format, config_path;
    long long oracle_budget = 0, state_dim_budget = 0, branch_budget = 0,
              tuple_budget = 0;
  } flags;

  const std::map<std::string, std::string> blurbs = {
      {"verify-lift",
       "coherent simulator inequality over every oracle pair and target"},
      {"uniform-images",
       "recorded images are uniform when averaged over the reprogram table"},
      {"game-value",
       "exact game value against the loss-times-density bound"},
      {"bounds-table", "closed-form application bounds over a (q, k) grid"},
      {"p-of-r", "exact relation density as a reduced fraction"},
      {"compare-losses",
       "coherent versus measure-then-reprogram loss factors"},
      {"classical-mr",
       "sampled classical baseline against its direct-run value"},
  };
  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const auto& name : kSuites) {
    CLI::App* sub = app.add_subcommand(name, blurbs.at(name));
    sub->add_option("--M", flags.M, "oracle domain size");
    sub->add_option("--N", flags.N, "oracle range size");
    sub->add_option("--k", flags.k, "output tuple arity");
    sub->add_option("--q", flags.q, "adversary query count (or grid maximum)");
    sub->add_option("--g", flags.g, "product copies");
    sub->add_option("--K", flags.K, "salt count");
    sub->add_option("--S", flags.S, "advice bits");
    sub->add_option("--trials", flags.trials, "Monte Carlo trials");
    sub->add_option("--seed", flags.seed, "top-level seed");
    sub->add_option("--adversary", flags.adversary,
                    "guess | classical | grover | random");
    sub->add_option("--relation", flags.relation,
                    "inversion | k-collision | k-search-zero");
    sub->add_option("--oracle-budget", flags.oracle_budget,
                    "max enumerated oracle tables");
    sub->add_option("--state-dim-budget", flags.state_dim_budget,
                    "max statevector dimension");
    sub->add_option("--branch-budget", flags.branch_budget,
                    "max enumerated branches");
    sub->add_option("--tuple-budget", flags.tuple_budget,
                    "max enumerated image tuples");
    sub->add_option("--out", flags.out, "report path (default stdout)");
    sub->add_option("--format", flags.format, "json | csv");
    sub->add_option("--config", flags.config_path,
                    "JSON config file; its fields override flags");
    subs.emplace_back(name, sub);
  }

  CLI11_PARSE(app, argc, argv);

  json merged;
  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    merged["suite"] = name;
    if (sub->count("--M")) merged["M"] = flags.M;
    if (sub->count("--N")) merged["N"] = flags.N;
    if (sub->count("--k")) merged["k"] = flags.k;
    if (sub->count("--q")) merged["q"] = flags.q;
    if (sub->count("--g")) merged["g"] = flags.g;
    if (sub->count("--K")) merged["K"] = flags.K;
    if (sub->count("--S")) merged["S"] = flags.S;
    if (sub->count("--trials")) merged["trials"] = flags.trials;
    if (sub->count("--seed")) merged["seed"] = flags.seed;
    if (sub->count("--adversary")) merged["adversary"] = flags.adversary;
    if (sub->count("--relation")) merged["relation"] = flags.relation;
    if (sub->count("--oracle-budget")) {
      merged["oracle_budget"] = flags.oracle_budget;
    }
    if (sub->count("--state-dim-budget")) {
      merged["state_dim_budget"] = flags.state_dim_budget;
    }
    if (sub->count("--branch-budget")) {
      merged["branch_budget"] = flags.branch_budget;
    }
    if (sub->count("--tuple-budget")) {
      merged["tuple_budget"] = flags.tuple_budget;
    }
    if (sub->count("--out")) merged["out"] = flags.out;
    if (sub->count("--format")) merged["format"] = flags.format;

    if (sub->count("--config")) {
      std::ifstream in(flags.config_path);
      if (!in) {
        std::cerr << "cannot open config file: " << flags.config_path << "\n";
        return 2;
      }
      std::ostringstream buffer;
      buffer << in.rdbuf();
      json file = json::parse(buffer.str(), nullptr, false);
      if (file.is_discarded()) {
        std::cerr << "config: not valid JSON\n";
        return 2;
      }
      if (!file.is_object()) {
        std::cerr << "config: expected a JSON object\n";
        return 2;
      }
      for (const auto& [key, value] : file.items()) merged[key] = value;
    }
  }

  const ConfigOutcome outcome = validate_config(merged);
  if (!outcome.config) {
    for (const auto& d : outcome.diagnostics) std::cerr << d << "\n";
    return 2;
  }

  SuiteOutput result;
  try {
    result = run_suite(*outcome.config);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  const std::string text = (outcome.config->format == "csv" &&
                            !result.csv.empty())
                               ? result.csv
                               : result.report.dump(2) + "\n";
  if (outcome.config->out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out_file(outcome.config->out_path);
    if (!out_file) {
      std::cerr << "cannot open output path: " << outcome.config->out_path
                << "\n";
      return 2;
    }
    out_file << text;
  }
  return result.exit_status;
}

}  // namespace qromlift
