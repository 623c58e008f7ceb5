#include "tempfair/cli.hpp"

#ifdef TEMPFAIR_SYSTEM_CLI11
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "tempfair/errors.hpp"
#include "tempfair/fairness.hpp"
#include "tempfair/generators.hpp"
#include "tempfair/io.hpp"
#include "tempfair/oracle.hpp"
#include "tempfair/temporal.hpp"

namespace tempfair {

namespace {

using nlohmann::json;

struct Args {
  std::string instance;
  std::string allocation;
  std::string algorithm;
  std::string concept_text;
  bool trace = false;
  bool list = false;
  bool schedule = false;
  bool json_report = false;
  unsigned jobs = 1;
  std::size_t mms_cap = kDefaultMmsCap;
  bool per_round = false;

  std::string setting = "general";
  std::size_t agents = 2;
  int rounds = 3;
  std::size_t goods_per_round = 3;
  bool vary = false;
  std::int64_t cap = 10;
  std::uint64_t seed = 0;
  int buffer = 1;
  std::optional<std::int64_t> level;
  std::optional<std::int64_t> low;
  std::optional<std::int64_t> high;
};

void print(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

int classify_cmd(const Args& a, std::ostream& out) {
  const TemporalInstance instance = read_instance(a.instance);
  json doc = to_json(classify(instance));
  doc["format_version"] = kFormatVersion;
  print(out, doc);
  return kExitOk;
}

int solve_cmd(const Args& a, std::ostream& out) {
  if (a.list) {
    for (const SolverInfo& s : solvers()) out << s.name << "  " << s.summary << '\n';
    return kExitOk;
  }
  if (a.algorithm.empty()) throw ParameterError("--alg is required (try --list)");
  const SolverInfo& solver = find_solver(a.algorithm);
  const TemporalInstance instance = read_instance(a.instance);
  Trace trace;
  const TemporalAllocation alloc = solver.solve(instance, a.trace ? &trace : nullptr);
  validate(instance, alloc);
  json doc = to_json(instance, alloc);
  doc["algorithm"] = solver.name;
  json guarantees = json::array();
  for (const FairnessConcept& c : solver.guarantees(instance)) {
    json g = {{"concept", c.name()}};
    if (!c.agent_alpha.empty()) {
      json alphas = json::array();
      for (const Rational& x : c.agent_alpha) alphas.push_back(format_rational(x));
      g["alpha"] = alphas;
    } else if (c.kind == ConceptKind::AlphaEFX) {
      g["alpha"] = format_rational(c.alpha);
    }
    guarantees.push_back(g);
  }
  doc["guarantees"] = guarantees;
  json report = json::object();
  const CheckOptions wide{std::max(kDefaultMmsCap, instance.size())};
  for (const FairnessConcept& c : solver.guarantees(instance)) {
    json rows = json::array();
    try {
      for (const Verdict& v : round_report(instance, alloc, c, wide)) rows.push_back(v.holds);
    } catch (const CapacityError&) {
      rows = "unchecked";
    }
    report[c.name()] = rows;
  }
  doc["report"] = report;
  if (a.trace) doc["trace"] = to_json(instance, trace);
  print(out, doc);
  return kExitOk;
}

int check_cmd(const Args& a, std::ostream& out) {
  const TemporalInstance instance = read_instance(a.instance);
  const json alloc_doc = read_json_file(a.allocation);
  TemporalAllocation alloc;
  try {
    alloc = allocation_from_json(instance, alloc_doc);
  } catch (const ParseError& e) {
    throw ParseError(a.allocation + ": " + e.what());
  }
  const FairnessConcept concept_ = parse_concept(a.concept_text);
  const CheckOptions options{a.mms_cap};
  const Verdict verdict = check_temporal(instance, alloc, concept_, options);
  json doc = to_json(instance, verdict);
  doc["format_version"] = kFormatVersion;
  doc["concept"] = concept_.name();
  if (a.per_round) {
    json rounds = json::array();
    for (const Verdict& v : round_report(instance, alloc, concept_, options)) {
      rounds.push_back(to_json(instance, v));
    }
    doc["rounds"] = rounds;
  }
  print(out, doc);
  return verdict.holds ? kExitOk : kExitFalse;
}

int search_cmd(const Args& a, std::ostream& out) {
  const TemporalInstance instance = read_instance(a.instance);
  const FairnessConcept concept_ = parse_concept(a.concept_text);
  SearchOptions options;
  options.jobs = std::max(1U, a.jobs);
  options.mms_cap = a.mms_cap;
  const SearchOutcome outcome = search(instance, concept_, a.schedule, options);
  json doc = to_json(instance, outcome);
  doc["concept"] = concept_.name();
  doc["scheduling"] = a.schedule;
  print(out, doc);
  return outcome.exists ? kExitOk : kExitFalse;
}

int gen_cmd(const Args& a, std::ostream& out) {
  SettingRequest request = parse_setting(a.setting);
  if (a.level) request.binary_level = a.level;
  if (a.low) request.low_value = a.low;
  if (a.high) request.high_value = a.high;
  GeneratorParams params;
  params.agents = a.agents;
  params.rounds = a.rounds;
  params.per_round = a.goods_per_round;
  params.vary_per_round = a.vary;
  params.value_cap = a.cap;
  params.buffer = a.buffer;
  params.seed = a.seed;
  print(out, to_json(generate(request, params)));
  return kExitOk;
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << s;
  return os.str();
}

int verify_cmd(const Args& a, std::ostream& out) {
  SearchOptions options;
  options.jobs = std::max(1U, a.jobs);
  const std::vector<FixtureResult> results = verify_counterexamples(options);
  bool all = true;
  json rows = json::array();
  for (const FixtureResult& r : results) {
    all = all && r.passed();
    if (a.json_report) {
      rows.push_back({{"name", r.name},
                      {"claim", r.claim},
                      {"expected", r.expected_exists},
                      {"exists", r.exists},
                      {"nodes_visited", r.nodes_visited},
                      {"space_bound", r.space_bound},
                      {"seconds", r.seconds},
                      {"witness_rejected", r.witness_rejected},
                      {"passed", r.passed()}});
      continue;
    }
    out << (r.passed() ? "PASS " : "FAIL ") << r.name << ": expected exists="
        << (r.expected_exists ? "true" : "false") << ", got " << (r.exists ? "true" : "false")
        << " (" << r.nodes_visited << " nodes, " << fmt_seconds(r.seconds) << " s)";
    if (r.witness_rejected) out << " witness rejected on re-check";
    out << "  [" << r.claim << "]\n";
  }
  if (a.json_report) {
    print(out, {{"format_version", kFormatVersion}, {"fixtures", rows}, {"all_passed", all}});
  } else {
    out << (all ? "all fixtures match" : "verification failed") << '\n';
  }
  return all ? kExitOk : kExitFalse;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Temporal fair division: checkers, solvers, exhaustive search", "tempfair"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("tempfair ") + "0.1.0");

  auto* classify = app.add_subcommand("classify", "Report which restricted settings an instance satisfies");
  classify->add_option("instance", a.instance, "Instance JSON file")->required();

  auto* solve = app.add_subcommand("solve", "Run a temporal solver and print the allocation");
  solve->add_option("instance", a.instance, "Instance JSON file");
  solve->add_option("--alg", a.algorithm, "Solver name");
  solve->add_flag("--trace", a.trace, "Include the per-step pick trace");
  solve->add_flag("--list", a.list, "List the solvers and exit");

  auto* check = app.add_subcommand("check", "Check an allocation at every round");
  check->add_option("instance", a.instance, "Instance JSON file")->required();
  check->add_option("allocation", a.allocation, "Allocation JSON file (solve output works)")
      ->required();
  check->add_option("--concept", a.concept_text, "tef1, tefx, atefx:<p/q> or tmms")->required();
  check->add_option("--mms-cap", a.mms_cap, "Largest good count for exact maximin shares");
  check->add_flag("--per-round", a.per_round, "Also report a verdict for every round");

  auto* search_app = app.add_subcommand("search", "Exhaustive existence search");
  search_app->add_option("instance", a.instance, "Instance JSON file")->required();
  search_app->add_option("--concept", a.concept_text, "tef1, tefx, atefx:<p/q> or tmms")
      ->required();
  search_app->add_flag("--schedule", a.schedule, "Let goods range over their legal placements");
  search_app->add_option("--jobs", a.jobs, "Worker threads (output does not depend on it)");
  search_app->add_option("--mms-cap", a.mms_cap, "Largest good count for exact maximin shares");

  auto* gen = app.add_subcommand("gen", "Print a seeded random instance");
  gen->add_option("--setting", a.setting,
                  "Comma list: general, positive, identical-days, generalized-binary, "
                  "bi-valued, identical-valuation, house-allocation");
  gen->add_option("--agents", a.agents, "Number of agents");
  gen->add_option("--rounds", a.rounds, "Number of rounds");
  gen->add_option("--per-round", a.goods_per_round, "Goods per round");
  gen->add_flag("--vary", a.vary, "Draw each round's count from [0, per-round]");
  gen->add_option("--cap", a.cap, "Largest integer value");
  gen->add_option("--seed", a.seed, "Seed");
  gen->add_option("--buffer", a.buffer, "Scheduling buffer r");
  gen->add_option("--level", a.level, "Positive level of generalized binary values");
  gen->add_option("--low", a.low, "Low bi-valued level");
  gen->add_option("--high", a.high, "High bi-valued level");

  auto* verify = app.add_subcommand("verify-paper", "Re-derive the impossibility verdicts by exhaustion");
  verify->add_option("--jobs", a.jobs, "Worker threads");
  verify->add_flag("--json", a.json_report, "Print a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*classify) return classify_cmd(a, out);
    if (*solve) {
      if (!a.list && a.instance.empty()) throw ParameterError("solve needs an instance file");
      return solve_cmd(a, out);
    }
    if (*check) return check_cmd(a, out);
    if (*search_app) return search_cmd(a, out);
    if (*gen) return gen_cmd(a, out);
    if (*verify) return verify_cmd(a, out);
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tempfair
