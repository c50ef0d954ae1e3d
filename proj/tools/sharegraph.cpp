// Command-line front end. Talks to the library through the C interface only.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sharegraph/sharegraph.h"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kExhausted = 2;
constexpr int kPropertyFailure = 3;

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(sg_status status) { return status == SG_ERR_CAPACITY ? kExhausted : kUsage; }

void check(sg_status status) {
  if (status != SG_OK) throw Failure{exit_code_for(status), sg_last_error()};
}

struct TrsDeleter {
  void operator()(sg_trs* p) const { sg_trs_free(p); }
};
struct GraphDeleter {
  void operator()(sg_graph* p) const { sg_graph_free(p); }
};
using TrsPtr = std::unique_ptr<sg_trs, TrsDeleter>;
using GraphPtr = std::unique_ptr<sg_graph, GraphDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  sg_string_free(s);
  return out;
}

TrsPtr load(const std::string& path) {
  sg_trs* trs = nullptr;
  check(sg_trs_load(path.c_str(), &trs));
  return TrsPtr(trs);
}

GraphPtr graph_of(const sg_trs* trs, const std::string& term, bool shared) {
  sg_graph* g = nullptr;
  check(sg_graph_from_term(trs, term.c_str(), shared ? 1 : 0, &g));
  return GraphPtr(g);
}

json info_of(const sg_trs* trs) {
  char* out = nullptr;
  check(sg_trs_info(trs, &out));
  return json::parse(take(out));
}

struct Common {
  std::string file;
  std::string term;
  bool json_out = false;
  std::size_t fuel = 10'000;
  std::size_t max_states = 200'000;
  bool no_fold = false;
  bool no_unfold = false;
};

void add_controls(CLI::App* cmd, Common& c) {
  cmd->add_flag("--no-fold", c.no_fold, "skip folding below the redex (negative control)")->group("");
  cmd->add_flag("--no-unfold", c.no_unfold, "skip unfolding above the redex (negative control)")->group("");
}

int cmd_parse(const Common& c) {
  TrsPtr trs = load(c.file);
  const json info = info_of(trs.get());
  if (c.json_out) {
    std::cout << info.dump(2) << "\n";
    return kOk;
  }
  char* printed = nullptr;
  check(sg_trs_print(trs.get(), &printed));
  std::cout << take(printed);
  auto names = [](const json& syms) {
    std::string out;
    for (const auto& s : syms) out += " " + s["name"].get<std::string>() + "/" + std::to_string(s["arity"].get<int>());
    return out;
  };
  std::cout << "# defined:" << names(info["defined"]) << "\n";
  std::cout << "# constructors:" << names(info["constructors"]) << "\n";
  std::cout << "# delta: " << info["delta"].get<std::size_t>() << "\n";
  return kOk;
}

int cmd_normalize(const Common& c, const std::string& strategy, const std::string& dot_dir, bool shared) {
  TrsPtr trs = load(c.file);
  GraphPtr start = graph_of(trs.get(), c.term, shared);
  sg_normalize_options o;
  sg_normalize_options_init(&o);
  if (sg_strategy_parse(strategy.c_str(), &o.strategy) != SG_OK) throw Failure{kUsage, sg_last_error()};
  o.fuel = c.fuel;
  o.max_states = c.max_states;
  o.keep_snapshots = dot_dir.empty() ? 0 : 1;
  o.fold = c.no_fold ? 0 : 1;
  o.unfold = c.no_unfold ? 0 : 1;
  char* trace_text = nullptr;
  check(sg_normalize(trs.get(), start.get(), &o, &trace_text));
  const std::string trace = take(trace_text);
  const json info = info_of(trs.get());
  int ok = 0;
  char* verdicts = nullptr;
  check(sg_audit_trace(trace.c_str(), info["delta"].get<std::size_t>(), &verdicts, &ok));
  sg_string_free(verdicts);
  const json j = json::parse(trace);

  if (!dot_dir.empty()) {
    std::filesystem::create_directories(dot_dir);
    std::vector<json> graphs{j["initial"]};
    for (const auto& g : j["snapshots"]) graphs.push_back(g);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      sg_graph* g = nullptr;
      check(sg_graph_from_json(graphs[i].dump().c_str(), &g));
      GraphPtr owned(g);
      char* dot = nullptr;
      check(sg_graph_dot(owned.get(), &dot));
      std::ofstream(std::filesystem::path(dot_dir) / ("step" + std::to_string(i) + ".dot")) << take(dot);
    }
  }

  const std::size_t steps = j["steps"].size();
  if (c.json_out) {
    json out = j;
    out.erase("snapshots");
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << j["final"]["term"].get<std::string>() << " (" << steps << (steps == 1 ? " step" : " steps")
              << ", bounds " << (ok ? "OK" : "VIOLATED") << ")";
    if (j["fuel_exhausted"].get<bool>()) std::cout << " fuel exhausted";
    std::cout << "\n";
  }
  if (j["fuel_exhausted"].get<bool>()) return kExhausted;
  return ok ? kOk : kPropertyFailure;
}

sg_explore_options explore(const Common& c, bool innermost, std::size_t jobs) {
  sg_explore_options o;
  sg_explore_options_init(&o);
  o.fuel = c.fuel;
  o.max_states = c.max_states;
  o.innermost = innermost ? 1 : 0;
  o.jobs = jobs;
  o.fold = c.no_fold ? 0 : 1;
  o.unfold = c.no_unfold ? 0 : 1;
  return o;
}

int cmd_normal_forms(const Common& c, bool innermost, std::size_t jobs) {
  TrsPtr trs = load(c.file);
  GraphPtr start = graph_of(trs.get(), c.term, false);
  const sg_explore_options o = explore(c, innermost, jobs);
  char* out = nullptr;
  check(sg_normal_forms(trs.get(), start.get(), &o, &out));
  const json j = json::parse(take(out));
  if (c.json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& t : j["normal_forms"]) std::cout << t.get<std::string>() << "\n";
    std::cout << "# " << j["normal_forms"].size() << " normal form(s), " << j["states"].get<std::size_t>()
              << " states" << (j["complete"].get<bool>() ? "" : ", search incomplete") << "\n";
  }
  return j["complete"].get<bool>() ? kOk : kExhausted;
}

json run_adequacy(const sg_trs* trs, const std::string& term, const Common& c, std::size_t depth) {
  sg_adequacy_options o;
  sg_adequacy_options_init(&o);
  o.depth = depth;
  o.max_states = c.max_states;
  o.fold = c.no_fold ? 0 : 1;
  o.unfold = c.no_unfold ? 0 : 1;
  char* out = nullptr;
  check(sg_adequacy(trs, term.c_str(), &o, &out));
  return json::parse(take(out));
}

int cmd_adequacy(const Common& c, std::size_t depth) {
  TrsPtr trs = load(c.file);
  const json j = run_adequacy(trs.get(), c.term, c, depth);
  if (c.json_out) {
    std::cout << j.dump(2) << "\n";
  } else if (j["passed"].get<bool>()) {
    std::cout << "PASS (" << j["graphs_checked"].get<std::size_t>() << " graphs, "
              << j["positions_checked"].get<std::size_t>() << " positions, " << j["steps_audited"].get<std::size_t>()
              << " steps audited" << (j["truncated"].get<bool>() ? ", truncated" : "") << ")\n";
  } else {
    std::cout << "FAIL: " << j["counterexample"].get<std::string>() << "\n";
  }
  return j["passed"].get<bool>() ? kOk : kPropertyFailure;
}

int cmd_compute(const Common& c, const std::string& entry, const std::vector<std::string>& na,
                const std::string& mode, std::size_t jobs) {
  if (mode != "innermost" && mode != "full") throw Failure{kUsage, "--mode must be innermost or full"};
  TrsPtr trs = load(c.file);
  const sg_explore_options o = explore(c, mode == "innermost", jobs);
  std::vector<const char*> patterns;
  for (const auto& p : na) patterns.push_back(p.c_str());
  char* out = nullptr;
  check(sg_compute(trs.get(), entry.c_str(), patterns.data(), patterns.size(), c.term.c_str(), &o, &out));
  const json j = json::parse(take(out));
  if (c.json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& t : j["accepted"]) std::cout << t.get<std::string>() << "\n";
    std::cout << "# " << j["accepted"].size() << " accepted, " << j["rejected"].size() << " rejected, "
              << j["stuck"].size() << " stuck normal form(s)\n";
    for (const auto& t : j["rejected"]) std::cout << "# " << t.get<std::string>() << " reached\n";
    if (!j["complete"].get<bool>()) std::cout << "# search incomplete: raise --fuel or --max-states\n";
  }
  return j["complete"].get<bool>() ? kOk : kExhausted;
}

int cmd_rc(const Common& c, std::size_t size, std::size_t max_terms) {
  TrsPtr trs = load(c.file);
  char* out = nullptr;
  check(sg_runtime_complexity(trs.get(), size, c.fuel, max_terms, &out));
  const json rows = json::parse(take(out));
  if (c.json_out) {
    std::cout << rows.dump(2) << "\n";
    return kOk;
  }
  bool exceeded = false;
  std::cout << "size\tbasic_terms\trc\n";
  for (const auto& r : rows) {
    std::cout << r["size"].get<std::size_t>() << "\t" << r["basic_terms"].get<std::size_t>() << "\t";
    if (r["max_length"].is_null()) {
      std::cout << "exceeded\n";
      exceeded = true;
    } else {
      std::cout << r["max_length"].get<std::size_t>() << "\n";
    }
  }
  return exceeded ? kExhausted : kOk;
}

int cmd_encode(const std::string& input, const std::string& clauses, std::size_t vars) {
  std::string text = clauses;
  if (text.empty()) {
    if (input.empty() || input == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream in(input);
      if (!in) throw Failure{kUsage, "cannot open " + input};
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
  }
  char* out = nullptr;
  check(sg_encode_cnf(text.c_str(), vars, &out));
  std::cout << take(out) << "\n";
  return kOk;
}

int cmd_dot(const Common& c, bool shared, bool dump) {
  TrsPtr trs = load(c.file);
  GraphPtr g = graph_of(trs.get(), c.term, shared);
  char* out = nullptr;
  check(dump ? sg_graph_dump(g.get(), &out) : sg_graph_dot(g.get(), &out));
  std::cout << take(out);
  return kOk;
}

// Random ground term over the whole signature with at most `budget` symbols.
// Returns the term text and its size.
std::pair<std::string, std::size_t> random_term(const json& syms, std::size_t budget, std::mt19937_64& rng) {
  std::vector<json> constants, fitting;
  for (const auto& s : syms) {
    const auto n = s["arity"].get<std::size_t>();
    if (n == 0)
      constants.push_back(s);
    else if (n + 1 <= budget)
      fitting.push_back(s);
  }
  auto pick = [&](const std::vector<json>& v) -> const json& {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  if (fitting.empty() || std::bernoulli_distribution(0.3)(rng)) return {pick(constants)["name"].get<std::string>(), 1};
  const json& f = pick(fitting);
  const std::size_t n = f["arity"].get<std::size_t>();
  std::size_t remaining = budget - 1, size = 1;
  std::string out = f["name"].get<std::string>() + "(";
  for (std::size_t i = 0; i < n; ++i) {
    auto [arg, k] = random_term(syms, remaining - (n - 1 - i), rng);
    out += (i ? "," : "") + arg;
    remaining -= k;
    size += k;
  }
  return {out + ")", size};
}

int cmd_fuzz(const Common& c, std::size_t count, std::size_t size, std::size_t depth, std::uint64_t seed) {
  TrsPtr trs = load(c.file);
  const json info = info_of(trs.get());
  json syms = info["defined"];
  for (const auto& s : info["constructors"]) syms.push_back(s);
  bool has_constant = false;
  for (const auto& s : syms) has_constant |= s["arity"].get<std::size_t>() == 0;
  if (!has_constant) throw Failure{kUsage, "the signature has no constant to build ground terms from"};
  std::mt19937_64 rng(seed);
  std::size_t graphs = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::string term = random_term(syms, size, rng).first;
    const json j = run_adequacy(trs.get(), term, c, depth);
    graphs += j["graphs_checked"].get<std::size_t>();
    if (!j["passed"].get<bool>()) {
      std::cout << "FAIL on " << term << ": " << j["counterexample"].get<std::string>() << "\n";
      return kPropertyFailure;
    }
  }
  std::cout << "PASS (" << count << " terms, " << graphs << " graphs, seed " << seed << ")\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Term graph rewriting with fold/unfold steps"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  app.add_option("--seed", seed, "seed for randomized commands (SHAREGRAPH_SEED overrides)");
  app.add_option("--jobs", jobs, "worker threads for normal-form search")->check(CLI::PositiveNumber);

  Common c;
  auto file_opt = [&](CLI::App* cmd) { cmd->add_option("file", c.file, ".trs file")->required(); };
  auto term_opt = [&](CLI::App* cmd, const char* what) { cmd->add_option("term", c.term, what)->required(); };
  auto json_opt = [&](CLI::App* cmd) { cmd->add_flag("--json", c.json_out, "machine-readable output"); };
  auto fuel_opt = [&](CLI::App* cmd) {
    cmd->add_option("--fuel", c.fuel, "step budget")->capture_default_str();
    cmd->add_option("--max-states", c.max_states, "state cap for searches")->capture_default_str();
  };

  auto* parse = app.add_subcommand("parse", "parse a .trs file and print it");
  file_opt(parse);
  json_opt(parse);

  std::string strategy = "li", dot_dir;
  bool shared = false;
  auto* normalize = app.add_subcommand("normalize", "rewrite a term to a normal form");
  file_opt(normalize);
  term_opt(normalize, "start term");
  normalize->add_option("--strategy", strategy, "li, lo, ff or ex")->capture_default_str();
  normalize->add_option("--dot", dot_dir, "write one DOT file per step into this directory");
  normalize->add_flag("--shared", shared, "start from the maximally shared graph");
  fuel_opt(normalize);
  json_opt(normalize);
  add_controls(normalize, c);

  bool innermost = false;
  auto* nfs = app.add_subcommand("normal-forms", "all normal forms reachable from a term");
  file_opt(nfs);
  term_opt(nfs, "start term");
  nfs->add_flag("--innermost", innermost, "follow the leftmost innermost redex position only");
  fuel_opt(nfs);
  json_opt(nfs);
  add_controls(nfs, c);

  std::size_t depth = 3;
  auto* adequacy = app.add_subcommand("adequacy", "compare graph steps with term steps");
  file_opt(adequacy);
  term_opt(adequacy, "start term");
  adequacy->add_option("--depth", depth, "exploration depth")->capture_default_str();
  fuel_opt(adequacy);
  json_opt(adequacy);
  add_controls(adequacy, c);

  std::string entry, mode = "innermost";
  std::vector<std::string> na;
  auto* compute = app.add_subcommand("compute", "outputs of a computation on a value");
  file_opt(compute);
  term_opt(compute, "input value");
  compute->add_option("--entry", entry, "defined symbol to apply")->required();
  compute->add_option("--na", na, "non-accepting pattern (repeatable)");
  compute->add_option("--mode", mode, "innermost or full")->capture_default_str();
  fuel_opt(compute);
  json_opt(compute);
  add_controls(compute, c);

  std::size_t rc_size = 0, max_terms = 100'000;
  auto* rc = app.add_subcommand("rc", "runtime complexity over basic terms");
  file_opt(rc);
  rc->add_option("--size", rc_size, "largest term size")->required();
  rc->add_option("--max-terms", max_terms, "enumeration cap")->capture_default_str();
  rc->add_option("--fuel", c.fuel, "derivation length budget")->capture_default_str();
  json_opt(rc);

  std::string cnf_input, clauses;
  std::size_t vars = 0;
  auto* encode = app.add_subcommand("encode-cnf", "encode a DIMACS-like clause list as a formula term");
  encode->add_option("input", cnf_input, "clause file, - for stdin");
  encode->add_option("--clauses", clauses, "clauses inline, e.g. \"1 -2 0 3 0\"");
  encode->add_option("--vars", vars, "number of variables (default: largest used)");

  bool dump = false;
  auto* dot = app.add_subcommand("dot", "render the graph of a term");
  file_opt(dot);
  term_opt(dot, "term");
  dot->add_flag("--shared", shared, "maximally shared graph instead of a tree");
  dot->add_flag("--text", dump, "node list instead of DOT");

  std::size_t count = 100, size = 7;
  auto* fuzz = app.add_subcommand("fuzz", "adequacy on random ground terms");
  file_opt(fuzz);
  fuzz->add_option("--count", count, "number of terms")->capture_default_str();
  fuzz->add_option("--size", size, "largest term size")->capture_default_str();
  fuzz->add_option("--depth", depth, "exploration depth")->capture_default_str();
  fuzz->add_option("--max-states", c.max_states, "state cap per term")->capture_default_str();
  add_controls(fuzz, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (const char* env = std::getenv("SHAREGRAPH_SEED")) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: SHAREGRAPH_SEED is not a number\n";
      return kUsage;
    }
  }
  if (c.max_states == 200'000 && (adequacy->parsed() || fuzz->parsed())) c.max_states = 5'000;

  try {
    if (parse->parsed()) return cmd_parse(c);
    if (normalize->parsed()) return cmd_normalize(c, strategy, dot_dir, shared);
    if (nfs->parsed()) return cmd_normal_forms(c, innermost, jobs);
    if (adequacy->parsed()) return cmd_adequacy(c, depth);
    if (compute->parsed()) return cmd_compute(c, entry, na, mode, jobs);
    if (rc->parsed()) return cmd_rc(c, rc_size, max_terms);
    if (encode->parsed()) return cmd_encode(cnf_input, clauses, vars);
    if (dot->parsed()) return cmd_dot(c, shared, dump);
    if (fuzz->parsed()) return cmd_fuzz(c, count, size, depth, seed);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
