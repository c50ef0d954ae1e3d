// Acceptance suite: one PASS/FAIL line per criterion. Exit status 1 if
// any hard criterion fails. Criterion 9 also prints a scaling report.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sharegraph/errors.hpp"

using namespace sgtest;

namespace {

// Tolerances and sizes, pinned.
constexpr double kLimitFast = 1.0;        // criteria 1 and 2, seconds
constexpr double kLimitAdequacy = 120.0;  // criterion 3
constexpr double kLimitSharing = 30.0;    // criterion 5
constexpr double kLimitSat = 300.0;       // criterion 7
constexpr std::size_t kRandomSystems = 200;
constexpr std::size_t kAdequacyDepth = 4;
constexpr std::size_t kAdequacyStates = 5'000;
constexpr std::size_t kSharingTerms = 500;
constexpr std::size_t kDiamondGraphs = 500;
constexpr std::size_t kSubstitutions = 100;
constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Everything criterion 4 audits: traces from criteria 1 and 3 plus the
// per-step counters adequacy_check gathered along its BFS.
struct AuditPool {
  std::vector<std::pair<DerivationTrace, std::size_t>> traces;  // trace, delta
  std::size_t bfs_steps = 0;
  std::size_t bfs_violations = 0;
  std::size_t fold_checks = 0;
  std::size_t fold_violations = 0;
};

AuditPool pool;

// Report lines go to stdout and, with --report, to a file as well.
std::FILE* report = nullptr;

void say(const std::string& line) {
  std::fputs(line.c_str(), stdout);
  std::fflush(stdout);
  if (report) std::fputs(line.c_str(), report);
}

Outcome rf_example() {
  const Trs rf = data_trs("rf.trs");
  const Grs grs = compile_trs(rf);
  NormalizeOptions options;
  options.keep_snapshots = true;
  const auto trace = normalize(grs, mk_tree(term("f(a)")), options);
  pool.traces.emplace_back(trace, grs.delta());
  if (!trace.normal_form || trace.length() != 2 || to_string(read_term(trace.final)) != "top")
    return {false, "f(a) does not reach top in two steps"};
  const TermGraph unshared = graph({{1, "eq", {2, 3}}, {2, "a", {}}, {3, "a", {}}});
  const TermGraph shared = graph({{1, "eq", {2, 2}}, {2, "a", {}}});
  if (!is_isomorphic(trace.snapshots.at(0), unshared)) return {false, "first step is not eq(a,a)"};
  if (!is_isomorphic(fold_below(trace.snapshots.at(0), {}).graph, shared) || trace.steps[1].audit.collapses != 1)
    return {false, "second step does not fold to the shared eq(a,a)"};

  NormalizeOptions no_fold;
  no_fold.step.fold = false;
  const auto stuck = normalize(grs, mk_tree(term("f(a)")), no_fold);
  if (!stuck.normal_form || stuck.length() != 1 || !is_isomorphic(stuck.final, unshared))
    return {false, "without folding the unshared eq(a,a) is not stuck"};
  return {true, "f(a) -> eq(a,a) [folded: eq(a.,a.)] -> top; without folding stuck at eq(a,a)"};
}

Outcome fold_figure() {
  const auto up = unfold_above(figure_t1(), {2});
  const auto down = fold_below(figure_t2(), {2});
  const bool ok = is_isomorphic(up.graph, figure_t2()) && is_isomorphic(down.graph, figure_t3());
  // The fold/unfold bounds for these two runs go to criterion 4.
  pool.fold_checks += 2;
  pool.fold_violations += (up.steps.size() > 1) + (down.steps.size() > subgraph_at(figure_t2(), node_at(figure_t2(), {2})).size());
  return {ok, fmt("unfold_above(T1,[2]) %s T2, fold_below(T2,[2]) %s T3", is_isomorphic(up.graph, figure_t2()) ? "~=" : "!~",
                  is_isomorphic(down.graph, figure_t3()) ? "~=" : "!~")};
}

// Adequacy of one system from one start term, plus li/lo derivations of
// the same length for the cumulative audit.
bool adequate(const Trs& trs, const Term& t, std::size_t& truncated, std::size_t& positions, std::string& failure) {
  AdequacyOptions options;
  options.depth = kAdequacyDepth;
  options.max_states = kAdequacyStates;
  const auto report = adequacy_check(trs, t, options);
  truncated += report.truncated;
  positions += report.positions_checked;
  pool.bfs_steps += report.steps_audited;
  pool.bfs_violations += report.bound_violations;
  const Grs grs = compile_trs(trs);
  for (Strategy s : {Strategy::leftmost_innermost, Strategy::leftmost_outermost}) {
    NormalizeOptions n;
    n.strategy = s;
    n.fuel = kAdequacyDepth;
    pool.traces.emplace_back(normalize(grs, mk_tree(t), n), grs.delta());
  }
  if (!report.passed && failure.empty()) failure = to_string(t) + ": " + report.counterexample.value_or("?");
  return report.passed;
}

Outcome adequacy_suite() {
  std::size_t cases = 0, passed = 0, truncated = 0, positions = 0;
  std::string failure;
  auto run = [&](const Trs& trs, const Term& t) {
    ++cases;
    passed += adequate(trs, t, truncated, positions, failure);
  };
  const Trs rf = data_trs("rf.trs"), rg = data_trs("rg.trs");
  run(rf, term("f(a)"));
  run(rf, term("eq(f(a),f(a))"));
  run(rg, parse_term("dup(a)", rg));
  run(rg, parse_term("dup(dup(a))", rg));
  const Trs fragment = data_trs("rsat.trs").restrict_to({8, 9, 10, 11, 12, 13, 14, 15, 16});
  for (const char* s : {"neg(O(eps))", "eq(O(Z(eps)),neg(Z(Z(eps))))",
                        "verify(cons(O(eps),cons(neg(O(eps)),nil)))", "verify(cons(Z(O(eps)),cons(O(Z(eps)),nil)))"})
    run(fragment, parse_term(s, fragment));

  std::mt19937_64 rng(kSeed);
  for (std::size_t i = 0; i < kRandomSystems; ++i) {
    const Trs trs = random_trs(rng, 4, 6);
    run(trs, random_term(signature_of(trs), 7, false, rng));
  }
  Outcome out{passed == cases, fmt("%zu/%zu systems agree, %zu positions compared, %zu hit the %zu-state cap", passed,
                                   cases, positions, truncated, kAdequacyStates)};
  if (!failure.empty()) out.detail += "; first failure " + failure;
  return out;
}

Outcome bound_audit() {
  std::size_t steps = 0, violations = 0;
  std::string first;
  for (const auto& [trace, delta] : pool.traces) {
    steps += trace.length();
    for (const auto& v : audit_bounds(trace, delta))
      if (!v.ok) {
        ++violations;
        if (first.empty()) first = fmt("%s at step %zu: %zu > %zu", v.check.c_str(), v.step, v.value, v.bound);
      }
  }
  violations += pool.bfs_violations + pool.fold_violations;
  Outcome out{violations == 0, fmt("%zu traces (%zu steps, per-step and cumulative), %zu BFS steps, %zu fold runs, "
                                   "%zu violations",
                                   pool.traces.size(), steps, pool.bfs_steps, pool.fold_checks, violations)};
  if (!first.empty()) out.detail += "; first " + first;
  return out;
}

Outcome maximal_sharing() {
  const Signature sig{{{Symbol::intern("a"), 0},
                       {Symbol::intern("b"), 0},
                       {Symbol::intern("f"), 1},
                       {Symbol::intern("g"), 1},
                       {Symbol::intern("h"), 2}},
                      {Symbol::intern("x"), Symbol::intern("y")}};
  std::mt19937_64 rng(kSeed + 5);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < kSharingTerms; ++i) {
    const Term t = random_term(sig, 12, true, rng);
    const TermGraph shared = mk_shared(t);
    bad += !is_isomorphic(fold_below(mk_tree(t), {}).graph, shared) || shared.size() != distinct_subterm_count(t);
  }
  return {bad == 0, fmt("%zu terms, %zu mismatches", kSharingTerms, bad)};
}

std::vector<TermGraph> collapses(const TermGraph& s) {
  std::vector<TermGraph> out;
  for (const auto& [u, v] : fold_candidates(s, {})) out.push_back(collapse_step(s, u, v));
  return out;
}

// The diamond holds for peaks of two collapse steps; copy peaks need
// not join in one step each.
Outcome diamond() {
  const Signature sig{{{Symbol::intern("a"), 0}, {Symbol::intern("b"), 0}, {Symbol::intern("f"), 1},
                       {Symbol::intern("h"), 2}},
                      {Symbol::intern("x")}};
  std::mt19937_64 rng(kSeed + 6);
  std::size_t graphs = 0, peaks = 0, unjoined = 0;
  for (std::size_t tries = 0; graphs < kDiamondGraphs && tries < 50 * kDiamondGraphs; ++tries) {
    TermGraph s = tries % 2 ? random_graph(rng) : mk_tree(random_term(sig, 21, true, rng));
    const auto next = collapses(s);
    if (next.size() < 2) continue;
    ++graphs;
    for (std::size_t i = 0; i < next.size(); ++i)
      for (std::size_t j = i + 1; j < next.size(); ++j) {
        ++peaks;
        auto left = collapses(next[i]), right = collapses(next[j]);
        left.push_back(next[i]);
        right.push_back(next[j]);
        bool joined = false;
        for (const auto& x : left)
          for (const auto& y : right) joined = joined || canonical_form(x) == canonical_form(y);
        unjoined += !joined;
      }
  }
  return {graphs >= kDiamondGraphs && unjoined == 0,
          fmt("%zu graphs, %zu collapse peaks, %zu not joinable", graphs, peaks, unjoined)};
}

Outcome fsat() {
  const ComputationSpec spec = load_rsat();
  std::size_t formulas = 0, sat = 0, unsound = 0, incomplete = 0, cut = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& cnf : all_formulas(n, 3)) {
      ++formulas;
      const auto result = compute(spec, encode_cnf(cnf, n));
      cut += !result.complete;
      const bool satisfiable = !satisfying_assignments(cnf, n).empty();
      sat += satisfiable;
      incomplete += result.accepted.empty() == satisfiable;
      for (const auto& t : result.accepted) {
        const auto literals = decode_literals(t, n);
        unsound += !literals || !literals_satisfy(*literals, cnf);
      }
    }
  return {unsound == 0 && incomplete == 0 && cut == 0,
          fmt("%zu formulas over 1-3 variables (%zu satisfiable), %zu unsound results, %zu disagreements on "
              "emptiness, %zu searches cut",
              formulas, sat, unsound, incomplete, cut)};
}

Outcome matching() {
  std::mt19937_64 rng(kSeed + 8);
  std::size_t rules = 0, checks = 0, failures = 0;
  for (const char* name : {"rf.trs", "rg.trs", "mult.trs", "rsat.trs"}) {
    const Trs trs = data_trs(name);
    const Signature ground{signature_of(trs).functions, {}};
    for (const auto& rule : trs.rules()) {
      ++rules;
      const TermGraph l = mk_tree(rule.lhs());
      for (std::size_t i = 0; i < kSubstitutions; ++i) {
        Substitution sigma;
        for (Symbol x : rule.lhs().variables()) sigma.insert_or_assign(x, random_term(ground, 8, false, rng));
        const TermGraph s = mk_shared(apply_subst(rule.lhs(), sigma));
        const auto m = find_morphism(l, s);
        ++checks;
        failures += !m || !(induced_substitution(*m, l, s) == sigma);
      }
    }
  }
  return {failures == 0, fmt("%zu rules x %zu substitutions, %zu failures", rules, kSubstitutions, failures)};
}

// Random 3-CNF with n variables and 2n clauses.
Cnf random_cnf(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> var(1, static_cast<int>(n));
  std::bernoulli_distribution sign;
  Cnf cnf;
  for (std::size_t c = 0; c < 2 * n; ++c) {
    std::vector<int> clause;
    for (int k = 0; k < 3; ++k) clause.push_back(sign(rng) ? var(rng) : -var(rng));
    cnf.push_back(clause);
  }
  return cnf;
}

double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += std::log(xs[i]), my += std::log(ys[i]);
  mx /= xs.size();
  my /= ys.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (std::log(xs[i]) - mx) * (std::log(ys[i]) - my);
    den += (std::log(xs[i]) - mx) * (std::log(xs[i]) - mx);
  }
  return den == 0 ? 0 : num / den;
}

Outcome scaling() {
  const Grs grs = compile_trs(load_rsat().trs);
  std::mt19937_64 rng(kSeed + 9);
  std::vector<double> sizes, steps, peaks;
  std::size_t violations = 0;
  say("      |S0|  steps  max|S|  envelope  result\n");
  for (std::size_t n : {1, 2, 3, 4, 6, 8, 12, 16, 24, 32}) {
    const Cnf cnf = random_cnf(n, rng);
    const TermGraph s0 = mk_tree(Term::app("issat", {encode_cnf(cnf, n)}));
    NormalizeOptions options;
    options.fuel = 1'000'000;
    const auto trace = normalize(grs, s0, options);
    std::size_t max_size = s0.size();
    for (const auto& st : trace.steps) max_size = std::max(max_size, st.audit.size_after);
    for (const auto& v : audit_bounds(trace, grs.delta())) violations += !v.ok;
    const std::size_t l = trace.length();
    const std::size_t envelope = (l + 1) * s0.size() + l * l * grs.delta();
    violations += max_size > envelope;
    say(fmt("      %4zu  %5zu  %6zu  %8zu  %s\n", s0.size(), l, max_size, envelope,
                trace.normal_form ? to_string(read_term(trace.final)).substr(0, 40).c_str() : "(fuel)"));
    sizes.push_back(static_cast<double>(s0.size()));
    steps.push_back(static_cast<double>(std::max<std::size_t>(l, 1)));
    peaks.push_back(static_cast<double>(max_size));
  }
  return {violations == 0, fmt("log-log slope: steps %.2f, max|S| %.2f against |S0|; %zu envelope violations",
                               slope(sizes, steps), slope(sizes, peaks), violations)};
}

struct Criterion {
  int id;
  const char* name;
  double limit;  // seconds, 0 for none
  std::function<Outcome()> run;
};

}  // namespace

// Usage: acceptance [--report FILE] [N...]. Numbers select criteria;
// criterion 4 audits only what the selected criteria 1-3 produced.
int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--report" && i + 1 < argc) {
      report = std::fopen(argv[++i], "w");
      if (!report) {
        std::fprintf(stderr, "cannot write %s\n", argv[i]);
        return 2;
      }
      continue;
    }
    only.insert(std::atoi(argv[i]));
  }
  const std::vector<Criterion> criteria{
      {1, "R_f example derivation", kLimitFast, rf_example},
      {2, "fold/unfold figure", kLimitFast, fold_figure},
      {3, "adequacy suite", kLimitAdequacy, adequacy_suite},
      {4, "bound audit", 0, bound_audit},
      {5, "maximal sharing", kLimitSharing, maximal_sharing},
      {6, "collapse diamond", 0, diamond},
      {7, "FSAT end-to-end", kLimitSat, fsat},
      {8, "left-hand side matching", 0, matching},
      {9, "scaling sanity", 0, scaling},
  };
  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.contains(c.id)) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit > 0 && secs > c.limit) {
      out.ok = false;
      out.detail += fmt("; over the %.0f s limit", c.limit);
    }
    failed += !out.ok;
    say(fmt("%s  [%d] %s: %s (%.2f s)\n", out.ok ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(), secs));
  }
  say(fmt("%d/%d criteria passed\n", ran - failed, ran));
  if (report) std::fclose(report);
  return failed == 0 ? 0 : 1;
}
