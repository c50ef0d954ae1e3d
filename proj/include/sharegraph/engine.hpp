#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sharegraph/grs.hpp"
#include "sharegraph/term_oracle.hpp"

namespace sharegraph {

enum class Strategy { leftmost_innermost, leftmost_outermost, first_found, exhaustive };

/// "li", "lo", "ff", "ex" or the full names with '-' separators.
std::optional<Strategy> parse_strategy(std::string_view name);
std::string to_string(Strategy s);

/// One ⇝ step of a derivation together with its bound checks.
struct StepRecord {
  Position position;
  std::size_t rule = 0;
  StepAudit audit;
  std::size_t rsize_before = 0;
  std::size_t rsize_after = 0;
  bool bounds_ok = true;
};

struct DerivationTrace {
  TermGraph initial;
  std::vector<StepRecord> steps;
  TermGraph final;
  bool normal_form = false;
  bool fuel_exhausted = false;
  /// Graph after each step, filled only when requested.
  std::vector<TermGraph> snapshots;

  std::size_t length() const { return steps.size(); }
};

struct NormalizeOptions {
  Strategy strategy = Strategy::leftmost_innermost;
  std::size_t fuel = 10'000;
  /// Breadth cap for Strategy::exhaustive.
  std::size_t max_states = 200'000;
  bool keep_snapshots = false;
  StepOptions step;
};

/// A redex: a position, the node it denotes and a rule whose left-hand
/// side matches τ(S) there.
struct Redex {
  Position position;
  NodeId node;
  std::size_t rule = 0;
};

/// All redexes of `s` in preorder of positions, rules in order. Matching
/// is decided on the maximally shared quotient of `s`, which agrees with
/// matching τ(S) and is what full_step achieves by folding.
std::vector<Redex> find_redexes(const Grs& grs, const TermGraph& s);

/// Applies ⇝ steps chosen by the strategy until a normal form is reached
/// or the fuel runs out (trace.fuel_exhausted, partial trace).
DerivationTrace normalize(const Grs& grs, const TermGraph& s, const NormalizeOptions& options = {});

/// Which ⇝ reducts the normal-form search follows.
enum class Exploration {
  /// Every position and every rule.
  full,
  /// Only the leftmost innermost redex position, every rule there. Reaches
  /// exactly the normal forms of innermost rewriting.
  innermost,
};

struct ExploreOptions {
  std::size_t fuel = 10'000;        // maximal derivation length
  std::size_t max_states = 200'000;  // distinct states visited
  Exploration mode = Exploration::full;
  std::size_t jobs = 1;
  StepOptions step;
};

struct NormalFormSet {
  /// τ of each reachable normal form, with one graph representing it.
  std::map<Term, TermGraph> forms;
  /// False if the fuel or the state cap cut the search short.
  bool complete = true;
  std::size_t states = 0;
  std::size_t max_depth = 0;
};

/// Breadth-first search over ⇝ with states identified up to sharing.
NormalFormSet all_normal_forms(const Grs& grs, const TermGraph& s, const ExploreOptions& options = {});

struct BoundVerdict {
  /// Step index; for cumulative checks, the prefix length ℓ.
  std::size_t step = 0;
  std::string check;
  std::size_t value = 0;
  std::size_t bound = 0;
  bool ok = true;
};

/// Per-step checks: |T| ≤ |S| + depth(S) + Δ, depth(T) ≤ depth(S) + Δ,
/// |T| ≤ |U| + Δ for the folded graph U, copies ≤ |p| and collapses ≤ |U↾p|.
/// Cumulative check for every prefix: |T_ℓ| ≤ (ℓ+1)|T₀| + ℓ²Δ.
std::vector<BoundVerdict> audit_bounds(const DerivationTrace& trace, std::size_t delta);
bool all_ok(const std::vector<BoundVerdict>& verdicts);

struct AdequacyOptions {
  std::size_t depth = 3;
  std::size_t max_states = 5'000;
  std::size_t max_term_size = 100'000;
  StepOptions step;
};

struct AdequacyReport {
  bool passed = true;
  /// True when the state cap stopped the search before `depth`.
  bool truncated = false;
  std::size_t graphs_checked = 0;
  std::size_t positions_checked = 0;
  std::size_t steps_audited = 0;
  std::size_t bound_violations = 0;
  std::optional<std::string> counterexample;
};

/// Explores ⇝ breadth-first from mk_tree(s) up to `depth` steps. For every
/// graph S met and every position p of τ(S), compares the term reducts of
/// τ(S) at p with τ of the full-step reducts of S at p, as sets of
/// (rule, term) pairs. Every step taken is also checked against the
/// per-step bounds.
AdequacyReport adequacy_check(const Trs& trs, const Term& s, const AdequacyOptions& options = {});

/// JSON trace: {initial, steps:[{pos, rule, copies, collapses, size_before,
/// size_after, depth_after, rsize_after, bounds_ok, ...}], final, normal_form}.
/// Graphs are {term, root, nodes:[{id, label, var, succ}]}.
std::string trace_to_json(const DerivationTrace& trace, int indent = -1);
DerivationTrace trace_from_json(std::string_view text);
std::string graph_to_json(const TermGraph& g, int indent = -1);
TermGraph graph_from_json(std::string_view text);

}  // namespace sharegraph
