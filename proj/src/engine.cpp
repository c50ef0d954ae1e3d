#include "sharegraph/engine.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "sharegraph/errors.hpp"

namespace sharegraph {

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "li" || name == "leftmost-innermost") return Strategy::leftmost_innermost;
  if (name == "lo" || name == "leftmost-outermost") return Strategy::leftmost_outermost;
  if (name == "ff" || name == "first-found") return Strategy::first_found;
  if (name == "ex" || name == "exhaustive") return Strategy::exhaustive;
  return std::nullopt;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::leftmost_innermost: return "leftmost-innermost";
    case Strategy::leftmost_outermost: return "leftmost-outermost";
    case Strategy::first_found: return "first-found";
    case Strategy::exhaustive: return "exhaustive";
  }
  return "?";
}

namespace {

// Whether τ(L) matches τ(S↾u), decided on sharing classes.
struct MatchScratch {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> binding;
  std::vector<std::pair<NodeId, NodeId>> stack;
};

bool matches(const GraphRule& rule, const TermGraph& s, NodeId u, const std::vector<std::uint32_t>& cls,
             MatchScratch& scratch) {
  const TermGraph& lhs = rule.lhs();
  if (!(lhs.label(lhs.root()) == s.label(u))) return false;
  // Left-hand sides are small: linear scans beat hashing here.
  auto& binding = scratch.binding;
  auto& stack = scratch.stack;
  binding.clear();
  stack.assign(1, {lhs.root(), u});
  while (!stack.empty()) {
    const auto [l, t] = stack.back();
    stack.pop_back();
    const Label& ll = lhs.label(l);
    if (ll.is_var) {
      auto it = std::find_if(binding.begin(), binding.end(), [&](const auto& b) { return b.first == l.value; });
      if (it == binding.end())
        binding.emplace_back(l.value, cls[t.value]);
      else if (it->second != cls[t.value])
        return false;
      continue;
    }
    const auto ls = lhs.succ(l), ts = s.succ(t);
    if (!(ll == s.label(t)) || ls.size() != ts.size()) return false;
    for (std::size_t i = 0; i < ls.size(); ++i) stack.emplace_back(ls[i], ts[i]);
  }
  return true;
}

class RedexFinder {
 public:
  // Without folding a rule only applies where its left-hand side embeds
  // into the graph as it is, so matching is done by morphism instead.
  RedexFinder(const Grs& grs, const TermGraph& s, bool exact = false)
      : grs_(grs),
        s_(s),
        exact_(exact),
        cls_(exact ? std::vector<std::uint32_t>{} : sharing_classes(s)),
        memo_(s.max_id().value + 1),
        below_(s.max_id().value + 1, unknown) {}

  const std::vector<std::size_t>& rules_at(NodeId u) {
    auto& entry = memo_[u.value];
    if (!entry) {
      entry.emplace();
      const Label& l = s_.label(u);
      for (std::size_t i = 0; i < grs_.size() && !l.is_var; ++i) {
        const TermGraph& lhs = grs_.rule(i).lhs();
        if (!(lhs.label(lhs.root()) == l)) continue;
        if (exact_ ? find_morphism(lhs, s_, u).has_value() : matches(grs_.rule(i), s_, u, cls_, scratch_)) entry->push_back(i);
      }
    }
    return *entry;
  }

  std::vector<Redex> all() {
    std::vector<Redex> out;
    for (const auto& [p, u] : all_positions(s_))
      for (auto i : rules_at(u)) out.push_back({p, u, i});
    return out;
  }

  // Redexes at the leftmost position with no redex strictly below it,
  // found by descending into the first argument that contains a redex.
  // Avoids enumerating the positions of a shared graph.
  std::vector<Redex> leftmost_innermost() {
    if (!has_redex(s_.root())) return {};
    Position p;
    NodeId u = s_.root();
    for (bool down = true; down;) {
      down = false;
      const auto succ = s_.succ(u);
      for (std::size_t i = 0; i < succ.size() && !down; ++i)
        if (has_redex(succ[i])) {
          p = p.child(i + 1);
          u = succ[i];
          down = true;
        }
    }
    std::vector<Redex> out;
    for (auto i : rules_at(u)) out.push_back({p, u, i});
    return out;
  }

 private:
  static constexpr std::uint8_t unknown = 2;

  bool has_redex(NodeId u) {
    if (below_[u.value] == unknown) {
      bool found = !rules_at(u).empty();
      for (NodeId v : s_.succ(u)) found = has_redex(v) || found;
      below_[u.value] = found;
    }
    return below_[u.value] == 1;
  }

  const Grs& grs_;
  const TermGraph& s_;
  bool exact_;
  std::vector<std::uint32_t> cls_;
  std::vector<std::optional<std::vector<std::size_t>>> memo_;
  std::vector<std::uint8_t> below_;
  MatchScratch scratch_;
};

std::optional<Redex> pick(const Grs& grs, const TermGraph& s, Strategy strategy, const StepOptions& options) {
  RedexFinder finder(grs, s, !options.fold);
  switch (strategy) {
    case Strategy::leftmost_innermost: {
      auto li = finder.leftmost_innermost();
      if (li.empty()) return std::nullopt;
      return li.front();
    }
    case Strategy::leftmost_outermost: {
      auto all = finder.all();
      if (all.empty()) return std::nullopt;
      return all.front();
    }
    case Strategy::first_found:
      for (NodeId u : s.nodes()) {
        const auto& rules = finder.rules_at(u);
        if (!rules.empty()) return Redex{canonical_position(s, u), u, rules.front()};
      }
      return std::nullopt;
    case Strategy::exhaustive:
      break;
  }
  throw PreconditionError("pick: exhaustive is not a single-step strategy");
}

StepRecord make_record(const Position& p, std::size_t rule, const StepResult& step, std::size_t delta) {
  StepRecord r{p, rule, step.audit, representation_size(step.audit.size_before),
               representation_size(step.audit.size_after), true};
  DerivationTrace single;
  single.steps.push_back(r);
  for (const auto& v : audit_bounds(single, delta))
    if (!v.ok && v.check.rfind("cumulative", 0) != 0) r.bounds_ok = false;
  return r;
}

StepResult checked_step(const TermGraph& s, const Redex& r, const Grs& grs, const StepOptions& options) {
  auto step = full_step(s, r.position, grs.rule(r.rule), options);
  if (!step)
    throw Error("rule " + std::to_string(r.rule + 1) + " matches at " + r.position.to_string() +
                " but the full step failed");
  return std::move(*step);
}

DerivationTrace normalize_exhaustive(const Grs& grs, const TermGraph& s, const NormalizeOptions& options) {
  struct State {
    TermGraph graph;
    std::size_t parent;
    std::size_t depth;
    std::optional<StepRecord> via;
  };
  std::vector<State> states{{s, 0, 0, std::nullopt}};
  std::unordered_set<std::string> seen{sharing_key(s)};
  DerivationTrace trace;
  trace.initial = s;
  std::optional<std::size_t> found;
  bool cut = false;
  for (std::size_t i = 0; i < states.size() && !found; ++i) {
    const TermGraph current = states[i].graph;
    const std::size_t depth = states[i].depth;
    auto redexes = RedexFinder(grs, current, !options.step.fold).all();
    if (redexes.empty()) {
      found = i;
      break;
    }
    if (depth >= options.fuel) {
      cut = true;
      continue;
    }
    for (const auto& r : redexes) {
      StepResult step = checked_step(current, r, grs, options.step);
      if (!seen.insert(sharing_key(step.graph)).second) continue;
      if (states.size() >= options.max_states) {
        cut = true;
        break;
      }
      StepRecord rec = make_record(r.position, r.rule, step, grs.delta());
      states.push_back({std::move(step.graph), i, depth + 1, std::move(rec)});
    }
  }
  if (!found) {
    trace.final = s;
    // Either the search was cut, or every reachable state has a reduct.
    trace.fuel_exhausted = cut;
    trace.normal_form = false;
    return trace;
  }
  std::vector<std::size_t> path;
  for (std::size_t i = *found; i != 0; i = states[i].parent) path.push_back(i);
  std::reverse(path.begin(), path.end());
  for (auto i : path) {
    trace.steps.push_back(*states[i].via);
    if (options.keep_snapshots) trace.snapshots.push_back(states[i].graph);
  }
  trace.final = states[*found].graph;
  trace.normal_form = true;
  return trace;
}

}  // namespace

std::vector<Redex> find_redexes(const Grs& grs, const TermGraph& s) { return RedexFinder(grs, s).all(); }

DerivationTrace normalize(const Grs& grs, const TermGraph& s, const NormalizeOptions& options) {
  if (options.strategy == Strategy::exhaustive) return normalize_exhaustive(grs, s, options);
  DerivationTrace trace;
  trace.initial = s;
  TermGraph current = s;
  while (true) {
    auto redex = pick(grs, current, options.strategy, options.step);
    if (!redex) {
      trace.normal_form = true;
      break;
    }
    if (trace.steps.size() >= options.fuel) {
      trace.fuel_exhausted = true;
      break;
    }
    StepResult step = checked_step(current, *redex, grs, options.step);
    trace.steps.push_back(make_record(redex->position, redex->rule, step, grs.delta()));
    current = std::move(step.graph);
    if (options.keep_snapshots) trace.snapshots.push_back(current);
  }
  trace.final = std::move(current);
  return trace;
}

namespace {

struct Expansion {
  bool normal = false;
  std::vector<std::pair<std::string, TermGraph>> children;
};

Expansion expand(const Grs& grs, const TermGraph& s, const ExploreOptions& options, bool may_step) {
  Expansion out;
  RedexFinder finder(grs, s, !options.step.fold);
  auto redexes = options.mode == Exploration::innermost ? finder.leftmost_innermost() : finder.all();
  if (redexes.empty()) {
    out.normal = true;
    return out;
  }
  if (!may_step) return out;
  for (const auto& r : redexes) {
    StepResult step = checked_step(s, r, grs, options.step);
    std::string key = sharing_key(step.graph);
    out.children.emplace_back(std::move(key), std::move(step.graph));
  }
  return out;
}

std::vector<Expansion> expand_all(const Grs& grs, const std::vector<TermGraph>& frontier,
                                  const ExploreOptions& options, bool may_step) {
  std::vector<Expansion> out(frontier.size());
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, frontier.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < frontier.size(); ++i) out[i] = expand(grs, frontier[i], options, may_step);
    return out;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < frontier.size(); i += jobs) out[i] = expand(grs, frontier[i], options, may_step);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace

NormalFormSet all_normal_forms(const Grs& grs, const TermGraph& s, const ExploreOptions& options) {
  NormalFormSet result;
  std::unordered_set<std::string> seen{sharing_key(s)};
  std::vector<TermGraph> frontier{s};
  result.states = 1;
  for (std::size_t depth = 0; !frontier.empty(); ++depth) {
    result.max_depth = depth;
    const bool may_step = depth < options.fuel;
    auto expansions = expand_all(grs, frontier, options, may_step);
    std::vector<TermGraph> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      auto& e = expansions[i];
      if (e.normal) {
        Term t = read_term(frontier[i]);
        result.forms.try_emplace(std::move(t), frontier[i]);
        continue;
      }
      if (!may_step) {
        result.complete = false;
        continue;
      }
      for (auto& [key, graph] : e.children) {
        if (seen.contains(key)) continue;
        if (seen.size() >= options.max_states) {
          result.complete = false;
          continue;
        }
        seen.insert(std::move(key));
        next.push_back(std::move(graph));
      }
    }
    result.states = seen.size();
    frontier = std::move(next);
  }
  return result;
}

std::vector<BoundVerdict> audit_bounds(const DerivationTrace& trace, std::size_t delta) {
  std::vector<BoundVerdict> out;
  auto check = [&](std::size_t step, const char* name, std::size_t value, std::size_t bound) {
    out.push_back({step, name, value, bound, value <= bound});
  };
  const std::size_t size0 = trace.steps.empty() ? trace.initial.size() : trace.steps.front().audit.size_before;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const StepRecord& r = trace.steps[i];
    const StepAudit& a = r.audit;
    check(i, "size", a.size_after, a.size_before + a.depth_before + delta);
    check(i, "depth", a.depth_after, a.depth_before + delta);
    check(i, "plain-step size", a.size_after, a.size_folded + delta);
    check(i, "copies", a.copies, r.position.size());
    check(i, "collapses", a.collapses, a.redex_subgraph);
    const std::size_t l = i + 1;
    check(l, "cumulative size", a.size_after, (l + 1) * size0 + l * l * delta);
  }
  return out;
}

bool all_ok(const std::vector<BoundVerdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const BoundVerdict& v) { return v.ok; });
}

namespace {

using ReductSet = std::set<std::pair<std::size_t, Term>>;

std::string describe(const ReductSet& set) {
  std::string out = "{";
  for (const auto& [rule, t] : set) {
    if (out.size() > 1) out += ", ";
    out += "rule " + std::to_string(rule + 1) + ": " + to_string(t);
  }
  return out + "}";
}

}  // namespace

AdequacyReport adequacy_check(const Trs& trs, const Term& s, const AdequacyOptions& options) {
  const Grs grs = compile_trs(trs);
  AdequacyReport report;
  std::unordered_set<std::string> seen;
  std::deque<std::pair<TermGraph, std::size_t>> queue;
  TermGraph start = mk_tree(s);
  seen.insert(canonical_form(start));
  queue.emplace_back(std::move(start), 0);
  while (!queue.empty()) {
    auto [g, depth] = std::move(queue.front());
    queue.pop_front();
    ++report.graphs_checked;
    const Term t = read_term(g, options.max_term_size);
    for (const auto& [p, u] : all_positions(g)) {
      ++report.positions_checked;
      ReductSet term_side, graph_side;
      for (auto& r : term_reducts_at(trs, t, p)) term_side.emplace(r.rule, std::move(r.result));
      for (auto& r : full_reducts_at(grs, g, p, options.step)) {
        graph_side.emplace(r.rule, read_term(r.step.graph, options.max_term_size));
        ++report.steps_audited;
        DerivationTrace one;
        one.steps.push_back(make_record(p, r.rule, r.step, grs.delta()));
        if (!one.steps.back().bounds_ok) ++report.bound_violations;
        if (depth < options.depth) {
          if (seen.size() >= options.max_states) {
            report.truncated = true;
          } else if (seen.insert(canonical_form(r.step.graph)).second) {
            queue.emplace_back(std::move(r.step.graph), depth + 1);
          }
        }
      }
      if (term_side != graph_side && !report.counterexample) {
        report.passed = false;
        report.counterexample = "at " + p.to_string() + " in " + to_string(t) + " (graph " + canonical_form(g) +
                                "): term reducts " + describe(term_side) + ", graph reducts " + describe(graph_side);
      }
    }
  }
  if (report.bound_violations > 0) {
    report.passed = false;
    if (!report.counterexample)
      report.counterexample = std::to_string(report.bound_violations) + " step(s) violate the size or depth bounds";
  }
  return report;
}

}  // namespace sharegraph
