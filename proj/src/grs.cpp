#include "sharegraph/grs.hpp"

#include <algorithm>
#include <unordered_map>

#include "sharegraph/errors.hpp"

namespace sharegraph {

GraphRule::GraphRule(TermGraph lhs, TermGraph rhs) : lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
  lhs_.validate();
  rhs_.validate();
  if (lhs_.label(lhs_.root()).is_var) throw PreconditionError("graph rule: left-hand root is a variable");
  if (rhs_.contains(lhs_.root())) throw PreconditionError("graph rule: left-hand root occurs on the right");
  for (NodeId w : rhs_.nodes()) {
    const Label& l = rhs_.label(w);
    if (!lhs_.contains(w)) {
      if (l.is_var)
        throw PreconditionError("graph rule: variable " + l.name() + " of the right-hand side is not shared with the left");
      continue;
    }
    if (!l.is_var || !(lhs_.label(w) == l))
      throw PreconditionError("graph rule: sides share non-variable node " + to_string(w));
  }
}

NodeId GraphRule::max_id() const { return std::max(lhs_.max_id(), rhs_.max_id()); }

Grs::Grs(std::vector<GraphRule> rules) : rules_(std::move(rules)) {
  for (const auto& r : rules_) delta_ = std::max(delta_, r.rhs().size());
}

namespace {

NodeId build_rhs(const Term& t, TermGraph& g, std::uint32_t& next, const std::unordered_map<Symbol, NodeId>& vars) {
  if (t.is_var()) {
    const NodeId id = vars.at(t.symbol());
    if (!g.contains(id)) g.put(id, Label::var(t.symbol()), {});
    return id;
  }
  const NodeId id{next++};
  std::vector<NodeId> succ;
  succ.reserve(t.arity());
  for (const auto& a : t.args()) succ.push_back(build_rhs(a, g, next, vars));
  g.put(id, Label::fun(t.symbol()), std::move(succ));
  return id;
}

TermGraph shift_ids(const TermGraph& g, std::uint32_t offset) {
  TermGraph out;
  for (const auto& spec : g.specs()) {
    std::vector<NodeId> succ;
    succ.reserve(spec.succ.size());
    for (NodeId s : spec.succ) succ.push_back(NodeId{s.value + offset});
    out.put(NodeId{spec.id.value + offset}, spec.label, std::move(succ));
  }
  out.set_root(NodeId{g.root().value + offset});
  return out;
}

}  // namespace

GraphRule compile_rule(const Rule& rule) {
  TermGraph lhs = mk_tree(rule.lhs());
  std::unordered_map<Symbol, NodeId> vars;
  for (NodeId w : lhs.nodes())
    if (lhs.label(w).is_var) vars.emplace(lhs.label(w).symbol, w);
  TermGraph rhs;
  std::uint32_t next = lhs.max_id().value + 1;
  rhs.set_root(build_rhs(rule.rhs(), rhs, next, vars));
  return GraphRule(std::move(lhs), std::move(rhs));
}

Grs compile_trs(const Trs& trs) {
  std::vector<GraphRule> rules;
  rules.reserve(trs.size());
  for (const auto& r : trs.rules()) rules.push_back(compile_rule(r));
  return Grs(std::move(rules));
}

GraphRule rename_rule(const GraphRule& rule, const TermGraph& s) {
  const std::uint32_t offset = s.max_id().value;
  return GraphRule(shift_ids(rule.lhs(), offset), shift_ids(rule.rhs(), offset));
}

namespace {

// Rewrites at `u`; non-variable right-hand nodes get their id plus
// `offset`, which is what rename_rule would give them.
std::optional<TermGraph> apply_shifted(const TermGraph& s, NodeId u, const GraphRule& rule, std::uint32_t offset) {
  auto m = find_morphism(rule.lhs(), s, u);
  if (!m) return std::nullopt;
  const TermGraph& rhs = rule.rhs();
  auto f = [&](NodeId w) { return rhs.label(w).is_var ? (*m)(w) : NodeId{w.value + offset}; };

  TermGraph out = s;
  for (NodeId w : rhs.nodes()) {
    const Label& l = rhs.label(w);
    if (l.is_var) continue;
    std::vector<NodeId> succ;
    succ.reserve(rhs.succ(w).size());
    for (NodeId c : rhs.succ(w)) succ.push_back(f(c));
    out.put(f(w), l, std::move(succ));
  }
  const NodeId target = f(rhs.root());
  out.erase(u);
  for (NodeId w : out.nodes()) {
    const auto succ = out.succ(w);
    for (std::size_t i = 0; i < succ.size(); ++i)
      if (succ[i] == u) out.set_succ(w, i, target);
  }
  out.set_root(u == s.root() ? target : s.root());
  out.collect_garbage();
  out.validate();
  return out;
}

}  // namespace

std::optional<TermGraph> apply_rule_at_node(const TermGraph& s, NodeId u, const GraphRule& rule) {
  return apply_shifted(s, u, rule, s.max_id().value);
}

std::optional<TermGraph> apply_rule_at(const TermGraph& s, const Position& p, const GraphRule& rule) {
  return apply_rule_at_node(s, node_at(s, p), rule);
}

std::optional<StepResult> full_step(const TermGraph& s, const Position& p, const GraphRule& rule,
                                    const StepOptions& options) {
  StepResult result;
  StepAudit& audit = result.audit;
  audit.size_before = s.size();
  audit.depth_before = depth(s);

  SharingResult unfolded = options.unfold ? unfold_above(s, p) : SharingResult{s, {}};
  audit.copies = unfolded.steps.size();
  audit.size_unfolded = unfolded.graph.size();
  audit.redex_subgraph = reachable_from(unfolded.graph, node_at(unfolded.graph, p)).size();

  SharingResult folded = options.fold ? fold_below(unfolded.graph, p) : SharingResult{unfolded.graph, {}};
  audit.collapses = folded.steps.size();
  audit.size_folded = folded.graph.size();

  auto rewritten = apply_rule_at(folded.graph, p, rule);
  if (!rewritten) return std::nullopt;
  audit.size_after = rewritten->size();
  audit.depth_after = depth(*rewritten);
  result.graph = std::move(*rewritten);
  result.fold_steps = std::move(unfolded.steps);
  result.fold_steps.insert(result.fold_steps.end(), folded.steps.begin(), folded.steps.end());
  return result;
}

namespace {

bool root_compatible(const TermGraph& s, NodeId u, const GraphRule& rule) {
  const Label& l = s.label(u);
  const Label& r = rule.lhs().label(rule.lhs().root());
  return !l.is_var && l == r && s.succ(u).size() == rule.lhs().succ(rule.lhs().root()).size();
}

void reducts_at(const Grs& grs, const TermGraph& s, const Position& p, NodeId u, const StepOptions& options,
                std::vector<GraphReduct>& out) {
  for (std::size_t i = 0; i < grs.size(); ++i) {
    if (!root_compatible(s, u, grs.rule(i))) continue;
    if (auto step = full_step(s, p, grs.rule(i), options)) out.push_back({p, i, std::move(*step)});
  }
}

}  // namespace

std::vector<GraphReduct> all_full_reducts(const Grs& grs, const TermGraph& s, const StepOptions& options) {
  std::vector<GraphReduct> out;
  for (const auto& [p, u] : all_positions(s)) reducts_at(grs, s, p, u, options, out);
  return out;
}

std::vector<GraphReduct> full_reducts_at(const Grs& grs, const TermGraph& s, const Position& p,
                                         const StepOptions& options) {
  std::vector<GraphReduct> out;
  reducts_at(grs, s, p, node_at(s, p), options, out);
  return out;
}

}  // namespace sharegraph
