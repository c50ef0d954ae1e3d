#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sharegraph/sharing.hpp"
#include "sharegraph/term_graph.hpp"
#include "sharegraph/trs.hpp"

namespace sharegraph {

/// A graph rewrite rule L -> R. L and R live in one node space and share
/// exactly the variable nodes of R.
class GraphRule {
 public:
  /// Validates: rt(L) is not a variable, Var(R) ⊆ Var(L), rt(L) ∉ R and
  /// L, R share properly. Throws PreconditionError otherwise.
  GraphRule(TermGraph lhs, TermGraph rhs);

  const TermGraph& lhs() const { return lhs_; }
  const TermGraph& rhs() const { return rhs_; }
  NodeId max_id() const;

 private:
  TermGraph lhs_;
  TermGraph rhs_;
};

/// The simulating graph rewrite system of a TRS: one rule per TRS rule,
/// both sides as trees, in the TRS's rule order.
class Grs {
 public:
  Grs() = default;
  explicit Grs(std::vector<GraphRule> rules);

  const std::vector<GraphRule>& rules() const { return rules_; }
  const GraphRule& rule(std::size_t i) const { return rules_.at(i); }
  std::size_t size() const { return rules_.size(); }
  /// max |R| over the rules, 0 for the empty system.
  std::size_t delta() const { return delta_; }

 private:
  std::vector<GraphRule> rules_;
  std::size_t delta_ = 0;
};

/// L = mk_tree(l) numbered from 1, R = mk_tree(r) numbered after L with
/// its variable nodes replaced by the corresponding nodes of L.
GraphRule compile_rule(const Rule& rule);
Grs compile_trs(const Trs& trs);

/// Isomorphic copy of `rule` with every id shifted above max id of `s`.
GraphRule rename_rule(const GraphRule& rule, const TermGraph& s);

/// Plain graph rewrite step at the node corresponding to `p`: match the
/// renamed lhs into S↾u and replace u by m(R). nullopt if there is no
/// match.
std::optional<TermGraph> apply_rule_at(const TermGraph& s, const Position& p, const GraphRule& rule);
std::optional<TermGraph> apply_rule_at_node(const TermGraph& s, NodeId u, const GraphRule& rule);

/// Switches for negative-control runs; both are on for the real relation.
struct StepOptions {
  bool unfold = true;
  bool fold = true;
};

/// Measurements of one full step.
struct StepAudit {
  std::size_t copies = 0;
  std::size_t collapses = 0;
  std::size_t size_before = 0;
  std::size_t depth_before = 0;
  std::size_t size_unfolded = 0;   // after unfolding
  std::size_t redex_subgraph = 0;  // |U↾p| of the unfolded graph U
  std::size_t size_folded = 0;     // after folding
  std::size_t size_after = 0;
  std::size_t depth_after = 0;
};

struct StepResult {
  TermGraph graph;
  StepAudit audit;
  std::vector<FoldStep> fold_steps;
};

/// Full step at `p`: unfold above p, fold strictly below p, then apply
/// the rule at p. nullopt if the rule does not match after folding.
std::optional<StepResult> full_step(const TermGraph& s, const Position& p, const GraphRule& rule,
                                    const StepOptions& options = {});

struct GraphReduct {
  Position position;
  std::size_t rule = 0;
  StepResult step;
};

/// Every full-step reduct of `s`: all positions (preorder) times all rules
/// (rule order). Positions of one shared node are enumerated separately,
/// since rewriting one occurrence of a shared subterm differs from
/// rewriting another.
std::vector<GraphReduct> all_full_reducts(const Grs& grs, const TermGraph& s, const StepOptions& options = {});

/// Full-step reducts at a single position.
std::vector<GraphReduct> full_reducts_at(const Grs& grs, const TermGraph& s, const Position& p,
                                         const StepOptions& options = {});

}  // namespace sharegraph
