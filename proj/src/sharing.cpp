#include "sharegraph/sharing.hpp"

#include <algorithm>
#include <map>

#include "sharegraph/errors.hpp"

namespace sharegraph {

std::string to_string(const FoldStep& step) {
  if (step.kind == FoldStep::Kind::collapse) return "collapse " + to_string(step.from) + " onto " + to_string(step.to);
  return "copy " + to_string(step.from) + " as " + to_string(step.to);
}

TermGraph collapse_step(const TermGraph& s, NodeId u, NodeId v) {
  if (!s.contains(u) || !s.contains(v)) throw PreconditionError("collapse: unknown node");
  if (!(v < u)) throw PreconditionError("collapse: node " + to_string(u) + " must be larger than " + to_string(v));
  const auto us = s.succ(u), vs = s.succ(v);
  if (!(s.label(u) == s.label(v)) || !std::equal(us.begin(), us.end(), vs.begin(), vs.end()))
    throw PreconditionError("collapse: nodes " + to_string(u) + " and " + to_string(v) +
                            " differ in label or successors");
  TermGraph out = s;
  out.erase(u);
  for (NodeId w : out.nodes()) {
    const auto succ = out.succ(w);
    for (std::size_t i = 0; i < succ.size(); ++i)
      if (succ[i] == u) out.set_succ(w, i, v);
  }
  if (s.root() == u) out.set_root(v);
  out.validate();
  return out;
}

std::pair<TermGraph, NodeId> copy_step_fresh(const TermGraph& s, NodeId v, NodeId parent, std::size_t index) {
  if (!s.contains(parent) || index == 0 || index > s.succ(parent).size() || s.succ(parent)[index - 1] != v)
    throw PreconditionError("copy: " + to_string(parent) + " has no edge " + std::to_string(index) + " to " +
                            to_string(v));
  if (s.label(v).is_var) throw PreconditionError("copy: variable node " + to_string(v) + " must stay shared");
  TermGraph out = s;
  const NodeId fresh{s.max_id().value + 1};
  const auto succ = s.succ(v);
  out.put(fresh, s.label(v), std::vector<NodeId>(succ.begin(), succ.end()));
  out.set_succ(parent, index - 1, fresh);
  out.collect_garbage();
  out.validate();
  return {std::move(out), fresh};
}

TermGraph copy_step(const TermGraph& s, NodeId v, NodeId parent, std::size_t index) {
  return copy_step_fresh(s, v, parent, index).first;
}

SharingResult unfold_above(const TermGraph& s, const Position& p) {
  if (!has_position(s, p)) throw PreconditionError("unfold: position " + p.to_string() + " is not in the graph");
  SharingResult result{s, {}};
  TermGraph& g = result.graph;
  // The path walked so far consists of unshared nodes, so a node on it is
  // shared exactly when it has more than one incoming edge.
  // Indexed by id; room for one fresh node per step of the path.
  std::vector<std::size_t> indegree(g.max_id().value + 1 + p.size(), 0);
  for (NodeId u : g.nodes())
    for (NodeId v : g.succ(u)) ++indegree[v.value];
  NodeId current = g.root();
  for (auto i : p.indices()) {
    const NodeId next = g.succ(current)[i - 1];
    if (indegree[next.value] > 1 && !g.label(next).is_var) {
      const NodeId fresh{g.max_id().value + 1};
      const auto succ = g.succ(next);
      g.put(fresh, g.label(next), std::vector<NodeId>(succ.begin(), succ.end()));
      g.set_succ(current, i - 1, fresh);
      --indegree[next.value];
      indegree[fresh.value] = 1;
      for (NodeId w : succ) ++indegree[w.value];
      result.steps.push_back({FoldStep::Kind::copy, next, fresh});
      current = fresh;
    } else {
      current = next;
    }
  }
  g.validate();
  return result;
}

namespace {

/// Nodes strictly below the node at `p`, with their heights.
std::vector<std::pair<std::size_t, NodeId>> strictly_below(const TermGraph& g, const Position& p) {
  const NodeId top = node_at(g, p);
  const auto below = reachable_from(g, top);
  std::vector<std::size_t> height(g.max_id().value + 1, 0);
  for (NodeId u : post_order(g)) {
    std::size_t h = 0;
    for (NodeId v : g.succ(u)) h = std::max(h, height[v.value] + 1);
    height[u.value] = h;
  }
  std::vector<std::pair<std::size_t, NodeId>> out;
  for (NodeId u : below)
    if (u != top) out.emplace_back(height[u.value], u);
  std::sort(out.begin(), out.end());
  return out;
}

using NodeKey = std::pair<std::pair<std::uint32_t, bool>, std::vector<NodeId>>;

NodeKey key_of(const TermGraph& g, NodeId u) {
  const auto succ = g.succ(u);
  return {{g.label(u).symbol.id(), g.label(u).is_var}, std::vector<NodeId>(succ.begin(), succ.end())};
}

}  // namespace

SharingResult fold_below(const TermGraph& s, const Position& p) {
  if (!has_position(s, p)) throw PreconditionError("fold: position " + p.to_string() + " is not in the graph");
  SharingResult result{s, {}};
  TermGraph& g = result.graph;
  const auto layers = strictly_below(s, p);
  // survivor of each collapsed node; a survivor is never collapsed later
  std::map<NodeId, NodeId> merged;
  auto resolve = [&](NodeId v) {
    auto it = merged.find(v);
    return it == merged.end() ? v : it->second;
  };
  std::size_t i = 0;
  while (i < layers.size()) {
    const std::size_t h = layers[i].first;
    std::map<NodeKey, NodeId> representative;
    for (; i < layers.size() && layers[i].first == h; ++i) {
      const NodeId u = layers[i].second;  // increasing within a height
      auto succ = g.succ(u);
      for (std::size_t k = 0; k < succ.size(); ++k) g.set_succ(u, k, resolve(succ[k]));
      auto [it, inserted] = representative.emplace(key_of(g, u), u);
      if (!inserted) {
        merged.emplace(u, it->second);
        result.steps.push_back({FoldStep::Kind::collapse, u, it->second});
      }
    }
  }
  if (!merged.empty()) {
    for (const auto& [u, v] : merged) g.erase(u);
    for (NodeId w : g.nodes()) {
      const auto succ = g.succ(w);
      for (std::size_t k = 0; k < succ.size(); ++k) g.set_succ(w, k, resolve(succ[k]));
    }
  }
  g.validate();
  return result;
}

std::vector<std::pair<NodeId, NodeId>> fold_candidates(const TermGraph& s, const Position& p) {
  std::vector<NodeId> below;
  for (const auto& [h, u] : strictly_below(s, p)) below.push_back(u);
  std::sort(below.begin(), below.end());
  std::vector<std::pair<NodeId, NodeId>> out;
  for (std::size_t a = 0; a < below.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (key_of(s, below[a]) == key_of(s, below[b])) out.emplace_back(below[a], below[b]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sharegraph
