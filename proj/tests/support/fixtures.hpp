#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "sharegraph/computation.hpp"

namespace sgtest {

using namespace sharegraph;

inline Trs data_trs(const std::string& name) { return load_trs_file(std::string(SG_DATA_DIR) + "/" + name); }

struct N {
  std::uint32_t id;
  std::string label;  // "?x" for a variable node
  std::vector<std::uint32_t> succ;
};

/// Graph from a node list; the root is the first node.
inline TermGraph graph(const std::vector<N>& nodes) {
  std::vector<NodeSpec> specs;
  for (const auto& n : nodes) {
    NodeSpec s{NodeId{n.id}, n.label[0] == '?' ? Label::var(n.label.substr(1)) : Label::fun(n.label), {}};
    for (auto v : n.succ) s.succ.push_back(NodeId{v});
    specs.push_back(std::move(s));
  }
  return TermGraph::from_specs(NodeId{nodes.front().id}, specs);
}

inline Term term(const std::string& text, const std::vector<std::string>& vars = {"x", "y", "z"}) {
  std::set<Symbol> vs;
  for (const auto& v : vars) vs.insert(Symbol::intern(v));
  return parse_term(text, vs);
}

// The graphs of the fold/unfold figure, with × written as *.
inline TermGraph figure_t1() { return graph({{1, "*", {3, 3}}, {3, "+", {4, 5}}, {4, "0", {}}, {5, "0", {}}}); }
inline TermGraph figure_t2() {
  return graph({{1, "*", {2, 3}}, {2, "+", {4, 5}}, {3, "+", {4, 5}}, {4, "0", {}}, {5, "0", {}}});
}
inline TermGraph figure_t3() { return graph({{1, "*", {2, 3}}, {2, "+", {5, 5}}, {3, "+", {5, 5}}, {5, "0", {}}}); }

}  // namespace sgtest
