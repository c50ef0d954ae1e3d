#include "oracles.hpp"

#include "sharegraph/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace sgtest {

namespace {

void collect_subterms(const Term& t, std::set<std::string>& out) {
  out.insert(to_string(t));
  for (const auto& a : t.args()) collect_subterms(a, out);
}

using Bindings = std::map<std::string, std::string>;

bool naive_match(const Term& pattern, const Term& subject, Bindings& b) {
  if (pattern.is_var()) {
    const std::string printed = to_string(subject);
    auto [it, inserted] = b.emplace(pattern.name(), printed);
    return inserted || it->second == printed;
  }
  if (subject.is_var() || pattern.name() != subject.name() || pattern.arity() != subject.arity()) return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i)
    if (!naive_match(pattern.arg(i), subject.arg(i), b)) return false;
  return true;
}

std::string instantiate(const Term& t, const Bindings& b) {
  if (t.is_var()) return b.at(t.name());
  std::string out = t.name();
  if (t.arity() == 0) return out;
  out += "(";
  for (std::size_t i = 0; i < t.arity(); ++i) out += (i ? "," : "") + instantiate(t.arg(i), b);
  return out + ")";
}

std::string print_with(const Term& t, const std::vector<std::size_t>& path, std::size_t depth,
                       const std::string& replacement) {
  if (depth == path.size()) return replacement;
  std::string out = t.name() + "(";
  for (std::size_t i = 0; i < t.arity(); ++i)
    out += (i ? "," : "") + (i + 1 == path[depth] ? print_with(t.arg(i), path, depth + 1, replacement)
                                                  : to_string(t.arg(i)));
  return out + ")";
}

std::string print_path(const std::vector<std::size_t>& path) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.size(); ++i) out += (i ? "," : "") + std::to_string(path[i]);
  return out + "]";
}

}  // namespace

std::size_t distinct_subterm_count(const Term& t) {
  std::set<std::string> seen;
  collect_subterms(t, seen);
  return seen.size();
}

std::set<std::tuple<std::string, std::size_t, std::string>> naive_reducts(const Trs& trs, const Term& t) {
  std::set<std::tuple<std::string, std::size_t, std::string>> out;
  std::vector<std::size_t> path;
  std::function<void(const Term&)> walk = [&](const Term& sub) {
    for (std::size_t i = 0; i < trs.size(); ++i) {
      Bindings b;
      if (naive_match(trs.rule(i).lhs(), sub, b))
        out.emplace(print_path(path), i, print_with(t, path, 0, instantiate(trs.rule(i).rhs(), b)));
    }
    for (std::size_t i = 0; i < sub.arity(); ++i) {
      path.push_back(i + 1);
      walk(sub.arg(i));
      path.pop_back();
    }
  };
  walk(t);
  return out;
}

std::vector<std::uint32_t> satisfying_assignments(const Cnf& cnf, std::size_t num_vars) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 0; a < (1u << num_vars); ++a) {
    const bool ok = std::all_of(cnf.begin(), cnf.end(), [&](const std::vector<int>& clause) {
      return std::any_of(clause.begin(), clause.end(), [&](int l) {
        const bool value = (a >> (std::abs(l) - 1)) & 1;
        return l > 0 ? value : !value;
      });
    });
    if (ok) out.push_back(a);
  }
  return out;
}

bool literals_satisfy(const std::vector<int>& literals, const Cnf& cnf) {
  std::set<int> chosen(literals.begin(), literals.end());
  for (int l : chosen)
    if (chosen.contains(-l)) return false;
  return std::all_of(cnf.begin(), cnf.end(), [&](const std::vector<int>& clause) {
    return std::any_of(clause.begin(), clause.end(), [&](int l) { return chosen.contains(l); });
  });
}

std::vector<Cnf> all_formulas(std::size_t num_vars, std::size_t max_clauses) {
  std::vector<std::vector<int>> clauses;
  std::size_t combos = 1;
  for (std::size_t i = 0; i < num_vars; ++i) combos *= 3;
  for (std::size_t code = 1; code < combos; ++code) {
    std::vector<int> clause;
    std::size_t c = code;
    for (std::size_t v = 1; v <= num_vars; ++v, c /= 3) {
      if (c % 3 == 1) clause.push_back(static_cast<int>(v));
      if (c % 3 == 2) clause.push_back(-static_cast<int>(v));
    }
    clauses.push_back(clause);
  }
  std::vector<Cnf> out;
  Cnf current;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    out.push_back(current);
    if (current.size() == max_clauses) return;
    for (std::size_t i = from; i < clauses.size(); ++i) {
      current.push_back(clauses[i]);
      rec(i);
      current.pop_back();
    }
  };
  rec(0);
  return out;
}

Term random_term(const Signature& sig, std::size_t max_size, bool with_vars, std::mt19937_64& rng) {
  std::vector<Term> leaves;
  for (const auto& f : sig.functions)
    if (f.arity == 0) leaves.push_back(Term::app(f.symbol));
  if (with_vars)
    for (auto v : sig.variables) leaves.push_back(Term::var(v));
  std::vector<FunSym> fitting;
  for (const auto& f : sig.functions)
    if (f.arity > 0 && f.arity + 1 <= max_size) fitting.push_back(f);
  if (leaves.empty()) throw PreconditionError("random_term: no constant or variable to use as a leaf");
  auto index = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  if (fitting.empty() || std::bernoulli_distribution(0.3)(rng)) return leaves[index(leaves.size())];
  const FunSym f = fitting[index(fitting.size())];
  std::size_t remaining = max_size - 1;
  std::vector<Term> args;
  for (std::size_t i = 0; i < f.arity; ++i) {
    args.push_back(random_term(sig, remaining - (f.arity - 1 - i), with_vars, rng));
    remaining -= args.back().size();
  }
  return Term::app(f.symbol, std::move(args));
}

namespace {

Signature base_signature() {
  return {{{Symbol::intern("a"), 0}, {Symbol::intern("b"), 0}, {Symbol::intern("f"), 1},
           {Symbol::intern("g"), 1}, {Symbol::intern("h"), 2}},
          {Symbol::intern("x"), Symbol::intern("y")}};
}

}  // namespace

Trs random_trs(std::mt19937_64& rng, std::size_t max_rules, std::size_t max_rhs) {
  const Signature sig = base_signature();
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_rules)(rng);
  std::vector<Rule> rules;
  while (rules.size() < n) {
    Term lhs = random_term(sig, 4, true, rng);
    if (lhs.is_var()) continue;
    Signature rhs_sig{sig.functions, lhs.variables()};
    const std::size_t rhs_size = std::uniform_int_distribution<std::size_t>(1, max_rhs)(rng);
    Term rhs = random_term(rhs_sig, rhs_size, !rhs_sig.variables.empty(), rng);
    rules.emplace_back(std::move(lhs), std::move(rhs));
  }
  return Trs({sig.variables.begin(), sig.variables.end()}, std::move(rules));
}

Signature signature_of(const Trs& trs) {
  Signature sig{trs.signature(), {trs.variables().begin(), trs.variables().end()}};
  for (const auto& f : base_signature().functions)
    if (std::find(sig.functions.begin(), sig.functions.end(), f) == sig.functions.end()) sig.functions.push_back(f);
  return sig;
}

TermGraph random_graph(std::mt19937_64& rng, std::size_t max_nodes) {
  struct Shape {
    const char* name;
    std::size_t arity;
    bool var;
  };
  static const Shape shapes[] = {{"a", 0, false}, {"b", 0, false}, {"x", 0, true}, {"y", 0, true},
                                 {"f", 1, false}, {"g", 2, false}, {"h", 2, false}};
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_nodes)(rng);
  std::vector<std::uint32_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<std::uint32_t>(i + 1);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<NodeSpec> specs;
  std::set<std::string> vars_used;
  for (std::size_t k = 0; k < n; ++k) {
    Shape shape;
    do {
      shape = shapes[std::uniform_int_distribution<std::size_t>(0, std::size(shapes) - 1)(rng)];
    } while ((shape.arity > 0 && k == 0) || (shape.var && vars_used.contains(shape.name)));
    if (shape.var) vars_used.insert(shape.name);
    NodeSpec spec{NodeId{ids[k]}, shape.var ? Label::var(shape.name) : Label::fun(shape.name), {}};
    for (std::size_t i = 0; i < shape.arity; ++i) {
      // Prefer recent nodes so that most of the graph stays reachable.
      const std::size_t lo = k > 3 ? k - 3 : 0;
      spec.succ.push_back(NodeId{ids[std::uniform_int_distribution<std::size_t>(lo, k - 1)(rng)]});
    }
    specs.push_back(std::move(spec));
  }
  TermGraph g;
  for (const auto& s : specs) g.put(s.id, s.label, s.succ);
  g.set_root(specs.back().id);
  g.collect_garbage();
  g.validate();
  return g;
}

TermGraph partially_shared(const Term& t, std::mt19937_64& rng) {
  TermGraph g = mk_tree(t);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(0, t.size())(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = fold_candidates(g, Position{});
    if (c.empty()) break;
    const auto [u, v] = c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)];
    g = collapse_step(g, u, v);
  }
  return g;
}

std::vector<TermGraph> sharing_neighbours(const TermGraph& s) {
  std::vector<TermGraph> out;
  for (const auto& [u, v] : fold_candidates(s, Position{})) out.push_back(collapse_step(s, u, v));
  std::map<NodeId, std::size_t> indegree;
  for (NodeId w : s.nodes())
    for (NodeId v : s.succ(w)) ++indegree[v];
  for (NodeId w : s.nodes()) {
    const auto succ = s.succ(w);
    for (std::size_t i = 0; i < succ.size(); ++i)
      if (indegree[succ[i]] > 1 && !s.label(succ[i]).is_var) out.push_back(copy_step(s, succ[i], w, i + 1));
  }
  return out;
}

}  // namespace sgtest
