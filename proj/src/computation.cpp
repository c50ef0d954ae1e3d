#include "sharegraph/computation.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <sstream>

#include "sharegraph/errors.hpp"

namespace sharegraph {

bool is_accepting(const Term& t, const PatternSet& na) {
  return std::none_of(na.patterns.begin(), na.patterns.end(), [&](const Term& p) { return match(p, t).has_value(); });
}

bool is_accepting(const TermGraph& t, const PatternSet& na) {
  const TermGraph folded = fold_below(t, Position{}).graph;
  for (const auto& p : na.patterns) {
    if (p.is_var()) return false;
    if (find_morphism(mk_tree(p), folded)) return false;
  }
  return true;
}

ComputationResult compute(const ComputationSpec& spec, const Term& v) {
  if (!spec.trs.is_defined(spec.entry.symbol))
    throw PreconditionError("entry symbol " + spec.entry.name() + " is not a defined symbol");
  if (spec.entry.arity != 1)
    throw PreconditionError("entry symbol " + spec.entry.name() + " must be unary, it takes " +
                            std::to_string(spec.entry.arity) + " arguments");
  if (!is_value(spec.trs, v) || !v.is_ground())
    throw PreconditionError(to_string(v) + " is not a ground value");
  const Grs grs = compile_trs(spec.trs);
  const auto forms = all_normal_forms(grs, mk_tree(Term::app(spec.entry.symbol, {v})), spec.explore);
  ComputationResult result;
  result.complete = forms.complete;
  result.states = forms.states;
  for (const auto& [t, g] : forms.forms) {
    if (!is_value(spec.trs, t))
      result.stuck.push_back(t);
    else if (is_accepting(g, spec.na))
      result.accepted.push_back(t);
    else
      result.rejected.push_back(t);
  }
  return result;
}

ComputationSpec make_spec(const Trs& trs, std::string_view entry, const std::vector<std::string>& na) {
  const Symbol sym = Symbol::intern(entry);
  auto arity = trs.arity(sym);
  if (!arity || !trs.is_defined(sym)) throw PreconditionError("entry symbol " + std::string(entry) + " is not defined");
  ComputationSpec spec{trs, FunSym{sym, *arity}, {}, {}};
  for (const auto& p : na) spec.na.patterns.push_back(parse_term(p, trs.variables()));
  return spec;
}

ComputationSpec load_rsat() {
  ComputationSpec spec = make_spec(parse_trs(rsat_source()), "issat", {"unsat"});
  spec.explore.mode = Exploration::innermost;
  return spec;
}

namespace {

std::size_t width_for(std::size_t num_vars) { return num_vars <= 1 ? 0 : std::bit_width(num_vars - 1); }

Term list_of(const std::vector<Term>& items) {
  Term out = Term::app("nil");
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = Term::app("cons", {*it, out});
  return out;
}

}  // namespace

std::size_t max_variable(const Cnf& cnf) {
  std::size_t n = 0;
  for (const auto& clause : cnf)
    for (int l : clause) n = std::max<std::size_t>(n, static_cast<std::size_t>(std::abs(l)));
  return n;
}

Term encode_literal(int literal, std::size_t num_vars) {
  const std::size_t var = static_cast<std::size_t>(std::abs(literal));
  if (literal == 0 || var > std::max<std::size_t>(num_vars, 1))
    throw PreconditionError("literal " + std::to_string(literal) + " out of range for " + std::to_string(num_vars) +
                            " variables");
  const std::size_t width = width_for(num_vars);
  Term bits = Term::app("eps");
  for (std::size_t i = 0; i < width; ++i) bits = Term::app(((var - 1) >> i) & 1 ? "O" : "Z", {bits});
  return Term::app(literal > 0 ? "O" : "Z", {bits});
}

Term encode_cnf(const Cnf& cnf, std::size_t num_vars) {
  num_vars = std::max({num_vars, max_variable(cnf), std::size_t{1}});
  std::vector<Term> clauses;
  for (const auto& clause : cnf) {
    std::vector<Term> literals;
    for (int l : clause) literals.push_back(encode_literal(l, num_vars));
    clauses.push_back(list_of(literals));
  }
  return list_of(clauses);
}

std::optional<std::vector<int>> decode_literals(const Term& t, std::size_t num_vars) {
  const std::size_t width = width_for(std::max<std::size_t>(num_vars, 1));
  std::vector<int> out;
  const Term* cur = &t;
  while (!cur->is_var() && cur->name() == "cons" && cur->arity() == 2) {
    const Term* lit = &cur->arg(0);
    if (lit->is_var() || lit->arity() != 1 || (lit->name() != "O" && lit->name() != "Z")) return std::nullopt;
    const bool positive = lit->name() == "O";
    std::size_t index = 0;
    const Term* bit = &lit->arg(0);
    for (std::size_t i = 0; i < width; ++i) {
      if (bit->is_var() || bit->arity() != 1 || (bit->name() != "O" && bit->name() != "Z")) return std::nullopt;
      index = index * 2 + (bit->name() == "O" ? 1 : 0);
      bit = &bit->arg(0);
    }
    if (bit->is_var() || bit->name() != "eps" || bit->arity() != 0) return std::nullopt;
    if (index >= std::max<std::size_t>(num_vars, 1)) return std::nullopt;
    const int var = static_cast<int>(index + 1);
    out.push_back(positive ? var : -var);
    cur = &cur->arg(1);
  }
  if (cur->is_var() || cur->name() != "nil" || cur->arity() != 0) return std::nullopt;
  return out;
}

Cnf parse_dimacs(std::string_view text) {
  Cnf cnf;
  std::vector<int> clause;
  bool open = false;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == 'c' || line[first] == 'p') continue;
    std::istringstream words(line);
    std::string word;
    while (words >> word) {
      int value = 0;
      try {
        std::size_t used = 0;
        value = std::stoi(word, &used);
        if (used != word.size()) throw std::invalid_argument(word);
      } catch (const std::exception&) {
        throw ValidationError("not a literal: " + word);
      }
      if (value == 0) {
        cnf.push_back(std::move(clause));
        clause.clear();
        open = false;
      } else {
        clause.push_back(value);
        open = true;
      }
    }
  }
  if (open) cnf.push_back(std::move(clause));
  return cnf;
}

}  // namespace sharegraph
