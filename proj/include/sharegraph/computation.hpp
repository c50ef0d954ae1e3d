#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sharegraph/engine.hpp"

namespace sharegraph {

/// Value patterns; a normal form matching one of them is not a result.
struct PatternSet {
  std::vector<Term> patterns;
};

struct ComputationSpec {
  Trs trs;
  FunSym entry;
  PatternSet na;
  ExploreOptions explore;
};

/// True iff no pattern matches `t` at the root.
bool is_accepting(const Term& t, const PatternSet& na);
/// Same, decided by graph morphisms from Tree(p) into the folded `t`.
bool is_accepting(const TermGraph& t, const PatternSet& na);

struct ComputationResult {
  /// Accepting value normal forms: the computed outputs.
  std::vector<Term> accepted;
  /// Value normal forms matched by a non-accepting pattern.
  std::vector<Term> rejected;
  /// Normal forms that are not values.
  std::vector<Term> stuck;
  bool complete = true;
  std::size_t states = 0;
};

/// Normal forms of entry(v) under ⇝, sorted into accepted, rejected and
/// stuck. Throws PreconditionError when the entry symbol is not a unary
/// defined symbol or `v` is not a ground value.
ComputationResult compute(const ComputationSpec& spec, const Term& v);

/// Builds a spec from a TRS, an entry symbol name and NA patterns in term
/// syntax (parsed with the TRS's variables).
ComputationSpec make_spec(const Trs& trs, std::string_view entry, const std::vector<std::string>& na);

/// Text of the satisfiability system shipped as data/rsat.trs.
std::string_view rsat_source();
/// The satisfiability system with entry issat and NA = {unsat}. Explores
/// innermost reducts only: see the note on rule 18 in the README.
ComputationSpec load_rsat();

/// Clauses of nonzero literals, ±i for variable i (1-based).
using Cnf = std::vector<std::vector<int>>;

/// Literal list term over cons/nil. Variable names are fixed-width bit
/// strings wide enough for `num_vars` (at least the largest variable used).
Term encode_cnf(const Cnf& cnf, std::size_t num_vars = 0);
/// Literal term for ±i at the given width.
Term encode_literal(int literal, std::size_t num_vars);
/// Inverse of encode_literal over a cons/nil list of literals.
std::optional<std::vector<int>> decode_literals(const Term& t, std::size_t num_vars);
/// Clauses separated by 0, `c` comment lines and a `p cnf` header are
/// skipped. A clause left open at the end is closed.
Cnf parse_dimacs(std::string_view text);
std::size_t max_variable(const Cnf& cnf);

}  // namespace sharegraph
