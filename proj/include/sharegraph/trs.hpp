#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sharegraph/term.hpp"

namespace sharegraph {

/// A rewrite rule lhs -> rhs. The lhs is not a variable and every
/// variable of the rhs occurs in the lhs; the constructor enforces both.
class Rule {
 public:
  Rule(Term lhs, Term rhs);

  const Term& lhs() const { return lhs_; }
  const Term& rhs() const { return rhs_; }

  friend bool operator==(const Rule&, const Rule&) = default;

 private:
  Term lhs_;
  Term rhs_;
};

std::string to_string(const Rule& rule);

/// A term rewrite system with an inferred signature.
///
/// Rule order is significant: deterministic strategies try rules in this
/// order. Symbols heading some left-hand side are defined, all other
/// function symbols are constructors.
class Trs {
 public:
  Trs() = default;
  /// Builds the signature from the rules. Throws ValidationError on an
  /// arity clash or a symbol used both as variable and function.
  Trs(std::set<Symbol> variables, std::vector<Rule> rules);

  const std::vector<Rule>& rules() const { return rules_; }
  const Rule& rule(std::size_t index) const { return rules_.at(index); }
  std::size_t size() const { return rules_.size(); }

  /// Variables declared in the VAR block.
  const std::set<Symbol>& variables() const { return variables_; }
  bool is_variable(Symbol s) const { return variables_.contains(s); }

  /// Signature, sorted by name.
  std::vector<FunSym> signature() const;
  std::vector<FunSym> defined_symbols() const;
  std::vector<FunSym> constructors() const;
  std::optional<std::size_t> arity(Symbol s) const;
  bool is_defined(Symbol s) const { return defined_.contains(s); }
  bool is_constructor(Symbol s) const { return arities_.contains(s) && !defined_.contains(s); }

  /// Subsystem made of the given rules (0-based indices), in the given order.
  Trs restrict_to(const std::vector<std::size_t>& indices) const;

  friend bool operator==(const Trs& a, const Trs& b) {
    return a.variables_ == b.variables_ && a.rules_ == b.rules_;
  }

 private:
  std::set<Symbol> variables_;
  std::vector<Rule> rules_;
  std::map<Symbol, std::size_t> arities_;
  std::set<Symbol> defined_;
};

/// Parses the `.trs` format:
///
///     # comment
///     (VAR x y)
///     (RULES
///       f(x) -> eq(x,a)
///       eq(x,x) -> top
///     )
///
/// The VAR block is mandatory (it may be empty) and must precede RULES.
/// `(COMMENT ...)` blocks are skipped. Throws ParseError on syntax errors
/// and ValidationError on convention violations.
Trs parse_trs(std::string_view text);
Trs load_trs_file(const std::string& path);

/// Parses a term literal. Identifiers declared as variables in `trs` become
/// variables; everything else is a function symbol. Arities must agree with
/// the signature of `trs` where the symbol is known.
Term parse_term(std::string_view text, const Trs& trs);
/// Same grammar with an explicit variable set and no signature check.
Term parse_term(std::string_view text, const std::set<Symbol>& variables);

/// Prints in the format accepted by parse_trs.
std::string print_trs(const Trs& trs);

/// True iff the root is defined and all arguments are constructor terms
/// (variables allowed).
bool is_basic(const Trs& trs, const Term& t);
/// True iff `t` is built from constructors and variables only.
bool is_value(const Trs& trs, const Term& t);

}  // namespace sharegraph
