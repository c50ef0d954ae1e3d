#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sharegraph/symbol.hpp"

namespace sharegraph {

/// A function symbol together with its arity.
struct FunSym {
  Symbol symbol;
  std::size_t arity = 0;

  const std::string& name() const { return symbol.name(); }
  friend bool operator==(const FunSym&, const FunSym&) = default;
};

/// Argument path from the root of a term. Indices are 1-based.
class Position {
 public:
  Position() = default;
  explicit Position(std::vector<std::size_t> indices);
  Position(std::initializer_list<std::size_t> indices) : Position(std::vector<std::size_t>(indices)) {}

  std::span<const std::size_t> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool is_root() const { return indices_.empty(); }
  std::size_t operator[](std::size_t i) const { return indices_[i]; }

  Position child(std::size_t index) const;
  Position concat(const Position& other) const;
  Position prefix(std::size_t length) const;
  bool is_prefix_of(const Position& other) const;
  /// True iff this position is a proper prefix of `other`.
  bool is_above(const Position& other) const { return size() < other.size() && is_prefix_of(other); }

  /// "[]" for the root, "[1,2]" otherwise.
  std::string to_string() const;

  friend bool operator==(const Position&, const Position&) = default;
  /// Lexicographic order (a prefix precedes its extensions).
  friend std::strong_ordering operator<=>(const Position& a, const Position& b);

 private:
  std::vector<std::size_t> indices_;
};

/// Length first, then lexicographic. Used to pick a canonical position.
bool length_lex_less(const Position& a, const Position& b);

/// Immutable first-order term. Copies share structure.
class Term {
 public:
  static Term var(Symbol name);
  static Term var(std::string_view name) { return var(Symbol::intern(name)); }
  static Term app(Symbol head, std::vector<Term> args = {});
  static Term app(std::string_view head, std::vector<Term> args = {}) { return app(Symbol::intern(head), std::move(args)); }

  bool is_var() const { return node_->is_var; }
  Symbol symbol() const { return node_->symbol; }
  const std::string& name() const { return node_->symbol.name(); }
  std::span<const Term> args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }
  const Term& arg(std::size_t i) const { return node_->args.at(i); }

  /// Number of symbol and variable occurrences.
  std::size_t size() const { return node_->size; }
  std::size_t depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }

  /// Variables in order of first occurrence (left to right).
  std::vector<Symbol> variables() const;
  bool is_ground() const { return node_->ground; }

  friend bool operator==(const Term& a, const Term& b);
  /// Total structural order; only meant for ordered containers.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    Symbol symbol;
    bool is_var = false;
    bool ground = true;
    std::vector<Term> args;
    std::size_t size = 1;
    std::size_t depth = 0;
    std::size_t hash = 0;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

/// Prefix notation: `f(a,g(x))`, constants and variables bare.
std::string to_string(const Term& t);
std::ostream& operator<<(std::ostream& os, const Term& t);

using Substitution = std::map<Symbol, Term>;

Term apply_subst(const Term& t, const Substitution& sigma);
std::string to_string(const Substitution& sigma);

/// Throws PreconditionError if `p` is not a position of `t`.
const Term& subterm_at(const Term& t, const Position& p);
/// t[s]_p. Throws PreconditionError on an invalid position.
Term replace_subterm(const Term& t, const Position& p, const Term& s);
bool has_position(const Term& t, const Position& p);
/// All positions of `t` in preorder (= lexicographic order).
std::vector<Position> positions(const Term& t);

/// Syntactic matching: the substitution σ with pattern σ = subject, if any.
/// Repeated pattern variables must be bound to equal subterms.
std::optional<Substitution> match(const Term& pattern, const Term& subject);

}  // namespace sharegraph

template <>
struct std::hash<sharegraph::Term> {
  std::size_t operator()(const sharegraph::Term& t) const noexcept { return t.hash(); }
};
