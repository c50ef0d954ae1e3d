#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sharegraph/term.hpp"
#include "sharegraph/trs.hpp"

namespace sharegraph {

/// A term over the signature extended by the hole constant □.
class Context {
 public:
  /// `skeleton` may contain the hole constant (see hole()).
  explicit Context(Term skeleton);
  /// Replaces the subterms at `holes` (pairwise parallel) by □.
  static Context with_holes(const Term& t, const std::vector<Position>& holes);

  static Term hole();
  const Term& skeleton() const { return skeleton_; }
  /// Hole positions, left to right.
  const std::vector<Position>& holes() const { return holes_; }

 private:
  Term skeleton_;
  std::vector<Position> holes_;
};

/// C[t1,...,tn]: holes are filled left to right. Throws PreconditionError
/// when the number of terms differs from the number of holes.
Term fill_context(const Context& context, const std::vector<Term>& terms);

struct TermReduct {
  Position position;
  std::size_t rule = 0;  // 0-based index into Trs::rules()
  Term result;

  friend bool operator==(const TermReduct&, const TermReduct&) = default;
};

/// Every one-step reduct of `s`, ordered by position (preorder) then rule.
std::vector<TermReduct> term_reducts(const Trs& trs, const Term& s);
/// One-step reducts contracting at `p` only.
std::vector<TermReduct> term_reducts_at(const Trs& trs, const Term& s, const Position& p);

struct SearchLimits {
  std::size_t fuel = 10'000;        // maximal derivation length explored
  std::size_t max_states = 1'000'000;  // terms visited
  std::size_t max_term_size = 100'000;  // largest term allowed on a derivation
};

/// dl(s): the length of a longest derivation from `s`, by memoized
/// exhaustive search. nullopt ("exceeded") when some derivation is longer
/// than the fuel, a cycle is found, or a state or term-size cap is hit.
std::optional<std::size_t> derivation_length(const Trs& trs, const Term& s, const SearchLimits& limits = {});

/// All normal forms reachable from `s`. nullopt when the search exceeds
/// the limits.
std::optional<std::vector<Term>> term_normal_forms(const Trs& trs, const Term& s, const SearchLimits& limits = {});

struct ComplexityRow {
  std::size_t size = 0;                  // m
  std::size_t basic_terms = 0;           // number of basic terms of size <= m
  std::optional<std::size_t> max_length;  // rc(m); nullopt = exceeded
};

/// rc(m) for m = 1..n over the basic terms of size <= m. Arguments are
/// built from constructor constants; when the system has no constructor
/// constant a single variable is used as the only leaf (every derivation
/// from a term with distinct variables is also one of the instance that
/// identifies them). Throws CapacityError when more than `max_terms`
/// basic terms would be enumerated.
std::vector<ComplexityRow> runtime_complexity(const Trs& trs, std::size_t n, const SearchLimits& limits = {},
                                              std::size_t max_terms = 100'000);

/// Basic terms of size exactly m, in a deterministic order.
std::vector<Term> basic_terms_of_size(const Trs& trs, std::size_t m, std::size_t max_terms = 100'000);

}  // namespace sharegraph
