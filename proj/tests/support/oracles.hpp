#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sharegraph/computation.hpp"

namespace sgtest {

using namespace sharegraph;

/// Number of distinct subterms of `t`, counted on printed forms.
std::size_t distinct_subterm_count(const Term& t);

/// One-step reducts of `t` as (printed position, rule, printed result),
/// computed with a matcher and substitution written only for tests.
std::set<std::tuple<std::string, std::size_t, std::string>> naive_reducts(const Trs& trs, const Term& t);

/// Assignments (bit i = variable i+1 true) satisfying `cnf`, by enumeration.
std::vector<std::uint32_t> satisfying_assignments(const Cnf& cnf, std::size_t num_vars);
/// The literals are pairwise consistent and meet every clause.
bool literals_satisfy(const std::vector<int>& literals, const Cnf& cnf);

/// Every clause set over `num_vars` variables: nonempty clauses without a
/// repeated variable, formulas as multisets of up to `max_clauses` of them.
std::vector<Cnf> all_formulas(std::size_t num_vars, std::size_t max_clauses);

struct Signature {
  std::vector<FunSym> functions;
  std::vector<Symbol> variables;
};

/// Random term with at most `max_size` symbols; variables are used only
/// when `with_vars`.
Term random_term(const Signature& sig, std::size_t max_size, bool with_vars, std::mt19937_64& rng);

/// Random well-formed TRS: up to `max_rules` rules, lhs size ≤ 4, rhs size
/// ≤ `max_rhs`, over a small signature that may be non-left-linear.
Trs random_trs(std::mt19937_64& rng, std::size_t max_rules = 4, std::size_t max_rhs = 6);
/// Symbols of `trs` plus those random_trs draws from, so leaves always exist.
Signature signature_of(const Trs& trs);

/// Random term graph with arbitrary sharing, built bottom up: every new
/// node points at earlier nodes.
TermGraph random_graph(std::mt19937_64& rng, std::size_t max_nodes = 9);

/// mk_tree(t) with a random number of random collapses applied: anything
/// between no sharing and maximal sharing.
TermGraph partially_shared(const Term& t, std::mt19937_64& rng);

/// Graphs one collapse or one copy of a shared node away from `s`.
std::vector<TermGraph> sharing_neighbours(const TermGraph& s);

}  // namespace sgtest
