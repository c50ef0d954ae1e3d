#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sharegraph/errors.hpp"

using namespace sgtest;

namespace {

using ReductSet = std::set<std::tuple<std::string, std::size_t, std::string>>;

ReductSet graph_reducts(const Grs& grs, const TermGraph& s) {
  ReductSet out;
  for (const auto& r : all_full_reducts(grs, s))
    out.emplace(r.position.to_string(), r.rule, to_string(read_term(r.step.graph)));
  return out;
}

ReductSet tree_reducts(const Trs& trs, const Term& t) {
  ReductSet out;
  for (const auto& r : term_reducts(trs, t)) out.emplace(r.position.to_string(), r.rule, to_string(r.result));
  return out;
}

}  // namespace

TEST_SUITE("grs") {
  TEST_CASE("compile_trs") {
    const Grs rf = compile_trs(data_trs("rf.trs"));
    REQUIRE(rf.size() == 2);
    CHECK(rf.rule(0).lhs() == graph({{1, "f", {2}}, {2, "?x", {}}}));
    CHECK(rf.rule(0).rhs() == graph({{3, "eq", {2, 4}}, {2, "?x", {}}, {4, "a", {}}}));
    CHECK(rf.rule(1).lhs() == graph({{1, "eq", {2, 2}}, {2, "?x", {}}}));
    CHECK(rf.rule(1).rhs() == graph({{3, "top", {}}}));
    CHECK(rf.delta() == 3);

    const Grs rg = compile_trs(data_trs("rg.trs"));
    CHECK(rg.rule(0).rhs() == graph({{3, "c", {2, 2}}, {2, "?x", {}}}));
    CHECK(rg.rule(1).lhs() == graph({{1, "a", {}}}));
    CHECK(rg.rule(1).rhs() == graph({{2, "b", {}}}));
    CHECK(rg.delta() == 2);
    CHECK(Grs().delta() == 0);
  }

  TEST_CASE("rule validation") {
    const TermGraph l = graph({{1, "f", {2}}, {2, "?x", {}}});
    CHECK_NOTHROW(GraphRule(l, graph({{3, "g", {2}}, {2, "?x", {}}})));
    // Variable root on the left.
    CHECK_THROWS_AS(GraphRule(graph({{1, "?x", {}}}), graph({{2, "a", {}}})), PreconditionError);
    // Extra variable on the right.
    CHECK_THROWS_AS(GraphRule(l, graph({{3, "g", {4}}, {4, "?y", {}}})), PreconditionError);
    // The lhs root reappears on the right.
    CHECK_THROWS_AS(GraphRule(l, graph({{3, "g", {1}}, {1, "f", {2}}, {2, "?x", {}}})), PreconditionError);
    // A function node shared between the sides.
    const TermGraph la = graph({{1, "f", {2}}, {2, "a", {}}});
    CHECK_THROWS_AS(GraphRule(la, graph({{3, "g", {2}}, {2, "a", {}}})), PreconditionError);
    // Same id, different labels.
    CHECK_THROWS_AS(GraphRule(l, graph({{3, "g", {2}}, {2, "?y", {}}})), PreconditionError);
  }

  TEST_CASE("rename_rule") {
    const GraphRule rule = compile_trs(data_trs("rf.trs")).rule(0);
    const TermGraph s = graph({{7, "f", {3}}, {3, "a", {}}});
    const GraphRule renamed = rename_rule(rule, s);
    CHECK(renamed.lhs() == graph({{8, "f", {9}}, {9, "?x", {}}}));
    CHECK(renamed.rhs() == graph({{10, "eq", {9, 11}}, {9, "?x", {}}, {11, "a", {}}}));
    CHECK(renamed.max_id() == NodeId{11});
    // Already disjoint rules are shifted as well.
    const GraphRule again = rename_rule(rule, graph({{1, "a", {}}}));
    CHECK(again.lhs().root() == NodeId{2});
    const GraphRule ground = rename_rule(compile_trs(data_trs("rg.trs")).rule(1), s);
    CHECK(ground.lhs() == graph({{8, "a", {}}}));
    CHECK(ground.rhs() == graph({{9, "b", {}}}));
  }

  TEST_CASE("apply_rule_at") {
    const Grs rf = compile_trs(data_trs("rf.trs"));
    const auto t = apply_rule_at(mk_tree(term("f(a)")), {}, rf.rule(0));
    REQUIRE(t);
    CHECK(to_string(read_term(*t)) == "eq(a,a)");
    CHECK(t->size() == 3);
    CHECK_FALSE(apply_rule_at(*t, {}, rf.rule(1)));
    const auto top = apply_rule_at(graph({{1, "eq", {2, 2}}, {2, "a", {}}}), {}, rf.rule(1));
    REQUIRE(top);
    CHECK(to_string(read_term(*top)) == "top");
    CHECK(top->size() == 1);
    CHECK_THROWS_AS(apply_rule_at(*t, {3}, rf.rule(0)), PreconditionError);
  }

  TEST_CASE("a plain step at a shared node rewrites every occurrence") {
    const Grs rg = compile_trs(data_trs("rg.trs"));
    const auto t = apply_rule_at(graph({{1, "c", {2, 2}}, {2, "a", {}}}), {1}, rg.rule(1));
    REQUIRE(t);
    CHECK(to_string(read_term(*t)) == "c(b,b)");
  }

  TEST_CASE("full_step") {
    const Grs rg = compile_trs(data_trs("rg.trs")), rf = compile_trs(data_trs("rf.trs"));
    const auto cba = full_step(graph({{1, "c", {2, 2}}, {2, "a", {}}}), {1}, rg.rule(1));
    REQUIRE(cba);
    CHECK(to_string(read_term(cba->graph)) == "c(b,a)");
    CHECK(cba->audit.copies == 1);
    CHECK(cba->audit.size_before == 2);
    CHECK(cba->audit.size_unfolded == 3);

    const auto top = full_step(mk_tree(term("eq(a,a)")), {}, rf.rule(1));
    REQUIRE(top);
    CHECK(to_string(read_term(top->graph)) == "top");
    CHECK(top->audit.collapses == 1);
    CHECK(top->audit.size_folded == 2);
    CHECK(top->fold_steps.size() == 1);

    CHECK_FALSE(full_step(mk_tree(term("eq(a,b)")), {}, rf.rule(1)));
    CHECK_FALSE(full_step(mk_tree(term("eq(a,a)")), {1}, rf.rule(1)));
    CHECK_THROWS_AS(full_step(mk_tree(term("eq(a,a)")), {1, 1}, rf.rule(1)), PreconditionError);
  }

  TEST_CASE("full_step negative controls") {
    const Grs rg = compile_trs(data_trs("rg.trs")), rf = compile_trs(data_trs("rf.trs"));
    const auto both = full_step(graph({{1, "c", {2, 2}}, {2, "a", {}}}), {1}, rg.rule(1), {false, true});
    REQUIRE(both);
    CHECK(to_string(read_term(both->graph)) == "c(b,b)");
    CHECK_FALSE(full_step(mk_tree(term("eq(a,a)")), {}, rf.rule(1), {true, false}));
  }

  TEST_CASE("all_full_reducts") {
    const Grs rf = compile_trs(data_trs("rf.trs")), rg = compile_trs(data_trs("rg.trs"));
    const auto one = all_full_reducts(rf, mk_tree(term("f(a)")));
    REQUIRE(one.size() == 1);
    CHECK(one[0].position == Position{});
    CHECK(one[0].rule == 0);

    const auto two = all_full_reducts(rg, graph({{1, "c", {2, 2}}, {2, "a", {}}}));
    REQUIRE(two.size() == 2);
    CHECK(two[0].position == Position{1});
    CHECK(two[1].position == Position{2});
    CHECK(to_string(read_term(two[0].step.graph)) == "c(b,a)");
    CHECK(to_string(read_term(two[1].step.graph)) == "c(a,b)");

    CHECK(all_full_reducts(rf, mk_tree(term("top"))).empty());
    CHECK(full_reducts_at(rg, graph({{1, "c", {2, 2}}, {2, "a", {}}}), {}).empty());
  }
}

TEST_SUITE("grs-properties") {
  TEST_CASE("full steps simulate term rewriting") {
    // Sound and complete at once: the (position, rule, term) triples of
    // the graph reducts are exactly those of the term reducts.
    std::mt19937_64 rng(41);
    std::size_t steps = 0;
    for (int i = 0; i < 300; ++i) {
      const Trs trs = random_trs(rng);
      const Grs grs = compile_trs(trs);
      const Term t = random_term(signature_of(trs), 12, false, rng);
      for (int k = 0; k < 3; ++k) {
        const TermGraph s = partially_shared(t, rng);
        const auto expected = tree_reducts(trs, t);
        CHECK(graph_reducts(grs, s) == expected);
        steps += expected.size();
      }
    }
    CHECK(steps > 300);
  }

  TEST_CASE("step bounds") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 300; ++i) {
      const Trs trs = random_trs(rng);
      const Grs grs = compile_trs(trs);
      const Term t = random_term(signature_of(trs), 12, false, rng);
      const TermGraph s = partially_shared(t, rng);
      const std::size_t size = s.size(), d = depth(s), delta = grs.delta();
      for (const auto& [p, u] : all_positions(s)) {
        for (std::size_t r = 0; r < grs.size(); ++r) {
          if (auto plain = apply_rule_at(s, p, grs.rule(r))) CHECK(plain->size() <= size + delta);
          const auto full = full_step(s, p, grs.rule(r));
          if (!full) continue;
          const auto& a = full->audit;
          CHECK(a.size_after <= size + d + delta);
          CHECK(depth(full->graph) <= d + delta);
          CHECK(a.copies <= p.size());
          CHECK(a.collapses <= a.redex_subgraph);
          CHECK(a.size_unfolded <= size + p.size());
          CHECK(a.size_after <= a.size_folded + delta);
          CHECK(a.size_after == full->graph.size());
        }
      }
    }
  }

  TEST_CASE("left-hand sides match their instances with the substitution") {
    std::mt19937_64 rng(43);
    const Trs rsat = data_trs("rsat.trs");
    const Trs mult = data_trs("mult.trs");
    std::size_t checked = 0;
    for (const Trs* trs : {&rsat, &mult}) {
      Signature values;
      for (const auto& f : trs->constructors()) values.functions.push_back(f);
      for (const auto& rule : trs->rules()) {
        const TermGraph l = mk_tree(rule.lhs());
        for (int i = 0; i < 100; ++i) {
          Substitution sigma;
          for (Symbol x : rule.lhs().variables()) sigma.insert_or_assign(x, random_term(values, 8, false, rng));
          const Term instance = apply_subst(rule.lhs(), sigma);
          const TermGraph s = mk_shared(instance);
          const auto m = find_morphism(l, s);
          REQUIRE(m);
          CHECK(induced_substitution(*m, l, s) == sigma);
          ++checked;
        }
      }
    }
    CHECK(checked >= 100 * (19 + 4));
  }

  TEST_CASE("the instantiated right-hand side reads back as r sigma") {
    std::mt19937_64 rng(44);
    for (int i = 0; i < 300; ++i) {
      const Trs trs = random_trs(rng);
      const Grs grs = compile_trs(trs);
      const Term t = random_term(signature_of(trs), 12, false, rng);
      const TermGraph s = fold_below(partially_shared(t, rng), {}).graph;
      for (const auto& [p, u] : all_positions(s)) {
        for (std::size_t r = 0; r < grs.size(); ++r) {
          const auto m = find_morphism(grs.rule(r).lhs(), s, u);
          if (!m) continue;
          const Substitution sigma = induced_substitution(*m, grs.rule(r).lhs(), s);
          CHECK(match(trs.rule(r).lhs(), subterm_at(t, p)) == sigma);
          const auto after = apply_rule_at(s, p, grs.rule(r));
          REQUIRE(after);
          CHECK(read_term(subgraph_at(*after, node_at(*after, p))) == apply_subst(trs.rule(r).rhs(), sigma));
        }
      }
    }
  }
}
