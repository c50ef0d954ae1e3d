#include "sharegraph/term_oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "sharegraph/errors.hpp"

namespace sharegraph {
namespace {

const Symbol& hole_symbol() {
  static const Symbol s = Symbol::intern("□");
  return s;
}

void find_holes(const Term& t, std::vector<std::size_t>& path, std::vector<Position>& out) {
  if (!t.is_var() && t.symbol() == hole_symbol() && t.arity() == 0) {
    out.emplace_back(path);
    return;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    path.push_back(i + 1);
    find_holes(t.args()[i], path, out);
    path.pop_back();
  }
}

Term fill_rec(const Term& t, const std::vector<Term>& terms, std::size_t& next) {
  if (!t.is_var() && t.symbol() == hole_symbol() && t.arity() == 0) return terms[next++];
  if (t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(fill_rec(a, terms, next));
  return Term::app(t.symbol(), std::move(args));
}

void reducts_at(const Trs& trs, const Term& s, const Position& p, std::vector<TermReduct>& out) {
  const Term& sub = subterm_at(s, p);
  if (sub.is_var()) return;
  for (std::size_t i = 0; i < trs.size(); ++i) {
    const Rule& rule = trs.rule(i);
    if (rule.lhs().symbol() != sub.symbol()) continue;
    if (auto sigma = match(rule.lhs(), sub))
      out.push_back({p, i, replace_subterm(s, p, apply_subst(rule.rhs(), *sigma))});
  }
}

struct LengthSearch {
  const Trs& trs;
  const SearchLimits& limits;
  std::unordered_map<Term, std::size_t> memo;
  std::unordered_set<Term> on_path;
  bool exceeded = false;
  std::size_t visits = 0;

  std::size_t visit(const Term& t, std::size_t depth) {
    if (exceeded) return 0;
    if (auto it = memo.find(t); it != memo.end()) {
      if (depth + it->second > limits.fuel) exceeded = true;
      return it->second;
    }
    if (depth > limits.fuel || on_path.contains(t) || ++visits > limits.max_states ||
        t.size() > limits.max_term_size) {
      exceeded = true;
      return 0;
    }
    on_path.insert(t);
    std::size_t best = 0;
    for (const auto& r : term_reducts(trs, t)) {
      best = std::max(best, 1 + visit(r.result, depth + 1));
      if (exceeded) break;
    }
    on_path.erase(t);
    if (!exceeded) memo.emplace(t, best);
    return best;
  }
};

}  // namespace

Context::Context(Term skeleton) : skeleton_(std::move(skeleton)) {
  std::vector<std::size_t> path;
  find_holes(skeleton_, path, holes_);
}

Context Context::with_holes(const Term& t, const std::vector<Position>& holes) {
  Term skeleton = t;
  for (const auto& p : holes) skeleton = replace_subterm(skeleton, p, hole());
  return Context(std::move(skeleton));
}

Term Context::hole() { return Term::app(hole_symbol()); }

Term fill_context(const Context& context, const std::vector<Term>& terms) {
  if (terms.size() != context.holes().size())
    throw PreconditionError("context has " + std::to_string(context.holes().size()) + " holes but " +
                            std::to_string(terms.size()) + " terms were supplied");
  std::size_t next = 0;
  return fill_rec(context.skeleton(), terms, next);
}

std::vector<TermReduct> term_reducts(const Trs& trs, const Term& s) {
  std::vector<TermReduct> out;
  for (const auto& p : positions(s)) reducts_at(trs, s, p, out);
  return out;
}

std::vector<TermReduct> term_reducts_at(const Trs& trs, const Term& s, const Position& p) {
  std::vector<TermReduct> out;
  reducts_at(trs, s, p, out);
  return out;
}

std::optional<std::size_t> derivation_length(const Trs& trs, const Term& s, const SearchLimits& limits) {
  LengthSearch search{trs, limits, {}, {}, false, 0};
  const std::size_t length = search.visit(s, 0);
  if (search.exceeded) return std::nullopt;
  return length;
}

std::optional<std::vector<Term>> term_normal_forms(const Trs& trs, const Term& s, const SearchLimits& limits) {
  std::unordered_set<Term> seen{s};
  std::vector<Term> frontier{s};
  std::set<Term> normal_forms;
  for (std::size_t depth = 0; !frontier.empty(); ++depth) {
    std::vector<Term> next;
    for (const auto& t : frontier) {
      auto reducts = term_reducts(trs, t);
      if (reducts.empty()) {
        normal_forms.insert(t);
        continue;
      }
      if (depth >= limits.fuel) return std::nullopt;
      for (auto& r : reducts) {
        if (r.result.size() > limits.max_term_size) return std::nullopt;
        if (seen.insert(r.result).second) next.push_back(std::move(r.result));
        if (seen.size() > limits.max_states) return std::nullopt;
      }
    }
    frontier = std::move(next);
  }
  return std::vector<Term>(normal_forms.begin(), normal_forms.end());
}

namespace {

class TermEnumerator {
 public:
  TermEnumerator(const Trs& trs, std::size_t max_terms) : max_terms_(max_terms) {
    for (const auto& f : trs.constructors()) {
      if (f.arity == 0)
        leaves_.push_back(Term::app(f.symbol));
      else
        constructors_.push_back(f);
    }
    if (leaves_.empty()) leaves_.push_back(Term::var("x"));
    by_size_.push_back({});
  }

  const std::vector<Term>& of_size(std::size_t k) {
    while (by_size_.size() <= k) {
      const std::size_t m = by_size_.size();
      std::vector<Term> terms;
      if (m == 1) terms = leaves_;
      for (const auto& f : constructors_) {
        if (m < 1 + f.arity) continue;
        for_each_tuple(f.arity, m - 1, [&](std::vector<Term> args) {
          terms.push_back(Term::app(f.symbol, std::move(args)));
          charge(1);
        });
      }
      by_size_.push_back(std::move(terms));
    }
    return by_size_[k];
  }

  /// Calls `emit` for each tuple of `arity` constructor terms of total size `total`.
  void for_each_tuple(std::size_t arity, std::size_t total, const std::function<void(std::vector<Term>)>& emit) {
    std::vector<Term> current;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t slot, std::size_t left) {
      if (slot == arity) {
        if (left == 0) emit(current);
        return;
      }
      const std::size_t remaining_slots = arity - slot - 1;
      for (std::size_t k = 1; k + remaining_slots <= left; ++k) {
        for (const auto& t : of_size(k)) {
          current.push_back(t);
          rec(slot + 1, left - k);
          current.pop_back();
        }
      }
    };
    rec(0, total);
  }

  void charge(std::size_t n) {
    count_ += n;
    if (count_ > max_terms_)
      throw CapacityError("term enumeration exceeded " + std::to_string(max_terms_) +
                          " terms; lower the size bound or raise the cap");
  }

 private:
  std::size_t max_terms_;
  std::size_t count_ = 0;
  std::vector<Term> leaves_;
  std::vector<FunSym> constructors_;
  std::vector<std::vector<Term>> by_size_;
};

std::vector<Term> basic_of_size(const Trs& trs, TermEnumerator& terms, std::size_t m) {
  std::vector<Term> out;
  for (const auto& f : trs.defined_symbols()) {
    if (f.arity == 0) {
      if (m == 1) out.push_back(Term::app(f.symbol));
      continue;
    }
    if (m < 1 + f.arity) continue;
    terms.for_each_tuple(f.arity, m - 1, [&](std::vector<Term> args) {
      out.push_back(Term::app(f.symbol, std::move(args)));
      terms.charge(1);
    });
  }
  return out;
}

}  // namespace

std::vector<Term> basic_terms_of_size(const Trs& trs, std::size_t m, std::size_t max_terms) {
  TermEnumerator terms(trs, max_terms);
  return basic_of_size(trs, terms, m);
}

std::vector<ComplexityRow> runtime_complexity(const Trs& trs, std::size_t n, const SearchLimits& limits,
                                              std::size_t max_terms) {
  TermEnumerator terms(trs, max_terms);
  std::vector<ComplexityRow> table;
  ComplexityRow running;
  running.max_length = 0;
  for (std::size_t m = 1; m <= n; ++m) {
    for (const auto& t : basic_of_size(trs, terms, m)) {
      ++running.basic_terms;
      auto dl = derivation_length(trs, t, limits);
      if (!dl)
        running.max_length.reset();
      else if (running.max_length)
        running.max_length = std::max(*running.max_length, *dl);
    }
    running.size = m;
    table.push_back(running);
  }
  return table;
}

}  // namespace sharegraph
