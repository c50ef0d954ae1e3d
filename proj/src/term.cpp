#include "sharegraph/term.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "sharegraph/errors.hpp"

namespace sharegraph {
namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

void print(std::ostream& os, const Term& t) {
  os << t.name();
  if (t.is_var() || t.arity() == 0) return;
  os << '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) os << ',';
    print(os, t.args()[i]);
  }
  os << ')';
}

}  // namespace

Position::Position(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  for (auto i : indices_)
    if (i == 0) throw PreconditionError("position indices are 1-based");
}

Position Position::child(std::size_t index) const {
  auto v = indices_;
  v.push_back(index);
  return Position(std::move(v));
}

Position Position::concat(const Position& other) const {
  auto v = indices_;
  v.insert(v.end(), other.indices_.begin(), other.indices_.end());
  return Position(std::move(v));
}

Position Position::prefix(std::size_t length) const {
  return Position(std::vector<std::size_t>(indices_.begin(), indices_.begin() + std::min(length, size())));
}

bool Position::is_prefix_of(const Position& other) const {
  return size() <= other.size() && std::equal(indices_.begin(), indices_.end(), other.indices_.begin());
}

std::string Position::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(indices_[i]);
  }
  return out + "]";
}

std::strong_ordering operator<=>(const Position& a, const Position& b) {
  return std::lexicographical_compare_three_way(a.indices_.begin(), a.indices_.end(), b.indices_.begin(),
                                                b.indices_.end());
}

bool length_lex_less(const Position& a, const Position& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Term Term::var(Symbol name) {
  auto node = std::make_shared<Node>();
  node->symbol = name;
  node->is_var = true;
  node->ground = false;
  node->hash = mix(0x51ed270b, name.id());
  return Term(std::move(node));
}

Term Term::app(Symbol head, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->symbol = head;
  std::size_t h = mix(0x2545f491, head.id());
  for (const auto& a : args) {
    node->size += a.size();
    node->depth = std::max(node->depth, a.depth() + 1);
    node->ground = node->ground && a.is_ground();
    h = mix(h, a.hash());
  }
  node->hash = mix(h, args.size());
  node->args = std::move(args);
  return Term(std::move(node));
}

std::vector<Symbol> Term::variables() const {
  std::vector<Symbol> out;
  std::vector<const Term*> stack{this};
  while (!stack.empty()) {
    const Term* t = stack.back();
    stack.pop_back();
    if (t->is_ground()) continue;
    if (t->is_var()) {
      if (std::find(out.begin(), out.end(), t->symbol()) == out.end()) out.push_back(t->symbol());
      continue;
    }
    for (auto it = t->args().rbegin(); it != t->args().rend(); ++it) stack.push_back(&*it);
  }
  return out;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.is_var() != b.is_var() || a.symbol() != b.symbol() ||
      a.arity() != b.arity())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.args()[i] == b.args()[i])) return false;
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.is_var() <=> b.is_var(); c != 0) return c;
  if (a.symbol() != b.symbol()) return a.name() <=> b.name();
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string to_string(const Term& t) {
  std::ostringstream os;
  print(os, t);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  print(os, t);
  return os;
}

Term apply_subst(const Term& t, const Substitution& sigma) {
  if (t.is_ground()) return t;
  if (t.is_var()) {
    auto it = sigma.find(t.symbol());
    return it == sigma.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(apply_subst(a, sigma));
  return Term::app(t.symbol(), std::move(args));
}

std::string to_string(const Substitution& sigma) {
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& [x, t] : sigma) entries.emplace_back(x.name(), to_string(t));
  std::sort(entries.begin(), entries.end());
  std::string out = "{";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ", ";
    out += entries[i].first + "->" + entries[i].second;
  }
  return out + "}";
}

bool has_position(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (auto i : p.indices()) {
    if (cur->is_var() || i > cur->arity()) return false;
    cur = &cur->args()[i - 1];
  }
  return true;
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (auto i : p.indices()) {
    if (cur->is_var() || i > cur->arity())
      throw PreconditionError("position " + p.to_string() + " is not a position of " + to_string(t));
    cur = &cur->args()[i - 1];
  }
  return *cur;
}

namespace {

Term replace_rec(const Term& t, std::span<const std::size_t> path, const Term& s) {
  if (path.empty()) return s;
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[path.front() - 1] = replace_rec(args[path.front() - 1], path.subspan(1), s);
  return Term::app(t.symbol(), std::move(args));
}

void positions_rec(const Term& t, std::vector<std::size_t>& path, std::vector<Position>& out) {
  out.emplace_back(path);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    path.push_back(i + 1);
    positions_rec(t.args()[i], path, out);
    path.pop_back();
  }
}

bool match_rec(const Term& pattern, const Term& subject, Substitution& sigma) {
  if (pattern.is_var()) {
    auto [it, inserted] = sigma.emplace(pattern.symbol(), subject);
    return inserted || it->second == subject;
  }
  if (subject.is_var() || pattern.symbol() != subject.symbol() || pattern.arity() != subject.arity()) return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i)
    if (!match_rec(pattern.args()[i], subject.args()[i], sigma)) return false;
  return true;
}

}  // namespace

Term replace_subterm(const Term& t, const Position& p, const Term& s) {
  if (!has_position(t, p))
    throw PreconditionError("position " + p.to_string() + " is not a position of " + to_string(t));
  return replace_rec(t, p.indices(), s);
}

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  std::vector<std::size_t> path;
  positions_rec(t, path, out);
  return out;
}

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  Substitution sigma;
  if (!match_rec(pattern, subject, sigma)) return std::nullopt;
  return sigma;
}

}  // namespace sharegraph
