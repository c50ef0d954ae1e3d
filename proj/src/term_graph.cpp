#include "sharegraph/term_graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "sharegraph/errors.hpp"

namespace sharegraph {

// --- TermGraph -------------------------------------------------------------

TermGraph TermGraph::from_specs(NodeId root, const std::vector<NodeSpec>& nodes) {
  TermGraph g;
  for (const auto& n : nodes) {
    if (g.contains(n.id)) throw PreconditionError("duplicate node " + to_string(n.id));
    g.put(n.id, n.label, n.succ);
  }
  g.set_root(root);
  g.validate();
  return g;
}

void TermGraph::unknown_node(NodeId id) { throw PreconditionError("unknown node " + to_string(id)); }

NodeId TermGraph::max_id() const {
  for (std::size_t i = slots_.size(); i-- > 0;)
    if (slots_[i]) return NodeId{static_cast<std::uint32_t>(i)};
  return NodeId{};
}

std::vector<NodeId> TermGraph::nodes() const {
  std::vector<NodeId> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < slots_.size(); ++i)
    if (slots_[i]) out.push_back(NodeId{static_cast<std::uint32_t>(i)});
  return out;
}

std::vector<NodeSpec> TermGraph::specs() const {
  std::vector<NodeSpec> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < slots_.size(); ++i)
    if (slots_[i]) out.push_back({NodeId{static_cast<std::uint32_t>(i)}, slots_[i]->label, slots_[i]->succ});
  return out;
}

void TermGraph::put(NodeId id, Label label, std::vector<NodeId> succ) {
  if (id.value == 0) throw PreconditionError("node ids are positive");
  if (slots_.size() <= id.value) slots_.resize(id.value + 1);
  if (!slots_[id.value]) ++count_;
  slots_[id.value] = Node{label, std::move(succ)};
}

void TermGraph::erase(NodeId id) {
  if (!contains(id)) return;
  slots_[id.value].reset();
  --count_;
  while (!slots_.empty() && !slots_.back()) slots_.pop_back();
}

void TermGraph::set_succ(NodeId id, std::size_t index, NodeId target) {
  if (!contains(id)) throw PreconditionError("unknown node " + to_string(id));
  auto& succ = slots_[id.value]->succ;
  if (index >= succ.size()) throw PreconditionError("node " + to_string(id) + " has no successor " +
                                                    std::to_string(index + 1));
  succ[index] = target;
}

void TermGraph::collect_garbage() {
  if (!contains(root_)) return;
  std::vector<char> live(slots_.size(), 0);
  std::vector<NodeId> stack{root_};
  live[root_.value] = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : slots_[u.value]->succ) {
      if (v.value < live.size() && slots_[v.value] && !live[v.value]) {
        live[v.value] = 1;
        stack.push_back(v);
      }
    }
  }
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (slots_[i] && !live[i]) {
      slots_[i].reset();
      --count_;
    }
  }
  while (!slots_.empty() && !slots_.back()) slots_.pop_back();
}

void TermGraph::validate() const {
  auto fail = [](const std::string& what) { throw PreconditionError("invalid term graph: " + what); };
  if (count_ == 0) fail("no nodes");
  if (!contains(root_)) fail("root " + to_string(root_) + " is not a node");
  // Indexed by symbol id; interned ids are small and dense.
  std::uint32_t max_symbol = 0;
  for (const auto& n : slots_)
    if (n) max_symbol = std::max(max_symbol, n->label.symbol.id());
  constexpr std::uint32_t none = UINT32_MAX;
  std::vector<std::uint32_t> var_nodes(max_symbol + 1, none), arities(max_symbol + 1, none);
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (!slots_[i]) continue;
    const NodeId id{static_cast<std::uint32_t>(i)};
    const Node& n = *slots_[i];
    const std::uint32_t sym = n.label.symbol.id();
    if (n.label.is_var) {
      if (!n.succ.empty()) fail("variable node " + to_string(id) + " has successors");
      if (var_nodes[sym] != none)
        fail("variable " + n.label.name() + " labels nodes " + to_string(NodeId{var_nodes[sym]}) + " and " +
             to_string(id));
      var_nodes[sym] = id.value;
    } else {
      if (arities[sym] == none)
        arities[sym] = static_cast<std::uint32_t>(n.succ.size());
      else if (arities[sym] != n.succ.size())
        fail("symbol " + n.label.name() + " used with two arities");
    }
    for (NodeId v : n.succ)
      if (!contains(v)) fail("node " + to_string(id) + " points to missing node " + to_string(v));
  }
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<char> state(slots_.size(), 0);
  std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
  state[root_.value] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    const auto& succ = slots_[u.value]->succ;
    if (next == succ.size()) {
      state[u.value] = 2;
      stack.pop_back();
      continue;
    }
    const NodeId v = succ[next++];
    if (state[v.value] == 1) fail("cycle through node " + to_string(v));
    if (state[v.value] == 0) {
      state[v.value] = 1;
      ++reached;
      stack.emplace_back(v, 0);
    }
  }
  if (reached != count_) fail(std::to_string(count_ - reached) + " node(s) unreachable from the root");
}

bool TermGraph::is_valid() const {
  try {
    validate();
    return true;
  } catch (const PreconditionError&) {
    return false;
  }
}

bool operator==(const TermGraph& a, const TermGraph& b) {
  return a.root_ == b.root_ && a.count_ == b.count_ && a.slots_ == b.slots_;
}

NodeId Morphism::operator()(NodeId u) const {
  auto it = images.find(u);
  if (it == images.end()) throw PreconditionError("node " + to_string(u) + " not in the morphism's domain");
  return it->second;
}

// --- traversal -------------------------------------------------------------

namespace {

std::vector<NodeId> post_order_from(const TermGraph& g, NodeId start) {
  std::vector<NodeId> out;
  if (g.empty()) return out;
  out.reserve(g.size());
  std::vector<char> seen(g.max_id().value + 1, 0);
  std::vector<std::pair<NodeId, std::size_t>> stack;
  stack.reserve(g.size());
  stack.emplace_back(start, 0);
  seen[start.value] = 1;
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    const auto succ = g.succ(u);
    if (next == succ.size()) {
      out.push_back(u);
      stack.pop_back();
      continue;
    }
    const NodeId v = succ[next++];
    if (!seen[v.value]) {
      seen[v.value] = 1;
      stack.emplace_back(v, 0);
    }
  }
  return out;
}

}  // namespace

std::vector<NodeId> post_order(const TermGraph& g) { return post_order_from(g, g.root()); }

std::vector<NodeId> reachable_from(const TermGraph& g, NodeId u) {
  if (!g.contains(u)) throw PreconditionError("unknown node " + to_string(u));
  std::vector<char> seen(g.max_id().value + 1, 0);
  std::vector<NodeId> stack{u}, out;
  seen[u.value] = 1;
  while (!stack.empty()) {
    const NodeId w = stack.back();
    stack.pop_back();
    out.push_back(w);
    for (NodeId v : g.succ(w)) {
      if (!seen[v.value]) {
        seen[v.value] = 1;
        stack.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t depth(const TermGraph& g) {
  if (g.empty()) return 0;
  std::vector<std::size_t> height(g.max_id().value + 1, 0);
  for (NodeId u : post_order(g))
    for (NodeId v : g.succ(u)) height[u.value] = std::max(height[u.value], height[v.value] + 1);
  return height[g.root().value];
}

std::size_t representation_size(std::size_t size) {
  // ceil(log2(size + 1)) is the bit width of `size`
  return size * static_cast<std::size_t>(std::bit_width(size));
}

GraphMetrics metrics(const TermGraph& g) {
  return {g.size(), depth(g), representation_size(g.size())};
}

// --- terms <-> graphs ------------------------------------------------------

Term read_term_at(const TermGraph& g, NodeId u, std::optional<std::size_t> max_term_size) {
  if (!g.contains(u)) throw PreconditionError("unknown node " + to_string(u));
  std::unordered_map<std::uint32_t, Term> memo;
  for (NodeId w : post_order_from(g, u)) {
    const Label& l = g.label(w);
    if (l.is_var) {
      memo.emplace(w.value, Term::var(l.symbol));
      continue;
    }
    std::vector<Term> args;
    args.reserve(g.succ(w).size());
    std::size_t size = 1;
    for (NodeId v : g.succ(w)) {
      args.push_back(memo.at(v.value));
      size += args.back().size();
    }
    if (max_term_size && size > *max_term_size)
      throw CapacityError("represented term exceeds " + std::to_string(*max_term_size) + " symbols");
    memo.emplace(w.value, Term::app(l.symbol, std::move(args)));
  }
  return memo.at(u.value);
}

Term read_term(const TermGraph& g, std::optional<std::size_t> max_term_size) {
  return read_term_at(g, g.root(), max_term_size);
}

namespace {

NodeId build_tree(const Term& t, TermGraph& g, std::uint32_t& next, std::unordered_map<Symbol, NodeId>& vars) {
  if (t.is_var()) {
    auto [it, inserted] = vars.emplace(t.symbol(), NodeId{next});
    if (inserted) g.put(NodeId{next++}, Label::var(t.symbol()), {});
    return it->second;
  }
  const NodeId id{next++};
  g.put(id, Label::fun(t.symbol()), std::vector<NodeId>(t.arity()));
  for (std::size_t i = 0; i < t.arity(); ++i) g.set_succ(id, i, build_tree(t.args()[i], g, next, vars));
  return id;
}

NodeId build_shared(const Term& t, TermGraph& g, std::uint32_t& next, std::unordered_map<Term, NodeId>& memo) {
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  const NodeId id{next++};
  memo.emplace(t, id);
  if (t.is_var()) {
    g.put(id, Label::var(t.symbol()), {});
    return id;
  }
  g.put(id, Label::fun(t.symbol()), std::vector<NodeId>(t.arity()));
  for (std::size_t i = 0; i < t.arity(); ++i) g.set_succ(id, i, build_shared(t.args()[i], g, next, memo));
  return id;
}

}  // namespace

TermGraph mk_tree(const Term& t, NodeId first_id) {
  TermGraph g;
  std::uint32_t next = first_id.value;
  std::unordered_map<Symbol, NodeId> vars;
  g.set_root(build_tree(t, g, next, vars));
  return g;
}

TermGraph mk_tree(const Term& t) { return mk_tree(t, NodeId{1}); }

TermGraph mk_shared(const Term& t) {
  TermGraph g;
  std::uint32_t next = 1;
  std::unordered_map<Term, NodeId> memo;
  g.set_root(build_shared(t, g, next, memo));
  return g;
}

// --- positions -------------------------------------------------------------

std::map<NodeId, std::size_t> path_counts(const TermGraph& g, std::size_t saturate) {
  std::map<NodeId, std::size_t> counts;
  auto order = post_order(g);
  std::reverse(order.begin(), order.end());  // parents before children
  counts[g.root()] = 1;
  for (NodeId u : order) {
    const std::size_t c = counts[u];
    for (NodeId v : g.succ(u)) counts[v] = std::min(saturate, counts[v] + c);
  }
  return counts;
}

bool is_shared(const TermGraph& g, NodeId u) {
  if (!g.contains(u)) throw PreconditionError("unknown node " + to_string(u));
  return path_counts(g).at(u) > 1;
}

std::vector<Position> positions_of(const TermGraph& g, NodeId u, std::size_t cap) {
  if (!g.contains(u)) throw PreconditionError("unknown node " + to_string(u));
  std::vector<Position> out;
  for (auto& [p, v] : all_positions(g, cap))
    if (v == u) out.push_back(std::move(p));
  return out;
}

std::vector<std::pair<Position, NodeId>> all_positions(const TermGraph& g, std::size_t cap) {
  std::vector<std::pair<Position, NodeId>> out;
  std::vector<std::size_t> path;
  auto rec = [&](auto&& self, NodeId u) -> void {
    if (out.size() >= cap) throw CapacityError("graph has more than " + std::to_string(cap) + " positions");
    out.emplace_back(Position(path), u);
    const auto succ = g.succ(u);
    for (std::size_t i = 0; i < succ.size(); ++i) {
      path.push_back(i + 1);
      self(self, succ[i]);
      path.pop_back();
    }
  };
  rec(rec, g.root());
  return out;
}

std::map<NodeId, Position> canonical_positions(const TermGraph& g) {
  // Breadth-first with ordered successors discovers each node first along
  // its length-lexicographically least path.
  std::map<NodeId, Position> out;
  std::deque<NodeId> queue{g.root()};
  out.emplace(g.root(), Position{});
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    const auto succ = g.succ(u);
    for (std::size_t i = 0; i < succ.size(); ++i) {
      if (out.contains(succ[i])) continue;
      out.emplace(succ[i], out.at(u).child(i + 1));
      queue.push_back(succ[i]);
    }
  }
  return out;
}

Position canonical_position(const TermGraph& g, NodeId u) {
  auto all = canonical_positions(g);
  auto it = all.find(u);
  if (it == all.end()) throw PreconditionError("unknown node " + to_string(u));
  return it->second;
}

bool has_position(const TermGraph& g, const Position& p) {
  NodeId u = g.root();
  for (auto i : p.indices()) {
    const auto succ = g.succ(u);
    if (i > succ.size()) return false;
    u = succ[i - 1];
  }
  return true;
}

NodeId node_at(const TermGraph& g, const Position& p) {
  NodeId u = g.root();
  for (auto i : p.indices()) {
    const auto succ = g.succ(u);
    if (i > succ.size()) throw PreconditionError("position " + p.to_string() + " is not a position of the graph");
    u = succ[i - 1];
  }
  return u;
}

// --- subgraphs and replacement ---------------------------------------------

TermGraph subgraph_at(const TermGraph& g, NodeId u) {
  TermGraph out;
  for (NodeId w : reachable_from(g, u)) {
    const auto succ = g.succ(w);
    out.put(w, g.label(w), std::vector<NodeId>(succ.begin(), succ.end()));
  }
  out.set_root(u);
  return out;
}

TermGraph replace_at(const TermGraph& s, NodeId u, const TermGraph& h) {
  if (!s.contains(u)) throw PreconditionError("replace_at: unknown node " + to_string(u));
  if (h.contains(u)) throw PreconditionError("replace_at: node " + to_string(u) + " occurs in the replacement");
  const NodeId target = h.root();
  for (NodeId w : h.nodes()) {
    if (!s.contains(w)) continue;
    const auto hs = h.succ(w), ss = s.succ(w);
    if (!(h.label(w) == s.label(w)) || !std::equal(hs.begin(), hs.end(), ss.begin(), ss.end()))
      throw PreconditionError("replace_at: graphs do not share node " + to_string(w) + " properly");
  }
  TermGraph out = s;
  out.erase(u);
  for (NodeId w : out.nodes()) {
    const auto succ = out.succ(w);
    for (std::size_t i = 0; i < succ.size(); ++i)
      if (succ[i] == u) out.set_succ(w, i, target);
  }
  for (const auto& spec : h.specs())
    if (!out.contains(spec.id)) out.put(spec.id, spec.label, spec.succ);
  out.set_root(u == s.root() ? target : s.root());
  out.collect_garbage();
  out.validate();
  return out;
}

// --- morphisms -------------------------------------------------------------

std::optional<Morphism> find_morphism(const TermGraph& pattern, const TermGraph& target, NodeId at) {
  if (!target.contains(at)) throw PreconditionError("find_morphism: unknown node " + to_string(at));
  Morphism m;
  std::vector<std::pair<NodeId, NodeId>> stack{{pattern.root(), at}};
  while (!stack.empty()) {
    const auto [l, t] = stack.back();
    stack.pop_back();
    auto [it, inserted] = m.images.emplace(l, t);
    if (!inserted) {
      if (it->second != t) return std::nullopt;
      continue;
    }
    const Label& ll = pattern.label(l);
    if (ll.is_var) continue;
    if (!(ll == target.label(t))) return std::nullopt;
    const auto ls = pattern.succ(l), ts = target.succ(t);
    if (ls.size() != ts.size()) return std::nullopt;
    for (std::size_t i = ls.size(); i-- > 0;) stack.emplace_back(ls[i], ts[i]);
  }
  return m;
}

std::optional<Morphism> find_morphism(const TermGraph& pattern, const TermGraph& target) {
  return find_morphism(pattern, target, target.root());
}

Substitution induced_substitution(const Morphism& m, const TermGraph& pattern, const TermGraph& target) {
  Substitution sigma;
  for (NodeId u : pattern.nodes()) {
    const Label& l = pattern.label(u);
    if (l.is_var) sigma.emplace(l.symbol, read_term_at(target, m(u)));
  }
  return sigma;
}

bool is_isomorphic(const TermGraph& a, const TermGraph& b) {
  if (a.size() != b.size() || a.empty()) return a.size() == b.size();
  std::map<NodeId, NodeId> forward, backward;
  std::vector<std::pair<NodeId, NodeId>> stack{{a.root(), b.root()}};
  while (!stack.empty()) {
    const auto [u, v] = stack.back();
    stack.pop_back();
    auto f = forward.find(u);
    auto r = backward.find(v);
    if (f != forward.end() || r != backward.end()) {
      if (f == forward.end() || r == backward.end() || f->second != v || r->second != u) return false;
      continue;
    }
    forward.emplace(u, v);
    backward.emplace(v, u);
    if (!(a.label(u) == b.label(v))) return false;
    const auto us = a.succ(u), vs = b.succ(v);
    if (us.size() != vs.size()) return false;
    for (std::size_t i = 0; i < us.size(); ++i) stack.emplace_back(us[i], vs[i]);
  }
  return forward.size() == a.size();
}

namespace {

void append_label(std::string& out, const Label& l) {
  out += l.is_var ? '?' : '!';
  out += l.name();
}

}  // namespace

std::string canonical_form(const TermGraph& g) {
  if (g.empty()) return {};
  std::unordered_map<std::uint32_t, std::size_t> number;
  std::vector<NodeId> order;
  auto rec = [&](auto&& self, NodeId u) -> void {
    if (number.contains(u.value)) return;
    number.emplace(u.value, order.size());
    order.push_back(u);
    for (NodeId v : g.succ(u)) self(self, v);
  };
  rec(rec, g.root());
  std::string out;
  for (NodeId u : order) {
    append_label(out, g.label(u));
    out += '(';
    const auto succ = g.succ(u);
    for (std::size_t i = 0; i < succ.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(number.at(succ[i].value));
    }
    out += ')';
  }
  return out;
}

std::vector<std::uint32_t> sharing_classes(const TermGraph& g) {
  std::vector<std::uint32_t> cls(g.empty() ? 0 : g.max_id().value + 1, 0);
  if (g.empty()) return cls;
  // Open addressing over keys (symbol, var flag, successor classes) kept
  // back to back in one buffer; slot value 0 means empty.
  std::vector<std::uint32_t> keys;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> spans{{0, 0}};  // per class: offset, length
  std::size_t cap = 16;
  while (cap < 2 * g.size()) cap *= 2;
  std::vector<std::uint32_t> table(cap, 0);
  for (NodeId u : post_order(g)) {
    const Label& l = g.label(u);
    const std::uint32_t offset = static_cast<std::uint32_t>(keys.size());
    keys.push_back(l.symbol.id());
    keys.push_back(l.is_var);
    for (NodeId v : g.succ(u)) keys.push_back(cls[v.value]);
    const std::uint32_t len = static_cast<std::uint32_t>(keys.size()) - offset;
    std::size_t h = len;
    for (std::uint32_t k = offset; k < keys.size(); ++k) h = (h ^ keys[k]) * 0x100000001b3ULL;
    for (std::size_t slot = h & (cap - 1);; slot = (slot + 1) & (cap - 1)) {
      const std::uint32_t c = table[slot];
      if (c == 0) {
        table[slot] = cls[u.value] = static_cast<std::uint32_t>(spans.size());
        spans.emplace_back(offset, len);
        break;
      }
      const auto [o, n] = spans[c];
      if (n == len && std::equal(keys.begin() + o, keys.begin() + o + n, keys.begin() + offset)) {
        cls[u.value] = c;
        keys.resize(offset);
        break;
      }
    }
  }
  return cls;
}

std::string sharing_key(const TermGraph& g) {
  if (g.empty()) return {};
  // Number the classes in preorder of first occurrence from the root and
  // print one representative node per class.
  const auto cls = sharing_classes(g);
  std::vector<NodeId> rep(g.size() + 1);
  for (NodeId u : g.nodes()) rep[cls[u.value]] = u;
  std::vector<std::size_t> number(g.size() + 1, 0);  // 0 = not numbered yet
  std::vector<std::uint32_t> order;
  auto rec = [&](auto&& self, std::uint32_t c) -> void {
    if (number[c]) return;
    order.push_back(c);
    number[c] = order.size();
    for (NodeId v : g.succ(rep[c])) self(self, cls[v.value]);
  };
  rec(rec, cls[g.root().value]);
  std::string out;
  for (std::uint32_t c : order) {
    append_label(out, g.label(rep[c]));
    out += '(';
    const auto succ = g.succ(rep[c]);
    for (std::size_t i = 0; i < succ.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(number[cls[succ[i].value]] - 1);
    }
    out += ')';
  }
  return out;
}

// --- export ----------------------------------------------------------------

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const TermGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n  ordering=out;\n";
  for (NodeId u : g.nodes()) {
    os << "  " << u.value << " [label=\"" << dot_escape(g.label(u).name()) << "\"";
    if (g.label(u).is_var) os << ", shape=box";
    if (u == g.root()) os << ", penwidth=2";
    os << "];\n";
  }
  for (NodeId u : g.nodes()) {
    const auto succ = g.succ(u);
    for (std::size_t i = 0; i < succ.size(); ++i)
      os << "  " << u.value << " -> " << succ[i].value << " [label=\"" << i + 1 << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string dump_text(const TermGraph& g) {
  std::ostringstream os;
  for (NodeId u : g.nodes()) {
    os << "⟨" << u.value << ", " << g.label(u).name() << ", [";
    const auto succ = g.succ(u);
    for (std::size_t i = 0; i < succ.size(); ++i) os << (i ? ", " : "") << succ[i].value;
    os << "]⟩";
    if (u == g.root()) os << " root";
    os << '\n';
  }
  return os.str();
}

}  // namespace sharegraph
