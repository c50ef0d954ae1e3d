#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sharegraph/term.hpp"

namespace sharegraph {

/// Node identifier. The numeric order is the total order on nodes used to
/// orient collapses: a larger id is collapsed onto a smaller one.
struct NodeId {
  std::uint32_t value = 0;

  friend bool operator==(NodeId, NodeId) = default;
  friend auto operator<=>(NodeId, NodeId) = default;
};

inline std::string to_string(NodeId id) { return std::to_string(id.value); }

/// Node label: a function symbol or a variable name.
struct Label {
  Symbol symbol;
  bool is_var = false;

  static Label fun(Symbol s) { return {s, false}; }
  static Label fun(std::string_view s) { return {Symbol::intern(s), false}; }
  static Label var(Symbol s) { return {s, true}; }
  static Label var(std::string_view s) { return {Symbol::intern(s), true}; }

  const std::string& name() const { return symbol.name(); }
  friend bool operator==(const Label&, const Label&) = default;
};

struct NodeSpec {
  NodeId id;
  Label label;
  std::vector<NodeId> succ;
};

/// Ordered, labelled, rooted, acyclic graph in which every variable label
/// occurs at most once.
///
/// TermGraph is a value type. The mutators below are low level and do not
/// re-establish the invariants; the graph operations in this library copy
/// their input, mutate the copy and call validate() before returning it.
class TermGraph {
 public:
  TermGraph() = default;

  /// Builds and validates a graph from node specifications.
  static TermGraph from_specs(NodeId root, const std::vector<NodeSpec>& nodes);

  NodeId root() const { return root_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool contains(NodeId id) const { return id.value < slots_.size() && slots_[id.value].has_value(); }

  /// Throws PreconditionError for an unknown node.
  const Label& label(NodeId id) const { return slot(id).label; }
  std::span<const NodeId> succ(NodeId id) const { return slot(id).succ; }

  /// Largest node id in use (0 for the empty graph).
  NodeId max_id() const;
  /// Node ids in increasing order.
  std::vector<NodeId> nodes() const;
  std::vector<NodeSpec> specs() const;

  void put(NodeId id, Label label, std::vector<NodeId> succ);
  void erase(NodeId id);
  void set_root(NodeId id) { root_ = id; }
  void set_succ(NodeId id, std::size_t index, NodeId target);
  /// Removes nodes unreachable from the root.
  void collect_garbage();

  /// Checks acyclicity, rootedness, arity consistency and variable sharing.
  /// Throws PreconditionError describing the first violation.
  void validate() const;
  bool is_valid() const;

  /// Identical node sets, labels, successors and root.
  friend bool operator==(const TermGraph& a, const TermGraph& b);

 private:
  struct Node {
    Label label;
    std::vector<NodeId> succ;
    friend bool operator==(const Node&, const Node&) = default;
  };
  const Node& slot(NodeId id) const {
    if (!contains(id)) [[unlikely]]
      unknown_node(id);
    return *slots_[id.value];
  }
  [[noreturn]] static void unknown_node(NodeId id);

  std::vector<std::optional<Node>> slots_;
  std::size_t count_ = 0;
  NodeId root_;
};

/// Node map witnessing a match of a pattern graph into a target.
struct Morphism {
  std::map<NodeId, NodeId> images;

  NodeId operator()(NodeId u) const;
  friend bool operator==(const Morphism&, const Morphism&) = default;
};

struct GraphMetrics {
  std::size_t size = 0;   // node count
  std::size_t depth = 0;  // longest path, in edges
  std::size_t rsize = 0;  // size * ceil(log2(size + 1))
};

GraphMetrics metrics(const TermGraph& g);
std::size_t depth(const TermGraph& g);
/// size * ceil(log2(size + 1)): the reported representation size.
std::size_t representation_size(std::size_t size);

/// The term represented by `g`. Shared nodes are read once (the returned
/// term shares structure), so this is linear in |g|; `max_term_size`
/// bounds the size of the unravelled term and raises CapacityError.
Term read_term(const TermGraph& g, std::optional<std::size_t> max_term_size = std::nullopt);
/// read_term of the subgraph rooted at `u`.
Term read_term_at(const TermGraph& g, NodeId u, std::optional<std::size_t> max_term_size = std::nullopt);

/// Minimally sharing representation; ids 1.. in preorder, one node per
/// variable.
TermGraph mk_tree(const Term& t);
/// Same as mk_tree, numbering from `first_id`.
TermGraph mk_tree(const Term& t, NodeId first_id);
/// Maximally sharing representation; ids 1.. in preorder of first
/// occurrence.
TermGraph mk_shared(const Term& t);

/// Nodes reachable from `u` (including `u`), increasing.
std::vector<NodeId> reachable_from(const TermGraph& g, NodeId u);
/// Nodes reachable from the root, children before parents.
std::vector<NodeId> post_order(const TermGraph& g);

/// Every position of `u`, lexicographically sorted. CapacityError when
/// more than `cap` positions exist.
std::vector<Position> positions_of(const TermGraph& g, NodeId u, std::size_t cap = 1'000'000);
/// The length-lexicographically least position of every reachable node.
std::map<NodeId, Position> canonical_positions(const TermGraph& g);
Position canonical_position(const TermGraph& g, NodeId u);
/// All (position, node) pairs in preorder, i.e. the positions of read_term(g).
std::vector<std::pair<Position, NodeId>> all_positions(const TermGraph& g, std::size_t cap = 1'000'000);
/// Number of root paths to each reachable node, saturated at `saturate`.
std::map<NodeId, std::size_t> path_counts(const TermGraph& g, std::size_t saturate = 2);
bool is_shared(const TermGraph& g, NodeId u);

/// The node corresponding to `p`. Throws PreconditionError if p is not a
/// position of g.
NodeId node_at(const TermGraph& g, const Position& p);
bool has_position(const TermGraph& g, const Position& p);

/// Subgraph reachable from `u`, ids preserved, rooted at `u`.
TermGraph subgraph_at(const TermGraph& g, NodeId u);

/// S[u <- H]: redirect every edge into `u` to rt(H), add H, and keep what
/// is reachable from the new root (rt(H) if u was the root). S and H must
/// share properly and u must not occur in H.
TermGraph replace_at(const TermGraph& s, NodeId u, const TermGraph& h);

/// Top-down match of `pattern` into the subgraph of `target` rooted at
/// `at`. Function nodes must agree on label and successors; variable
/// nodes may map anywhere but, the map being a function, every occurrence
/// of a variable has the same image.
std::optional<Morphism> find_morphism(const TermGraph& pattern, const TermGraph& target, NodeId at);
std::optional<Morphism> find_morphism(const TermGraph& pattern, const TermGraph& target);

/// σ_m(x) = τ(target↾m(u)) for each variable node u of the pattern.
Substitution induced_substitution(const Morphism& m, const TermGraph& pattern, const TermGraph& target);

bool is_isomorphic(const TermGraph& a, const TermGraph& b);

/// Hash-consing class of every node, indexed by id (0 for unused ids).
/// Two nodes get the same class iff they represent the same term.
std::vector<std::uint32_t> sharing_classes(const TermGraph& g);

/// Isomorphism-invariant serialization: equal strings iff isomorphic.
std::string canonical_form(const TermGraph& g);
/// Serialization of the maximally shared form of `g`: equal strings iff
/// the graphs represent the same term.
std::string sharing_key(const TermGraph& g);

/// Graphviz rendering, one `id [label="sym"]` record per node and edges
/// labelled with the argument index.
std::string to_dot(const TermGraph& g, const std::string& name = "G");
/// Increasing list of node specifications, one `⟨id, label, [succ]⟩` per line.
std::string dump_text(const TermGraph& g);

}  // namespace sharegraph
