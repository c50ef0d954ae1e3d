#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sharegraph/term_graph.hpp"

namespace sharegraph {

/// One fold (collapse) or unfold (copy) step.
struct FoldStep {
  enum class Kind { collapse, copy };
  Kind kind = Kind::collapse;
  /// collapse: the removed node; copy: the node that was copied.
  NodeId from;
  /// collapse: the surviving node; copy: the fresh node.
  NodeId to;

  friend bool operator==(const FoldStep&, const FoldStep&) = default;
};

std::string to_string(const FoldStep& step);

/// A normalization result together with the steps that produced it.
struct SharingResult {
  TermGraph graph;
  std::vector<FoldStep> steps;
};

/// Collapses `u` onto `v`: every edge into `u` is redirected to `v` and
/// `u` disappears. Requires u > v and equal labels and successor lists.
TermGraph collapse_step(const TermGraph& s, NodeId u, NodeId v);

/// Gives the edge `parent --index--> v` (index 1-based) its own fresh copy
/// of `v` (same label and successors, id max + 1). Variable nodes cannot be
/// copied. If `v` had no other incoming path it becomes garbage and is
/// dropped, so the size only grows when `v` was shared.
TermGraph copy_step(const TermGraph& s, NodeId v, NodeId parent, std::size_t index);
/// copy_step that also reports the fresh node.
std::pair<TermGraph, NodeId> copy_step_fresh(const TermGraph& s, NodeId v, NodeId parent, std::size_t index);

/// Unfolds along the path to `p`: walking from the root, every shared
/// function node met on the path gets a fresh copy for the edge being
/// followed. Afterwards every node above `p` is unshared (a variable node
/// at `p` itself stays shared). At most |p| copies.
SharingResult unfold_above(const TermGraph& s, const Position& p);

/// Folds the subgraph strictly below `p` to maximal sharing. Nodes are
/// processed by height; within a height, nodes with equal label and
/// successors are collapsed onto the smallest id among them. Nothing
/// outside the nodes strictly below `p` is merged.
SharingResult fold_below(const TermGraph& s, const Position& p);

/// All legal collapse pairs (u, v), u > v, among the nodes strictly below
/// `p`, sorted.
std::vector<std::pair<NodeId, NodeId>> fold_candidates(const TermGraph& s, const Position& p);

}  // namespace sharegraph
