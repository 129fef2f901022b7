#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rubber/arith.hpp"

namespace rubber::trees {

// Set of leaf labels as a bitmask: bit i-1 stands for leaf i.
using LeafMask = std::uint32_t;

inline constexpr int kDefaultTreeBound = 9;

// A stable tree with leaves labelled 1..n. Vertex ids 0..n-1 are the leaves
// (leaf i has id i-1), ids n..n+internal_count-1 are internal vertices.
// Stability: no vertex of valence two, every internal vertex has valence >= 3.
struct MarkedTree {
  int n = 0;
  int internal_count = 0;
  std::vector<std::pair<std::uint8_t, std::uint8_t>> edges;

  int vertex_count() const { return n + internal_count; }
  bool is_leaf(int v) const { return v < n; }

  std::vector<std::vector<int>> adjacency() const;
  std::vector<int> valences() const;

  // For each edge k, the leaf set of the component of T minus edge k that
  // contains edges[k].first.
  std::vector<LeafMask> edge_side_masks() const;

  // Sorted list of internal-edge bipartitions, each written as the side
  // containing leaf 1. Determines the tree up to isomorphism fixing leaf
  // labels, and is the canonical form used for dedup and ordering.
  std::vector<LeafMask> internal_splits() const;

  // Text form of internal_splits(), e.g. "12|34" for the n = 4 tree
  // separating {1,2} from {3,4}; splits joined by ";". Empty for star trees.
  std::string encode() const;
};

// All isomorphism classes of stable n-marked trees, sorted by canonical form.
// Throws if n < 3 or n > bound.
std::vector<MarkedTree> enumerate_stable_trees(int n, int bound = kDefaultTreeBound);

// Streaming variant; visit order is deterministic but unsorted.
void for_each_stable_tree(int n, const std::function<void(const MarkedTree&)>& fn,
                          int bound = kDefaultTreeBound);

// A tree that may have bivalent vertices: leaves are ids 0..n-1 (leaf i at
// id i-1), every other id below vertex_count is a non-leaf vertex.
struct RawTree {
  int n = 0;
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
};

// Smooth out bivalent vertices, merging their incident edge pairs. Throws if
// the result is not a stable marked tree.
MarkedTree stabilize(const RawTree& input);

// A ribbon rooted tree: a stable tree with a distinguished root leaf and a
// cyclic order of half-edges at every vertex. Relative to the root this is
// the same thing as a plane rooted tree, which is how it is stored: node 0 is
// the base (the internal vertex adjacent to the root leaf), every internal
// node holds its children in ribbon order, and the root leaf itself is not a
// node. Stability forces >= 2 children at every internal node.
struct RibbonTree {
  struct Node {
    bool leaf = false;
    std::vector<int> children;  // empty for leaves
  };
  std::vector<Node> nodes;

  int internal_count() const;
  int leaf_count() const;  // non-root leaves, i.e. N_T

  // Canonical planar code, e.g. "(LL)" for the one-internal-vertex tree with
  // two leaves. Distinct ribbon trees have distinct codes.
  std::string planar_code() const;

  // For each internal node, in node-id order, the bitmask (over the same
  // ordering) of its strict ancestors among internal nodes.
  std::vector<std::uint32_t> internal_ancestor_masks() const;

  bool operator==(const RibbonTree& other) const;
};

// All ribbon rooted trees with m internal vertices and N_T <= max_leaves,
// one per isomorphism class.
std::vector<RibbonTree> enumerate_rrt(int m, int max_leaves);

struct RibbonStats {
  Rat a_t;     // product over vertices of A_val / (val-1)!
  int big_n;   // N_T = |L(T)| - 1
};
RibbonStats ribbon_stats(const RibbonTree& t);

// Decomposition type (k, j, lambda) at the base vertex: k leaf children,
// j subtree children, lambda the partition of m-1 recording the subtree
// sizes. The ordered subtrees follow the ribbon order at the base, starting
// after the root half-edge; base_is_subtree records how leaves and subtrees
// interleave there.
struct DecompositionType {
  int k = 0;
  int j = 0;
  std::vector<int> lambda;  // multiplicities, indexed by part size, size m
};

struct Decomposition {
  DecompositionType type;
  std::vector<RibbonTree> subtrees;
  std::vector<bool> base_is_subtree;
};

Decomposition decompose(const RibbonTree& t);
RibbonTree reassemble(const Decomposition& d);

}  // namespace rubber::trees
