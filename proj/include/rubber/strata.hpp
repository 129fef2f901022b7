#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rubber/datum.hpp"
#include "rubber/gclass.hpp"
#include "rubber/trees.hpp"

namespace rubber::strata {

// A stable marked tree with the edge orientation induced by a ramification
// datum: leaf edges point inward at positive leaves and outward at negative
// ones, and every internal edge points away from the side of positive leaf
// weight. The orientation is acyclic and depends only on the resonance
// chamber of the datum.
struct DirectedMarkedTree {
  trees::MarkedTree tree;
  std::vector<bool> toward_second;  // edge k runs first -> second iff true

  std::pair<int, int> oriented(size_t k) const {
    auto [u, v] = tree.edges[k];
    return toward_second[k] ? std::make_pair(int(u), int(v)) : std::make_pair(int(v), int(u));
  }
};

// Sum of x_i over the leaves of the component of T minus edge k containing
// `side_vertex` (which must be an endpoint of edge k). Never zero for a
// validated datum.
long long subtree_weight(const trees::MarkedTree& t, const RamificationDatum& x, size_t k,
                         int side_vertex);

DirectedMarkedTree x_directing(const trees::MarkedTree& t, const RamificationDatum& x);

// Reachability order on V(T): v <= w iff there is a directed path v -> w.
struct VertexOrder {
  std::vector<std::uint32_t> reach;  // reach[v] bit w set iff v <= w

  bool leq(int v, int w) const { return reach[static_cast<size_t>(v)] >> w & 1; }
  bool comparable(int v, int w) const { return leq(v, w) || leq(w, v); }
};

VertexOrder partial_order(const DirectedMarkedTree& d);

// An ordered partition of V(T) into antichain blocks compatible with the
// directing: first block the positive leaves, last block the negative ones,
// and every middle element sandwiched between comparable elements of earlier
// and later blocks.
struct OrderedPartition {
  std::vector<std::vector<int>> blocks;  // vertex ids; first/last are the leaf blocks

  int length() const { return static_cast<int>(blocks.size()); }
};

std::vector<OrderedPartition> admissible_partitions(const trees::MarkedTree& t,
                                                    const RamificationDatum& x);

// Callback form: middle blocks only, as bitmasks over internal vertices in
// id order (bit i = internal vertex n + i).
void for_each_admissible_partition(const trees::MarkedTree& t, const RamificationDatum& x,
                                   const std::function<void(std::span<const std::uint32_t>)>& fn);

// Class of the open moduli space of genus-zero curves with m >= 3 marked
// points: the product (L-2)(L-3)...(L-(m-2)). Evaluates at L = 1 to the open
// Euler characteristic.
GClass class_m0m(int m);

// Class of the locally closed stratum of maps whose stabilized source tree
// is T: the product of class_m0m over internal vertices times the sum over
// admissible partitions P of (L-1)^(|I(T)| - length(P) + 2).
GClass stratum_class(const trees::MarkedTree& t, const RamificationDatum& x);

// Class of the whole moduli space: sum of stratum_class over all stable
// trees with n(x) leaves. Splits the tree list across `jobs` threads.
GClass total_class(const RamificationDatum& x, int jobs = 1, int tree_bound = trees::kDefaultTreeBound);

// Euler characteristic of the moduli space, computed by the fast path
// sum_T (prod A_val) * (number of linear extensions of the internal order).
// Agrees with total_class(x).eval(1).
Int euler_char(const RamificationDatum& x, int tree_bound = trees::kDefaultTreeBound);

// Number of linear extensions of a poset given as strict-predecessor masks,
// by dynamic programming over down-sets. Supports up to 20 elements.
Int count_linear_extensions(std::span<const std::uint32_t> predecessor_masks);

// Linear extensions of the directing restricted to internal vertices.
Int linear_extensions(const DirectedMarkedTree& d);

}  // namespace rubber::strata
