#pragma once

#include <optional>
#include <vector>

#include "rubber/datum.hpp"
#include "rubber/gclass.hpp"
#include "rubber/series.hpp"
#include "rubber/trees.hpp"

namespace rubber::oracle {

// The combinatorial type of a rubber stable map: a tree map onto a path,
// recorded as the subdivided source (bivalent vertices inserted where an
// edge spans several levels), the level of every source vertex, and the
// positive edge weights given by the ramification indices. Levels run from
// 0 (the fiber over 0, the positive leaves) to target_length + 1 (the fiber
// over infinity, the negative leaves).
struct CombinatorialType {
  trees::RawTree source;
  int target_length = 0;              // number of internal target vertices
  std::vector<int> level;             // per source vertex
  std::vector<long long> weights;     // per source edge, all positive
};

// Assignment of internal vertices of a stable tree to target levels 1..r.
struct LevelAssignment {
  int target_length = 0;
  std::vector<int> internal_level;  // indexed by internal vertex order
};

// The unique balanced weight function for a fixed level assignment, one
// weight per edge of the original tree (subdivision segments share their
// edge's weight), or nullopt when some forced weight is not positive or two
// adjacent vertices share a level. Failure signals an inadmissible level
// assignment, not an error.
std::optional<std::vector<long long>> weight_function(const trees::MarkedTree& t,
                                                      const RamificationDatum& x,
                                                      const LevelAssignment& levels);

// All isomorphism classes of combinatorial types whose source stabilizes to
// the given tree, by direct enumeration of level assignments.
std::vector<CombinatorialType> enumerate_combinatorial_types(const trees::MarkedTree& t,
                                                             const RamificationDatum& x);

// Check the local weight identity at every internal vertex v and incident
// internal edge e: the leaf weight of the component of the source minus e
// containing v equals the left-minus-right sum of the other edge weights at
// that component's boundary vertex.
bool local_calc_check(const CombinatorialType& ct);

// Stratum class recomputed from the enumerated combinatorial types: each
// type contributes the product of open-moduli classes over internal vertices
// times (L-1)^(stable preimage count - 1) summed over target vertices.
GClass class_sum_over_types(const trees::MarkedTree& t, const RamificationDatum& x);

// nu_m recomputed as the ribbon-tree sum: over ribbon rooted trees with m
// internal vertices and N_T <= order, add a_T o_T t^(N_T).
series::TruncatedSeries rrt_nu(int m, int order);

// Check the base-vertex decomposition identity: the ribbon sum for nu_m
// equals the sum over j and partitions lambda of m-1 of
// nu_1^(j) * multinomial(lambda)/j! * (sum over ordered subtree tuples of
// the product of their ribbon contributions). m >= 2.
bool cake_check(int m, int order);

}  // namespace rubber::oracle
