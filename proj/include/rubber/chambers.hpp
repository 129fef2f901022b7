#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rubber/datum.hpp"
#include "rubber/gclass.hpp"
#include "rubber/trees.hpp"

namespace rubber::chambers {

inline constexpr int kDefaultSignatureBound = 16;

// Validate a candidate ramification datum: at least three coordinates, zero
// total, no zero entry, no vanishing proper subset sum. Throws DatumError
// with a witness subset on failure.
RamificationDatum validate(const std::vector<long long>& x);

// The datum (len-1, -1, ..., -1) of the given length, the representative of
// the central chamber.
RamificationDatum central_datum(int len);

// Sign vector of a validated datum over the canonical proper subsets
// containing coordinate 1 (the complement determines the rest). Subsets are
// ordered by increasing bitmask; there are 2^(n-1) - 1 of them.
struct ChamberSignature {
  int n = 0;
  std::vector<bool> positive;

  bool operator==(const ChamberSignature& other) const = default;
};

ChamberSignature signature(const RamificationDatum& x, int bound = kDefaultSignatureBound);

// Canonical subset masks in signature order (bit i-1 = coordinate i).
std::vector<std::uint32_t> canonical_subsets(int n);

// True iff the signatures agree; compares subset by subset with an early
// exit at the first differing wall.
bool same_chamber(const RamificationDatum& x, const RamificationDatum& y,
                  int bound = kDefaultSignatureBound);

// A wall of the resonance arrangement, named by the proper subset S,
// canonicalized to contain coordinate 1.
struct WallSpec {
  std::vector<int> subset;  // 1-based indices, sorted, containing 1

  std::uint32_t mask() const;
};

WallSpec make_wall(std::vector<int> subset_1based, int n);

struct WallSample {
  RamificationDatum positive_side;  // sum over S positive
  RamificationDatum negative_side;  // sum over S negative
  int attempts = 0;
};

// Randomized bounded search for two validated data whose signatures differ
// exactly at the given wall, found by perturbing (a scaled copy of) the base
// along the wall normal and re-validating. Returns nullopt when the budget
// is exhausted.
std::optional<WallSample> sample_across_wall(const WallSpec& wall, const RamificationDatum& base,
                                             std::uint64_t seed = 1, int budget = 4000);

// total_class(x) - total_class(y). Only trees with an edge split across a
// wall separating x and y can contribute, and the sum is restricted to
// those; for data in one chamber this is the zero polynomial without any
// tree visits.
GClass wallcross(const RamificationDatum& x, const RamificationDatum& y,
                 int tree_bound = trees::kDefaultTreeBound);

// The sequence chi(compactified genus-zero moduli with n+1 marks) / chi of
// the maximally-ramified space, for n = 2..n_max.
std::vector<Rat> ratio_trend(int n_max);

}  // namespace rubber::chambers
