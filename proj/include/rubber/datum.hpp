#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rubber {

// A ramification datum: a vector of nonzero integers with zero total sum and
// no vanishing proper subset sum; the open condition cutting out the
// complement of the resonance arrangement. Construct through
// chambers::validate, which enforces the invariants.
struct RamificationDatum {
  std::vector<long long> x;

  int n() const { return static_cast<int>(x.size()); }
};

enum class DatumErrorKind {
  TooFewEntries,       // fewer than three coordinates
  NonzeroTotal,        // sum of entries is not zero
  ZeroEntry,           // some x_i = 0
  VanishingSubsetSum,  // a proper nonempty subset sums to zero
  BoundExceeded,       // more coordinates than the subset scan supports
};

class DatumError : public std::runtime_error {
 public:
  DatumError(DatumErrorKind kind, std::string message, std::vector<int> witness = {})
      : std::runtime_error(std::move(message)), kind(kind), witness(std::move(witness)) {}

  DatumErrorKind kind;
  std::vector<int> witness;  // 1-based coordinate indices, when applicable
};

}  // namespace rubber
