#pragma once

#include <filesystem>
#include <optional>

#include "rubber/datum.hpp"
#include "rubber/gclass.hpp"
#include "rubber/recursion.hpp"

namespace rubber::cache {

inline constexpr int kFormatVersion = 1;

// File-backed cache for the expensive results: Euler tables keyed by
// (n_max, order) and total classes keyed by chamber signature. Files are
// plain JSON with a format-version field; a corrupt or outdated file is
// treated as a miss (with a warning) and later overwritten. Writers hold an
// advisory lock on the directory.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  std::optional<recursion::EulerTable> load_table(int n_max, int order);
  void store_table(const recursion::EulerTable& table, int order);

  // The class cache key is the chamber signature of x. A hit is served only
  // after re-validating that the stored defining vector lies in the same
  // chamber as the query.
  std::optional<GClass> load_class(const RamificationDatum& x);
  void store_class(const RamificationDatum& x, const GClass& value);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace rubber::cache
