#pragma once

#include <random>
#include <string>
#include <vector>

#include "rubber/datum.hpp"

namespace rubber::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Deterministic sampling helpers shared by the verification suites and the
// acceptance tests.

// Random validated data of the given length.
std::vector<RamificationDatum> sample_data(int n, int count, std::mt19937_64& rng);

// Distinct-chamber validated data of the given length.
std::vector<RamificationDatum> sample_chambers(int n, int count, std::mt19937_64& rng);

// Validated data in the same chamber as `base` (including base itself),
// produced by small re-validated perturbations and positive scalings.
std::vector<RamificationDatum> same_chamber_samples(const RamificationDatum& base, int count,
                                                    std::mt19937_64& rng);

// Suites mirroring each module's invariants. max_n bounds the datum lengths
// and table sizes exercised.
std::vector<CheckResult> verify_recursion(int max_n = 6);
std::vector<CheckResult> verify_strata(int max_n = 6);
std::vector<CheckResult> verify_chambers(int max_n = 6);
std::vector<CheckResult> verify_oracle(int max_n = 6);

std::vector<CheckResult> verify_all(int max_n = 6);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace rubber::verify
