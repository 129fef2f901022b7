#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rubber/chambers.hpp"
#include "rubber/strata.hpp"
#include "rubber/verify.hpp"

using namespace rubber;
using namespace rubber::chambers;

TEST_CASE("validate accepts and rejects") {
  CHECK(validate({2, -1, -1}).n() == 3);
  CHECK(validate({3, -1, -2}).n() == 3);

  try {
    validate({1, 1, -1, -1});
    FAIL("expected a vanishing subset sum");
  } catch (const DatumError& e) {
    CHECK(e.kind == DatumErrorKind::VanishingSubsetSum);
    CHECK(e.witness == std::vector<int>{1, 3});
  }

  try {
    validate({1, 0, -1});
    FAIL("expected a zero entry");
  } catch (const DatumError& e) {
    CHECK(e.kind == DatumErrorKind::ZeroEntry);
    CHECK(e.witness == std::vector<int>{2});
  }

  try {
    validate({2, -1, -1, 1});
    FAIL("expected a nonzero total");
  } catch (const DatumError& e) {
    CHECK(e.kind == DatumErrorKind::NonzeroTotal);
  }

  try {
    validate({1, -1});
    FAIL("expected rejection of short data");
  } catch (const DatumError& e) {
    CHECK(e.kind == DatumErrorKind::TooFewEntries);
  }
}

TEST_CASE("signature") {
  RamificationDatum x = validate({2, -1, -1});
  ChamberSignature s = signature(x);
  // subsets {1}, {1,2}, {1,3} in mask order: all positive
  REQUIRE(s.positive.size() == 3);
  CHECK(s.positive[0]);
  CHECK(s.positive[1]);
  CHECK(s.positive[2]);

  ChamberSignature s2 = signature(validate({3, -1, -2}));
  CHECK(s2.positive == std::vector<bool>{true, true, true});

  // central data have all-positive signatures
  for (int n = 3; n <= 8; ++n) {
    ChamberSignature sc = signature(central_datum(n));
    for (bool b : sc.positive) CHECK(b);
  }

  CHECK_THROWS_AS(signature(central_datum(18)), std::invalid_argument);
}

TEST_CASE("same chamber") {
  RamificationDatum a = validate({4, -1, -1, -1, -1});
  RamificationDatum b = validate({8, -2, -2, -3, -1});
  CHECK(same_chamber(a, b));
  CHECK(same_chamber(a, a));

  // equal signatures in both orders of the coordinates 2, 3
  CHECK(same_chamber(validate({3, -1, -2}), validate({3, -2, -1})));

  CHECK_THROWS_AS(same_chamber(a, validate({2, -1, -1})), std::invalid_argument);

  // scaling stays in the chamber
  CHECK(same_chamber(validate({5, -2, -3}), validate({10, -4, -6})));
}

TEST_CASE("same chamber is an equivalence on sampled data") {
  std::mt19937_64 rng(21);
  auto data = verify::sample_data(5, 6, rng);
  for (const auto& x : data) CHECK(same_chamber(x, x));
  for (const auto& x : data)
    for (const auto& y : data) CHECK(same_chamber(x, y) == same_chamber(y, x));
  for (const auto& x : data)
    for (const auto& y : data)
      for (const auto& z : data)
        if (same_chamber(x, y) && same_chamber(y, z)) CHECK(same_chamber(x, z));
}

TEST_CASE("sample across wall") {
  RamificationDatum base = validate({3, -1, -1, -1});
  WallSpec wall = make_wall({1, 2}, 4);
  auto sample = sample_across_wall(wall, base, 7);
  REQUIRE(sample.has_value());
  // both sides validated
  CHECK(sample->positive_side.n() == 4);
  CHECK(sample->negative_side.n() == 4);
  long long sp = sample->positive_side.x[0] + sample->positive_side.x[1];
  long long sn = sample->negative_side.x[0] + sample->negative_side.x[1];
  CHECK(sp > 0);
  CHECK(sn < 0);
  // signatures differ exactly at the wall
  ChamberSignature a = signature(sample->positive_side);
  ChamberSignature b = signature(sample->negative_side);
  int diffs = 0;
  for (size_t i = 0; i < a.positive.size(); ++i)
    if (a.positive[i] != b.positive[i]) ++diffs;
  CHECK(diffs == 1);
}

TEST_CASE("make_wall canonicalizes to the side containing 1") {
  WallSpec w = make_wall({2, 3}, 4);
  CHECK(w.subset == std::vector<int>{1, 4});
  CHECK_THROWS_AS(make_wall({1, 2, 3, 4}, 4), std::invalid_argument);
}

TEST_CASE("wallcross") {
  // same-chamber pair: zero polynomial
  GClass zero = wallcross(validate({4, -1, -1, -1, -1}), validate({8, -2, -2, -3, -1}));
  CHECK(zero.is_zero());

  // restricted sum equals the full difference on sampled wall pairs
  std::mt19937_64 rng(22);
  for (int n = 4; n <= 5; ++n) {
    RamificationDatum base = central_datum(n);
    for (std::uint32_t mask : canonical_subsets(n)) {
      std::vector<int> subset;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) subset.push_back(i + 1);
      auto sample = sample_across_wall(make_wall(subset, n), base, 100 + mask);
      if (!sample) continue;
      const auto& x = sample->positive_side;
      const auto& y = sample->negative_side;
      GClass restricted = wallcross(x, y);
      GClass full = strata::total_class(x) - strata::total_class(y);
      CHECK(restricted == full);
      // evaluation at L = 1 is the Euler characteristic difference
      CHECK(restricted.eval(1) == strata::euler_char(x) - strata::euler_char(y));
    }
  }
}

TEST_CASE("ratio trend") {
  auto ratios = ratio_trend(19);
  REQUIRE(ratios.size() == 18);
  CHECK(ratios[0] == 1);
  CHECK(ratios[2] == rat(7, 10));
  CHECK(ratios[8] == Rat(Int("1821473")) / Rat(Int("734772384")));
  // both columns open with 1, 2, so the first two ratios tie at 1; the
  // sequence decreases strictly from n = 3 on
  CHECK(ratios[1] == 1);
  for (size_t i = 2; i < ratios.size(); ++i) CHECK(ratios[i] < ratios[i - 1]);
}
