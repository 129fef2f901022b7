#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "rubber/chambers.hpp"
#include "rubber/strata.hpp"
#include "support/bruteforce.hpp"

using namespace rubber;
using namespace rubber::strata;
using trees::MarkedTree;

namespace {

MarkedTree tripod() {
  MarkedTree t;
  t.n = 3;
  t.internal_count = 1;
  t.edges = {{0, 3}, {1, 3}, {2, 3}};
  return t;
}

// leaves 1,2 on u; leaves 3,4 on v
MarkedTree two_vertex_tree() {
  MarkedTree t;
  t.n = 4;
  t.internal_count = 2;
  t.edges = {{0, 4}, {1, 4}, {4, 5}, {2, 5}, {3, 5}};
  return t;
}

// center c carries leaf 1 and joins two cherries u = {2,3}, v = {4,5}
MarkedTree double_cherry() {
  MarkedTree t;
  t.n = 5;
  t.internal_count = 3;
  t.edges = {{0, 5}, {5, 6}, {5, 7}, {1, 6}, {2, 6}, {3, 7}, {4, 7}};
  return t;
}

MarkedTree tree_by_code(int n, const std::string& code) {
  for (const MarkedTree& t : trees::enumerate_stable_trees(n))
    if (t.encode() == code) return t;
  throw std::runtime_error("tree not found: " + code);
}

}  // namespace

TEST_CASE("subtree weight") {
  RamificationDatum x = chambers::validate({3, -1, -1, -1});
  MarkedTree t = two_vertex_tree();
  // edge 2 separates {1,2} from {3,4}
  CHECK(subtree_weight(t, x, 2, 4) == 2);
  CHECK(subtree_weight(t, x, 2, 5) == -2);  // complementary side, opposite sign
  // leaf edges carry the leaf entry on the leaf side
  CHECK(subtree_weight(t, x, 0, 0) == 3);
  CHECK(subtree_weight(t, x, 1, 1) == -1);
  CHECK_THROWS_AS(subtree_weight(t, x, 2, 0), std::invalid_argument);
}

TEST_CASE("x-directing of the tripod") {
  RamificationDatum x = chambers::validate({2, -1, -1});
  DirectedMarkedTree d = x_directing(tripod(), x);
  // leaf-1 edge points in, the others point out
  for (size_t k = 0; k < d.tree.edges.size(); ++k) {
    auto [from, to] = d.oriented(k);
    if (from == 0 || to == 0) CHECK(from == 0);
    if (from == 1 || to == 1) CHECK(to == 1);
    if (from == 2 || to == 2) CHECK(to == 2);
  }
}

TEST_CASE("central directing points away from leaf 1") {
  RamificationDatum x = chambers::central_datum(5);
  for (const MarkedTree& t : trees::enumerate_stable_trees(5)) {
    DirectedMarkedTree d = x_directing(t, x);
    auto sides = t.edge_side_masks();
    for (size_t k = 0; k < t.edges.size(); ++k) {
      bool first_side_has_leaf1 = sides[k] & 1;
      CHECK(d.toward_second[k] == first_side_has_leaf1);
    }
  }
}

TEST_CASE("two data can direct one tree differently") {
  // some Gamma_{0,6} tree gets a different internal-edge orientation under a
  // non-central datum
  RamificationDatum central = chambers::central_datum(6);
  std::mt19937_64 rng(11);
  bool found = false;
  auto all = trees::enumerate_stable_trees(6);
  for (int attempt = 0; attempt < 400 && !found; ++attempt) {
    std::vector<long long> v(6);
    long long sum = 0;
    for (int i = 0; i < 5; ++i) {
      v[static_cast<size_t>(i)] = static_cast<long long>(rng() % 13) - 6;
      sum += v[static_cast<size_t>(i)];
    }
    v[5] = -sum;
    try {
      RamificationDatum y = chambers::validate(v);
      for (const MarkedTree& t : all) {
        if (x_directing(t, y).toward_second != x_directing(t, central).toward_second) {
          found = true;
          break;
        }
      }
    } catch (const DatumError&) {
    }
  }
  CHECK(found);
}

TEST_CASE("partial order") {
  RamificationDatum x = chambers::validate({2, -1, -1});
  VertexOrder ord = partial_order(x_directing(tripod(), x));
  CHECK(ord.leq(0, 3));
  CHECK(ord.leq(3, 1));
  CHECK(ord.leq(3, 2));
  CHECK(ord.leq(0, 1));
  CHECK_FALSE(ord.leq(1, 2));
  CHECK_FALSE(ord.leq(1, 0));

  // double cherry under the central datum: c below u and v, u and v
  // incomparable; antisymmetry everywhere
  RamificationDatum c5 = chambers::central_datum(5);
  VertexOrder ord2 = partial_order(x_directing(double_cherry(), c5));
  CHECK(ord2.leq(5, 6));
  CHECK(ord2.leq(5, 7));
  CHECK_FALSE(ord2.leq(6, 7));
  CHECK_FALSE(ord2.leq(7, 6));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      if (a != b && ord2.leq(a, b)) CHECK_FALSE(ord2.leq(b, a));
}

TEST_CASE("admissible partitions of the tripod") {
  RamificationDatum x = chambers::validate({2, -1, -1});
  auto parts = admissible_partitions(tripod(), x);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].blocks == std::vector<std::vector<int>>{{0}, {3}, {1, 2}});
}

TEST_CASE("admissible partitions of the two-vertex tree") {
  RamificationDatum x = chambers::central_datum(4);
  auto parts = admissible_partitions(two_vertex_tree(), x);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].length() == 4);
  CHECK(parts[0].blocks[1] == std::vector<int>{4});
  CHECK(parts[0].blocks[2] == std::vector<int>{5});
}

TEST_CASE("admissible partitions of the double cherry") {
  RamificationDatum x = chambers::central_datum(5);
  auto parts = admissible_partitions(double_cherry(), x);
  REQUIRE(parts.size() == 3);
  int length4 = 0, length5 = 0;
  for (const auto& p : parts) {
    if (p.length() == 4) {
      ++length4;
      std::vector<int> middle = p.blocks[2];
      std::sort(middle.begin(), middle.end());
      CHECK(middle == std::vector<int>{6, 7});
      CHECK(p.blocks[1] == std::vector<int>{5});
    } else {
      CHECK(p.length() == 5);
      ++length5;
      CHECK(p.blocks[1] == std::vector<int>{5});
    }
  }
  CHECK(length4 == 1);
  CHECK(length5 == 2);
}

TEST_CASE("class of the open moduli spaces") {
  CHECK(class_m0m(3) == GClass::one());
  CHECK(class_m0m(4) == GClass::from_coeffs({Int(-2), Int(1)}));
  CHECK(class_m0m(5) == GClass::from_coeffs({Int(-2), Int(1)}) * GClass::from_coeffs({Int(-3), Int(1)}));
  for (int m = 3; m <= 8; ++m) CHECK(class_m0m(m).eval(1) == open_moduli_euler(m));
}

TEST_CASE("stratum classes") {
  CHECK(stratum_class(tripod(), chambers::validate({2, -1, -1})) == GClass::one());

  // the star in Gamma_{0,4}
  MarkedTree star4 = tree_by_code(4, "");
  CHECK(stratum_class(star4, chambers::validate({3, -1, -1, -1})) ==
        GClass::from_coeffs({Int(-2), Int(1)}));

  // double cherry: 2 + (L-1) = L + 1
  CHECK(stratum_class(double_cherry(), chambers::central_datum(5)) ==
        GClass::from_coeffs({Int(1), Int(1)}));
}

TEST_CASE("total classes") {
  CHECK(total_class(chambers::validate({2, -1, -1})) == GClass::one());
  CHECK(total_class(chambers::validate({3, -1, -1, -1})) == GClass::from_coeffs({Int(1), Int(1)}));
  CHECK(total_class(chambers::validate({4, -1, -1, -1, -1})).eval(1) == 10);
  // threaded evaluation agrees with serial
  CHECK(total_class(chambers::central_datum(5), 4) == total_class(chambers::central_datum(5)));
}

TEST_CASE("euler characteristics") {
  CHECK(euler_char(chambers::validate({2, -1, -1})) == 1);
  CHECK(euler_char(chambers::validate({5, -1, -1, -1, -1, -1})) == 84);
  // both computation paths agree on sampled data
  std::mt19937_64 rng(12);
  for (int n = 3; n <= 6; ++n) {
    std::vector<RamificationDatum> data = {chambers::central_datum(n)};
    int guard = 0;
    while (data.size() < 4 && guard++ < 2000) {
      std::vector<long long> v(static_cast<size_t>(n));
      long long sum = 0;
      for (int i = 0; i + 1 < n; ++i) {
        v[static_cast<size_t>(i)] = static_cast<long long>(rng() % 13) - 6;
        sum += v[static_cast<size_t>(i)];
      }
      v[static_cast<size_t>(n - 1)] = -sum;
      try {
        data.push_back(chambers::validate(v));
      } catch (const DatumError&) {
      }
    }
    for (const auto& x : data) CHECK(total_class(x).eval(1) == euler_char(x));
  }
}

TEST_CASE("linear extensions") {
  // chain of comparable internal vertices
  CHECK(linear_extensions(x_directing(two_vertex_tree(), chambers::central_datum(4))) == 1);
  // double cherry: 2
  CHECK(linear_extensions(x_directing(double_cherry(), chambers::central_datum(5))) == 2);
}

TEST_CASE("linear extension DP against permutation brute force") {
  // all central directings with up to 5 internal vertices
  for (int n = 5; n <= 7; ++n) {
    RamificationDatum x = chambers::central_datum(n);
    for (const MarkedTree& t : trees::enumerate_stable_trees(n)) {
      DirectedMarkedTree d = x_directing(t, x);
      VertexOrder ord = partial_order(d);
      std::vector<std::uint32_t> below(static_cast<size_t>(t.internal_count), 0);
      for (int i = 0; i < t.internal_count; ++i)
        for (int j = 0; j < t.internal_count; ++j)
          if (i != j && ord.leq(t.n + j, t.n + i)) below[static_cast<size_t>(i)] |= 1u << j;
      CHECK(count_linear_extensions(below) == bruteforce::linear_extensions_by_permutations(below));
    }
  }
  // random posets with up to 8 elements
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    int m = 4 + static_cast<int>(rng() % 5);
    std::vector<std::uint32_t> below(static_cast<size_t>(m), 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < i; ++j)
        if (rng() % 3 == 0) below[static_cast<size_t>(i)] |= (1u << j) | below[static_cast<size_t>(j)];
    CHECK(count_linear_extensions(below) == bruteforce::linear_extensions_by_permutations(below));
  }
}

TEST_CASE("partition exponents stay in range") {
  std::mt19937_64 rng(14);
  for (int n = 4; n <= 6; ++n) {
    RamificationDatum x = chambers::central_datum(n);
    for (const MarkedTree& t : trees::enumerate_stable_trees(n)) {
      for (const auto& p : admissible_partitions(t, x)) {
        int e = t.internal_count - p.length() + 2;
        CHECK(e >= 0);
        CHECK(e <= std::max(t.internal_count - 1, 0));
      }
    }
  }
}
