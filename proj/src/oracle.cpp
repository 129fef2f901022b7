#include "rubber/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "rubber/recursion.hpp"
#include "rubber/strata.hpp"

namespace rubber::oracle {

using series::TruncatedSeries;

std::optional<std::vector<long long>> weight_function(const trees::MarkedTree& t,
                                                      const RamificationDatum& x,
                                                      const LevelAssignment& levels) {
  if (t.n != x.n()) throw std::invalid_argument("weight_function: tree/datum mismatch");
  if (static_cast<int>(levels.internal_level.size()) != t.internal_count)
    throw std::invalid_argument("weight_function: level assignment has wrong size");
  int r = levels.target_length;
  auto level_of = [&](int v) -> int {
    if (t.is_leaf(v)) return x.x[static_cast<size_t>(v)] > 0 ? 0 : r + 1;
    return levels.internal_level[static_cast<size_t>(v - t.n)];
  };
  auto sides = t.edge_side_masks();
  std::vector<long long> w(t.edges.size());
  for (size_t k = 0; k < t.edges.size(); ++k) {
    auto [u, v] = t.edges[k];
    int lu = level_of(u), lv = level_of(v);
    if (lu == lv) return std::nullopt;  // edges must map to edges
    // the weight flows from the lower level to the higher; it equals the
    // leaf weight of the lower component, which must be positive
    int lower = lu < lv ? u : v;
    long long sw = strata::subtree_weight(t, x, k, lower);
    if (sw <= 0) return std::nullopt;
    w[k] = sw;
  }
  return w;
}

namespace {

CombinatorialType build_type(const trees::MarkedTree& t, const RamificationDatum& x,
                             const LevelAssignment& levels, const std::vector<long long>& w) {
  int r = levels.target_length;
  auto level_of = [&](int v) -> int {
    if (t.is_leaf(v)) return x.x[static_cast<size_t>(v)] > 0 ? 0 : r + 1;
    return levels.internal_level[static_cast<size_t>(v - t.n)];
  };
  CombinatorialType ct;
  ct.target_length = r;
  ct.source.n = t.n;
  ct.source.vertex_count = t.vertex_count();
  ct.level.resize(static_cast<size_t>(t.vertex_count()));
  for (int v = 0; v < t.vertex_count(); ++v) ct.level[static_cast<size_t>(v)] = level_of(v);
  for (size_t k = 0; k < t.edges.size(); ++k) {
    auto [u, v] = t.edges[k];
    int lu = level_of(u), lv = level_of(v);
    int lo_v = lu < lv ? u : v, hi_v = lu < lv ? v : u;
    int lo = std::min(lu, lv), hi = std::max(lu, lv);
    int prev = lo_v;
    for (int lvl = lo + 1; lvl < hi; ++lvl) {
      int mid = ct.source.vertex_count++;
      ct.level.push_back(lvl);
      ct.source.edges.emplace_back(prev, mid);
      ct.weights.push_back(w[k]);
      prev = mid;
    }
    ct.source.edges.emplace_back(prev, hi_v);
    ct.weights.push_back(w[k]);
  }
  return ct;
}

}  // namespace

std::vector<CombinatorialType> enumerate_combinatorial_types(const trees::MarkedTree& t,
                                                             const RamificationDatum& x) {
  int m = t.internal_count;
  std::vector<CombinatorialType> out;
  for (int r = 1; r <= m; ++r) {
    std::vector<int> assign(static_cast<size_t>(m), 1);
    while (true) {
      // surjectivity onto 1..r (stability of the tree map)
      std::vector<bool> hit(static_cast<size_t>(r) + 1, false);
      for (int a : assign) hit[static_cast<size_t>(a)] = true;
      bool surj = true;
      for (int l = 1; l <= r; ++l) surj &= hit[static_cast<size_t>(l)];
      if (surj) {
        LevelAssignment la{r, assign};
        if (auto w = weight_function(t, x, la)) out.push_back(build_type(t, x, la, *w));
      }
      int i = 0;
      while (i < m && assign[static_cast<size_t>(i)] == r) assign[static_cast<size_t>(i++)] = 1;
      if (i == m) break;
      ++assign[static_cast<size_t>(i)];
    }
  }
  return out;
}

bool local_calc_check(const CombinatorialType& ct) {
  const trees::RawTree& s = ct.source;
  std::vector<std::vector<std::pair<int, size_t>>> adj(static_cast<size_t>(s.vertex_count));
  for (size_t k = 0; k < s.edges.size(); ++k) {
    auto [u, v] = s.edges[k];
    adj[static_cast<size_t>(u)].emplace_back(v, k);
    adj[static_cast<size_t>(v)].emplace_back(u, k);
  }
  // leaf weight of the component of source \ {cut} containing `start`
  auto component_leaf_weight = [&](int start, size_t cut) -> long long {
    long long sum = 0;
    std::vector<bool> seen(static_cast<size_t>(s.vertex_count), false);
    std::vector<int> stack = {start};
    seen[static_cast<size_t>(start)] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [z, k] : adj[static_cast<size_t>(v)]) {
        if (k == cut || seen[static_cast<size_t>(z)]) continue;
        seen[static_cast<size_t>(z)] = true;
        stack.push_back(z);
      }
    }
    for (int i = 0; i < s.n; ++i) {
      // recover x_i from the end weight and the level of the adjacent vertex
      if (!seen[static_cast<size_t>(i)]) continue;
      long long aw = 0;
      for (auto [z, k] : adj[static_cast<size_t>(i)]) {
        (void)z;
        aw = ct.weights[k];
      }
      sum += ct.level[static_cast<size_t>(i)] == 0 ? aw : -aw;
    }
    return sum;
  };
  for (int v = s.n; v < s.vertex_count; ++v) {
    for (auto [z, cut] : adj[static_cast<size_t>(v)]) {
      if (z < s.n) continue;  // internal edges only
      long long lhs = component_leaf_weight(v, cut);
      long long rhs = 0;
      for (auto [z2, k] : adj[static_cast<size_t>(v)]) {
        if (k == cut) continue;
        if (ct.level[static_cast<size_t>(z2)] < ct.level[static_cast<size_t>(v)])
          rhs += ct.weights[k];
        else
          rhs -= ct.weights[k];
      }
      if (lhs != rhs) return false;
    }
  }
  return true;
}

GClass class_sum_over_types(const trees::MarkedTree& t, const RamificationDatum& x) {
  auto val = t.valences();
  GClass vertex_factor = GClass::one();
  for (int v = t.n; v < t.vertex_count(); ++v)
    vertex_factor = vertex_factor * strata::class_m0m(val[static_cast<size_t>(v)]);
  GClass punctured_line = GClass::from_coeffs({Int(-1), Int(1)});
  GClass acc;
  for (const CombinatorialType& ct : enumerate_combinatorial_types(t, x)) {
    int exponent = 0;
    for (int lvl = 1; lvl <= ct.target_length; ++lvl) {
      int stable_preimages = 0;
      for (int v = t.n; v < t.vertex_count(); ++v)
        if (ct.level[static_cast<size_t>(v)] == lvl) ++stable_preimages;
      exponent += stable_preimages - 1;
    }
    acc += punctured_line.pow(exponent);
  }
  return vertex_factor * acc;
}

namespace {

Rat ribbon_contribution(const trees::RibbonTree& t) {
  trees::RibbonStats st = trees::ribbon_stats(t);
  Int o = strata::count_linear_extensions(t.internal_ancestor_masks());
  return st.a_t * Rat(o);
}

}  // namespace

TruncatedSeries rrt_nu(int m, int order) {
  TruncatedSeries acc(order);
  for (const trees::RibbonTree& t : trees::enumerate_rrt(m, order)) {
    int deg = t.leaf_count();
    acc.set_coeff(deg, acc.coeff(deg) + ribbon_contribution(t));
  }
  return acc;
}

bool cake_check(int m, int order) {
  if (m < 2) throw std::invalid_argument("cake_check: need m >= 2");
  TruncatedSeries lhs = rrt_nu(m, order);

  // per-grade ribbon trees with their contributions
  std::vector<std::vector<std::pair<Rat, int>>> graded(static_cast<size_t>(m));
  for (int i = 1; i <= m - 1; ++i)
    for (const trees::RibbonTree& t : trees::enumerate_rrt(i, order))
      graded[static_cast<size_t>(i)].emplace_back(ribbon_contribution(t), t.leaf_count());

  TruncatedSeries rhs(order);
  for (int j = 1; j <= m - 1; ++j) {
    TruncatedSeries bucket(order);
    for (const auto& lambda : series::partition_multiplicities(m - 1, j)) {
      // multinomial (m-1)! / prod (i!)^lambda_i
      Rat mult(factorial(static_cast<unsigned>(m - 1)));
      std::vector<int> grades;
      for (int i = 1; i <= m - 1; ++i) {
        for (int c = 0; c < lambda[static_cast<size_t>(i)]; ++c) grades.push_back(i);
        if (lambda[static_cast<size_t>(i)] > 0) {
          Int f = factorial(static_cast<unsigned>(i));
          Int fp;
          mpz_pow_ui(fp.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned>(lambda[static_cast<size_t>(i)]));
          mult /= Rat(fp);
        }
      }
      // sum over ordered tuples: every multiset permutation of the grades,
      // then an independent tree choice per slot
      std::sort(grades.begin(), grades.end());
      TruncatedSeries tuple_sum(order);
      do {
        auto rec = [&](auto&& self, size_t slot, Rat prod, int degsum) -> void {
          if (degsum > order) return;
          if (slot == grades.size()) {
            tuple_sum.set_coeff(degsum, tuple_sum.coeff(degsum) + prod);
            return;
          }
          for (const auto& [contr, deg] : graded[static_cast<size_t>(grades[slot])])
            self(self, slot + 1, prod * contr, degsum + deg);
        };
        rec(rec, 0, Rat(1), 0);
      } while (std::next_permutation(grades.begin(), grades.end()));
      bucket = bucket + (mult / Rat(factorial(static_cast<unsigned>(j)))) * tuple_sum;
    }
    rhs = rhs + recursion::nu1_derivative(j, order) * bucket;
  }
  return lhs == rhs;
}

}  // namespace rubber::oracle
