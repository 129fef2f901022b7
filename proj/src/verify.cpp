#include "rubber/verify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rubber/chambers.hpp"
#include "rubber/oracle.hpp"
#include "rubber/recursion.hpp"
#include "rubber/strata.hpp"

namespace rubber::verify {

namespace {

// Table of reference Euler characteristics for 2 <= n <= 19, used as the
// regression target of the generating-function recursion.
const char* kReferenceChi[] = {
    "1", "2", "10", "84", "1108", "20824", "530528", "17578464", "734772384",
    "37814132256", "2349344349504", "173367352211520", "14989230432337536",
    "1500796146336385152", "172277450643084049920", "22474724472542045216256",
    "3306538057482623252067840", "544879611875655894561850368"};

void record(std::vector<CheckResult>& out, const std::string& name, bool pass,
            const std::string& detail = "") {
  out.push_back({name, pass, detail});
}

}  // namespace

std::vector<RamificationDatum> sample_data(int n, int count, std::mt19937_64& rng) {
  std::vector<RamificationDatum> out;
  int guard = 0;
  while (static_cast<int>(out.size()) < count && guard++ < 20000) {
    std::vector<long long> v(static_cast<size_t>(n));
    long long sum = 0;
    for (int i = 0; i + 1 < n; ++i) {
      long long e = static_cast<long long>(rng() % 17) - 8;
      v[static_cast<size_t>(i)] = e;
      sum += e;
    }
    v[static_cast<size_t>(n - 1)] = -sum;
    try {
      out.push_back(chambers::validate(v));
    } catch (const DatumError&) {
    }
  }
  return out;
}

std::vector<RamificationDatum> sample_chambers(int n, int count, std::mt19937_64& rng) {
  std::vector<RamificationDatum> out;
  std::set<std::vector<bool>> seen;
  int guard = 0;
  while (static_cast<int>(out.size()) < count && guard++ < 40000) {
    auto cands = sample_data(n, 1, rng);
    if (cands.empty()) continue;
    auto sig = chambers::signature(cands[0]);
    if (seen.insert(sig.positive).second) out.push_back(std::move(cands[0]));
  }
  return out;
}

std::vector<RamificationDatum> same_chamber_samples(const RamificationDatum& base, int count,
                                                    std::mt19937_64& rng) {
  std::vector<RamificationDatum> out = {base};
  std::set<std::vector<long long>> seen = {base.x};
  int n = base.n();
  int guard = 0;
  while (static_cast<int>(out.size()) < count && guard++ < 20000) {
    std::vector<long long> v = out[rng() % out.size()].x;
    if (rng() % 3 == 0) {
      long long s = 2 + static_cast<long long>(rng() % 3);
      for (auto& e : v) e *= s;
    } else {
      int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
      if (i == j) continue;
      v[static_cast<size_t>(i)] += 1;
      v[static_cast<size_t>(j)] -= 1;
    }
    if (seen.count(v)) continue;
    try {
      RamificationDatum d = chambers::validate(v);
      if (chambers::same_chamber(base, d)) {
        seen.insert(v);
        out.push_back(std::move(d));
      }
    } catch (const DatumError&) {
    }
  }
  return out;
}

std::vector<CheckResult> verify_recursion(int max_n) {
  std::vector<CheckResult> out;
  int table_n = 19;
  recursion::EulerTable table = recursion::chi_table(table_n, recursion::kDefaultOrder);

  bool match = true;
  for (int n = 2; n <= table_n; ++n)
    match &= table.row_sum(n) == Int(kReferenceChi[n - 2]);
  record(out, "recursion/table-values", match, "rows 2..19 against reference");

  bool first_column = true;
  for (int n = 2; n <= table_n; ++n) {
    Int expected = factorial(static_cast<unsigned>(n - 2));
    if (n % 2 == 1) expected = -expected;
    first_column &= table.entry(n, 1) == expected;
  }
  record(out, "recursion/one-component-column", first_column, "(-1)^n (n-2)!");

  recursion::NuFamily family = recursion::NuFamily::compute(6, 10);
  bool vanishing = true;
  for (int m = 2; m <= 6; ++m)
    for (int n = 0; n <= std::min(10, m); ++n) vanishing &= family.nu(m).coeff(n) == 0;
  record(out, "recursion/low-order-vanishing", vanishing, "[t^n] nu_m = 0 for n <= m");

  bool pde = true;
  for (const auto& r : recursion::pde_residual(5, 10)) pde &= r.is_zero();
  for (const auto& r : recursion::pde_residual(10, 19)) pde &= r.is_zero();
  record(out, "recursion/pde-residual", pde, "s-degrees 5 and 10, t-orders 10 and 19");

  bool cross = true;
  for (int n = 2; n <= std::min(max_n, 8); ++n) {
    Rat coeff = recursion::chi_mbar0_series(std::max(n, 2)).coeff(n);
    Int direct = recursion::chi_mbar0(n);
    cross &= Rat(factorial(static_cast<unsigned>(n))) * coeff == Rat(direct);
  }
  record(out, "recursion/compactified-cross-check", cross, "tree sum vs fixed-point series");
  return out;
}

namespace {

// Literal re-check of the three partition conditions on an emitted
// partition, straight from the definition.
bool partition_conditions_hold(const strata::OrderedPartition& p, const strata::VertexOrder& ord) {
  int len = p.length();
  auto in_block = [&](int b, int v) {
    const auto& blk = p.blocks[static_cast<size_t>(b)];
    return std::find(blk.begin(), blk.end(), v) != blk.end();
  };
  (void)in_block;
  for (int b = 0; b < len; ++b) {
    const auto& blk = p.blocks[static_cast<size_t>(b)];
    if (blk.empty()) return false;
    for (size_t i = 0; i < blk.size(); ++i)
      for (size_t j = i + 1; j < blk.size(); ++j)
        if (ord.comparable(blk[i], blk[j])) return false;  // condition (1)
  }
  for (int b1 = 0; b1 < len; ++b1)
    for (int b2 = b1 + 1; b2 < len; ++b2)
      for (int a : p.blocks[static_cast<size_t>(b1)])
        for (int b : p.blocks[static_cast<size_t>(b2)])
          if (ord.leq(b, a)) return false;  // condition (2)
  for (int b = 1; b + 1 < len; ++b) {
    for (int a : p.blocks[static_cast<size_t>(b)]) {
      bool pred = false, succ = false;
      for (int b2 = 0; b2 < b; ++b2)
        for (int c : p.blocks[static_cast<size_t>(b2)]) pred |= ord.leq(c, a);
      for (int b2 = b + 1; b2 < len; ++b2)
        for (int c : p.blocks[static_cast<size_t>(b2)]) succ |= ord.leq(a, c);
      if (!pred || !succ) return false;  // condition (3)
    }
  }
  return true;
}

}  // namespace

std::vector<CheckResult> verify_strata(int max_n) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(20240917);

  bool conditions = true, exponents = true;
  for (int n = 3; n <= max_n; ++n) {
    std::vector<RamificationDatum> data = {chambers::central_datum(n)};
    auto extra = sample_data(n, 2, rng);
    data.insert(data.end(), extra.begin(), extra.end());
    for (const auto& t : trees::enumerate_stable_trees(n)) {
      for (const auto& x : data) {
        auto ord = strata::partial_order(strata::x_directing(t, x));
        for (const auto& p : strata::admissible_partitions(t, x)) {
          conditions &= partition_conditions_hold(p, ord);
          int exponent = t.internal_count - p.length() + 2;
          exponents &= exponent >= 0 && exponent <= std::max(t.internal_count - 1, 0);
        }
      }
    }
  }
  record(out, "strata/partition-conditions", conditions, "structural re-check on output");
  record(out, "strata/exponent-bound", exponents, "0 <= |I|-len+2 <= |I|-1");

  bool chamber_classes = true, directings = true;
  for (int n = 4; n <= max_n; ++n) {
    for (const auto& base : sample_chambers(n, 2, rng)) {
      auto reps = same_chamber_samples(base, 3, rng);
      GClass ref = strata::total_class(reps[0]);
      auto all = trees::enumerate_stable_trees(n);
      for (size_t i = 1; i < reps.size(); ++i) {
        chamber_classes &= strata::total_class(reps[i]) == ref;
        for (const auto& t : all)
          directings &= strata::x_directing(t, reps[i]).toward_second ==
                        strata::x_directing(t, reps[0]).toward_second;
      }
    }
  }
  record(out, "strata/chamber-invariance", chamber_classes, "total_class constant per chamber");
  record(out, "strata/directing-invariance", directings, "x_directing constant per chamber");

  recursion::EulerTable table = recursion::chi_table(std::max(2, max_n - 1), recursion::kDefaultOrder);
  bool central = true;
  for (int row = 2; row <= max_n - 1; ++row)
    central &= strata::euler_char(chambers::central_datum(row + 1)) == table.row_sum(row);
  record(out, "strata/central-agreement", central, "euler_char vs chi_table");

  bool eval_match = true;
  for (int n = 3; n <= max_n; ++n) {
    auto data = sample_data(n, 2, rng);
    data.push_back(chambers::central_datum(n));
    for (const auto& x : data)
      eval_match &= strata::total_class(x).eval(1) == strata::euler_char(x);
  }
  record(out, "strata/class-euler-agreement", eval_match, "eval at L=1 vs linear-extension path");
  return out;
}

std::vector<CheckResult> verify_chambers(int max_n) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(57431);

  bool sig_ok = true;
  for (int n = 3; n <= max_n; ++n)
    for (const auto& x : sample_data(n, 5, rng))
      sig_ok &= static_cast<int>(chambers::signature(x).positive.size()) == (1 << (n - 1)) - 1;
  record(out, "chambers/signature-total", sig_ok, "all walls signed");

  bool equiv = true;
  for (int n = 3; n <= max_n; ++n) {
    auto data = sample_data(n, 4, rng);
    for (const auto& x : data) equiv &= chambers::same_chamber(x, x);
    for (const auto& x : data)
      for (const auto& y : data) equiv &= chambers::same_chamber(x, y) == chambers::same_chamber(y, x);
  }
  record(out, "chambers/equivalence", equiv, "reflexive and symmetric");

  bool classes = true;
  for (int n = 4; n <= max_n; ++n) {
    for (const auto& base : sample_chambers(n, 2, rng)) {
      auto reps = same_chamber_samples(base, 3, rng);
      GClass ref = strata::total_class(reps[0]);
      for (size_t i = 1; i < reps.size(); ++i) classes &= strata::total_class(reps[i]) == ref;
    }
  }
  record(out, "chambers/same-chamber-classes", classes, "sampled pairs up to n=6");

  // the first two ratios tie at 1 (both Euler columns open with 1, 2); the
  // decrease is strict from n = 3 on
  auto ratios = chambers::ratio_trend(19);
  bool decreasing = ratios.size() == 18 && ratios[0] == 1 && ratios[1] == 1;
  for (size_t i = 2; i < ratios.size(); ++i) decreasing &= ratios[i] < ratios[i - 1];
  record(out, "chambers/ratio-trend-decreasing", decreasing, "ties at n = 2, 3, then strict");
  return out;
}

std::vector<CheckResult> verify_oracle(int max_n) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(99251);

  bool counts = true;
  for (int n = 3; n <= max_n; ++n) {
    std::vector<RamificationDatum> data = {chambers::central_datum(n)};
    auto extra = sample_data(n, 3, rng);
    data.insert(data.end(), extra.begin(), extra.end());
    for (const auto& t : trees::enumerate_stable_trees(n))
      for (const auto& x : data)
        counts &= oracle::enumerate_combinatorial_types(t, x).size() ==
                  strata::admissible_partitions(t, x).size();
  }
  record(out, "oracle/type-partition-bijection", counts, "|C_x(T)| = |P_x(T)|");

  bool classes = true;
  for (int n = 3; n <= std::min(max_n, 5); ++n) {
    std::vector<RamificationDatum> data = {chambers::central_datum(n)};
    auto extra = sample_data(n, 2, rng);
    data.insert(data.end(), extra.begin(), extra.end());
    for (const auto& t : trees::enumerate_stable_trees(n))
      for (const auto& x : data)
        classes &= oracle::class_sum_over_types(t, x) == strata::stratum_class(t, x);
  }
  record(out, "oracle/class-equivalence", classes, "type sum vs stratum class, n <= 5");

  bool local = true;
  for (int n = 3; n <= std::min(max_n, 5); ++n) {
    auto data = sample_data(n, 2, rng);
    data.push_back(chambers::central_datum(n));
    for (const auto& t : trees::enumerate_stable_trees(n))
      for (const auto& x : data)
        for (const auto& ct : oracle::enumerate_combinatorial_types(t, x))
          local &= oracle::local_calc_check(ct);
  }
  record(out, "oracle/local-weight-identity", local, "all enumerated types, n <= 5");

  recursion::NuFamily family = recursion::NuFamily::compute(4, 10);
  bool ribbon = true;
  ribbon &= oracle::rrt_nu(1, 10) == family.nu(1);
  for (int m = 2; m <= 4; ++m) ribbon &= oracle::rrt_nu(m, 10) == family.nu(m);
  record(out, "oracle/ribbon-sum", ribbon, "rrt_nu = nu_m for m <= 4");

  bool cake = oracle::cake_check(2, 8) && oracle::cake_check(3, 8);
  record(out, "oracle/decomposition-identity", cake, "m = 2, 3 at order 8");
  return out;
}

std::vector<CheckResult> verify_all(int max_n) {
  std::vector<CheckResult> out;
  for (auto&& r : verify_recursion(max_n)) out.push_back(std::move(r));
  for (auto&& r : verify_strata(max_n)) out.push_back(std::move(r));
  for (auto&& r : verify_chambers(max_n)) out.push_back(std::move(r));
  for (auto&& r : verify_oracle(max_n)) out.push_back(std::move(r));
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace rubber::verify
