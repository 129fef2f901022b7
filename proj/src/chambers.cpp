#include "rubber/chambers.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "rubber/recursion.hpp"
#include "rubber/strata.hpp"

namespace rubber::chambers {

RamificationDatum validate(const std::vector<long long>& x) {
  int n = static_cast<int>(x.size());
  if (n < 3)
    throw DatumError(DatumErrorKind::TooFewEntries, "ramification datum needs at least 3 entries");
  if (n > 24)
    throw DatumError(DatumErrorKind::BoundExceeded, "subset-sum validation supports at most 24 entries");
  long long total = 0;
  for (int i = 0; i < n; ++i) {
    if (x[static_cast<size_t>(i)] == 0)
      throw DatumError(DatumErrorKind::ZeroEntry, "entry " + std::to_string(i + 1) + " is zero",
                       {i + 1});
    total += x[static_cast<size_t>(i)];
  }
  if (total != 0)
    throw DatumError(DatumErrorKind::NonzeroTotal,
                     "entries sum to " + std::to_string(total) + ", expected 0");
  // proper nonempty subsets; those containing coordinate 1 cover all cases
  // since the complement sums to the negative
  std::uint32_t limit = std::uint32_t{1} << (n - 1);
  for (std::uint32_t s = 0; s + 1 < limit; ++s) {
    std::uint32_t mask = (s << 1) | 1;
    long long sum = 0;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) sum += x[static_cast<size_t>(i)];
    if (sum == 0) {
      std::vector<int> witness;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) witness.push_back(i + 1);
      throw DatumError(DatumErrorKind::VanishingSubsetSum, "subset sums to zero", witness);
    }
  }
  return RamificationDatum{x};
}

RamificationDatum central_datum(int len) {
  if (len < 3) throw std::invalid_argument("central_datum: length must be >= 3");
  std::vector<long long> x(static_cast<size_t>(len), -1);
  x[0] = len - 1;
  return validate(x);
}

std::vector<std::uint32_t> canonical_subsets(int n) {
  std::vector<std::uint32_t> out;
  std::uint32_t limit = std::uint32_t{1} << (n - 1);
  out.reserve(limit - 1);
  for (std::uint32_t s = 0; s + 1 < limit; ++s) out.push_back((s << 1) | 1);
  return out;
}

ChamberSignature signature(const RamificationDatum& x, int bound) {
  if (x.n() > bound) throw std::invalid_argument("signature: bound exceeded");
  ChamberSignature sig;
  sig.n = x.n();
  for (std::uint32_t mask : canonical_subsets(x.n())) {
    long long sum = 0;
    for (int i = 0; i < x.n(); ++i)
      if (mask >> i & 1) sum += x.x[static_cast<size_t>(i)];
    if (sum == 0) throw std::logic_error("signature: zero subset sum on validated datum");
    sig.positive.push_back(sum > 0);
  }
  return sig;
}

bool same_chamber(const RamificationDatum& x, const RamificationDatum& y, int bound) {
  if (x.n() != y.n()) throw std::invalid_argument("same_chamber: data of different lengths");
  if (x.n() > bound) throw std::invalid_argument("same_chamber: bound exceeded");
  for (std::uint32_t mask : canonical_subsets(x.n())) {
    long long sx = 0, sy = 0;
    for (int i = 0; i < x.n(); ++i) {
      if (mask >> i & 1) {
        sx += x.x[static_cast<size_t>(i)];
        sy += y.x[static_cast<size_t>(i)];
      }
    }
    if ((sx > 0) != (sy > 0)) return false;  // first differing wall
  }
  return true;
}

std::uint32_t WallSpec::mask() const {
  std::uint32_t m = 0;
  for (int i : subset) m |= std::uint32_t{1} << (i - 1);
  return m;
}

WallSpec make_wall(std::vector<int> subset_1based, int n) {
  std::sort(subset_1based.begin(), subset_1based.end());
  if (subset_1based.empty() || static_cast<int>(subset_1based.size()) >= n)
    throw std::invalid_argument("wall subset must be proper and nonempty");
  for (int i : subset_1based)
    if (i < 1 || i > n) throw std::invalid_argument("wall subset index out of range");
  if (subset_1based.front() != 1) {
    // replace by the complement so the subset contains coordinate 1
    std::vector<int> comp;
    size_t p = 0;
    for (int i = 1; i <= n; ++i) {
      if (p < subset_1based.size() && subset_1based[p] == i)
        ++p;
      else
        comp.push_back(i);
    }
    subset_1based = std::move(comp);
  }
  return WallSpec{std::move(subset_1based)};
}

std::optional<WallSample> sample_across_wall(const WallSpec& wall, const RamificationDatum& base,
                                             std::uint64_t seed, int budget) {
  int n = base.n();
  std::uint32_t wall_mask = wall.mask();
  if (wall_mask == 0 || wall_mask == (std::uint32_t{1} << n) - 1)
    throw std::invalid_argument("sample_across_wall: subset must be proper and nonempty");
  std::vector<int> in_s, out_s;
  for (int i = 0; i < n; ++i) (wall_mask >> i & 1 ? in_s : out_s).push_back(i);

  auto subset_index = [&](std::uint32_t mask) -> size_t {
    auto subs = canonical_subsets(n);
    auto it = std::find(subs.begin(), subs.end(), mask);
    return static_cast<size_t>(it - subs.begin());
  };
  size_t wall_pos = subset_index(wall_mask);

  std::mt19937_64 rng(seed);
  for (int attempt = 1; attempt <= budget; ++attempt) {
    // a base-flavored random point, then pushed along the wall normal until
    // the subset sum is +1, so the later hop of 2 crosses only this wall
    // when every other margin is wide enough
    long long scale = 1 + static_cast<long long>(rng() % 6);
    std::vector<long long> a(base.x);
    long long drift = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      long long noise = static_cast<long long>(rng() % 9) - 4;
      a[i] = a[i] * scale + noise;
      drift += noise;
    }
    a[rng() % a.size()] -= drift;
    long long sigma = 0;
    for (int i : in_s) sigma += a[static_cast<size_t>(i)];
    int j = in_s[rng() % in_s.size()];
    int k = out_s[rng() % out_s.size()];
    a[static_cast<size_t>(j)] -= sigma - 1;
    a[static_cast<size_t>(k)] += sigma - 1;
    std::vector<long long> b(a);
    int j2 = in_s[rng() % in_s.size()];
    int k2 = out_s[rng() % out_s.size()];
    b[static_cast<size_t>(j2)] -= 2;
    b[static_cast<size_t>(k2)] += 2;
    try {
      RamificationDatum da = validate(a);
      RamificationDatum db = validate(b);
      ChamberSignature sa = signature(da);
      ChamberSignature sb = signature(db);
      size_t diffs = 0;
      for (size_t i = 0; i < sa.positive.size(); ++i)
        if (sa.positive[i] != sb.positive[i]) ++diffs;
      if (diffs != 1 || sa.positive[wall_pos] == sb.positive[wall_pos]) continue;
      WallSample ws;
      ws.attempts = attempt;
      if (sa.positive[wall_pos]) {
        ws.positive_side = std::move(da);
        ws.negative_side = std::move(db);
      } else {
        ws.positive_side = std::move(db);
        ws.negative_side = std::move(da);
      }
      return ws;
    } catch (const DatumError&) {
      continue;
    }
  }
  return std::nullopt;
}

GClass wallcross(const RamificationDatum& x, const RamificationDatum& y, int tree_bound) {
  if (x.n() != y.n()) throw std::invalid_argument("wallcross: data of different lengths");
  int n = x.n();
  ChamberSignature sx = signature(x), sy = signature(y);
  auto subsets = canonical_subsets(n);
  std::set<std::uint32_t> changed;
  for (size_t i = 0; i < subsets.size(); ++i)
    if (sx.positive[i] != sy.positive[i]) changed.insert(subsets[i]);
  if (changed.empty()) return {};  // identical directings on every tree
  // Only trees with an edge split across a changed wall can have different
  // directings, hence different strata classes.
  trees::LeafMask full = (trees::LeafMask{1} << n) - 1;
  GClass acc;
  trees::for_each_stable_tree(
      n,
      [&](const trees::MarkedTree& t) {
        bool affected = false;
        for (trees::LeafMask side : t.edge_side_masks()) {
          trees::LeafMask canon = (side & 1) ? side : (full ^ side);
          if (changed.count(canon)) {
            affected = true;
            break;
          }
        }
        if (!affected) return;
        acc += strata::stratum_class(t, x) - strata::stratum_class(t, y);
      },
      tree_bound);
  return acc;
}

std::vector<Rat> ratio_trend(int n_max) {
  if (n_max < 2) throw std::invalid_argument("ratio_trend: need n_max >= 2");
  recursion::EulerTable table = recursion::chi_table(n_max, std::max(n_max, 2));
  series::TruncatedSeries mu = recursion::chi_mbar0_series(n_max);
  std::vector<Rat> out;
  for (int n = 2; n <= n_max; ++n) {
    Rat top = Rat(factorial(static_cast<unsigned>(n))) * mu.coeff(n);
    out.push_back(top / Rat(table.row_sum(n)));
  }
  return out;
}

}  // namespace rubber::chambers
