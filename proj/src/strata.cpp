#include "rubber/strata.hpp"

#include <stdexcept>
#include <thread>

namespace rubber::strata {

namespace {

long long mask_weight(trees::LeafMask m, const RamificationDatum& x) {
  long long s = 0;
  for (int i = 0; i < x.n(); ++i)
    if (m >> i & 1) s += x.x[static_cast<size_t>(i)];
  return s;
}

void check_datum(const trees::MarkedTree& t, const RamificationDatum& x) {
  if (t.n != x.n()) throw std::invalid_argument("tree and datum have different numbers of leaves");
}

}  // namespace

long long subtree_weight(const trees::MarkedTree& t, const RamificationDatum& x, size_t k,
                         int side_vertex) {
  check_datum(t, x);
  auto sides = t.edge_side_masks();
  if (k >= t.edges.size()) throw std::invalid_argument("subtree_weight: bad edge index");
  auto [u, v] = t.edges[k];
  trees::LeafMask full = (trees::LeafMask{1} << t.n) - 1;
  trees::LeafMask m;
  if (side_vertex == u)
    m = sides[k];
  else if (side_vertex == v)
    m = full ^ sides[k];
  else
    throw std::invalid_argument("subtree_weight: vertex is not an endpoint of the edge");
  return mask_weight(m, x);
}

DirectedMarkedTree x_directing(const trees::MarkedTree& t, const RamificationDatum& x) {
  check_datum(t, x);
  auto sides = t.edge_side_masks();
  DirectedMarkedTree d;
  d.tree = t;
  d.toward_second.resize(t.edges.size());
  for (size_t k = 0; k < t.edges.size(); ++k) {
    long long w = mask_weight(sides[k], x);
    if (w == 0) throw std::invalid_argument("x_directing: datum lies on a wall of the tree");
    // away from the positive side: first -> second iff the first side is positive
    d.toward_second[k] = w > 0;
  }
  return d;
}

VertexOrder partial_order(const DirectedMarkedTree& d) {
  int V = d.tree.vertex_count();
  if (V > 31) throw std::invalid_argument("partial_order: too many vertices");
  std::vector<std::vector<int>> succ(static_cast<size_t>(V));
  for (size_t k = 0; k < d.tree.edges.size(); ++k) {
    auto [from, to] = d.oriented(k);
    succ[static_cast<size_t>(from)].push_back(to);
  }
  VertexOrder ord;
  ord.reach.assign(static_cast<size_t>(V), 0);
  auto dfs = [&](auto&& self, int v) -> std::uint32_t {
    std::uint32_t& r = ord.reach[static_cast<size_t>(v)];
    if (r) return r;
    std::uint32_t acc = std::uint32_t{1} << v;
    for (int w : succ[static_cast<size_t>(v)]) acc |= self(self, w);
    r = acc;
    return r;
  };
  for (int v = 0; v < V; ++v) dfs(dfs, v);
  return ord;
}

namespace {

struct InternalPoset {
  int m = 0;
  std::vector<std::uint32_t> below;  // strict predecessors among internal vertices
};

InternalPoset internal_poset(const DirectedMarkedTree& d) {
  VertexOrder ord = partial_order(d);
  int n = d.tree.n;
  InternalPoset p;
  p.m = d.tree.internal_count;
  p.below.assign(static_cast<size_t>(p.m), 0);
  for (int i = 0; i < p.m; ++i)
    for (int j = 0; j < p.m; ++j)
      if (i != j && ord.leq(n + j, n + i)) p.below[static_cast<size_t>(i)] |= std::uint32_t{1} << j;
  return p;
}

// Enumerate ordered partitions of the internal poset into blocks of
// currently-minimal elements. Together with the fixed leaf blocks these are
// exactly the admissible ordered partitions: a block of minimal elements is
// an antichain, placing only minimal elements keeps the order weakly
// respected, and the sandwich condition is automatic because no internal
// vertex is a source or a sink of the directing (its incident edge weights
// would otherwise sum with one sign, contradicting the zero total).
void enumerate_middle_blocks(const InternalPoset& p,
                             const std::function<void(std::span<const std::uint32_t>)>& fn) {
  std::uint32_t full = p.m == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << p.m) - 1;
  std::vector<std::uint32_t> blocks;
  auto rec = [&](auto&& self, std::uint32_t placed) -> void {
    if (placed == full) {
      fn(blocks);
      return;
    }
    std::uint32_t avail = full ^ placed;
    std::uint32_t minimals = 0;
    for (int i = 0; i < p.m; ++i)
      if ((avail >> i & 1) && (p.below[static_cast<size_t>(i)] & avail) == 0)
        minimals |= std::uint32_t{1} << i;
    for (std::uint32_t s = minimals; s; s = (s - 1) & minimals) {
      blocks.push_back(s);
      self(self, placed | s);
      blocks.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

void for_each_admissible_partition(const trees::MarkedTree& t, const RamificationDatum& x,
                                   const std::function<void(std::span<const std::uint32_t>)>& fn) {
  DirectedMarkedTree d = x_directing(t, x);
  enumerate_middle_blocks(internal_poset(d), fn);
}

std::vector<OrderedPartition> admissible_partitions(const trees::MarkedTree& t,
                                                    const RamificationDatum& x) {
  std::vector<int> positive, negative;
  for (int i = 0; i < x.n(); ++i) (x.x[static_cast<size_t>(i)] > 0 ? positive : negative).push_back(i);
  std::vector<OrderedPartition> out;
  for_each_admissible_partition(t, x, [&](std::span<const std::uint32_t> middles) {
    OrderedPartition p;
    p.blocks.push_back(positive);
    for (std::uint32_t mask : middles) {
      std::vector<int> block;
      for (int i = 0; i < t.internal_count; ++i)
        if (mask >> i & 1) block.push_back(t.n + i);
      p.blocks.push_back(std::move(block));
    }
    p.blocks.push_back(negative);
    out.push_back(std::move(p));
  });
  return out;
}

GClass class_m0m(int m) {
  if (m < 3) throw std::invalid_argument("class_m0m: need m >= 3");
  GClass g = GClass::one();
  for (int i = 2; i <= m - 2; ++i)
    g = g * GClass::from_coeffs({Int(-i), Int(1)});
  return g;
}

GClass stratum_class(const trees::MarkedTree& t, const RamificationDatum& x) {
  GClass vertex_factor = GClass::one();
  auto val = t.valences();
  for (int v = t.n; v < t.vertex_count(); ++v)
    vertex_factor = vertex_factor * class_m0m(val[static_cast<size_t>(v)]);
  // histogram of middle-block counts; exponent is |I(T)| - length(P) + 2
  std::vector<Int> count_by_blocks(static_cast<size_t>(t.internal_count) + 1, Int(0));
  for_each_admissible_partition(t, x, [&](std::span<const std::uint32_t> middles) {
    count_by_blocks[middles.size()] += 1;
  });
  GClass punctured_line = GClass::from_coeffs({Int(-1), Int(1)});  // L - 1
  GClass sum;
  for (int r = 1; r <= t.internal_count; ++r) {
    const Int& c = count_by_blocks[static_cast<size_t>(r)];
    if (c == 0) continue;
    sum += GClass::from_coeffs({c}) * punctured_line.pow(t.internal_count - r);
  }
  return vertex_factor * sum;
}

GClass total_class(const RamificationDatum& x, int jobs, int tree_bound) {
  auto all = trees::enumerate_stable_trees(x.n(), tree_bound);
  if (jobs < 1) jobs = 1;
  jobs = std::min<int>(jobs, static_cast<int>(all.size()) > 0 ? static_cast<int>(all.size()) : 1);
  if (jobs == 1) {
    GClass acc;
    for (const auto& t : all) acc += stratum_class(t, x);
    return acc;
  }
  std::vector<GClass> partial(static_cast<size_t>(jobs));
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      GClass acc;
      for (size_t i = static_cast<size_t>(w); i < all.size(); i += static_cast<size_t>(jobs))
        acc += stratum_class(all[i], x);
      partial[static_cast<size_t>(w)] = std::move(acc);
    });
  }
  for (auto& th : workers) th.join();
  GClass acc;
  for (const auto& p : partial) acc += p;
  return acc;
}

Int count_linear_extensions(std::span<const std::uint32_t> predecessor_masks) {
  int m = static_cast<int>(predecessor_masks.size());
  if (m > 20) throw std::invalid_argument("count_linear_extensions: poset too large");
  if (m == 0) return 1;
  std::uint32_t full = (std::uint32_t{1} << m) - 1;
  std::vector<Int> f(static_cast<size_t>(full) + 1, Int(0));
  f[0] = 1;
  for (std::uint32_t s = 0; s <= full; ++s) {
    if (f[s] == 0 && s != 0) continue;  // not a down-set
    if (s == full) break;
    for (int i = 0; i < m; ++i) {
      if (s >> i & 1) continue;
      if ((predecessor_masks[static_cast<size_t>(i)] & s) == predecessor_masks[static_cast<size_t>(i)])
        f[s | (std::uint32_t{1} << i)] += f[s];
    }
  }
  return f[full];
}

Int linear_extensions(const DirectedMarkedTree& d) {
  InternalPoset p = internal_poset(d);
  return count_linear_extensions(p.below);
}

Int euler_char(const RamificationDatum& x, int tree_bound) {
  Int total = 0;
  trees::for_each_stable_tree(
      x.n(),
      [&](const trees::MarkedTree& t) {
        Int a = 1;
        auto val = t.valences();
        for (int v = t.n; v < t.vertex_count(); ++v) a *= open_moduli_euler(val[static_cast<size_t>(v)]);
        total += a * linear_extensions(x_directing(t, x));
      },
      tree_bound);
  return total;
}

}  // namespace rubber::strata
