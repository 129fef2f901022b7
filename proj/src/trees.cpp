#include "rubber/trees.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace rubber::trees {

std::vector<std::vector<int>> MarkedTree::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<size_t>(vertex_count()));
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

std::vector<int> MarkedTree::valences() const {
  std::vector<int> deg(static_cast<size_t>(vertex_count()), 0);
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

std::vector<LeafMask> MarkedTree::edge_side_masks() const {
  auto adj = adjacency();
  std::vector<LeafMask> out(edges.size());
  for (size_t k = 0; k < edges.size(); ++k) {
    int u = edges[k].first, v = edges[k].second;
    LeafMask mask = 0;
    std::vector<int> stack = {u};
    std::vector<bool> seen(static_cast<size_t>(vertex_count()), false);
    seen[static_cast<size_t>(u)] = seen[static_cast<size_t>(v)] = true;
    while (!stack.empty()) {
      int w = stack.back();
      stack.pop_back();
      if (is_leaf(w)) mask |= LeafMask{1} << w;
      for (int z : adj[static_cast<size_t>(w)]) {
        if (w == u && z == v) continue;
        if (!seen[static_cast<size_t>(z)]) {
          seen[static_cast<size_t>(z)] = true;
          stack.push_back(z);
        }
      }
    }
    out[k] = mask;
  }
  return out;
}

std::vector<LeafMask> MarkedTree::internal_splits() const {
  auto sides = edge_side_masks();
  LeafMask full = (LeafMask{1} << n) - 1;
  std::vector<LeafMask> splits;
  for (size_t k = 0; k < edges.size(); ++k) {
    if (is_leaf(edges[k].first) || is_leaf(edges[k].second)) continue;
    LeafMask m = sides[k];
    if (!(m & 1)) m = full ^ m;
    splits.push_back(m);
  }
  std::sort(splits.begin(), splits.end());
  return splits;
}

namespace {

std::string side_to_string(LeafMask m, int n) {
  std::string s;
  bool multi_digit = n > 9;
  bool first = true;
  for (int i = 1; i <= n; ++i) {
    if (!(m >> (i - 1) & 1)) continue;
    if (!first && multi_digit) s += ',';
    s += std::to_string(i);
    first = false;
  }
  return s;
}

}  // namespace

std::string MarkedTree::encode() const {
  LeafMask full = (LeafMask{1} << n) - 1;
  std::string out;
  bool first = true;
  for (LeafMask m : internal_splits()) {
    if (!first) out += ';';
    out += side_to_string(m, n) + "|" + side_to_string(full ^ m, n);
    first = false;
  }
  return out;
}

namespace {

std::string split_key(const std::vector<LeafMask>& splits) {
  std::string key(splits.size() * sizeof(LeafMask), '\0');
  std::memcpy(key.data(), splits.data(), key.size());
  return key;
}

// Inserting leaf `n` into a tree from the previous generation. Leaf ids must
// shift up by one to make room; internal ids shift accordingly.
MarkedTree shifted(const MarkedTree& t) {
  MarkedTree s;
  s.n = t.n + 1;
  s.internal_count = t.internal_count;
  s.edges.reserve(t.edges.size());
  auto sh = [&](int v) -> std::uint8_t {
    return static_cast<std::uint8_t>(v < t.n ? v : v + 1);
  };
  for (auto [u, v] : t.edges) s.edges.emplace_back(sh(u), sh(v));
  return s;
}

void check_bound(int n, int bound) {
  if (n < 3) throw std::invalid_argument("stable trees need n >= 3");
  if (n > bound) throw std::invalid_argument("tree enumeration bound exceeded");
  if (n > 31) throw std::invalid_argument("leaf masks support at most 31 leaves");
}

}  // namespace

void for_each_stable_tree(int n, const std::function<void(const MarkedTree&)>& fn, int bound) {
  check_bound(n, bound);
  std::vector<MarkedTree> current;
  MarkedTree tripod;
  tripod.n = 3;
  tripod.internal_count = 1;
  tripod.edges = {{0, 3}, {1, 3}, {2, 3}};
  current.push_back(tripod);
  for (int k = 4; k <= n; ++k) {
    std::vector<MarkedTree> next;
    std::unordered_set<std::string> seen;
    auto emit = [&](MarkedTree&& cand) {
      auto key = split_key(cand.internal_splits());
      if (seen.insert(std::move(key)).second) {
        if (k == n)
          fn(cand);
        else
          next.push_back(std::move(cand));
      }
    };
    for (const MarkedTree& t : current) {
      MarkedTree base = shifted(t);
      std::uint8_t new_leaf = static_cast<std::uint8_t>(k - 1);
      // attach the new leaf to every internal vertex
      for (int iv = base.n; iv < base.vertex_count(); ++iv) {
        MarkedTree cand = base;
        cand.edges.emplace_back(new_leaf, static_cast<std::uint8_t>(iv));
        emit(std::move(cand));
      }
      // attach to every edge, subdividing it with a new internal vertex
      for (size_t e = 0; e < base.edges.size(); ++e) {
        MarkedTree cand = base;
        auto [u, v] = cand.edges[e];
        std::uint8_t w = static_cast<std::uint8_t>(cand.vertex_count());
        cand.internal_count += 1;
        cand.edges[e] = {u, w};
        cand.edges.emplace_back(w, v);
        cand.edges.emplace_back(new_leaf, w);
        emit(std::move(cand));
      }
    }
    if (k == n) return;
    current = std::move(next);
  }
  // n == 3
  fn(tripod);
}

std::vector<MarkedTree> enumerate_stable_trees(int n, int bound) {
  std::vector<std::pair<std::vector<LeafMask>, MarkedTree>> keyed;
  for_each_stable_tree(n, [&](const MarkedTree& t) { keyed.emplace_back(t.internal_splits(), t); }, bound);
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<MarkedTree> out;
  out.reserve(keyed.size());
  for (auto& [key, t] : keyed) out.push_back(std::move(t));
  return out;
}

MarkedTree stabilize(const RawTree& input) {
  int V = input.vertex_count;
  if (V > 255) throw std::invalid_argument("stabilize: too many vertices");
  std::vector<std::vector<int>> adj(static_cast<size_t>(V));
  for (auto [u, v] : input.edges) {
    if (u < 0 || v < 0 || u >= V || v >= V) throw std::invalid_argument("stabilize: bad vertex id");
    adj[static_cast<size_t>(u)].push_back(v);
    adj[static_cast<size_t>(v)].push_back(u);
  }
  if (static_cast<int>(input.edges.size()) != V - 1)
    throw std::invalid_argument("stabilize: input is not a tree");
  // smooth every bivalent vertex by replacing it with an edge between its
  // two neighbours
  std::vector<bool> removed(static_cast<size_t>(V), false);
  for (int v = input.n; v < V; ++v) {
    if (adj[static_cast<size_t>(v)].size() != 2) continue;
    int a = adj[static_cast<size_t>(v)][0];
    int b = adj[static_cast<size_t>(v)][1];
    auto relink = [&](int from, int other) {
      for (int& z : adj[static_cast<size_t>(from)])
        if (z == v) z = other;
    };
    relink(a, b);
    relink(b, a);
    removed[static_cast<size_t>(v)] = true;
    adj[static_cast<size_t>(v)].clear();
  }
  // compact ids: leaves first, surviving internal vertices after
  std::vector<int> id(static_cast<size_t>(V), -1);
  MarkedTree out;
  out.n = input.n;
  int next = input.n;
  for (int v = 0; v < input.n; ++v) {
    if (removed[static_cast<size_t>(v)] || adj[static_cast<size_t>(v)].size() != 1)
      throw std::invalid_argument("stabilize: leaf vertex does not have valence one");
    id[static_cast<size_t>(v)] = v;
  }
  for (int v = input.n; v < V; ++v) {
    if (removed[static_cast<size_t>(v)]) continue;
    if (adj[static_cast<size_t>(v)].size() < 3)
      throw std::invalid_argument("stabilize: result is not stable");
    id[static_cast<size_t>(v)] = next++;
  }
  out.internal_count = next - input.n;
  for (int v = 0; v < V; ++v) {
    if (removed[static_cast<size_t>(v)]) continue;
    for (int z : adj[static_cast<size_t>(v)]) {
      if (removed[static_cast<size_t>(z)]) throw std::logic_error("stabilize: dangling edge");
      if (v < z)
        out.edges.emplace_back(static_cast<std::uint8_t>(id[static_cast<size_t>(v)]),
                               static_cast<std::uint8_t>(id[static_cast<size_t>(z)]));
    }
  }
  if (static_cast<int>(out.edges.size()) != out.vertex_count() - 1)
    throw std::invalid_argument("stabilize: result is not a tree");
  return out;
}

int RibbonTree::internal_count() const {
  int c = 0;
  for (const Node& nd : nodes)
    if (!nd.leaf) ++c;
  return c;
}

int RibbonTree::leaf_count() const {
  int c = 0;
  for (const Node& nd : nodes)
    if (nd.leaf) ++c;
  return c;
}

std::string RibbonTree::planar_code() const {
  auto rec = [&](auto&& self, int v) -> std::string {
    if (nodes[static_cast<size_t>(v)].leaf) return "L";
    std::string s = "(";
    for (int c : nodes[static_cast<size_t>(v)].children) s += self(self, c);
    return s + ")";
  };
  return rec(rec, 0);
}

std::vector<std::uint32_t> RibbonTree::internal_ancestor_masks() const {
  std::vector<int> internal_index(nodes.size(), -1);
  int m = 0;
  for (size_t v = 0; v < nodes.size(); ++v)
    if (!nodes[v].leaf) internal_index[v] = m++;
  std::vector<std::uint32_t> masks(static_cast<size_t>(m), 0);
  auto rec = [&](auto&& self, int v, std::uint32_t above) -> void {
    int idx = internal_index[static_cast<size_t>(v)];
    masks[static_cast<size_t>(idx)] = above;
    std::uint32_t below = above | (std::uint32_t{1} << idx);
    for (int c : nodes[static_cast<size_t>(v)].children)
      if (!nodes[static_cast<size_t>(c)].leaf) self(self, c, below);
  };
  rec(rec, 0, 0);
  return masks;
}

bool RibbonTree::operator==(const RibbonTree& other) const {
  return planar_code() == other.planar_code();
}

namespace {

// Append a copy of `src`'s subtree rooted at `v` into `dst`; returns new id.
int copy_subtree(const RibbonTree& src, int v, RibbonTree& dst) {
  int id = static_cast<int>(dst.nodes.size());
  dst.nodes.push_back({src.nodes[static_cast<size_t>(v)].leaf, {}});
  for (int c : src.nodes[static_cast<size_t>(v)].children) {
    int cid = copy_subtree(src, c, dst);
    dst.nodes[static_cast<size_t>(id)].children.push_back(cid);
  }
  return id;
}

struct RrtGenerator {
  // memo over (m, leaves)
  std::map<std::pair<int, int>, std::vector<RibbonTree>> memo;

  const std::vector<RibbonTree>& gen(int m, int leaves) {
    auto key = std::make_pair(m, leaves);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<RibbonTree> out;
    if (m >= 1 && leaves >= 2) {
      if (m == 1) {
        RibbonTree t;
        t.nodes.push_back({false, {}});
        for (int i = 0; i < leaves; ++i) {
          t.nodes.push_back({true, {}});
          t.nodes[0].children.push_back(i + 1);
        }
        out.push_back(std::move(t));
      } else {
        // base with an ordered child sequence; children are leaves or
        // smaller ribbon trees, at least two children in total
        struct Child {
          bool leaf;
          int m, q;       // subtree grading when !leaf
          int variant;    // index into gen(m, q)
        };
        std::vector<Child> seq;
        auto build = [&](auto&& self, int mr, int qr) -> void {
          if (mr == 0 && qr == 0) {
            if (seq.size() < 2) return;
            RibbonTree t;
            t.nodes.push_back({false, {}});
            for (const Child& ch : seq) {
              if (ch.leaf) {
                int id = static_cast<int>(t.nodes.size());
                t.nodes.push_back({true, {}});
                t.nodes[0].children.push_back(id);
              } else {
                const RibbonTree& sub = gen(ch.m, ch.q)[static_cast<size_t>(ch.variant)];
                int id = copy_subtree(sub, 0, t);
                t.nodes[0].children.push_back(id);
              }
            }
            out.push_back(std::move(t));
            return;
          }
          if (qr > 0) {
            seq.push_back({true, 0, 0, 0});
            self(self, mr, qr - 1);
            seq.pop_back();
          }
          for (int sm = 1; sm <= mr; ++sm) {
            for (int sq = 2; sq <= qr; ++sq) {
              const auto& subs = gen(sm, sq);
              for (int var = 0; var < static_cast<int>(subs.size()); ++var) {
                seq.push_back({false, sm, sq, var});
                self(self, mr - sm, qr - sq);
                seq.pop_back();
              }
            }
          }
        };
        build(build, m - 1, leaves);
      }
    }
    return memo.emplace(key, std::move(out)).first->second;
  }
};

}  // namespace

std::vector<RibbonTree> enumerate_rrt(int m, int max_leaves) {
  if (m < 1) throw std::invalid_argument("enumerate_rrt: need m >= 1");
  RrtGenerator g;
  std::vector<RibbonTree> out;
  for (int q = 2; q <= max_leaves; ++q)
    for (const RibbonTree& t : g.gen(m, q)) out.push_back(t);
  return out;
}

RibbonStats ribbon_stats(const RibbonTree& t) {
  RibbonStats s;
  s.a_t = 1;
  s.big_n = t.leaf_count();
  for (const RibbonTree::Node& nd : t.nodes) {
    if (nd.leaf) continue;
    int val = static_cast<int>(nd.children.size()) + 1;
    s.a_t *= Rat(open_moduli_euler(val)) / Rat(factorial(static_cast<unsigned>(val - 1)));
  }
  return s;
}

Decomposition decompose(const RibbonTree& t) {
  if (t.nodes.empty() || t.nodes[0].leaf) throw std::invalid_argument("decompose: malformed tree");
  int m = t.internal_count();
  Decomposition d;
  d.type.lambda.assign(static_cast<size_t>(std::max(m - 1, 1)) + 1, 0);
  for (int c : t.nodes[0].children) {
    if (t.nodes[static_cast<size_t>(c)].leaf) {
      d.type.k += 1;
      d.base_is_subtree.push_back(false);
    } else {
      RibbonTree sub;
      copy_subtree(t, c, sub);
      int size = sub.internal_count();
      d.type.lambda[static_cast<size_t>(size)] += 1;
      d.subtrees.push_back(std::move(sub));
      d.base_is_subtree.push_back(true);
    }
  }
  d.type.j = static_cast<int>(d.subtrees.size());
  return d;
}

RibbonTree reassemble(const Decomposition& d) {
  RibbonTree t;
  t.nodes.push_back({false, {}});
  size_t next_sub = 0;
  for (bool is_sub : d.base_is_subtree) {
    if (is_sub) {
      int id = copy_subtree(d.subtrees[next_sub++], 0, t);
      t.nodes[0].children.push_back(id);
    } else {
      int id = static_cast<int>(t.nodes.size());
      t.nodes.push_back({true, {}});
      t.nodes[0].children.push_back(id);
    }
  }
  if (next_sub != d.subtrees.size()) throw std::invalid_argument("reassemble: layout/subtree mismatch");
  return t;
}

}  // namespace rubber::trees
