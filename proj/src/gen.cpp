#include "twr/gen.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <tuple>

namespace twr {

namespace {

// Platform-stable uniform draw in [lo, hi].
int rnd(std::mt19937& g, int lo, int hi) {
  return lo + static_cast<int>(g() % static_cast<unsigned>(hi - lo + 1));
}

}  // namespace

Instance gen_grid_gap(int k) {
  require(k >= 1, "gen_grid_gap needs k >= 1");
  // Cells (r, c) for 1 <= r <= c <= k. Off-diagonal cells are wall-split into
  // an up/left side (0) and a down/right side (1); diagonal cells, where pair
  // r turns, are single vertices.
  std::map<std::tuple<int, int, int>, int> id;
  int next = 0;
  auto node = [&](int r, int c, int side) {
    if (r == c) side = 0;
    auto key = std::make_tuple(r, c, side);
    auto it = id.find(key);
    if (it != id.end()) return it->second;
    id[key] = next;
    return next++;
  };
  // Terminals: s_i = (0, i), t_i = (i, k+1).
  auto s_of = [&](int i) { return node(0, i, 0); };
  auto t_of = [&](int i) { return node(i, k + 1, 0); };
  auto up_side = [&](int r, int c) { return node(r, c, 0); };
  auto left_side = [&](int r, int c) { return node(r, c, 0); };
  auto down_side = [&](int r, int c) { return node(r, c, 1); };
  auto right_side = [&](int r, int c) { return node(r, c, 1); };

  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= k; ++i) {
    // Column i: s_i down to the diagonal.
    edges.push_back({s_of(i), up_side(1, i)});
    for (int r = 1; r < i; ++r) edges.push_back({down_side(r, i), up_side(r + 1, i)});
    // Row i: diagonal out to t_i.
    for (int c = i; c < k; ++c) edges.push_back({right_side(i, c), left_side(i, c + 1)});
    edges.push_back({right_side(i, k), t_of(i)});
  }
  for (int r = 1; r <= k; ++r)
    for (int c = r + 1; c <= k; ++c) edges.push_back({up_side(r, c), down_side(r, c)});

  Instance inst;
  inst.mode = Mode::Edp;
  inst.graph = CapGraph(next);
  for (auto [u, v] : edges) inst.graph.add_edge(u, v, 1);
  for (int i = 1; i <= k; ++i) inst.pairs.pairs.push_back({s_of(i), t_of(i)});
  inst.check_valid();
  return inst;
}

GenResult gen_partial_ktree(int n, int r, int k_pairs, unsigned seed,
                            int keep_num, int keep_den) {
  require(r >= 1 && n >= r + 1, "gen_partial_ktree needs n >= r+1, r >= 1");
  require(k_pairs >= 0 && n >= 2, "bad pair count");
  std::mt19937 rng(seed);

  std::vector<std::pair<int, int>> full_edges;
  std::vector<std::vector<int>> cliques;   // r-cliques open for insertion
  std::vector<int> owner;                  // decomposition node containing each
  GenResult out;
  std::vector<int> base(r + 1);
  for (int i = 0; i <= r; ++i) base[i] = i;
  for (int i = 0; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j) full_edges.push_back({i, j});
  out.decomp.bags.push_back(base);
  out.decomp.parent.push_back(-1);
  out.decomp.root = 0;
  for (int drop = 0; drop <= r; ++drop) {
    std::vector<int> c;
    for (int i = 0; i <= r; ++i)
      if (i != drop) c.push_back(i);
    cliques.push_back(c);
    owner.push_back(0);
  }
  for (int v = r + 1; v < n; ++v) {
    int pick = rnd(rng, 0, static_cast<int>(cliques.size()) - 1);
    std::vector<int> c = cliques[pick];
    for (int u : c) full_edges.push_back({u, v});
    std::vector<int> bag = c;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    int node = out.decomp.node_count();
    out.decomp.bags.push_back(bag);
    out.decomp.parent.push_back(owner[pick]);
    for (size_t i = 0; i < c.size(); ++i) {
      std::vector<int> nc = c;
      nc[i] = v;
      std::sort(nc.begin(), nc.end());
      cliques.push_back(nc);
      owner.push_back(node);
    }
  }

  out.inst.mode = Mode::Edp;
  out.inst.graph = CapGraph(n);
  for (auto [u, v] : full_edges)
    if (rnd(rng, 1, keep_den) <= keep_num) out.inst.graph.add_edge(u, v, rnd(rng, 1, 3));
  for (int i = 0; i < k_pairs; ++i) {
    int s = rnd(rng, 0, n - 1), t = s;
    while (t == s) t = rnd(rng, 0, n - 1);
    out.inst.pairs.pairs.push_back({s, t});
  }
  out.inst.check_valid();
  validate(out.decomp, out.inst.graph);
  return out;
}

GenResult gen_caterpillar(int n_spine, int window, int max_legs, int k_pairs,
                          unsigned seed) {
  require(n_spine >= 2 && window >= 1 && max_legs >= 0, "bad caterpillar shape");
  std::mt19937 rng(seed);
  CapGraph g(n_spine);
  for (int i = 0; i + 1 < n_spine; ++i) g.add_edge(i, i + 1, 1);
  for (int w = 2; w <= window; ++w)
    for (int i = 0; i + w < n_spine; ++i)
      if (rnd(rng, 0, 1)) g.add_edge(i, i + w, 1);
  std::vector<std::vector<int>> legs(n_spine);
  for (int i = 0; i < n_spine; ++i) {
    int nl = rnd(rng, 0, max_legs);
    for (int l = 0; l < nl; ++l) {
      int leaf = g.add_vertex();
      g.add_edge(i, leaf, 1);
      legs[i].push_back(leaf);
    }
  }
  g.node_caps.resize(g.n);
  for (int v = 0; v < g.n; ++v) g.node_caps[v] = rnd(rng, 1, 3);

  std::vector<int> order;
  for (int i = 0; i < n_spine; ++i) {
    order.push_back(i);
    for (int l : legs[i]) order.push_back(l);
  }
  GenResult out;
  out.inst.mode = Mode::Ndp;
  out.inst.graph = std::move(g);
  for (int i = 0; i < k_pairs; ++i) {
    int s = rnd(rng, 0, out.inst.graph.n - 1), t = s;
    while (t == s) t = rnd(rng, 0, out.inst.graph.n - 1);
    out.inst.pairs.pairs.push_back({s, t});
  }
  out.decomp = path_decomposition_from_order(out.inst.graph, order);
  out.inst.check_valid();
  validate(out.decomp, out.inst.graph);
  return out;
}

}  // namespace twr
