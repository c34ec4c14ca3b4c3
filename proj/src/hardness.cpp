#include "twr/hardness.hpp"

#include <algorithm>
#include <istream>

#include <json.hpp>

#include "twr/oracle.hpp"

namespace twr {

void MCCInstance::check_valid() const {
  require(k >= 2 && n >= 2, "mcc needs k >= 2, n >= 2");
  for (auto [v, u] : edges) {
    require(v >= 0 && v < k * n && u >= 0 && u < k * n, "mcc edge out of range");
    require(cls(v) != cls(u), "mcc edge inside a class");
  }
}

MCCInstance parse_mcc(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad mcc json: ") + e.what());
  }
  MCCInstance m;
  m.k = j.at("k").get<int>();
  m.n = j.at("n").get<int>();
  for (const auto& e : j.at("edges")) m.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  m.check_valid();
  return m;
}

GadgetOutput build_gadget(const MCCInstance& mcc) {
  mcc.check_valid();
  int k = mcc.k, n = mcc.n;
  GadgetOutput out;
  out.k = k;
  out.n = n;
  out.ell = static_cast<long long>(k) * (n - 1) + static_cast<long long>(k) * (k - 1) / 2;

  int next = 0;
  out.x.assign(k, std::vector<std::vector<int>>(n, std::vector<int>(k, -1)));
  out.s.assign(k, std::vector<int>(n, -1));
  out.t.assign(k, std::vector<int>(n, -1));
  out.cut.assign(k, std::vector<int>(k, -1));
  for (int i = 0; i < k; ++i)
    for (int a = 0; a < n; ++a)
      for (int j = 0; j < k; ++j)
        if (j != i) out.x[i][a][j] = next++;
  for (int i = 0; i < k; ++i)
    for (int a = 1; a < n; ++a) {  // a == 0 is u^i
      out.s[i][a] = next++;
      out.t[i][a] = next++;
    }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) out.cut[i][j] = next++;

  Instance& inst = out.inst;
  inst.mode = Mode::Ndp;
  inst.graph = CapGraph(next);
  inst.graph.node_caps.assign(next, 1);
  int first = 0, last = 0;
  for (int i = 0; i < k; ++i) {
    first = i == 0 ? 1 : 0;
    last = i == k - 1 ? k - 2 : k - 1;
    for (int a = 0; a < n; ++a) {
      int prev = -1;
      for (int j = 0; j < k; ++j) {
        if (j == i) continue;
        if (prev >= 0) inst.graph.add_edge(prev, out.x[i][a][j], 1);
        prev = out.x[i][a][j];
      }
    }
    for (int a = 1; a < n; ++a) {
      inst.graph.add_edge(out.s[i][a], out.x[i][a][first], 1);
      inst.graph.add_edge(out.s[i][a], out.x[i][0][first], 1);
      inst.graph.add_edge(out.t[i][a], out.x[i][a][last], 1);
      inst.graph.add_edge(out.t[i][a], out.x[i][0][last], 1);
      out.st_pair[{i, a}] = inst.pairs.size();
      inst.pairs.pairs.push_back({out.s[i][a], out.t[i][a]});
    }
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (int a = 0; a < n; ++a) {
        inst.graph.add_edge(out.cut[i][j], out.x[i][a][j], 1);
        inst.graph.add_edge(out.cut[i][j], out.x[j][a][i], 1);
      }
  for (auto [v, u] : mcc.edges) {
    int i = mcc.cls(v), j = mcc.cls(u);
    if (i > j) {
      std::swap(v, u);
      std::swap(i, j);
    }
    int xv = out.x[i][v % n][j], xu = out.x[j][u % n][i];
    auto key = std::minmax(xv, xu);
    if (out.x_pair.count({key.first, key.second})) continue;
    out.x_pair[{key.first, key.second}] = inst.pairs.size();
    inst.pairs.pairs.push_back({xv, xu});
  }
  inst.check_valid();
  long long expect =
      static_cast<long long>(k) * (static_cast<long long>(n) * (k - 1) + 2 * (n - 1)) +
      static_cast<long long>(k) * (k - 1) / 2;
  audit(inst.graph.n == expect, "gadget vertex count mismatch");
  return out;
}

Routing clique_to_routing(const GadgetOutput& out, const std::vector<int>& clique) {
  require(static_cast<int>(clique.size()) == out.k, "clique needs one member per class");
  for (int i = 0; i < out.k; ++i)
    require(clique[i] >= 0 && clique[i] < out.n, "clique member out of range");
  Routing r;
  for (int i = 0; i < out.k; ++i)
    for (int a = 1; a < out.n; ++a) {
      int via = a == clique[i] ? 0 : a;
      std::vector<int> path{out.s[i][a]};
      for (int j = 0; j < out.k; ++j)
        if (j != i) path.push_back(out.x[i][via][j]);
      path.push_back(out.t[i][a]);
      r.paths.push_back({out.st_pair.at({i, a}), std::move(path)});
    }
  for (int i = 0; i < out.k; ++i)
    for (int j = i + 1; j < out.k; ++j) {
      int xv = out.x[i][clique[i]][j], xu = out.x[j][clique[j]][i];
      auto key = std::minmax(xv, xu);
      auto it = out.x_pair.find({key.first, key.second});
      require(it != out.x_pair.end(),
              "clique misses the edge between classes " + std::to_string(i) + " and " +
                  std::to_string(j));
      r.paths.push_back({it->second, {xv, out.cut[i][j], xu}});
    }
  audit(static_cast<long long>(r.size()) == out.ell, "routing size differs from ell");
  r.audit_feasible(out.inst);
  return r;
}

namespace {

bool has_multicolored_clique(const MCCInstance& mcc) {
  std::vector<std::vector<char>> adj(mcc.k * mcc.n, std::vector<char>(mcc.k * mcc.n, 0));
  for (auto [v, u] : mcc.edges) adj[v][u] = adj[u][v] = 1;
  std::vector<int> pick(mcc.k, 0);
  for (;;) {
    bool ok = true;
    for (int i = 0; i < mcc.k && ok; ++i)
      for (int j = i + 1; j < mcc.k && ok; ++j)
        if (!adj[i * mcc.n + pick[i]][j * mcc.n + pick[j]]) ok = false;
    if (ok) return true;
    int i = mcc.k - 1;
    while (i >= 0 && pick[i] == mcc.n - 1) pick[i--] = 0;
    if (i < 0) return false;
    ++pick[i];
  }
}

}  // namespace

bool verify_equivalence(const MCCInstance& mcc, int max_vertices, int max_ell) {
  GadgetOutput out = build_gadget(mcc);
  require(out.inst.graph.n <= max_vertices, "equivalence guard: gadget too large");
  require(out.ell <= max_ell, "equivalence guard: ell too large");
  auto oracle = exact_maxndp(out.inst, max_vertices, out.inst.pairs.size());
  bool routed = oracle.opt >= out.ell;
  return routed == has_multicolored_clique(mcc);
}

namespace {

// Balanced elimination of a path component (vertex list in path order).
void eliminate_path(const std::vector<int>& path, int parent, std::vector<int>& par,
                    int depth, int& max_depth) {
  if (path.empty()) return;
  size_t mid = path.size() / 2;
  par[path[mid]] = parent;
  max_depth = std::max(max_depth, depth + 1);
  eliminate_path({path.begin(), path.begin() + mid}, path[mid], par, depth + 1, max_depth);
  eliminate_path({path.begin() + mid + 1, path.end()}, path[mid], par, depth + 1, max_depth);
}

}  // namespace

TreedepthWitness treedepth_witness(const GadgetOutput& out) {
  int N = out.inst.graph.n;
  TreedepthWitness w;
  w.parent.assign(N, -1);
  int prev = -1, chain = 0;
  for (int i = 0; i < out.k; ++i)
    for (int j = i + 1; j < out.k; ++j) {
      w.parent[out.cut[i][j]] = prev;
      prev = out.cut[i][j];
      ++chain;
    }
  int cut_bottom = prev;
  w.depth = chain;
  for (int i = 0; i < out.k; ++i) {
    int first = i == 0 ? 1 : 0, last = i == out.k - 1 ? out.k - 2 : out.k - 1;
    int e1 = out.x[i][0][first], e2 = out.x[i][0][last];
    w.parent[e1] = cut_bottom;
    int base = chain + 1;
    if (e2 != e1) {
      w.parent[e2] = e1;
      ++base;
    } else {
      e2 = e1;
    }
    // Components left in W^i: s + X_a + t per a >= 1, and the interior of the
    // u^i path.
    int max_d = base;
    for (int a = 1; a < out.n; ++a) {
      std::vector<int> comp{out.s[i][a]};
      for (int j = 0; j < out.k; ++j)
        if (j != i) comp.push_back(out.x[i][a][j]);
      comp.push_back(out.t[i][a]);
      eliminate_path(comp, e2, w.parent, base, max_d);
    }
    std::vector<int> interior;
    for (int j = 0; j < out.k; ++j)
      if (j != i && out.x[i][0][j] != e1 && out.x[i][0][j] != e2)
        interior.push_back(out.x[i][0][j]);
    eliminate_path(interior, e2, w.parent, base, max_d);
    w.depth = std::max(w.depth, max_d);
  }

  // Validity: every edge joins an ancestor-descendant pair.
  auto ancestors = [&](int v) {
    std::vector<char> anc(N, 0);
    for (int u = v; u >= 0; u = w.parent[u]) anc[u] = 1;
    return anc;
  };
  for (const auto& e : out.inst.graph.edges) {
    auto au = ancestors(e.u), av = ancestors(e.v);
    audit(au[e.v] || av[e.u], "treedepth witness: edge not on a root path");
  }
  long long bound = static_cast<long long>(out.k) * (out.k - 1) / 2 + out.k + 3;
  audit(w.depth <= bound, "treedepth witness exceeds the bound");
  return w;
}

}  // namespace twr
