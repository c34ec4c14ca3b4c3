#include "twr/oracle.hpp"

#include <algorithm>
#include <queue>

namespace twr {

namespace {

struct Search {
  const Instance& inst;
  std::vector<long long> edge_res;  // edp residuals
  std::vector<long long> vert_res;  // ndp residuals
  std::vector<int> subset;          // pair indices to route, in order
  Routing routing;

  explicit Search(const Instance& in) : inst(in) {
    if (inst.mode == Mode::Edp) {
      edge_res.resize(inst.graph.edge_count());
      for (int j = 0; j < inst.graph.edge_count(); ++j) edge_res[j] = inst.graph.edges[j].cap;
    } else {
      vert_res.assign(inst.graph.n, 0);
      for (int v : inst.graph.verts) vert_res[v] = inst.graph.node_cap(v);
    }
  }

  bool edge_ok(int idx) const { return inst.mode == Mode::Ndp || edge_res[idx] >= 1; }
  bool vert_ok(int v) const { return inst.mode == Mode::Edp || vert_res[v] >= 1; }

  // All remaining pairs still connected in the residual graph?
  bool remaining_connected(size_t from) const {
    for (size_t i = from; i < subset.size(); ++i) {
      auto [s, t] = inst.pairs.pairs[subset[i]];
      if (!vert_ok(s) || !vert_ok(t)) return false;
      std::vector<char> seen(inst.graph.n, 0);
      std::queue<int> q;
      q.push(s);
      seen[s] = 1;
      bool hit = s == t;
      while (!q.empty() && !hit) {
        int u = q.front();
        q.pop();
        for (auto [w, idx] : inst.graph.adj[u]) {
          if (seen[w] || !edge_ok(idx) || !vert_ok(w)) continue;
          if (w == t) { hit = true; break; }
          seen[w] = 1;
          q.push(w);
        }
      }
      if (!hit) return false;
    }
    return true;
  }

  bool route(size_t pi) {
    if (pi == subset.size()) return true;
    if (!remaining_connected(pi)) return false;
    auto [s, t] = inst.pairs.pairs[subset[pi]];
    std::vector<int> path{s};
    std::vector<char> on_path(inst.graph.n, 0);
    on_path[s] = 1;
    if (inst.mode == Mode::Ndp) vert_res[s]--;
    bool ok = extend(pi, t, path, on_path);
    if (!ok && inst.mode == Mode::Ndp) vert_res[s]++;
    return ok;
  }

  // Lexicographic DFS over simple paths; neighbors in ascending order.
  bool extend(size_t pi, int t, std::vector<int>& path, std::vector<char>& on_path) {
    int u = path.back();
    if (u == t) {
      routing.paths.push_back({subset[pi], path});
      if (route(pi + 1)) return true;
      routing.paths.pop_back();
      return false;
    }
    std::vector<std::pair<int, int>> nbrs(inst.graph.adj[u].begin(), inst.graph.adj[u].end());
    std::sort(nbrs.begin(), nbrs.end());
    for (auto [w, idx] : nbrs) {
      if (on_path[w] || !edge_ok(idx) || !vert_ok(w)) continue;
      if (inst.mode == Mode::Edp)
        edge_res[idx]--;
      else
        vert_res[w]--;
      on_path[w] = 1;
      path.push_back(w);
      if (extend(pi, t, path, on_path)) return true;
      path.pop_back();
      on_path[w] = 0;
      if (inst.mode == Mode::Edp)
        edge_res[idx]++;
      else
        vert_res[w]++;
    }
    return false;
  }
};

bool next_combination(std::vector<int>& comb, int k) {
  int c = static_cast<int>(comb.size());
  for (int i = c - 1; i >= 0; --i) {
    if (comb[i] < k - (c - i)) {
      ++comb[i];
      for (int j = i + 1; j < c; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

OracleResult solve(const Instance& inst, int max_n, int max_k) {
  inst.check_valid();
  require(inst.graph.vertex_count() <= max_n,
          "oracle guard: too many vertices (" + std::to_string(inst.graph.vertex_count()) + ")");
  require(inst.pairs.size() <= max_k, "oracle guard: too many pairs");
  int k = inst.pairs.size();
  for (int c = k; c >= 1; --c) {
    std::vector<int> comb(c);
    for (int i = 0; i < c; ++i) comb[i] = i;
    do {
      Search srch(inst);
      srch.subset = comb;
      if (srch.route(0)) {
        srch.routing.audit_feasible(inst);
        return {c, std::move(srch.routing)};
      }
    } while (next_combination(comb, k));
  }
  return {0, {}};
}

}  // namespace

OracleResult exact_maxedp(const Instance& inst, int max_n, int max_k) {
  require(inst.mode == Mode::Edp, "exact_maxedp needs an edp instance");
  return solve(inst, max_n, max_k);
}

OracleResult exact_maxndp(const Instance& inst, int max_n, int max_k) {
  require(inst.mode == Mode::Ndp, "exact_maxndp needs an ndp instance");
  return solve(inst, max_n, max_k);
}

OracleResult exact_opt(const Instance& inst, int max_n, int max_k) {
  return solve(inst, max_n, max_k);
}

}  // namespace twr
