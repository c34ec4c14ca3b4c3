#include "twr/lp.hpp"

#include <algorithm>
#include <cmath>

#include "twr/simplex.hpp"

namespace twr {

Rat rat_from_double(double d) {
  require(std::isfinite(d), "non-finite value in LP solution");
  if (d == 0) return 0;
  int exp;
  double m = std::frexp(d, &exp);
  long long mant = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rat r(mant);
  boost::multiprecision::cpp_int one(1);
  if (exp > 0)
    r *= Rat(one << exp);
  else if (exp < 0)
    r /= Rat(one << (-exp));
  return r;
}

namespace {

struct LPShape {
  GraphNetwork gn;
  int k = 0;
  int narcs = 0;
  int fvar(int pair, int arc) const { return pair * narcs + arc; }
  int xvar(int pair) const { return k * narcs + pair; }
  int nvars() const { return k * narcs + k; }
};

// Nodes of the network that carry conservation constraints, and the per-pair
// injection/collection nodes.
template <typename T>
SimplexProblem<T> build_problem(const Instance& inst, const LPShape& s) {
  const CapGraph& g = inst.graph;
  SimplexProblem<T> p;
  p.nvars = s.nvars();
  p.c.assign(p.nvars, T(0));
  for (int i = 0; i < s.k; ++i) p.c[s.xvar(i)] = T(1);

  std::vector<int> nodes;
  if (inst.mode == Mode::Edp) {
    nodes = g.verts;
  } else {
    for (int v : g.verts) {
      nodes.push_back(2 * v);
      nodes.push_back(2 * v + 1);
    }
  }
  std::vector<std::vector<std::pair<int, int>>> out_arcs(s.gn.net.n), in_arcs(s.gn.net.n);
  for (int a = 0; a < s.narcs; ++a) {
    out_arcs[s.gn.net.arcs[a].from].push_back({a, 0});
    in_arcs[s.gn.net.arcs[a].to].push_back({a, 0});
  }

  for (int i = 0; i < s.k; ++i) {
    auto [si, ti] = inst.pairs.pairs[i];
    int src = s.gn.in_node(si), snk = s.gn.out_node(ti);
    for (int u : nodes) {
      if (u == snk) continue;  // implied by the others
      std::vector<T> row(p.nvars, T(0));
      for (auto [a, _] : out_arcs[u]) row[s.fvar(i, a)] += T(1);
      for (auto [a, _] : in_arcs[u]) row[s.fvar(i, a)] -= T(1);
      if (u == src) row[s.xvar(i)] = T(-1);
      p.add_row(std::move(row), RowRel::Eq, T(0));
    }
    std::vector<T> xrow(p.nvars, T(0));
    xrow[s.xvar(i)] = T(1);
    p.add_row(std::move(xrow), RowRel::Le, T(1));
  }

  if (inst.mode == Mode::Edp) {
    // Arc pairs (2j, 2j+1) belong to edge j; joint capacity.
    for (int j = 0; j < g.edge_count(); ++j) {
      std::vector<T> row(p.nvars, T(0));
      for (int i = 0; i < s.k; ++i) {
        row[s.fvar(i, 2 * j)] = T(1);
        row[s.fvar(i, 2 * j + 1)] = T(1);
      }
      p.add_row(std::move(row), RowRel::Le, T(static_cast<int>(g.edges[j].cap)));
    }
  } else {
    for (int a = 0; a < s.narcs; ++a) {
      if (s.gn.net.arcs[a].infinite) continue;  // edge arcs
      std::vector<T> row(p.nvars, T(0));
      for (int i = 0; i < s.k; ++i) row[s.fvar(i, a)] = T(1);
      p.add_row(std::move(row), RowRel::Le, T(s.gn.net.arcs[a].cap.convert_to<int>()));
    }
  }
  return p;
}

}  // namespace

LPSolution solve_relaxation(const Instance& inst, int rational_var_limit) {
  inst.check_valid();
  LPShape s;
  s.gn = make_graph_network(inst.graph, inst.mode);
  s.k = inst.pairs.size();
  s.narcs = static_cast<int>(s.gn.net.arcs.size());

  LPSolution sol;
  sol.mode = inst.mode;
  sol.net = s.gn;
  sol.x.assign(s.k, 0);
  sol.arc_flow.assign(s.k, std::vector<Rat>(s.narcs, 0));
  sol.objective = 0;
  if (s.k == 0) return sol;

  sol.exact = s.nvars() <= rational_var_limit;
  if (sol.exact) {
    auto res = solve_lp(build_problem<Rat>(inst, s));
    audit(res.feasible, "relaxation reported infeasible (zero flow is feasible)");
    for (int i = 0; i < s.k; ++i) {
      sol.x[i] = res.solution[s.xvar(i)];
      for (int a = 0; a < s.narcs; ++a) sol.arc_flow[i][a] = res.solution[s.fvar(i, a)];
    }
    sol.objective = res.objective;
  } else {
    auto res = solve_lp(build_problem<double>(inst, s));
    audit(res.feasible, "relaxation reported infeasible (zero flow is feasible)");
    auto clean = [](double v) { return v < 1e-11 ? 0.0 : v; };
    for (int i = 0; i < s.k; ++i) {
      sol.x[i] = rat_from_double(clean(res.solution[s.xvar(i)]));
      for (int a = 0; a < s.narcs; ++a)
        sol.arc_flow[i][a] = rat_from_double(clean(res.solution[s.fvar(i, a)]));
      sol.objective += sol.x[i];
    }
  }
  return sol;
}

PathFlow decompose_to_paths(const LPSolution& sol, const Instance& inst) {
  PathFlow f;
  int k = inst.pairs.size();
  for (int i = 0; i < k; ++i) {
    FlowNetwork net = sol.net.net;
    auto [si, ti] = inst.pairs.pairs[i];
    net.source = sol.net.in_node(si);
    net.sink = sol.net.out_node(ti);
    auto paths = decompose_flow(net, sol.arc_flow[i]);
    Rat total = 0;
    for (auto& [_, w] : paths) total += w;
    Rat scale = total > 1 ? Rat(1) / total : Rat(1);  // clamp x_i to 1
    for (auto& [nodes, w] : paths) {
      std::vector<int> p;
      for (int u : nodes) {
        int v = sol.net.vertex_of(u);
        if (p.empty() || p.back() != v) p.push_back(v);
      }
      f.entries.push_back({i, simplify_walk(p), w * scale});
    }
  }
  // Scale the whole flow to exact feasibility.
  Rat ratio = 1;
  if (inst.mode == Mode::Edp) {
    for (auto [idx, load] : f.edge_loads(inst.graph)) {
      Rat r = load / inst.graph.edges[idx].cap;
      ratio = std::max(ratio, r);
    }
  } else {
    for (auto [v, load] : f.vertex_loads()) {
      Rat r = load / inst.graph.node_cap(v);
      ratio = std::max(ratio, r);
    }
  }
  if (ratio > 1) f = f.scaled(Rat(1) / ratio);
  f.coalesce();
  audit(f.feasible(inst), "decomposed flow infeasible after scaling");
  return f;
}

PathFlow lp_flow(const Instance& inst, Rat* lp_objective) {
  auto sol = solve_relaxation(inst);
  if (lp_objective) *lp_objective = sol.objective;
  return decompose_to_paths(sol, inst);
}

}  // namespace twr
