#include "twr/router.hpp"

#include <algorithm>
#include <set>

namespace twr {

Levels compute_levels(const Instance& inst, const RootedDecomposition& d, const PathFlow& f,
                      int r) {
  Levels lv;
  int nt = d.node_count();
  lv.unsafe_node.assign(nt, 0);
  lv.bad_node.assign(nt, 0);
  for (int t = 0; t < nt; ++t) {
    lv.bad_node[t] = !is_good(d, t, f);
    lv.unsafe_node[t] = !is_safe(inst, d, t, f, r).safe;
    int adh = static_cast<int>(d.sigma(t).size());
    if (lv.bad_node[t]) lv.l2 = std::max(lv.l2, adh);
    if (lv.unsafe_node[t]) lv.l1 = std::max(lv.l1, adh);
  }
  audit(lv.l1 <= lv.l2, "unsafe level above bad level");
  return lv;
}

namespace {

struct Ctx {
  int r = 0;
  Mode mode = Mode::Edp;
};

// Pairs restricted to those carrying flow, with entry pair ids remapped; the
// rounding module needs every listed pair's terminals inside the graph.
struct FlowPairs {
  Instance inst;
  PathFlow f;
  std::vector<int> orig;  // new pair id -> caller pair id
};

FlowPairs keep_flow_pairs(const Instance& base, CapGraph graph, const PathFlow& f) {
  FlowPairs out;
  out.inst.mode = base.mode;
  out.inst.graph = std::move(graph);
  std::vector<int> remap(base.pairs.size(), -1);
  for (int i = 0; i < base.pairs.size(); ++i) {
    if (f.pair_value(i) == 0) continue;
    remap[i] = out.inst.pairs.size();
    out.orig.push_back(i);
    out.inst.pairs.pairs.push_back(base.pairs.pairs[i]);
  }
  for (FlowEntry e : f.entries) {
    e.pair = remap[e.pair];
    audit(e.pair >= 0, "flow entry for a dropped pair");
    out.f.entries.push_back(std::move(e));
  }
  return out;
}

void append_translated(Routing& into, const Routing& sub, const std::vector<int>& orig) {
  for (const auto& [p, path] : sub.paths) into.paths.push_back({orig[p], path});
}

Routing solve_component(const SubProblem& sp, const Ctx& ctx, int depth);

// Split off connected components and recurse on each.
Routing solve_forest(const Instance& inst, const RootedDecomposition& d, const PathFlow& f,
                     const Ctx& ctx, int depth) {
  Routing out;
  if (f.entries.empty()) return out;
  for (const SubProblem& sp : preprocess(inst, d, f)) {
    Routing part = solve_component(sp, ctx, depth);
    out.paths.insert(out.paths.end(), part.paths.begin(), part.paths.end());
  }
  return out;
}

// Prefix truncation of every flow path at its first hit of S, from both ends.
PathFlow truncate_to_set(const PathFlow& f, const std::vector<int>& S) {
  std::set<int> in_s(S.begin(), S.end());
  PathFlow g;
  for (const FlowEntry& e : f.entries) {
    for (int dir = 0; dir < 2; ++dir) {
      std::vector<int> p = dir ? std::vector<int>(e.path.rbegin(), e.path.rend()) : e.path;
      auto hit = std::find_if(p.begin(), p.end(), [&](int v) { return in_s.count(v); });
      require(hit != p.end(), "flow path avoids the root bag");
      g.entries.push_back({p.front(), {p.begin(), hit + 1}, e.weight});
    }
  }
  return g;
}

Routing base_case(const SubProblem& sp, const Ctx& ctx) {
  (void)ctx;
  const std::vector<int>& S = sp.decomp.bags[sp.decomp.root];
  RoundingInput rin;
  FlowPairs fp = keep_flow_pairs(sp.inst, sp.inst.graph, sp.flow);
  rin.inst = std::move(fp.inst);
  rin.f = std::move(fp.f);
  rin.g = truncate_to_set(rin.f, S);
  rin.S = S;
  rin.alpha = 1;
  if (rin.inst.mode == Mode::Ndp) {
    // The two prefixes of a path can meet at their common root-bag terminus,
    // doubling its vertex load; halving keeps g under f's own node loads.
    rin.g = rin.g.scaled(Rat(1, 2));
    rin.alpha = 2;
  }
  RoundingResult res = route_round(rin);
  Routing out;
  append_translated(out, res.routing, fp.orig);
  return out;
}

// Case l1 < l2: route or drop the flow inside the topmost bad subtrees with
// parent adhesions of size l2.
Routing step_unequal(const SubProblem& sp, const Ctx& ctx, const Levels& lv, int depth) {
  const RootedDecomposition& d = sp.decomp;
  std::vector<int> topmost;
  {
    auto ch = d.children();
    std::vector<int> stack{d.root};
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      if (d.parent[t] >= 0 && lv.bad_node[t] &&
          static_cast<int>(d.sigma(t).size()) == lv.l2) {
        topmost.push_back(t);
        continue;
      }
      for (int c : ch[t]) stack.push_back(c);
    }
  }
  audit(!topmost.empty(), "no bad node at the bad level");
  if (ctx.mode == Mode::Ndp)
    audit(topmost.size() == 1, "several topmost bad nodes on a path decomposition");

  std::vector<PathFlow> inside(topmost.size());
  std::vector<char> taken(sp.flow.entries.size(), 0);
  Rat inside_sum = 0;
  for (size_t i = 0; i < topmost.size(); ++i) {
    auto al = d.alpha(topmost[i]);
    std::set<int> av(al.begin(), al.end());
    for (size_t j = 0; j < sp.flow.entries.size(); ++j) {
      const FlowEntry& e = sp.flow.entries[j];
      if (std::all_of(e.path.begin(), e.path.end(), [&](int v) { return av.count(v); })) {
        inside[i].entries.push_back(e);
        taken[j] = 1;
      }
    }
    inside_sum += inside[i].value();
  }

  if (inside_sum * ctx.r > sp.flow.value()) {
    Routing out;
    for (size_t i = 0; i < topmost.size(); ++i) {
      if (inside[i].entries.empty()) continue;
      int t = topmost[i];
      SafetyResult sr = is_safe(sp.inst, d, t, sp.flow, ctx.r);
      audit(sr.safe, "topmost bad node below the unsafe level is not safe");
      FlowPairs fp = keep_flow_pairs(sp.inst, graph_at(d, sp.inst.graph, t), inside[i]);
      RoundingInput rin;
      rin.inst = std::move(fp.inst);
      rin.f = std::move(fp.f);
      rin.g = std::move(sr.witness);
      rin.S = d.sigma(t);
      rin.alpha = 4 * ctx.r;
      RoundingResult res = route_round(rin);
      append_translated(out, res.routing, fp.orig);
    }
    out.audit_feasible(sp.inst);  // guard: the G(t_i) are disjoint by theory
    return out;
  }

  SubProblem next = sp;
  next.flow.entries.clear();
  for (size_t j = 0; j < sp.flow.entries.size(); ++j)
    if (!taken[j]) next.flow.entries.push_back(sp.flow.entries[j]);
  return solve_component(next, ctx, depth + 1);
}

// Case 0 < l1 = l2: split along the violating set of the lowest unsafe node.
Routing step_equal(const SubProblem& sp, const Ctx& ctx, const Levels& lv, int depth) {
  const RootedDecomposition& d = sp.decomp;
  std::vector<int> dep(d.node_count(), 0);
  for (int t : d.subtree(d.root))
    if (d.parent[t] >= 0) dep[t] = dep[d.parent[t]] + 1;
  int t0 = -1;
  for (int t = 0; t < d.node_count(); ++t) {
    if (!lv.unsafe_node[t] || static_cast<int>(d.sigma(t).size()) != lv.l1) continue;
    if (t0 < 0 || dep[t] > dep[t0] || (dep[t] == dep[t0] && t < t0)) t0 = t;
  }
  audit(t0 >= 0, "no unsafe node at the unsafe level");

  std::vector<int> U = extract_violating_set(sp.inst, d, t0, sp.flow, ctx.r);
  int n = sp.inst.graph.n;
  std::vector<char> in1(n, 0), in2(n, 0);
  for (int v : U) in1[v] = 1;
  for (int v : sp.inst.graph.verts) in2[v] = !in1[v];
  if (ctx.mode == Mode::Ndp)
    for (int v : U)
      for (auto [w, idx] : sp.inst.graph.adj[v]) in2[w] = 0;

  auto part_flow = [&](const std::vector<char>& keep) {
    return sp.flow.restrict_to_vertices([&](int v) { return keep[v] != 0; });
  };
  PathFlow f1 = part_flow(in1), f2 = part_flow(in2);
  Rat lost = sp.flow.value() - f1.value() - f2.value();
  audit(lost * ctx.r <= f1.value(), "cut lost more than a 1/r fraction");

  Routing out;
  for (auto [mask, fi] : {std::pair{&in1, &f1}, std::pair{&in2, &f2}}) {
    if (fi->entries.empty()) continue;
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if ((*mask)[v]) members.push_back(v);
    Instance part;
    part.mode = sp.inst.mode;
    part.graph = induced_subgraph(sp.inst.graph, members);
    part.pairs = sp.inst.pairs;
    Routing sub = solve_forest(part, d.restricted_to(*mask), *fi, ctx, depth + 1);
    out.paths.insert(out.paths.end(), sub.paths.begin(), sub.paths.end());
  }
  out.audit_feasible(sp.inst);
  return out;
}

Routing solve_component(const SubProblem& sp, const Ctx& ctx, int depth) {
  SubProblem cur = sp;
  cur.flow.drop_zero_entries();
  if (cur.flow.entries.empty()) return {};
  audit(depth <= cur.inst.graph.n + 2 * ctx.r + 8, "recursion failed to terminate");
  Levels lv = compute_levels(cur.inst, cur.decomp, cur.flow, ctx.r);
  Routing out;
  if (lv.l1 == 0 && lv.l2 == 0)
    out = base_case(cur, ctx);
  else if (lv.l1 < lv.l2)
    out = step_unequal(cur, ctx, lv, depth);
  else
    out = step_equal(cur, ctx, lv, depth);
  out.audit_feasible(cur.inst);
  std::set<int> seen;
  for (const auto& [p, path] : out.paths)
    audit(seen.insert(p).second, "pair routed twice");
  return out;
}

RouteReport solve_common(const Instance& inst, const RootedDecomposition& d,
                         const PathFlow& f, int r, Mode mode) {
  require(inst.mode == mode, "instance mode mismatch");
  inst.check_valid();
  int width = validate(d, inst.graph);
  require(width < r, "decomposition width " + std::to_string(width) +
                         " not below r = " + std::to_string(r));
  require(f.feasible(inst), "input flow infeasible");
  for (const FlowEntry& e : f.entries)
    require(e.pair >= 0 && e.pair < inst.pairs.size() && e.weight >= 0,
            "flow entry out of range");
  for (int i = 0; i < inst.pairs.size(); ++i)
    require(f.pair_value(i) <= 1, "pair value above one");

  Ctx ctx{r, mode};
  RouteReport rep;
  rep.r = r;
  rep.flow_value = f.value();
  for (const SubProblem& sp : preprocess(inst, d, f)) {
    if (sp.flow.entries.empty()) continue;
    Levels lv = compute_levels(sp.inst, sp.decomp, sp.flow, r);
    rep.l1 = std::max(rep.l1, lv.l1);
    rep.l2 = std::max(rep.l2, lv.l2);
  }
  rep.routing = solve_forest(inst, d, f, ctx, 0);
  rep.routing.audit_feasible(inst);
  rep.routed = rep.routing.size();

  Rat decay = 1;
  for (int i = 0; i < rep.l1 + rep.l2; ++i) decay *= Rat(r - 1, r);
  if (mode == Mode::Edp) {
    rep.constant = 144;
    rep.bound = decay * rep.flow_value / (rep.constant * r * r * r);
    audit(Rat(rep.routed) >= rep.bound, "routing below the guaranteed bound");
  } else {
    audit(rep.flow_value == 0 || rep.routed >= 1, "positive flow routed nothing");
    // Realized constant: the smallest c making routed >= |f| decay / (c r^3).
    rep.constant = rep.routed > 0 ? rep.flow_value * decay / (Rat(rep.routed) * r * r * r)
                                  : Rat(0);
    if (rep.constant < 1) rep.constant = 1;
    rep.bound = decay * rep.flow_value / (rep.constant * r * r * r);
  }
  return rep;
}

}  // namespace

RouteReport solve_edp(const Instance& inst, const RootedDecomposition& d, const PathFlow& f,
                      int r) {
  return solve_common(inst, d, f, r, Mode::Edp);
}

RouteReport solve_ndp(const Instance& inst, const RootedDecomposition& d, const PathFlow& f,
                      int r) {
  require(d.is_path, "node-disjoint routing needs a path decomposition");
  return solve_common(inst, d, f, r, Mode::Ndp);
}

RouteReport solve_routing(const Instance& inst, const RootedDecomposition& d,
                          const PathFlow& f, int r) {
  return inst.mode == Mode::Edp ? solve_edp(inst, d, f, r) : solve_ndp(inst, d, f, r);
}

}  // namespace twr
