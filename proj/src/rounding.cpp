#include "twr/rounding.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace twr {

namespace {

Rat rat_ceil(const Rat& x) {
  boost::multiprecision::cpp_int n = boost::multiprecision::numerator(x);
  boost::multiprecision::cpp_int d = boost::multiprecision::denominator(x);
  boost::multiprecision::cpp_int q = n / d;
  if (q * d < n) ++q;
  return Rat(q);
}

bool is_integral(const Rat& x) { return boost::multiprecision::denominator(x) == 1; }

// Orients a path so it starts at `origin`.
std::vector<int> oriented(const std::vector<int>& path, int origin) {
  require(!path.empty(), "empty path");
  if (path.front() == origin) return path;
  audit(path.back() == origin, "path misses its origin endpoint");
  return {path.rbegin(), path.rend()};
}

std::map<int, std::vector<int>> by_origin(const PathFlow& f) {
  std::map<int, std::vector<int>> m;
  for (size_t i = 0; i < f.entries.size(); ++i) m[f.entries[i].pair].push_back(i);
  return m;
}

// Restricts each origin of `f` to at most `cap_of(origin)` total weight.
void trim_origin_caps(PathFlow& f, const std::map<int, Rat>& cap_of) {
  PathFlow out;
  auto groups = by_origin(f);
  for (const auto& [v, idxs] : groups) {
    auto it = cap_of.find(v);
    Rat left = it == cap_of.end() ? Rat(0) : it->second;
    for (int idx : idxs) {
      if (left == 0) break;
      FlowEntry e = f.entries[idx];
      e.weight = std::min(e.weight, left);
      left -= e.weight;
      out.entries.push_back(std::move(e));
    }
  }
  f = std::move(out);
}

struct NormalizedRounding {
  RoundingInput in;
  std::vector<int> origin;  // new universe -> old vertex
};

// Moves every terminal occurrence to a fresh degree-1 capacity-1 leaf and
// trims g so each leaf originates exactly x_i/alpha. Handles shared terminals
// by splitting the shared origin's delivery between the leaves.
NormalizedRounding normalize_for_rounding(const RoundingInput& in) {
  NormalizedRounding out;
  out.in.alpha = in.alpha;
  out.in.S = in.S;
  Instance& inst = out.in.inst;
  inst.mode = Mode::Ndp;
  inst.graph = in.inst.graph;
  if (inst.graph.node_caps.empty()) inst.graph.node_caps.assign(inst.graph.n, 1);
  out.origin.resize(inst.graph.n);
  for (int v = 0; v < inst.graph.n; ++v) out.origin[v] = v;

  int k = in.inst.pairs.size();
  std::vector<int> ls(k), lt(k);
  for (int i = 0; i < k; ++i) {
    auto [s, t] = in.inst.pairs.pairs[i];
    Rat xi = in.f.pair_value(i);
    require(xi <= 1, "pair value above one");
    ls[i] = inst.graph.add_vertex(1);
    inst.graph.add_edge(s, ls[i], 1);
    out.origin.push_back(s);
    lt[i] = inst.graph.add_vertex(1);
    inst.graph.add_edge(t, lt[i], 1);
    out.origin.push_back(t);
    inst.pairs.pairs.push_back({ls[i], lt[i]});
  }

  for (const FlowEntry& e : in.f.entries) {
    require(e.pair >= 0 && e.pair < k, "flow entry with bad pair id");
    auto [s, t] = in.inst.pairs.pairs[e.pair];
    std::vector<int> p = oriented(e.path, s);
    audit(p.back() == t, "pair path with wrong endpoints");
    std::vector<int> np{ls[e.pair]};
    np.insert(np.end(), p.begin(), p.end());
    np.push_back(lt[e.pair]);
    out.in.f.entries.push_back({e.pair, std::move(np), e.weight});
  }

  // Per old terminal vertex: the list of (leaf, amount) shares in id order.
  std::map<int, std::vector<std::pair<int, Rat>>> shares;
  for (int i = 0; i < k; ++i) {
    Rat need = in.f.pair_value(i) / in.alpha;
    auto [s, t] = in.inst.pairs.pairs[i];
    if (need == 0) continue;
    shares[s].push_back({ls[i], need});
    shares[t].push_back({lt[i], need});
  }
  auto groups = by_origin(in.g);
  for (auto& [v, want] : shares) {
    auto it = groups.find(v);
    Rat have = 0;
    if (it != groups.end())
      for (int idx : it->second) have += in.g.entries[idx].weight;
    Rat total = 0;
    for (auto& [leaf, amt] : want) total += amt;
    require(have >= total, "delivery flow short at terminal " + std::to_string(v));
    size_t gi = 0;
    Rat used = 0;  // weight consumed from entry gi
    for (auto& [leaf, amt] : want) {
      Rat left = amt;
      while (left > 0) {
        const FlowEntry& e = in.g.entries[it->second[gi]];
        Rat avail = e.weight - used;
        if (avail == 0) {
          ++gi;
          used = 0;
          continue;
        }
        Rat take = std::min(avail, left);
        std::vector<int> p{leaf};
        auto op = oriented(e.path, v);
        p.insert(p.end(), op.begin(), op.end());
        out.in.g.entries.push_back({leaf, std::move(p), take});
        used += take;
        left -= take;
      }
    }
  }
  inst.check_valid();
  audit(out.in.f.feasible(inst), "normalized pair flow infeasible");
  audit(out.in.g.feasible(inst), "normalized delivery flow infeasible");
  return out;
}

}  // namespace

std::pair<PathFlow, PathFlow> symmetrize(const RoundingInput& in) {
  PathFlow f1 = in.f.scaled(Rat(1, 3));
  PathFlow g1;
  auto groups = by_origin(in.g);
  int k = in.inst.pairs.size();
  for (int i = 0; i < k; ++i) {
    Rat xi = in.f.pair_value(i);
    if (xi == 0) continue;
    auto [s, t] = in.inst.pairs.pairs[i];
    auto it = groups.find(t);
    audit(it != groups.end(), "no delivery from terminal " + std::to_string(t));
    for (int idx : it->second) {
      FlowEntry e = in.g.entries[idx];
      e.path = oriented(e.path, t);
      e.weight /= 3;
      g1.entries.push_back(std::move(e));
    }
    for (const FlowEntry& fe : in.f.entries) {
      if (fe.pair != i) continue;
      std::vector<int> fp = oriented(fe.path, s);
      for (int idx : it->second) {
        const FlowEntry& ge = in.g.entries[idx];
        std::vector<int> walk = fp;
        auto gp = oriented(ge.path, t);
        walk.insert(walk.end(), gp.begin() + 1, gp.end());
        g1.entries.push_back({s, simplify_walk(walk), fe.weight * ge.weight / (3 * xi)});
      }
    }
  }
  g1.drop_zero_entries();
  audit(g1.feasible(in.inst), "symmetrized delivery flow infeasible");
  // Exact symmetry: both terminals of a pair send x_i/(3 alpha).
  for (int i = 0; i < k; ++i) {
    Rat xi = in.f.pair_value(i);
    auto [s, t] = in.inst.pairs.pairs[i];
    Rat from_s = 0, from_t = 0;
    for (const FlowEntry& e : g1.entries) {
      if (e.pair == s) from_s += e.weight;
      if (e.pair == t) from_t += e.weight;
    }
    audit(from_s == xi / (3 * in.alpha) && from_t == from_s,
          "symmetrization out of balance at pair " + std::to_string(i));
  }
  return {std::move(f1), std::move(g1)};
}

Restricted restrict_to_best_vertex(const PathFlow& f1, const PathFlow& g1,
                                   const std::vector<int>& S, const Rat& alpha,
                                   const Instance& inst) {
  std::map<int, Rat> into;
  for (const FlowEntry& e : g1.entries) into[e.path.back()] += e.weight;
  Restricted out;
  Rat best = -1;
  for (int v : S) {
    Rat amt = into.count(v) ? into[v] : Rat(0);
    if (amt > best) {
      best = amt;
      out.u = v;
    }
  }
  require(out.u >= 0, "empty cut set");
  for (const FlowEntry& e : g1.entries)
    if (e.path.back() == out.u) out.g2.entries.push_back(e);

  int k = inst.pairs.size();
  for (int i = 0; i < k; ++i) {
    Rat x1 = f1.pair_value(i);
    if (x1 == 0) continue;
    auto [s, t] = inst.pairs.pairs[i];
    Rat from_s = 0, from_t = 0;
    for (const FlowEntry& e : out.g2.entries) {
      if (e.pair == s) from_s += e.weight;
      if (e.pair == t) from_t += e.weight;
    }
    audit(from_s == from_t, "restricted delivery out of balance at pair " + std::to_string(i));
    Rat delivered = alpha * from_s;
    audit(delivered <= x1, "restricted delivery exceeds the pair value");
    if (delivered == 0) continue;
    Rat factor = delivered / x1;
    for (const FlowEntry& e : f1.entries)
      if (e.pair == i) out.f2.entries.push_back({i, e.path, e.weight * factor});
  }
  audit(out.f2.value() * static_cast<int>(S.size()) >= f1.value(),
        "best-vertex restriction lost too much flow");
  return out;
}

namespace {

// One rounding step: a new delivery flow into u with the origin v0 raised to
// ceil(z(v0)), every origin with integral z pinned exactly, and total value
// not below the input's. Max flow with per-arc lower bounds.
PathFlow integral_reround(const PathFlow& h, const std::map<int, Rat>& z, int v0,
                     const Instance& inst, int u) {
  GraphNetwork gn = make_graph_network(inst.graph, Mode::Ndp);
  FlowNetwork net = gn.net;
  int sstar = net.add_node();
  net.source = sstar;
  net.sink = gn.out_node(u);
  std::vector<Rat> lower(net.arcs.size(), 0);
  std::vector<std::pair<int, int>> src_arcs;  // (origin, arc idx)
  for (const auto& [v, zv] : z) {
    if (zv == 0 && v != v0) continue;
    Rat cap, low;
    if (v == v0) {
      cap = low = rat_ceil(zv);
    } else if (is_integral(zv)) {
      cap = low = zv;
    } else {
      cap = inst.graph.node_cap(v);
      low = 0;
    }
    int a = net.add_arc(sstar, gn.in_node(v), cap);
    lower.resize(net.arcs.size(), 0);
    lower[a] = low;
    src_arcs.push_back({v, a});
  }
  Rat value;
  auto flows = max_flow_lower_bounds(net, lower, &value);
  audit(flows.has_value(), "rounding step infeasible");
  audit(value >= h.value(), "rounding step lost total flow");

  PathFlow out;
  for (auto& [nodes, w] : decompose_flow(net, *flows)) {
    std::vector<int> path;
    for (size_t i = 1; i < nodes.size(); ++i) {
      int v = gn.vertex_of(nodes[i]);
      if (path.empty() || path.back() != v) path.push_back(v);
    }
    out.entries.push_back({path.front(), std::move(path), w});
  }
  out.coalesce();
  for (auto [v, a] : src_arcs) {
    Rat got = 0;
    for (const FlowEntry& e : out.entries)
      if (e.pair == v) got += e.weight;
    audit(got == (*flows)[a], "decomposition dropped source flow");
    if (v == v0) audit(got == rat_ceil(z.at(v0)), "rounded origin misses its ceiling");
    if (v != v0 && is_integral(z.at(v))) audit(got == z.at(v), "pinned origin moved");
  }
  audit(out.feasible(inst), "rounding step produced an infeasible flow");
  return out;
}

std::map<int, Rat> side_values(const PathFlow& h, const std::vector<int>& origins) {
  std::map<int, Rat> z;
  for (int v : origins) z[v] = 0;
  for (const FlowEntry& e : h.entries) {
    auto it = z.find(e.pair);
    audit(it != z.end(), "delivery entry from a non-terminal origin");
    it->second += e.weight;
  }
  return z;
}

}  // namespace

std::pair<PathFlow, PathFlow> half_integral_round(const PathFlow& g2, const Instance& inst,
                                                  int u) {
  int k = inst.pairs.size();
  std::vector<int> s_of(k), t_of(k);
  std::map<int, int> pair_of_s, pair_of_t;
  for (int i = 0; i < k; ++i) {
    auto [s, t] = inst.pairs.pairs[i];
    s_of[i] = s;
    t_of[i] = t;
    pair_of_s[s] = i;
    pair_of_t[t] = i;
  }
  PathFlow hs, ht;
  for (const FlowEntry& e : g2.entries) {
    if (pair_of_s.count(e.pair))
      hs.entries.push_back(e);
    else if (pair_of_t.count(e.pair))
      ht.entries.push_back(e);
    else
      audit(false, "delivery entry from a non-terminal origin");
  }
  Rat start = g2.value();

  for (int round = 0; round <= k; ++round) {
    auto zs = side_values(hs, s_of), zt = side_values(ht, t_of);
    int pick = -1;
    for (int i = 0; i < k; ++i) {
      audit(zs[s_of[i]] == zt[t_of[i]], "sides out of balance at pair " + std::to_string(i));
      if (!is_integral(zs[s_of[i]]) && pick < 0) pick = i;
    }
    if (pick < 0) break;
    audit(round < k, "rounding failed to terminate");
    hs = integral_reround(hs, zs, s_of[pick], inst, u);
    ht = integral_reround(ht, zt, t_of[pick], inst, u);
    // Rebalance each pair to the minimum of its two sides.
    auto nzs = side_values(hs, s_of);
    auto nzt = side_values(ht, t_of);
    std::map<int, Rat> cap_s, cap_t;
    for (int i = 0; i < k; ++i) {
      Rat m = std::min(nzs[s_of[i]], nzt[t_of[i]]);
      cap_s[s_of[i]] = m;
      cap_t[t_of[i]] = m;
    }
    trim_origin_caps(hs, cap_s);
    trim_origin_caps(ht, cap_t);
  }

  for (int i = 0; i < k; ++i) {
    Rat z = side_values(hs, s_of)[s_of[i]];
    audit(is_integral(z) && z <= 1, "non-binary pair after rounding");
  }
  audit(2 * (hs.value() + ht.value()) >= start, "rounding lost more than half the flow");
  return {std::move(hs), std::move(ht)};
}

Clustering cluster_and_select(const PathFlow& hs, const PathFlow& ht, const Instance& inst,
                              int u) {
  Clustering cl;
  int n = inst.graph.n;
  cl.tree_of.assign(n, -1);
  cl.tree_parent.assign(n, -1);
  int k = inst.pairs.size();
  std::vector<char> is_term(n, 0);
  {
    auto zs = side_values(hs, [&] {
      std::vector<int> v;
      for (auto& p : inst.pairs.pairs) v.push_back(p.first);
      return v;
    }());
    auto zt = side_values(ht, [&] {
      std::vector<int> v;
      for (auto& p : inst.pairs.pairs) v.push_back(p.second);
      return v;
    }());
    for (int i = 0; i < k; ++i) {
      auto [s, t] = inst.pairs.pairs[i];
      if (zs[s] == 1 && zt[t] == 1) {
        cl.m_prime.push_back(i);
        is_term[s] = is_term[t] = 1;
      }
    }
  }
  cl.d = 3;
  if (cl.m_prime.empty()) return cl;

  // Support of g3 = (hs + ht)/2: all remaining entries end at u.
  std::set<std::pair<int, int>> sedges;
  std::vector<char> in_support(n, 0);
  in_support[u] = 1;
  for (const PathFlow* h : {&hs, &ht})
    for (const FlowEntry& e : h->entries) {
      for (int v : e.path) in_support[v] = 1;
      for (size_t i = 0; i + 1 < e.path.size(); ++i)
        sedges.insert(std::minmax(e.path[i], e.path[i + 1]));
    }
  std::vector<std::vector<int>> sadj(n);
  for (auto [a, b] : sedges) {
    sadj[a].push_back(b);
    sadj[b].push_back(a);
  }
  for (auto& l : sadj) std::sort(l.begin(), l.end());

  // BFS tree rooted at u.
  std::vector<int> order{u};
  std::vector<char> seen(n, 0);
  seen[u] = 1;
  for (size_t i = 0; i < order.size(); ++i)
    for (int w : sadj[order[i]])
      if (!seen[w]) {
        seen[w] = 1;
        cl.tree_parent[w] = order[i];
        order.push_back(w);
      }
  for (int v = 0; v < n; ++v)
    audit(!is_term[v] || seen[v], "terminal disconnected from the cut vertex");

  // Bottom-up split: cut a subtree off as soon as it holds >= 3 terminals.
  std::vector<int> cnt(n, 0);
  std::vector<std::vector<int>> comp(n);
  auto cut_tree = [&](std::vector<int>& vs) {
    int idx = cl.trees.size();
    for (int v : vs) cl.tree_of[v] = idx;
    cl.trees.push_back(std::move(vs));
  };
  for (size_t i = order.size(); i-- > 0;) {
    int v = order[i];
    cnt[v] += is_term[v];
    comp[v].push_back(v);
    if (v != u && cnt[v] >= 3) {
      cut_tree(comp[v]);
      comp[v].clear();
      cnt[v] = 0;
    }
    if (v != u) {
      int p = cl.tree_parent[v];
      cnt[p] += cnt[v];
      comp[p].insert(comp[p].end(), comp[v].begin(), comp[v].end());
      comp[v].clear();
    }
  }
  if (cl.trees.empty() || cnt[u] >= 3) {
    cut_tree(comp[u]);
  } else {
    // Merge the leftover component (containing u) into an adjacent tree.
    int target = -1;
    for (int v : comp[u])
      for (int w : sadj[v])
        if (cl.tree_parent[w] == v && cl.tree_of[w] >= 0) {
          target = cl.tree_of[w];
          break;
        }
    audit(target >= 0, "leftover component with no adjacent tree");
    for (int v : comp[u]) cl.tree_of[v] = target;
    cl.trees[target].insert(cl.trees[target].end(), comp[u].begin(), comp[u].end());
  }
  for (const auto& tr : cl.trees) {
    int terms = 0;
    for (int v : tr) terms += is_term[v];
    cl.d = std::max(cl.d, terms);
  }

  // Greedy selection: at most one pair touching any tree.
  std::vector<char> used(cl.trees.size(), 0);
  for (int i : cl.m_prime) {
    auto [s, t] = inst.pairs.pairs[i];
    int ts = cl.tree_of[s], tt = cl.tree_of[t];
    audit(ts >= 0 && tt >= 0, "selected terminal outside every tree");
    if (used[ts] || used[tt]) continue;
    used[ts] = used[tt] = 1;
    cl.m_second.push_back(i);
    cl.local.push_back(ts == tt);
  }
  audit(static_cast<long long>(cl.m_second.size()) * cl.d * cl.d >=
            static_cast<long long>(cl.m_prime.size()),
        "tree selection below the 1/d^2 fraction");
  return cl;
}

namespace {

// Path between two vertices of the same cluster tree along tree-parent links.
std::vector<int> tree_path(const Clustering& cl, int a, int b) {
  auto depth = [&](int v) {
    int d = 0;
    for (int w = v; cl.tree_parent[w] >= 0; w = cl.tree_parent[w]) ++d;
    return d;
  };
  int da = depth(a), db = depth(b);
  std::vector<int> up_a, up_b;
  while (da > db) {
    up_a.push_back(a);
    a = cl.tree_parent[a];
    --da;
  }
  while (db > da) {
    up_b.push_back(b);
    b = cl.tree_parent[b];
    --db;
  }
  while (a != b) {
    up_a.push_back(a);
    up_b.push_back(b);
    a = cl.tree_parent[a];
    b = cl.tree_parent[b];
  }
  up_a.push_back(a);
  up_a.insert(up_a.end(), up_b.rbegin(), up_b.rend());
  return up_a;
}

}  // namespace

Routing finalize_routing(const Clustering& cl, const PathFlow& hs, const PathFlow& ht,
                         const Instance& inst, int u, StageLog& log) {
  (void)hs;
  (void)ht;
  Routing r;
  log.m_prime = cl.m_prime.size();
  log.m_second = cl.m_second.size();
  log.d = cl.d;
  int locals = 0;
  for (char c : cl.local) locals += c;
  if (2 * locals >= log.m_second) {
    log.local_branch = true;
    log.m_final = log.m_second;
    for (size_t j = 0; j < cl.m_second.size(); ++j) {
      if (!cl.local[j]) continue;
      auto [s, t] = inst.pairs.pairs[cl.m_second[j]];
      r.paths.push_back({cl.m_second[j], tree_path(cl, s, t)});
    }
    audit(2 * r.size() >= log.m_second, "local branch routed too few pairs");
    log.routed = r.size();
    return r;
  }

  log.local_branch = false;
  std::vector<int> distant;
  for (size_t j = 0; j < cl.m_second.size(); ++j)
    if (!cl.local[j]) distant.push_back(cl.m_second[j]);
  log.m_final = distant.size();
  audit(2 * log.m_final >= log.m_second, "distant branch smaller than half the selection");

  // Integral max flow from the distant terminals into u; the cluster trees
  // carry 3/5 per terminal alongside (2/5) g3, so the value reaches 6/5 per
  // pair.
  GraphNetwork gn = make_graph_network(inst.graph, Mode::Ndp);
  FlowNetwork net = gn.net;
  int sstar = net.add_node();
  net.source = sstar;
  net.sink = gn.out_node(u);
  for (int i : distant) {
    auto [s, t] = inst.pairs.pairs[i];
    net.add_arc(sstar, gn.in_node(s), 1);
    net.add_arc(sstar, gn.in_node(t), 1);
  }
  auto mf = max_flow_min_cut(net);
  audit(5 * mf.value >= Rat(6) * static_cast<int>(distant.size()),
        "integral flow below 6/5 per distant pair");

  std::map<int, std::vector<int>> path_of;  // terminal -> vertex path to u
  for (auto& [nodes, w] : decompose_flow(net, mf.arc_flow)) {
    audit(is_integral(w), "non-integral decomposition of an integral flow");
    std::vector<int> path;
    for (size_t i = 1; i < nodes.size(); ++i) {
      int v = gn.vertex_of(nodes[i]);
      if (path.empty() || path.back() != v) path.push_back(v);
    }
    path_of[path.front()] = std::move(path);
  }
  for (int i : distant) {
    auto [s, t] = inst.pairs.pairs[i];
    auto is = path_of.find(s), it = path_of.find(t);
    if (is == path_of.end() || it == path_of.end()) continue;
    std::vector<int> walk = is->second;
    walk.insert(walk.end(), it->second.rbegin() + 1, it->second.rend());
    r.paths.push_back({i, simplify_walk(walk)});
  }
  audit(5 * r.size() >= log.m_final, "distant branch routed below a fifth");
  log.routed = r.size();
  return r;
}

RoundingResult route_via_small_cut(const RoundingInput& in) {
  require(in.inst.mode == Mode::Ndp, "small-cut rounding expects node capacities");
  require(in.alpha >= 1, "alpha below one");
  in.inst.check_valid();
  RoundingResult out;
  out.log.f_val = in.f.value();
  out.log.c_round = 0;
  if (out.log.f_val == 0) return out;
  audit(in.f.feasible(in.inst), "pair flow infeasible");
  audit(in.g.feasible(in.inst), "delivery flow infeasible");
  for (int v : in.S) require(in.inst.graph.has(v), "cut vertex outside the graph");

  NormalizedRounding norm = normalize_for_rounding(in);
  auto [f1, g1] = symmetrize(norm.in);
  out.log.f1 = f1.value();
  Restricted rest = restrict_to_best_vertex(f1, g1, norm.in.S, norm.in.alpha, norm.in.inst);
  out.log.f2 = rest.f2.value();
  out.log.g2 = rest.g2.value();
  auto [hs, ht] = half_integral_round(rest.g2, norm.in.inst, rest.u);
  out.log.h_sum = hs.value() + ht.value();
  Clustering cl = cluster_and_select(hs, ht, norm.in.inst, rest.u);
  Routing nr = finalize_routing(cl, hs, ht, norm.in.inst, rest.u, out.log);
  nr.audit_feasible(norm.in.inst);

  out.routing = translate_routing(nr, norm.origin, in.inst.pairs, norm.in.inst.pairs);
  out.routing.audit_feasible(in.inst);
  out.log.c_round = Rat(out.log.routed) * in.alpha * static_cast<int>(in.S.size()) /
                    out.log.f_val;
  audit(Rat(out.log.routed) * 60 * out.log.d * out.log.d * in.alpha *
                static_cast<int>(in.S.size()) >=
            out.log.f_val,
        "rounding below the guaranteed fraction");
  return out;
}

RoundingResult edp_via_reduction(const RoundingInput& in) {
  require(in.inst.mode == Mode::Edp, "reduction expects edge capacities");
  in.inst.check_valid();
  const CapGraph& g = in.inst.graph;
  int n = g.n, m = g.edge_count();
  RoundingInput sub;
  sub.alpha = in.alpha;
  sub.S = in.S;
  sub.inst.mode = Mode::Ndp;
  sub.inst.pairs = in.inst.pairs;
  sub.inst.graph = CapGraph(n + m);
  for (int v = 0; v < n; ++v) sub.inst.graph.active[v] = g.active[v];
  sub.inst.graph.verts.clear();
  sub.inst.graph.node_caps.assign(n + m, 1);
  long long slack = in.inst.pairs.size();
  for (int v = 0; v < n; ++v) {
    long long cap = slack;
    for (auto [w, ei] : g.adj[v]) {
      (void)w;
      cap += g.edges[ei].cap;
    }
    sub.inst.graph.node_caps[v] = cap;
  }
  for (int j = 0; j < m; ++j) {
    sub.inst.graph.node_caps[n + j] = g.edges[j].cap;
    sub.inst.graph.add_edge(g.edges[j].u, n + j, 1);
    sub.inst.graph.add_edge(g.edges[j].v, n + j, 1);
  }
  for (int v = 0; v < sub.inst.graph.n; ++v)
    if (sub.inst.graph.active[v]) sub.inst.graph.verts.push_back(v);

  auto subdivide = [&](const std::vector<int>& path) {
    std::vector<int> out;
    for (size_t i = 0; i < path.size(); ++i) {
      out.push_back(path[i]);
      if (i + 1 < path.size()) {
        auto ei = g.find_edge(path[i], path[i + 1]);
        require(ei.has_value(), "path uses a missing edge");
        out.push_back(n + *ei);
      }
    }
    return out;
  };
  for (const FlowEntry& e : in.f.entries)
    sub.f.entries.push_back({e.pair, subdivide(e.path), e.weight});
  for (const FlowEntry& e : in.g.entries)
    sub.g.entries.push_back({e.pair, subdivide(e.path), e.weight});

  RoundingResult res = route_via_small_cut(sub);
  std::vector<int> origin(n + m);
  for (int v = 0; v < n; ++v) origin[v] = v;
  for (int j = 0; j < m; ++j) origin[n + j] = g.edges[j].u;
  res.routing = translate_routing(res.routing, origin, in.inst.pairs, sub.inst.pairs);
  res.routing.audit_feasible(in.inst);
  return res;
}

RoundingResult route_round(const RoundingInput& in) {
  return in.inst.mode == Mode::Edp ? edp_via_reduction(in) : route_via_small_cut(in);
}

}  // namespace twr
