#include "twr/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace twr {

CapGraph::CapGraph(int n_, bool all_active) : n(n_), active(n_, all_active ? 1 : 0) {
  if (all_active) {
    verts.resize(n);
    for (int i = 0; i < n; ++i) verts[i] = i;
  }
  adj.resize(n);
}

void CapGraph::add_edge(int u, int v, long long cap) {
  require(u != v, "self-loop rejected: " + std::to_string(u));
  require(has(u) && has(v), "edge endpoint not an active vertex");
  require(cap >= 1, "edge capacity must be >= 1");
  if (auto idx = find_edge(u, v)) {
    edges[*idx].cap += cap;  // fold parallel edges
    return;
  }
  if (u > v) std::swap(u, v);
  int idx = static_cast<int>(edges.size());
  edges.push_back({u, v, cap});
  adj[u].push_back({v, idx});
  adj[v].push_back({u, idx});
}

std::optional<int> CapGraph::find_edge(int u, int v) const {
  if (u < 0 || u >= n) return std::nullopt;
  for (auto [w, idx] : adj[u])
    if (w == v) return idx;
  return std::nullopt;
}

int CapGraph::add_vertex(long long cap) {
  int id = n++;
  active.push_back(1);
  verts.insert(std::lower_bound(verts.begin(), verts.end(), id), id);
  adj.emplace_back();
  if (!node_caps.empty()) node_caps.push_back(cap);
  if (!labels.empty()) labels.push_back("v" + std::to_string(id));
  return id;
}

void CapGraph::rebuild_adj() {
  adj.assign(n, {});
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    adj[edges[i].u].push_back({edges[i].v, i});
    adj[edges[i].v].push_back({edges[i].u, i});
  }
}

bool TerminalPairs::is_matching() const {
  std::set<int> seen;
  for (auto [s, t] : pairs) {
    if (s == t) return false;
    if (!seen.insert(s).second) return false;
    if (!seen.insert(t).second) return false;
  }
  return true;
}

std::vector<int> TerminalPairs::terminals() const {
  std::vector<int> out;
  for (auto [s, t] : pairs) {
    out.push_back(s);
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void Instance::check_valid() const {
  for (auto [s, t] : pairs.pairs) {
    require(graph.has(s) && graph.has(t), "terminal not a vertex of the graph");
    require(s != t, "terminal pair with equal endpoints");
  }
  if (mode == Mode::Ndp)
    require(graph.node_capacitated(), "NDP instance without node capacities");
}

NormalizedInstance normalize_terminals(const Instance& in) {
  in.check_valid();
  NormalizedInstance out;
  out.inst = in;
  out.origin.resize(in.graph.n);
  for (int i = 0; i < in.graph.n; ++i) out.origin[i] = i;

  long long k = std::max<long long>(1, in.pairs.size());
  // Capacities above the pair count never matter; clamp them.
  for (auto& e : out.inst.graph.edges) e.cap = std::min(e.cap, k);
  for (auto& c : out.inst.graph.node_caps) c = std::min(c, k);

  std::set<int> used;
  for (auto& [s, t] : out.inst.pairs.pairs) {
    for (int* term : {&s, &t}) {
      if (used.insert(*term).second) continue;
      // Repeated terminal: attach a fresh leaf to the original vertex.
      int leaf = out.inst.graph.add_vertex(1);
      if (out.inst.mode == Mode::Ndp && static_cast<int>(out.inst.graph.node_caps.size()) < out.inst.graph.n)
        out.inst.graph.node_caps.resize(out.inst.graph.n, 1);
      out.inst.graph.add_edge(leaf, *term, 1);
      out.origin.push_back(out.origin[*term]);
      *term = leaf;
    }
  }
  audit(out.inst.pairs.is_matching(), "normalize_terminals: result not a matching");
  return out;
}

CapGraph induced_subgraph(const CapGraph& g, const std::vector<int>& s) {
  CapGraph out(g.n, false);
  out.node_caps = g.node_caps;
  out.labels = g.labels;
  for (int v : s) {
    require(g.has(v), "induced_subgraph: unknown vertex " + std::to_string(v));
    if (!out.active[v]) {
      out.active[v] = 1;
      out.verts.push_back(v);
    }
  }
  std::sort(out.verts.begin(), out.verts.end());
  for (const auto& e : g.edges)
    if (out.active[e.u] && out.active[e.v]) {
      int idx = static_cast<int>(out.edges.size());
      out.edges.push_back(e);
      out.adj[e.u].push_back({e.v, idx});
      out.adj[e.v].push_back({e.u, idx});
    }
  return out;
}

bool is_separation(const CapGraph& g, const std::vector<int>& a,
                   const std::vector<int>& b) {
  std::vector<char> in_a(g.n, 0), in_b(g.n, 0);
  for (int v : a) if (g.has(v)) in_a[v] = 1;
  for (int v : b) if (g.has(v)) in_b[v] = 1;
  for (int v : g.verts)
    if (!in_a[v] && !in_b[v]) return false;
  for (const auto& e : g.edges) {
    bool u_only_a = in_a[e.u] && !in_b[e.u], v_only_b = in_b[e.v] && !in_a[e.v];
    bool u_only_b = in_b[e.u] && !in_a[e.u], v_only_a = in_a[e.v] && !in_b[e.v];
    if ((u_only_a && v_only_b) || (u_only_b && v_only_a)) return false;
  }
  return true;
}

void Routing::audit_feasible(const Instance& inst) const {
  std::map<int, long long> edge_load;
  std::map<int, long long> vert_load;
  std::set<int> routed;
  for (const auto& [pair, path] : paths) {
    audit(pair >= 0 && pair < inst.pairs.size(), "routing: unknown pair index");
    audit(routed.insert(pair).second, "routing: pair routed twice");
    audit(!path.empty(), "routing: empty path");
    auto [s, t] = inst.pairs.pairs[pair];
    audit(path.front() == s && path.back() == t, "routing: path endpoints mismatch pair");
    std::set<int> seen;
    for (int v : path) {
      audit(inst.graph.has(v), "routing: path leaves the graph");
      audit(seen.insert(v).second, "routing: path not simple");
      vert_load[v]++;
    }
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      auto idx = inst.graph.find_edge(path[i], path[i + 1]);
      audit(idx.has_value(), "routing: path uses a non-edge");
      edge_load[*idx]++;
    }
  }
  if (inst.mode == Mode::Edp) {
    for (auto [idx, load] : edge_load)
      audit(load <= inst.graph.edges[idx].cap, "routing: edge capacity violated");
  } else {
    for (auto [v, load] : vert_load)
      audit(load <= inst.graph.node_cap(v), "routing: node capacity violated");
  }
}

Routing translate_routing(const Routing& r, const std::vector<int>& origin,
                          const TerminalPairs& original_pairs,
                          const TerminalPairs& normalized_pairs) {
  audit(original_pairs.size() == normalized_pairs.size(),
        "translate_routing: pair list size mismatch");
  Routing out;
  for (const auto& [pair, path] : r.paths) {
    std::vector<int> mapped;
    for (int v : path) {
      int ov = origin[v];
      if (mapped.empty() || mapped.back() != ov) mapped.push_back(ov);
    }
    // Leaf terminals map onto their originals; endpoints must match the
    // original pair after the projection.
    auto [s, t] = original_pairs.pairs[pair];
    audit(mapped.front() == s && mapped.back() == t,
          "translate_routing: endpoints do not project onto the original pair");
    out.paths.push_back({pair, std::move(mapped)});
  }
  return out;
}

}  // namespace twr
