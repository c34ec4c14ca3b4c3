#include "twr/flowkit.hpp"

#include <algorithm>
#include <ostream>
#include <queue>
#include <set>

namespace twr {

int FlowNetwork::add_arc(int u, int v, const Rat& cap, bool infinite) {
  require(u >= 0 && u < n && v >= 0 && v < n, "arc endpoint out of range");
  require(cap >= 0, "negative arc capacity");
  arcs.push_back({u, v, cap, infinite});
  return static_cast<int>(arcs.size()) - 1;
}

Rat FlowNetwork::infinite_value() const {
  Rat total = 1;
  for (const auto& a : arcs)
    if (!a.infinite) total += a.cap;
  return total;
}

void FlowNetwork::dump(std::ostream& out) const {
  out << "p max " << n << " " << arcs.size() << "\n";
  out << "n " << source + 1 << " s\n";
  out << "n " << sink + 1 << " t\n";
  Rat inf = infinite_value();
  for (const auto& a : arcs)
    out << "a " << a.from + 1 << " " << a.to + 1 << " "
        << approx(a.infinite ? inf : a.cap) << "\n";
}

namespace {

// Residual graph with paired edges (i, i^1).
struct Res {
  int n;
  std::vector<std::vector<int>> adj;
  std::vector<int> to;
  std::vector<Rat> cap;

  explicit Res(int n_) : n(n_), adj(n_) {}

  int add(int u, int v, Rat fwd, Rat bwd = 0) {
    int i = static_cast<int>(to.size());
    to.push_back(v);
    cap.push_back(std::move(fwd));
    adj[u].push_back(i);
    to.push_back(u);
    cap.push_back(std::move(bwd));
    adj[v].push_back(i + 1);
    return i;
  }

  // Edmonds-Karp: repeat shortest augmenting paths until none remain.
  Rat augment_all(int s, int t) {
    Rat total = 0;
    std::vector<int> pre(n);
    for (;;) {
      std::fill(pre.begin(), pre.end(), -1);
      pre[s] = -2;
      std::queue<int> q;
      q.push(s);
      while (!q.empty() && pre[t] == -1) {
        int u = q.front();
        q.pop();
        for (int e : adj[u])
          if (cap[e] > 0 && pre[to[e]] == -1) {
            pre[to[e]] = e;
            q.push(to[e]);
          }
      }
      if (pre[t] == -1) return total;
      Rat aug;
      bool first = true;
      for (int v = t; v != s; v = to[pre[v] ^ 1]) {
        if (first || cap[pre[v]] < aug) aug = cap[pre[v]];
        first = false;
      }
      for (int v = t; v != s; v = to[pre[v] ^ 1]) {
        cap[pre[v]] -= aug;
        cap[pre[v] ^ 1] += aug;
      }
      total += aug;
    }
  }

  std::vector<char> reachable(int s) const {
    std::vector<char> seen(n, 0);
    seen[s] = 1;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e : adj[u])
        if (cap[e] > 0 && !seen[to[e]]) {
          seen[to[e]] = 1;
          q.push(to[e]);
        }
    }
    return seen;
  }
};

}  // namespace

MaxFlowResult max_flow_min_cut(const FlowNetwork& net) {
  require(net.source >= 0 && net.sink >= 0 && net.source != net.sink,
          "network needs distinct source and sink");
  Rat inf = net.infinite_value();
  Res res(net.n);
  std::vector<int> fwd(net.arcs.size());
  for (size_t i = 0; i < net.arcs.size(); ++i)
    fwd[i] = res.add(net.arcs[i].from, net.arcs[i].to,
                     net.arcs[i].infinite ? inf : net.arcs[i].cap);

  MaxFlowResult out;
  out.value = res.augment_all(net.source, net.sink);
  out.arc_flow.resize(net.arcs.size());
  for (size_t i = 0; i < net.arcs.size(); ++i) {
    Rat c = net.arcs[i].infinite ? inf : net.arcs[i].cap;
    out.arc_flow[i] = c - res.cap[fwd[i]];
  }
  auto seen = res.reachable(net.source);
  for (int v = 0; v < net.n; ++v)
    if (seen[v]) out.cut.side.push_back(v);
  out.cut.capacity = 0;
  for (size_t i = 0; i < net.arcs.size(); ++i)
    if (seen[net.arcs[i].from] && !seen[net.arcs[i].to]) {
      audit(!net.arcs[i].infinite, "infinite arc crosses a min cut");
      out.cut.capacity += net.arcs[i].cap;
      out.cut.saturated.push_back(static_cast<int>(i));
    }
  audit(out.cut.capacity == out.value, "max-flow/min-cut duality violated");
  return out;
}

std::optional<std::vector<Rat>> max_flow_lower_bounds(const FlowNetwork& net,
                                                      const std::vector<Rat>& lower,
                                                      Rat* value_out) {
  require(lower.size() == net.arcs.size(), "lower bound list size mismatch");
  Rat inf = net.infinite_value();
  auto cap_of = [&](size_t i) { return net.arcs[i].infinite ? inf : net.arcs[i].cap; };
  for (size_t i = 0; i < net.arcs.size(); ++i)
    require(lower[i] >= 0 && lower[i] <= cap_of(i), "lower bound outside [0, cap]");

  // Circulation reduction: saturate the lower bounds, balance the excess via a
  // super source/sink, close the s-t pair with an infinite return arc.
  int SS = net.n, TT = net.n + 1;
  Res res(net.n + 2);
  std::vector<int> fwd(net.arcs.size());
  std::vector<Rat> excess(net.n, 0);
  Rat big = inf;
  for (size_t i = 0; i < net.arcs.size(); ++i) {
    fwd[i] = res.add(net.arcs[i].from, net.arcs[i].to, cap_of(i) - lower[i]);
    excess[net.arcs[i].to] += lower[i];
    excess[net.arcs[i].from] -= lower[i];
    big += cap_of(i);
  }
  int ts = res.add(net.sink, net.source, big);
  Rat need = 0;
  for (int v = 0; v < net.n; ++v) {
    if (excess[v] > 0) {
      res.add(SS, v, excess[v]);
      need += excess[v];
    } else if (excess[v] < 0) {
      res.add(v, TT, -excess[v]);
    }
  }
  if (res.augment_all(SS, TT) != need) return std::nullopt;
  // Kill the return arc, then maximize on top of the feasible base flow.
  res.cap[ts] = 0;
  res.cap[ts ^ 1] = 0;
  res.augment_all(net.source, net.sink);

  std::vector<Rat> flow(net.arcs.size());
  for (size_t i = 0; i < net.arcs.size(); ++i)
    flow[i] = lower[i] + (cap_of(i) - lower[i] - res.cap[fwd[i]]);
  if (value_out) {
    Rat v = 0;
    for (size_t i = 0; i < net.arcs.size(); ++i) {
      if (net.arcs[i].from == net.source) v += flow[i];
      if (net.arcs[i].to == net.source) v -= flow[i];
    }
    *value_out = v;
  }
  return flow;
}

std::vector<std::pair<std::vector<int>, Rat>> decompose_flow(const FlowNetwork& net,
                                                             std::vector<Rat> arc_flow) {
  require(arc_flow.size() == net.arcs.size(), "arc flow size mismatch");
  std::vector<std::vector<int>> out_arcs(net.n);
  for (size_t i = 0; i < net.arcs.size(); ++i)
    if (arc_flow[i] > 0) out_arcs[net.arcs[i].from].push_back(static_cast<int>(i));

  std::vector<std::pair<std::vector<int>, Rat>> paths;
  for (;;) {
    // DFS for a simple source->sink path through positive-flow arcs.
    std::vector<int> arc_stack;
    std::vector<char> on_path(net.n, 0);
    std::vector<size_t> iter(net.n, 0);
    std::vector<int> node_stack{net.source};
    on_path[net.source] = 1;
    bool found = false;
    while (!node_stack.empty()) {
      int u = node_stack.back();
      if (u == net.sink) { found = true; break; }
      bool advanced = false;
      while (iter[u] < out_arcs[u].size()) {
        int a = out_arcs[u][iter[u]++];
        if (arc_flow[a] <= 0 || on_path[net.arcs[a].to]) continue;
        arc_stack.push_back(a);
        node_stack.push_back(net.arcs[a].to);
        on_path[net.arcs[a].to] = 1;
        advanced = true;
        break;
      }
      if (!advanced) {
        node_stack.pop_back();
        on_path[u] = 0;
        iter[u] = 0;
        if (!arc_stack.empty()) arc_stack.pop_back();
      }
    }
    if (!found) break;
    Rat bottleneck = arc_flow[arc_stack[0]];
    for (int a : arc_stack) bottleneck = std::min(bottleneck, arc_flow[a]);
    for (int a : arc_stack) arc_flow[a] -= bottleneck;
    std::vector<int> nodes{net.source};
    for (int a : arc_stack) nodes.push_back(net.arcs[a].to);
    paths.push_back({std::move(nodes), bottleneck});
  }
  return paths;
}

GraphNetwork make_graph_network(const CapGraph& g, Mode mode) {
  GraphNetwork gn;
  gn.mode = mode;
  gn.net.n = mode == Mode::Edp ? g.n : 2 * g.n;
  if (mode == Mode::Edp) {
    for (const auto& e : g.edges) {
      gn.net.add_arc(e.u, e.v, e.cap);
      gn.net.add_arc(e.v, e.u, e.cap);
    }
  } else {
    for (int v : g.verts) gn.net.add_arc(2 * v, 2 * v + 1, g.node_cap(v));
    for (const auto& e : g.edges) {
      gn.net.add_arc(2 * e.u + 1, 2 * e.v, 0, true);
      gn.net.add_arc(2 * e.v + 1, 2 * e.u, 0, true);
    }
  }
  return gn;
}

namespace {

std::vector<char> mask_of(const std::vector<int>& vs, int n) {
  std::vector<char> m(n, 0);
  for (int v : vs)
    if (v >= 0 && v < n) m[v] = 1;
  return m;
}

struct AuxNetwork {
  GraphNetwork gn;
  int s_star = -1, t_star = -1;
  Rat target;  // x(gamma(t)) / 4r
  std::vector<int> gamma, sigma;
};

AuxNetwork build_safety_network(const Instance& inst, const RootedDecomposition& d, int t,
                                const PathFlow& f, int r) {
  require(r >= 1, "r must be >= 1");
  AuxNetwork aux;
  CapGraph gt = graph_at(d, inst.graph, t);
  aux.gn = make_graph_network(gt, inst.mode);
  aux.gamma = d.gamma(t);
  aux.sigma = d.sigma(t);
  aux.s_star = aux.gn.net.add_node();
  aux.t_star = aux.gn.net.add_node();
  aux.gn.net.source = aux.s_star;
  aux.gn.net.sink = aux.t_star;
  auto x = f.marginals();
  aux.target = 0;
  Rat quarter_r(1, 4 * r);
  for (int v : aux.gamma) {
    auto it = x.find(v);
    if (it == x.end() || it->second == 0) continue;
    Rat c = it->second * quarter_r;
    aux.gn.net.add_arc(aux.s_star, aux.gn.in_node(v), c);
    aux.target += c;
  }
  for (int v : aux.sigma) aux.gn.net.add_arc(aux.gn.out_node(v), aux.t_star, 0, true);
  return aux;
}

// Maps a network node path (super nodes stripped) back to graph vertices,
// collapsing in/out copies.
std::vector<int> vertex_path(const GraphNetwork& gn, const std::vector<int>& nodes,
                             int skip_front, int skip_back) {
  std::vector<int> out;
  for (size_t i = skip_front; i + skip_back < nodes.size(); ++i) {
    int v = gn.vertex_of(nodes[i]);
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return out;
}

std::vector<int> cut_side_vertices(const GraphNetwork& gn, const std::vector<int>& side,
                                   int graph_n) {
  std::vector<char> in_node(2 * graph_n + 2, 0);
  for (int v : side)
    if (v < 2 * graph_n) in_node[v] = 1;
  std::vector<int> out;
  if (gn.mode == Mode::Edp) {
    for (int v = 0; v < graph_n; ++v)
      if (v < static_cast<int>(in_node.size()) && in_node[v]) out.push_back(v);
  } else {
    for (int v = 0; v < graph_n; ++v)
      if (in_node[2 * v] && in_node[2 * v + 1]) out.push_back(v);
  }
  return out;
}

}  // namespace

bool is_good(const RootedDecomposition& d, int t, const PathFlow& f) {
  int n = 0;
  for (const auto& bag : d.bags)
    for (int v : bag) n = std::max(n, v + 1);
  for (const auto& e : f.entries)
    for (int v : e.path) n = std::max(n, v + 1);
  auto gamma = mask_of(d.gamma(t), n);
  auto sigma = mask_of(d.sigma(t), n);
  for (const auto& e : f.entries) {
    if (e.weight == 0) continue;
    bool endpoint_in = gamma[e.path.front()] || gamma[e.path.back()];
    if (!endpoint_in) continue;
    bool touches = false;
    for (int v : e.path)
      if (sigma[v]) { touches = true; break; }
    if (!touches) return false;
  }
  return true;
}

SafetyResult is_safe(const Instance& inst, const RootedDecomposition& d, int t,
                     const PathFlow& f, int r) {
  SafetyResult out;
  AuxNetwork aux = build_safety_network(inst, d, t, f, r);
  if (aux.target == 0) {
    out.safe = true;
    out.deficit = 0;
    return out;
  }
  auto mf = max_flow_min_cut(aux.gn.net);
  out.deficit = aux.target - mf.value;
  if (mf.value == aux.target) {
    out.safe = true;
    for (auto& [nodes, w] : decompose_flow(aux.gn.net, mf.arc_flow)) {
      std::vector<int> p = vertex_path(aux.gn, nodes, 1, 1);
      audit(!p.empty(), "safety witness: empty delivery path");
      out.witness.entries.push_back({p.front(), std::move(p), w});
    }
  } else {
    out.safe = false;
    out.cut_side = cut_side_vertices(aux.gn, mf.cut.side, inst.graph.n);
  }
  return out;
}

std::vector<int> extract_violating_set(const Instance& inst, const RootedDecomposition& d,
                                       int t, const PathFlow& f, int r) {
  AuxNetwork aux = build_safety_network(inst, d, t, f, r);
  require(aux.target > 0, "extract_violating_set on a node with zero marginals");
  auto mf = max_flow_min_cut(aux.gn.net);
  require(mf.value < aux.target, "extract_violating_set on a safe node");
  std::vector<int> U = cut_side_vertices(aux.gn, mf.cut.side, inst.graph.n);
  audit(!U.empty(), "violating set extraction produced an empty set");

  // Self-checks. Containment in alpha(t):
  auto alpha = mask_of(d.alpha(t), inst.graph.n);
  for (int v : U) audit(alpha[v], "violating set leaves alpha(t)");
  auto x = f.marginals();
  Rat xu = 0;
  auto in_u = mask_of(U, inst.graph.n);
  for (int v : U) {
    auto it = x.find(v);
    if (it != x.end()) xu += it->second;
  }
  CapGraph gt = graph_at(d, inst.graph, t);
  Rat boundary = 0;
  if (inst.mode == Mode::Edp) {
    for (const auto& e : gt.edges)
      if (in_u[e.u] != in_u[e.v]) boundary += e.cap;
    audit(boundary * (4 * r) < xu, "violating set: edge-cut bound failed");
  } else {
    std::set<int> nu;
    for (const auto& e : gt.edges) {
      if (in_u[e.u] && !in_u[e.v]) nu.insert(e.v);
      if (in_u[e.v] && !in_u[e.u]) nu.insert(e.u);
    }
    for (int v : nu) boundary += gt.node_cap(v);
    audit(boundary * (4 * r - 1) < xu, "violating set: node-cut bound failed");
  }
  // Adhesion closure: sigma(s) inside U forces gamma(s) inside U, for every
  // node s strictly below t.
  for (int s : d.subtree(t)) {
    if (s == t) continue;
    auto sig = d.sigma(s);
    bool sig_in = !sig.empty();
    for (int v : sig)
      if (!in_u[v]) { sig_in = false; break; }
    if (!sig_in) continue;
    for (int v : d.gamma(s))
      audit(in_u[v], "violating set: adhesion closure failed");
  }
  return U;
}

PathFlow prefix_truncate(const PathFlow& f, const RootedDecomposition& d, int t) {
  int n = 0;
  for (const auto& bag : d.bags)
    for (int v : bag) n = std::max(n, v + 1);
  for (const auto& e : f.entries)
    for (int v : e.path) n = std::max(n, v + 1);
  auto gamma = mask_of(d.gamma(t), n);
  auto sigma = mask_of(d.sigma(t), n);
  PathFlow out;
  for (const auto& e : f.entries) {
    if (e.weight == 0) continue;
    for (bool reversed : {false, true}) {
      std::vector<int> p = e.path;
      if (reversed) {
        if (p.size() == 1) break;  // single vertex: one endpoint only
        std::reverse(p.begin(), p.end());
      }
      if (!gamma[p.front()]) continue;
      size_t j = 0;
      while (j < p.size() && !sigma[p[j]]) ++j;
      require(j < p.size(), "prefix_truncate: support path avoids the adhesion (node not good)");
      p.resize(j + 1);
      out.entries.push_back({p.front(), std::move(p), e.weight});
    }
  }
  return out;
}

}  // namespace twr
