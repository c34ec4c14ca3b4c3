#include "twr/decomp.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

namespace twr {

namespace {

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<std::vector<int>> RootedDecomposition::children() const {
  std::vector<std::vector<int>> ch(node_count());
  for (int t = 0; t < node_count(); ++t)
    if (parent[t] >= 0) ch[parent[t]].push_back(t);
  return ch;
}

std::vector<int> RootedDecomposition::sigma(int t) const {
  if (parent[t] < 0) return {};
  return sorted_intersection(bags[t], bags[parent[t]]);
}

std::vector<int> RootedDecomposition::subtree(int t) const {
  auto ch = children();
  std::vector<int> order, stack{t};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (int c : ch[u]) stack.push_back(c);
  }
  return order;
}

std::vector<int> RootedDecomposition::gamma(int t) const {
  std::set<int> acc;
  for (int u : subtree(t)) acc.insert(bags[u].begin(), bags[u].end());
  return {acc.begin(), acc.end()};
}

std::vector<int> RootedDecomposition::alpha(int t) const {
  auto g = gamma(t), s = sigma(t);
  std::vector<int> out;
  std::set_difference(g.begin(), g.end(), s.begin(), s.end(), std::back_inserter(out));
  return out;
}

RootedDecomposition RootedDecomposition::restricted_to(const std::vector<char>& keep) const {
  RootedDecomposition out = *this;
  for (auto& bag : out.bags) {
    std::erase_if(bag, [&](int v) {
      return v >= static_cast<int>(keep.size()) || !keep[v];
    });
  }
  return out;
}

int validate(const RootedDecomposition& d, const CapGraph& g) {
  require(d.node_count() > 0, "decomposition has no nodes");
  // Tree shape sanity.
  require(d.root >= 0 && d.root < d.node_count() && d.parent[d.root] == -1,
          "decomposition root/parent mismatch");
  {
    int reached = static_cast<int>(d.subtree(d.root).size());
    require(reached == d.node_count(), "decomposition parent relation is not a tree");
  }
  if (d.is_path) {
    auto ch = d.children();
    for (int t = 0; t < d.node_count(); ++t)
      require(ch[t].size() <= 1, "path decomposition has a branching node");
  }

  std::vector<char> in_bag(g.n, 0);
  for (const auto& e : g.edges) {
    bool covered = false;
    for (const auto& bag : d.bags) {
      bool has_u = std::binary_search(bag.begin(), bag.end(), e.u);
      bool has_v = std::binary_search(bag.begin(), bag.end(), e.v);
      if (has_u && has_v) { covered = true; break; }
    }
    require(covered, "uncovered edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
  }
  auto ch = d.children();
  for (int v : g.verts) {
    std::vector<int> holders;
    for (int t = 0; t < d.node_count(); ++t)
      if (std::binary_search(d.bags[t].begin(), d.bags[t].end(), v)) holders.push_back(t);
    require(!holders.empty(), "vertex " + std::to_string(v) + " in no bag");
    // BFS within holder set from the first holder.
    std::set<int> hs(holders.begin(), holders.end());
    std::set<int> seen{holders[0]};
    std::queue<int> q;
    q.push(holders[0]);
    while (!q.empty()) {
      int t = q.front();
      q.pop();
      std::vector<int> nb = ch[t];
      if (d.parent[t] >= 0) nb.push_back(d.parent[t]);
      for (int u : nb)
        if (hs.count(u) && !seen.count(u)) { seen.insert(u); q.push(u); }
    }
    require(seen.size() == hs.size(),
            "disconnected occurrence set for vertex " + std::to_string(v));
    (void)in_bag;
  }
  int width = 0;
  for (const auto& bag : d.bags) width = std::max(width, static_cast<int>(bag.size()) - 1);
  return width;
}

CapGraph graph_at(const RootedDecomposition& d, const CapGraph& g, int t) {
  CapGraph out = induced_subgraph(g, d.gamma(t));
  auto s = d.sigma(t);
  std::erase_if(out.edges, [&](const CapGraph::Edge& e) {
    return std::binary_search(s.begin(), s.end(), e.u) &&
           std::binary_search(s.begin(), s.end(), e.v);
  });
  out.rebuild_adj();
  return out;
}

CapGraph torso(const RootedDecomposition& d, const CapGraph& g, int t) {
  CapGraph out = induced_subgraph(g, d.bags[t]);
  std::vector<std::vector<int>> adhesions;
  if (d.parent[t] >= 0) adhesions.push_back(d.sigma(t));
  for (int c = 0; c < d.node_count(); ++c)
    if (d.parent[c] == t) adhesions.push_back(d.sigma(c));
  for (const auto& adh : adhesions)
    for (size_t i = 0; i < adh.size(); ++i)
      for (size_t j = i + 1; j < adh.size(); ++j)
        if (!out.find_edge(adh[i], adh[j])) out.add_edge(adh[i], adh[j], 1);
  return out;
}

std::vector<SubProblem> preprocess(const Instance& inst, const RootedDecomposition& d,
                                   const PathFlow& f) {
  // Connected components of the active graph.
  std::vector<int> comp(inst.graph.n, -1);
  int ncomp = 0;
  for (int s : inst.graph.verts) {
    if (comp[s] >= 0) continue;
    std::queue<int> q;
    q.push(s);
    comp[s] = ncomp;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (auto [w, idx] : inst.graph.adj[u])
        if (comp[w] < 0) { comp[w] = ncomp; q.push(w); }
    }
    ++ncomp;
  }

  std::vector<SubProblem> out;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<char> keep(inst.graph.n, 0);
    std::vector<int> members;
    for (int v : inst.graph.verts)
      if (comp[v] == c) { keep[v] = 1; members.push_back(v); }

    SubProblem sp;
    sp.inst.graph = induced_subgraph(inst.graph, members);
    sp.inst.mode = inst.mode;
    sp.inst.pairs = inst.pairs;  // keep pair indices stable; filter flow only
    std::vector<char> pair_in(inst.pairs.size(), 0);
    for (int i = 0; i < inst.pairs.size(); ++i) {
      auto [s, t] = inst.pairs.pairs[i];
      if (keep[s] && keep[t]) pair_in[i] = 1;
    }
    sp.flow = f.restrict_to_pairs(pair_in).restrict_to_vertices([&](int v) { return keep[v] != 0; });

    // Restrict bags, then delete empty bags re-attaching to the nearest
    // nonempty ancestor; the component's connectivity keeps that set a tree.
    RootedDecomposition rd = d.restricted_to(keep);
    std::vector<int> new_id(rd.node_count(), -1);
    std::vector<int> kept;
    for (int t : rd.subtree(rd.root))
      if (!rd.bags[t].empty()) {
        new_id[t] = static_cast<int>(kept.size());
        kept.push_back(t);
      }
    require(!kept.empty(), "preprocess: component with no nonempty bag");
    SubProblem& ref = sp;
    RootedDecomposition nd;
    nd.is_path = rd.is_path;
    for (int t : kept) {
      nd.bags.push_back(rd.bags[t]);
      int p = rd.parent[t];
      while (p >= 0 && new_id[p] < 0) p = rd.parent[p];
      nd.parent.push_back(p < 0 ? -1 : new_id[p]);
    }
    int roots = 0;
    for (int t = 0; t < nd.node_count(); ++t)
      if (nd.parent[t] < 0) { nd.root = t; ++roots; }
    require(roots == 1, "preprocess: nonempty bags do not induce a connected subtree");
    ref.decomp = std::move(nd);
    validate(ref.decomp, ref.inst.graph);
    out.push_back(std::move(sp));
  }
  return out;
}

RootedDecomposition path_decomposition_from_order(const CapGraph& g,
                                                  const std::vector<int>& order) {
  std::vector<int> pos(g.n, -1);
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  RootedDecomposition d;
  d.is_path = true;
  for (size_t i = 0; i < order.size(); ++i) {
    std::vector<int> bag{order[i]};
    for (size_t j = 0; j < i; ++j) {
      int v = order[j];
      for (auto [w, idx] : g.adj[v])
        if (pos[w] >= static_cast<int>(i)) { bag.push_back(v); break; }
    }
    std::sort(bag.begin(), bag.end());
    d.bags.push_back(bag);
    d.parent.push_back(i == 0 ? -1 : static_cast<int>(i) - 1);
  }
  d.root = 0;
  return d;
}

RootedDecomposition heuristic_decomposition(const CapGraph& g, bool want_path) {
  require(g.vertex_count() > 0, "heuristic_decomposition: empty graph");
  // Min-fill elimination ordering over a working adjacency-set copy.
  std::map<int, std::set<int>> nb;
  for (int v : g.verts) nb[v] = {};
  for (const auto& e : g.edges) {
    nb[e.u].insert(e.v);
    nb[e.v].insert(e.u);
  }
  auto fill_count = [&](int v) {
    long long f = 0;
    std::vector<int> ns(nb[v].begin(), nb[v].end());
    for (size_t i = 0; i < ns.size(); ++i)
      for (size_t j = i + 1; j < ns.size(); ++j)
        if (!nb[ns[i]].count(ns[j])) ++f;
    return f;
  };
  std::vector<int> order;
  std::vector<std::vector<int>> elim_bag;
  std::map<int, int> elim_pos;
  while (!nb.empty()) {
    int best = -1;
    long long best_fill = -1;
    for (auto& [v, s] : nb) {
      long long f = fill_count(v);
      if (best < 0 || f < best_fill || (f == best_fill && v < best)) {
        best = v;
        best_fill = f;
      }
    }
    std::vector<int> bag{best};
    bag.insert(bag.end(), nb[best].begin(), nb[best].end());
    std::sort(bag.begin(), bag.end());
    elim_pos[best] = static_cast<int>(order.size());
    order.push_back(best);
    elim_bag.push_back(bag);
    std::vector<int> ns(nb[best].begin(), nb[best].end());
    for (size_t i = 0; i < ns.size(); ++i)
      for (size_t j = i + 1; j < ns.size(); ++j) {
        nb[ns[i]].insert(ns[j]);
        nb[ns[j]].insert(ns[i]);
      }
    for (int u : ns) nb[u].erase(best);
    nb.erase(best);
  }

  if (want_path) {
    RootedDecomposition d = path_decomposition_from_order(g, order);
    validate(d, g);
    return d;
  }

  RootedDecomposition d;
  d.bags = elim_bag;
  d.parent.assign(d.node_count(), -1);
  int n_nodes = d.node_count();
  for (int i = 0; i < n_nodes; ++i) {
    // Parent: node of the earliest-eliminated vertex among the bag's later
    // vertices; isolated bags chain to the next node.
    int p = -1;
    for (int v : d.bags[i])
      if (elim_pos[v] > i && (p < 0 || elim_pos[v] < p)) p = elim_pos[v];
    if (p < 0 && i + 1 < n_nodes) p = i + 1;
    d.parent[i] = p;
  }
  d.root = n_nodes - 1;
  validate(d, g);
  return d;
}

RootedDecomposition parse_td(std::istream& in, bool want_path) {
  std::string line;
  int nbags = -1, n = -1;
  RootedDecomposition d;
  std::vector<std::pair<int, int>> tree_edges;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ss(line);
    std::string tok;
    ss >> tok;
    if (tok == "s") {
      std::string td;
      int maxbag;
      ss >> td >> nbags >> maxbag >> n;
      require(td == "td", "malformed .td header");
      d.bags.assign(nbags, {});
    } else if (tok == "b") {
      int id;
      ss >> id;
      require(id >= 1 && id <= nbags, ".td bag id out of range");
      int v;
      while (ss >> v) d.bags[id - 1].push_back(v - 1);
      std::sort(d.bags[id - 1].begin(), d.bags[id - 1].end());
    } else {
      int a = std::stoi(tok), b;
      ss >> b;
      tree_edges.push_back({a - 1, b - 1});
    }
  }
  require(nbags >= 1, ".td file without header");
  require(static_cast<int>(tree_edges.size()) == nbags - 1, ".td tree edge count mismatch");
  std::vector<std::vector<int>> adj(nbags);
  for (auto [a, b] : tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  int root = 0;
  if (want_path) {
    for (int t = 0; t < nbags; ++t)
      require(adj[t].size() <= 2, ".td is not a path decomposition");
    for (int t = 0; t < nbags; ++t)
      if (adj[t].size() <= 1) { root = t; break; }
    d.is_path = true;
  }
  d.parent.assign(nbags, -1);
  d.root = root;
  std::queue<int> q;
  std::vector<char> seen(nbags, 0);
  q.push(root);
  seen[root] = 1;
  while (!q.empty()) {
    int t = q.front();
    q.pop();
    for (int u : adj[t])
      if (!seen[u]) {
        seen[u] = 1;
        d.parent[u] = t;
        q.push(u);
      }
  }
  for (int t = 0; t < nbags; ++t) require(seen[t], ".td tree edges are disconnected");
  return d;
}

void emit_td(std::ostream& out, const RootedDecomposition& d, int n) {
  int maxbag = 0;
  for (const auto& bag : d.bags) maxbag = std::max(maxbag, static_cast<int>(bag.size()));
  out << "s td " << d.node_count() << " " << maxbag << " " << n << "\n";
  for (int t = 0; t < d.node_count(); ++t) {
    out << "b " << t + 1;
    for (int v : d.bags[t]) out << " " << v + 1;
    out << "\n";
  }
  for (int t = 0; t < d.node_count(); ++t)
    if (d.parent[t] >= 0) out << d.parent[t] + 1 << " " << t + 1 << "\n";
}

}  // namespace twr
