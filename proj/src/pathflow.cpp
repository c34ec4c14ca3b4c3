#include "twr/pathflow.hpp"

#include <algorithm>

namespace twr {

Rat PathFlow::value() const {
  Rat v = 0;
  for (const auto& e : entries) v += e.weight;
  return v;
}

Rat PathFlow::marginal(int v) const {
  Rat x = 0;
  for (const auto& e : entries) {
    if (e.path.front() == v) x += e.weight;
    if (e.path.back() == v) x += e.weight;
  }
  return x;
}

std::map<int, Rat> PathFlow::marginals() const {
  std::map<int, Rat> x;
  for (const auto& e : entries) {
    x[e.path.front()] += e.weight;
    x[e.path.back()] += e.weight;
  }
  return x;
}

Rat PathFlow::pair_value(int pair) const {
  Rat v = 0;
  for (const auto& e : entries)
    if (e.pair == pair) v += e.weight;
  return v;
}

std::map<int, Rat> PathFlow::edge_loads(const CapGraph& g) const {
  std::map<int, Rat> load;
  for (const auto& e : entries)
    for (size_t i = 0; i + 1 < e.path.size(); ++i) {
      auto idx = g.find_edge(e.path[i], e.path[i + 1]);
      audit(idx.has_value(), "flow path uses a non-edge");
      load[*idx] += e.weight;
    }
  return load;
}

std::map<int, Rat> PathFlow::vertex_loads() const {
  std::map<int, Rat> load;
  for (const auto& e : entries)
    for (int v : e.path) load[v] += e.weight;
  return load;
}

bool PathFlow::feasible(const Instance& inst, Rat slack) const {
  if (inst.mode == Mode::Edp) {
    for (auto [idx, load] : edge_loads(inst.graph))
      if (load > Rat(inst.graph.edges[idx].cap) + slack) return false;
  } else {
    for (auto [v, load] : vertex_loads())
      if (load > Rat(inst.graph.node_cap(v)) + slack) return false;
  }
  for (const auto& e : entries)
    for (int v : e.path)
      if (!inst.graph.has(v)) return false;
  return true;
}

PathFlow PathFlow::scaled(const Rat& factor) const {
  PathFlow out = *this;
  for (auto& e : out.entries) e.weight *= factor;
  out.drop_zero_entries();
  return out;
}

PathFlow PathFlow::plus(const PathFlow& other) const {
  PathFlow out = *this;
  out.entries.insert(out.entries.end(), other.entries.begin(), other.entries.end());
  out.coalesce();
  return out;
}

PathFlow PathFlow::minus(const PathFlow& other) const {
  PathFlow out = *this;
  out.coalesce();
  for (const auto& oe : other.entries) {
    Rat remaining = oe.weight;
    for (auto& e : out.entries) {
      if (e.pair != oe.pair || e.path != oe.path) continue;
      Rat take = std::min(e.weight, remaining);
      e.weight -= take;
      remaining -= take;
      if (remaining == 0) break;
    }
    audit(remaining == 0, "flow subtraction: subtrahend is not a subflow");
  }
  out.drop_zero_entries();
  return out;
}

PathFlow PathFlow::restrict_to_pairs(const std::vector<char>& keep_pair) const {
  PathFlow out;
  for (const auto& e : entries)
    if (e.pair >= 0 && e.pair < static_cast<int>(keep_pair.size()) && keep_pair[e.pair])
      out.entries.push_back(e);
  return out;
}

PathFlow PathFlow::restrict_to_vertices(const std::function<bool(int)>& keep) const {
  PathFlow out;
  for (const auto& e : entries) {
    bool ok = true;
    for (int v : e.path)
      if (!keep(v)) { ok = false; break; }
    if (ok) out.entries.push_back(e);
  }
  return out;
}

std::vector<int> simplify_walk(const std::vector<int>& walk) {
  std::vector<int> out;
  std::map<int, int> pos;  // vertex -> index in out
  for (int v : walk) {
    auto it = pos.find(v);
    if (it != pos.end()) {
      // Loop: drop everything after the earlier occurrence.
      for (size_t i = it->second + 1; i < out.size(); ++i) pos.erase(out[i]);
      out.resize(it->second + 1);
    } else {
      pos[v] = static_cast<int>(out.size());
      out.push_back(v);
    }
  }
  return out;
}

void PathFlow::simplify_walks() {
  for (auto& e : entries) e.path = simplify_walk(e.path);
}

void PathFlow::drop_zero_entries() {
  std::erase_if(entries, [](const FlowEntry& e) { return e.weight == 0; });
}

void PathFlow::coalesce() {
  std::map<std::pair<int, std::vector<int>>, Rat> acc;
  for (const auto& e : entries) acc[{e.pair, e.path}] += e.weight;
  entries.clear();
  for (auto& [key, w] : acc)
    if (w != 0) entries.push_back({key.first, key.second, w});
}

Rat flow_value_checked(const PathFlow& f) {
  Rat total = f.value();
  Rat margin_sum = 0;
  for (auto& [v, x] : f.marginals()) margin_sum += x;
  audit(margin_sum == 2 * total, "corrupted flow: marginal identity violated");
  return total;
}

}  // namespace twr
