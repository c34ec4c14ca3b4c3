#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twr/types.hpp"

namespace twr {

enum class Mode { Edp, Ndp };

inline const char* mode_name(Mode m) { return m == Mode::Edp ? "edp" : "ndp"; }

// Undirected capacitated graph over a fixed universe of vertex ids 0..n-1.
// Only the ids in `verts` are active; subgraphs produced during the recursion
// keep the original id space so flows and routings never need remapping.
struct CapGraph {
  struct Edge {
    int u = 0, v = 0;  // u < v
    long long cap = 1;
  };

  int n = 0;
  std::vector<int> verts;              // sorted active ids
  std::vector<char> active;            // size n
  std::vector<Edge> edges;
  std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbor, edge idx)
  std::vector<long long> node_caps;    // size n when node-capacitated, else empty
  std::vector<std::string> labels;     // optional original labels, size n

  CapGraph() = default;
  explicit CapGraph(int n_, bool all_active = true);

  bool has(int v) const { return v >= 0 && v < n && active[v]; }
  int vertex_count() const { return static_cast<int>(verts.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  bool node_capacitated() const { return !node_caps.empty(); }
  long long node_cap(int v) const { return node_caps.empty() ? 1 : node_caps[v]; }

  // Adds an edge, folding parallel edges by summing capacities. Self-loops
  // are rejected.
  void add_edge(int u, int v, long long cap);
  std::optional<int> find_edge(int u, int v) const;

  // Appends a fresh vertex to the universe and returns its id.
  int add_vertex(long long node_cap = 1);

  void rebuild_adj();
};

struct TerminalPairs {
  std::vector<std::pair<int, int>> pairs;

  int size() const { return static_cast<int>(pairs.size()); }
  // True iff every terminal occurs in exactly one pair and s != t throughout.
  bool is_matching() const;
  std::vector<int> terminals() const;  // sorted, unique
};

struct Instance {
  CapGraph graph;
  TerminalPairs pairs;
  Mode mode = Mode::Edp;

  void check_valid() const;
};

// Result of terminal normalization; `origin` maps every vertex of the new
// universe to the original vertex it stands for (identity on old vertices).
struct NormalizedInstance {
  Instance inst;
  std::vector<int> origin;
};

NormalizedInstance normalize_terminals(const Instance& in);

CapGraph induced_subgraph(const CapGraph& g, const std::vector<int>& s);

bool is_separation(const CapGraph& g, const std::vector<int>& a,
                   const std::vector<int>& b);

// Routing: one simple path per routed pair, ids into the instance's pair list.
struct Routing {
  std::vector<std::pair<int, std::vector<int>>> paths;

  int size() const { return static_cast<int>(paths.size()); }
  // Recomputes all loads from scratch and checks them against capacities and
  // the pair endpoints. Throws AuditError on violation.
  void audit_feasible(const Instance& inst) const;
};

// Rewrites a routing of a normalized instance as a routing of the original.
Routing translate_routing(const Routing& r, const std::vector<int>& origin,
                          const TerminalPairs& original_pairs,
                          const TerminalPairs& normalized_pairs);

}  // namespace twr
