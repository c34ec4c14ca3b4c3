#pragma once

#include <iosfwd>
#include <optional>

#include "twr/decomp.hpp"

namespace twr {

// Directed flow network over exact rationals. "Infinite" arcs get capacity
// (sum of finite capacities + 1) at solve time, so they never cross a min cut.
struct FlowNetwork {
  struct Arc {
    int from = 0, to = 0;
    Rat cap;
    bool infinite = false;
  };

  int n = 0;
  int source = -1, sink = -1;
  std::vector<Arc> arcs;

  int add_node() { return n++; }
  int add_arc(int u, int v, const Rat& cap, bool infinite = false);

  Rat infinite_value() const;  // the capacity substituted for infinite arcs

  // DIMACS max-flow format (capacities rounded to doubles for readability).
  void dump(std::ostream& out) const;
};

struct CutCertificate {
  std::vector<int> side;       // network nodes on the source side
  Rat capacity;
  std::vector<int> saturated;  // arc indices crossing side -> rest
};

struct MaxFlowResult {
  Rat value;
  std::vector<Rat> arc_flow;  // per arc index
  CutCertificate cut;         // duality-checked: capacity == value
};

// Shortest-augmenting-path max flow; the returned cut is the residual-reachable
// (source-side-minimal) minimum cut.
MaxFlowResult max_flow_min_cut(const FlowNetwork& net);

// Maximum s-t flow subject to per-arc lower bounds (circulation reduction).
// Returns per-arc flows, or nullopt when no feasible flow meets the bounds.
std::optional<std::vector<Rat>> max_flow_lower_bounds(const FlowNetwork& net,
                                                      const std::vector<Rat>& lower,
                                                      Rat* value_out = nullptr);

// Greedy decomposition of nonnegative arc flows into source->sink paths with
// weights; leftover circulation (possible after lower-bound constructions) is
// discarded.
std::vector<std::pair<std::vector<int>, Rat>> decompose_flow(const FlowNetwork& net,
                                                             std::vector<Rat> arc_flow);

// Single-commodity view of a capacitated graph. Edp keeps one node per vertex
// with two opposite arcs per edge; Ndp splits v into in-node 2v and out-node
// 2v+1 joined by an arc of capacity cap(v), edges become infinite arcs.
struct GraphNetwork {
  FlowNetwork net;
  Mode mode = Mode::Edp;

  int in_node(int v) const { return mode == Mode::Edp ? v : 2 * v; }
  int out_node(int v) const { return mode == Mode::Edp ? v : 2 * v + 1; }
  int vertex_of(int node) const { return mode == Mode::Edp ? node : node / 2; }
};

GraphNetwork make_graph_network(const CapGraph& g, Mode mode);

// True iff no support path of f with an endpoint in gamma(t) avoids sigma(t).
bool is_good(const RootedDecomposition& d, int t, const PathFlow& f);

struct SafetyResult {
  bool safe = false;
  // Delivery flow, pair field = origin vertex; routes x(z)/(4r) from every
  // z in gamma(t) to sigma(t) inside G(t). Empty when unsafe.
  PathFlow witness;
  std::vector<int> cut_side;  // graph vertices on the source side (unsafe case)
  Rat deficit;                // x(gamma(t))/(4r) minus achieved flow
};

// Auxiliary-network safety test: super-source with arcs of capacity x(v)/(4r)
// into every v of gamma(t), infinite arcs from sigma(t) to a super-sink,
// capacities of G(t) in the instance's mode.
SafetyResult is_safe(const Instance& inst, const RootedDecomposition& d, int t,
                     const PathFlow& f, int r);

// For an unsafe node: the source side (minus the super-source) of the minimum
// cut above. Self-checks both properties before returning: the boundary cut is
// small against x(U), and sigma(s) inside U forces gamma(s) inside U for every
// node s below t.
std::vector<int> extract_violating_set(const Instance& inst, const RootedDecomposition& d,
                                       int t, const PathFlow& f, int r);

// Per support path with an endpoint z in gamma(t): its minimal prefix from z
// ending at sigma(t), same weight (both endpoints contribute when both lie in
// gamma(t)). Delivers x(z) from every z; feasible in G(t) after scaling by
// 1/(4r) whenever f was feasible. Throws if t is not good.
PathFlow prefix_truncate(const PathFlow& f, const RootedDecomposition& d, int t);

}  // namespace twr
