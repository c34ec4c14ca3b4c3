#pragma once

#include <iosfwd>
#include <vector>

#include "twr/pathflow.hpp"

namespace twr {

// Rooted tree (or path) decomposition. Node ids are 0..node_count()-1; bags
// hold sorted vertex ids of the graph's universe.
struct RootedDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<int> parent;  // -1 at the root
  int root = 0;
  bool is_path = false;

  int node_count() const { return static_cast<int>(bags.size()); }
  std::vector<std::vector<int>> children() const;

  // sigma(t) = bag(t) ∩ bag(parent(t)), empty at the root.
  std::vector<int> sigma(int t) const;
  // gamma(t) = union of bags over the subtree rooted at t.
  std::vector<int> gamma(int t) const;
  // alpha(t) = gamma(t) \ sigma(t).
  std::vector<int> alpha(int t) const;
  // Nodes of the subtree rooted at t, preorder.
  std::vector<int> subtree(int t) const;

  // Restriction of every bag to the given vertex set (no node removal).
  RootedDecomposition restricted_to(const std::vector<char>& keep) const;
};

// Returns width (max bag size - 1); throws InputError naming the violated
// decomposition property and a witness.
int validate(const RootedDecomposition& d, const CapGraph& g);

// G(t) = G[gamma(t)] minus the edges inside sigma(t).
CapGraph graph_at(const RootedDecomposition& d, const CapGraph& g, int t);

CapGraph torso(const RootedDecomposition& d, const CapGraph& g, int t);

struct SubProblem {
  Instance inst;
  RootedDecomposition decomp;
  PathFlow flow;
};

// Splits into connected components, removes empty bags (children re-attach to
// the nearest nonempty ancestor), and re-roots each component at its topmost
// nonempty bag. Flow paths are routed to their component.
std::vector<SubProblem> preprocess(const Instance& inst, const RootedDecomposition& d,
                                   const PathFlow& f);

// Boundary construction: bag at position p holds o_p plus every earlier vertex
// with a neighbor at or after p; rooted at the first bag.
RootedDecomposition path_decomposition_from_order(const CapGraph& g,
                                                  const std::vector<int>& order);

// Min-fill elimination-ordering heuristic; for want_path, a path decomposition
// from the boundary construction over the same ordering. Always validated.
RootedDecomposition heuristic_decomposition(const CapGraph& g, bool want_path);

// PACE-2017 .td format.
RootedDecomposition parse_td(std::istream& in, bool want_path = false);
void emit_td(std::ostream& out, const RootedDecomposition& d, int n);

}  // namespace twr
