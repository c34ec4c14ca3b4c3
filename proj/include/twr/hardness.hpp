#pragma once

#include <iosfwd>
#include <map>

#include "twr/graph.hpp"

namespace twr {

// Multicolored Clique instance: k classes of n vertices each, vertex a of
// class i has global id i*n + a; edges join different classes only.
struct MCCInstance {
  int k = 0, n = 0;
  std::vector<std::pair<int, int>> edges;

  int cls(int v) const { return v / n; }
  void check_valid() const;
};

// {k, n, edges: [[v, u], ...]} as a json document.
MCCInstance parse_mcc(std::istream& in);

// The reduction output: unit-node-capacity instance plus role tables. Class
// and path indices are 0-based; the per-class distinguished vertex u^i is the
// smallest id (index 0). The pairwise cut vertices p_{i,j} are held in `cut`.
struct GadgetOutput {
  Instance inst;  // ndp, unit caps
  int k = 0, n = 0;
  long long ell = 0;

  // x[i][a][j]: vertex of the class-i path of member a at position j (-1 at
  // j == i); s[i][a], t[i][a]: terminals (-1 at a == 0 == u^i); cut[i][j] for
  // i < j else -1.
  std::vector<std::vector<std::vector<int>>> x;
  std::vector<std::vector<int>> s, t;
  std::vector<std::vector<int>> cut;
  std::map<std::pair<int, int>, int> st_pair;  // (i, a) -> pair index
  std::map<std::pair<int, int>, int> x_pair;   // sorted (xid, xid) -> pair index
};

GadgetOutput build_gadget(const MCCInstance& mcc);

// clique[i] = member index within class i. Errors name the first missing
// cross edge; the returned routing has exactly ell pairwise disjoint paths.
Routing clique_to_routing(const GadgetOutput& out, const std::vector<int>& clique);

// (oracle MaxNDP reaches ell) <=> (a multicolored clique exists), both sides
// by exhaustive search. Guarded to tiny instances.
bool verify_equivalence(const MCCInstance& mcc, int max_vertices = 40, int max_ell = 8);

// Elimination forest over the gadget's vertices; parent -1 at roots.
struct TreedepthWitness {
  std::vector<int> parent;
  int depth = 0;
};

// The proof's witness: a chain of the cut vertices, then per gadget the two
// endpoints of the u^i path, then balanced elimination of the leftover paths.
// Validated (every edge joins an ancestor-descendant pair) and asserted
// against the C(k,2)+k+3 bound.
TreedepthWitness treedepth_witness(const GadgetOutput& out);

}  // namespace twr
