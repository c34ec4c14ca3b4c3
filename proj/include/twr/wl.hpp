#pragma once

#include <map>

#include "twr/router.hpp"

namespace twr {

// One component of the well-linked decomposition: an induced subgraph, a
// single sink z, a certificate flow (origin-keyed, every path ends at z) and
// vertex weights pi = the certificate's per-origin totals.
struct WLComponent {
  CapGraph subgraph;
  int z = -1;
  PathFlow certificate;
  std::map<int, Rat> pi;       // nonzero weights only
  std::vector<int> pairs;      // instance pairs with both ends in the subgraph
  std::vector<int> terminals;  // their endpoints, sorted unique
};

struct WLResult {
  // Components refer to this terminal-normalized instance (identical to the
  // input whenever the input pairs already form a matching).
  Instance inst;
  std::vector<int> origin;  // normalized vertex -> input vertex
  std::vector<WLComponent> components;
  int r = 0, l1 = 0, l2 = 0;
  Rat flow_value, total, bound;  // total = sum over components of pi(X_i)
};

struct NiceFlowResult {
  PathFlow h;
  int z = -1;
};

// Builds a flow from the terminals of the flow-carrying pairs to a single
// vertex z in S: restrict g (delivering >= x(v)/c into S) to the best S-vertex
// and balance each pair's two sides through f. |h| >= |f|/(3c|S|), equal
// per-pair marginals, every path ends at z and avoids S before its last
// vertex. All audited.
NiceFlowResult nice_flow(const Instance& inst, const PathFlow& f, const PathFlow& g,
                         const std::vector<int>& S, const Rat& c);

// Well-linked decomposition for edge-capacitated instances on a tree
// decomposition of width < r: node-disjoint components with
// total >= (1/(12 r^3)) (1 - 1/r)^(l1+l2) |f| (audited).
WLResult wl_decompose(const Instance& inst, const RootedDecomposition& d, const PathFlow& f,
                      int r);

// Structural certificate check: paths inside the subgraph ending at z,
// feasible, per-origin totals matching pi, pi equal across each pair.
bool verify_wl_certificate(const WLComponent& c, const TerminalPairs& pairs,
                           std::string* why = nullptr);

}  // namespace twr
