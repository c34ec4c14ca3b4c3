#pragma once

#include "twr/rounding.hpp"

namespace twr {

// Levels of the recursion: l1 = max parent-adhesion size over unsafe nodes,
// l2 = the same over bad nodes. Always recomputed from the definitions.
struct Levels {
  int l1 = 0, l2 = 0;
  std::vector<char> unsafe_node, bad_node;
};

Levels compute_levels(const Instance& inst, const RootedDecomposition& d, const PathFlow& f,
                      int r);

struct RouteReport {
  Rat flow_value;
  int routed = 0;
  int r = 0;
  int l1 = 0, l2 = 0;  // computed on the preprocessed input, max over components
  Rat bound;           // (1/(constant r^3)) (1 - 1/r)^(l1+l2) |f|
  Rat constant;        // 144 (edge version, asserted) or the logged realized constant
  Routing routing;
};

// O(r^3) approximation for edge-disjoint paths on a tree decomposition of
// width < r. The returned routing is feasibility-audited and satisfies
// routed >= bound (else AuditError).
RouteReport solve_edp(const Instance& inst, const RootedDecomposition& d, const PathFlow& f,
                      int r);

// Node-disjoint analogue on path decompositions only (tree decompositions are
// rejected). The multiplicative constant is realized per run and logged in the
// report; routed >= 1 whenever |f| > 0 is asserted.
RouteReport solve_ndp(const Instance& inst, const RootedDecomposition& d, const PathFlow& f,
                      int r);

RouteReport solve_routing(const Instance& inst, const RootedDecomposition& d,
                          const PathFlow& f, int r);

}  // namespace twr
