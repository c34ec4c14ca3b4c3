#pragma once

#include "twr/flowkit.hpp"

namespace twr {

// Input to the small-cutset rounding: a fractional solution f and a second
// feasible flow g (entry pair field = origin terminal) delivering at least
// x(v)/alpha from every terminal v into S.
struct RoundingInput {
  Instance inst;
  PathFlow f;
  PathFlow g;
  std::vector<int> S;
  Rat alpha = 1;
};

struct StageLog {
  Rat f_val, f1, f2, g2, h_sum;   // |f|, |f_1|, |f_2|, |g_2|, |h_s|+|h_t| after rounding
  int m_prime = 0, m_second = 0;  // |M'|, |M''| (before the distant restriction)
  int m_final = 0;                // pairs kept by the chosen branch (>= m_second/2)
  int d = 0;                      // realized max terminals per cluster tree
  int routed = 0;
  bool local_branch = false;
  Rat c_round;  // routed * alpha * |S| / |f|
};

struct RoundingResult {
  Routing routing;
  StageLog log;
};

// Stage 1: f1 = f/3; g1 symmetrized so each pair sends equal flow from s and
// from t to every vertex of S (s-flow rides f/(3 alpha) to t, then t's
// delivery paths). Expects a normalized input with g trimmed to exactly
// x(v)/alpha per terminal.
std::pair<PathFlow, PathFlow> symmetrize(const RoundingInput& in);

struct Restricted {
  PathFlow f2, g2;
  int u = -1;
};

// Stage 2: u = S-vertex receiving the most g1-flow (ties: smallest id); g2 =
// g1 restricted to paths into u; f2 rescaled per pair to alpha times the
// delivered amount. |f2| >= |f1|/|S| audited.
Restricted restrict_to_best_vertex(const PathFlow& f1, const PathFlow& g1,
                                   const std::vector<int>& S, const Rat& alpha,
                                   const Instance& inst);

// Stage 3: iterative per-pair integral rounding of the s/t halves of g2
// (max-flow with lower bounds pinning already-integral origins), followed by
// per-pair rebalancing. Returns the integral halves; their total is >= |g2|/2
// (audited).
std::pair<PathFlow, PathFlow> half_integral_round(const PathFlow& g2, const Instance& inst,
                                                  int u);

struct Clustering {
  std::vector<std::vector<int>> trees;  // vertex sets, each inducing a subtree
  std::vector<int> tree_of;             // vertex -> tree index or -1
  std::vector<int> tree_parent;         // spanning-tree parent, -1 outside
  std::vector<int> m_second;            // selected pair ids
  std::vector<char> local;              // per selected pair
  std::vector<int> m_prime;             // pair ids with a full unit in g3
  int d = 0;
};

// Stage 4: spanning tree of the g3 support rooted at u, split bottom-up into
// subtrees holding between 3 and d terminals (d logged, not assumed), then
// greedy selection of pairs touching each tree at most once.
Clustering cluster_and_select(const PathFlow& hs, const PathFlow& ht, const Instance& inst,
                              int u);

// Stage 5. Local branch: route local pairs along their trees. Distant branch:
// restrict to the distant pairs, attach a super-source to their terminals,
// take an integral max flow into u (value >= 6/5 of the pair count, audited)
// and combine per-pair unit paths at u.
Routing finalize_routing(const Clustering& cl, const PathFlow& hs, const PathFlow& ht,
                         const Instance& inst, int u, StageLog& log);

// Full pipeline for node-capacitated inputs. Terminals are internally moved to
// fresh degree-1 capacity-1 leaves. Output audited: routed >=
// |f| / (60 d^2 alpha |S|).
RoundingResult route_via_small_cut(const RoundingInput& in);

// Edge-capacitated inputs served by subdividing every edge with a node of the
// edge's capacity (original vertices get effectively unbounded capacity).
RoundingResult edp_via_reduction(const RoundingInput& in);

// Dispatch on the instance's mode.
RoundingResult route_round(const RoundingInput& in);

}  // namespace twr
