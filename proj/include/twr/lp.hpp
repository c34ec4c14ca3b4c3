#pragma once

#include "twr/flowkit.hpp"

namespace twr {

// Solution of the compact arc-based multicommodity relaxation. Arc flows refer
// to the arcs of `net` (see make_graph_network for the id scheme). Values are
// exact rationals regardless of the arithmetic used by the solver (doubles
// convert losslessly); `exact` records which solver ran.
struct LPSolution {
  Mode mode = Mode::Edp;
  bool exact = false;
  Rat objective;
  std::vector<Rat> x;                      // per pair, in [0,1] up to solver noise
  std::vector<std::vector<Rat>> arc_flow;  // pair -> arc -> flow
  GraphNetwork net;
};

// Exact dyadic-rational conversion.
Rat rat_from_double(double d);

// Optimal compact relaxation: per pair x_i in [0,1] units from s_i to t_i,
// conservation at every other node, joint edge (edp) or vertex (ndp) capacity
// constraints, objective max sum x_i. Instances whose variable count is at
// most rational_var_limit are solved in exact rational arithmetic, larger ones
// in floating point.
LPSolution solve_relaxation(const Instance& inst, int rational_var_limit = 300);

// Strips the arc flows into per-pair path entries (deterministic smallest-arc
// DFS; leftover circulations are dropped), clamps x_i to 1, and scales the
// whole flow down to exact capacity feasibility. The result is an exactly
// feasible PathFlow whose value matches the LP objective up to solver noise.
PathFlow decompose_to_paths(const LPSolution& sol, const Instance& inst);

// solve_relaxation + decompose_to_paths.
PathFlow lp_flow(const Instance& inst, Rat* lp_objective = nullptr);

}  // namespace twr
