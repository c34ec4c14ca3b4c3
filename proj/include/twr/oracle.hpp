#pragma once

#include "twr/graph.hpp"

namespace twr {

struct OracleResult {
  int opt = 0;
  Routing witness;
};

// Exhaustive maximum routing by backtracking over pair subsets in decreasing
// size with lexicographic path enumeration and residual connectivity pruning.
// Guards reject instances beyond the given size.
OracleResult exact_maxedp(const Instance& inst, int max_n = 30, int max_k = 8);
OracleResult exact_maxndp(const Instance& inst, int max_n = 30, int max_k = 8);

// Mode taken from the instance.
OracleResult exact_opt(const Instance& inst, int max_n = 30, int max_k = 8);

}  // namespace twr
