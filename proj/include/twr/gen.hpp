#pragma once

#include "twr/decomp.hpp"

namespace twr {

// Staircase grid integrality-gap family, unit edge capacities, k pairs.
// Crossing cells are wall-split so every transit consumes the unit middle
// edge; all vertices have degree <= 3, so LP >= k/2 while OPT = 1.
Instance gen_grid_gap(int k);

struct GenResult {
  Instance inst;
  RootedDecomposition decomp;
};

// Random partial r-tree EDP instance: r-tree grown by vertex insertion into
// random r-cliques, edges subsampled (kept with probability keep_num/keep_den),
// capacities in [1,3], random terminal pairs; natural decomposition of width
// <= r alongside.
GenResult gen_partial_ktree(int n, int r, int k_pairs, unsigned seed,
                            int keep_num = 3, int keep_den = 4);

// Random caterpillar-with-window NDP instance: spine path with extra spine
// edges up to the given window and random legs, node capacities in [1,3];
// path decomposition from the construction order.
GenResult gen_caterpillar(int n_spine, int window, int max_legs, int k_pairs,
                          unsigned seed);

}  // namespace twr
