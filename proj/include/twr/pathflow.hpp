#pragma once

#include <functional>
#include <map>
#include <vector>

#include "twr/graph.hpp"

namespace twr {

// One weighted path of a multicommodity flow. `pair` indexes the instance's
// terminal pairs; delivery-style flows (safety witnesses and similar) reuse
// the field for the origin vertex instead, as noted at each use site.
struct FlowEntry {
  int pair = -1;
  std::vector<int> path;
  Rat weight;
};

struct PathFlow {
  std::vector<FlowEntry> entries;

  Rat value() const;
  // Total weight of entries with v as an endpoint (both ends counted, so a
  // single-vertex path contributes twice). value() == sum/2 by construction.
  Rat marginal(int v) const;
  std::map<int, Rat> marginals() const;
  Rat pair_value(int pair) const;

  std::map<int, Rat> edge_loads(const CapGraph& g) const;  // edge idx -> load
  std::map<int, Rat> vertex_loads() const;

  bool feasible(const Instance& inst, Rat slack = 0) const;

  PathFlow scaled(const Rat& factor) const;
  PathFlow plus(const PathFlow& other) const;
  // Requires `other` to be a subflow: every (pair, path) of `other` must be
  // present here with at least its weight.
  PathFlow minus(const PathFlow& other) const;
  PathFlow restrict_to_pairs(const std::vector<char>& keep_pair) const;
  // Keeps entries whose every vertex satisfies the predicate.
  PathFlow restrict_to_vertices(const std::function<bool(int)>& keep) const;

  // Removes loops from every entry's walk in place; loads only decrease and
  // endpoints are preserved.
  void simplify_walks();
  void drop_zero_entries();
  // Merges entries with identical (pair, path).
  void coalesce();
};

// Asserts the |f| = (1/2) sum of marginals identity and returns the value.
Rat flow_value_checked(const PathFlow& f);

// Removes loops from a walk, keeping endpoints.
std::vector<int> simplify_walk(const std::vector<int>& walk);

}  // namespace twr
