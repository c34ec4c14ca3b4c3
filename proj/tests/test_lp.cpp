#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "twr/gen.hpp"
#include "twr/lp.hpp"

using namespace twr;

static Instance path_inst(int n, std::vector<std::pair<int, int>> prs, Mode mode = Mode::Edp) {
  Instance in;
  in.graph = CapGraph(n);
  for (int i = 0; i + 1 < n; ++i) in.graph.add_edge(i, i + 1, 1);
  if (mode == Mode::Ndp) in.graph.node_caps.assign(n, 1);
  in.pairs.pairs = std::move(prs);
  in.mode = mode;
  return in;
}

TEST_CASE("dyadic doubles convert losslessly") {
  CHECK(rat_from_double(0.375) == Rat(3, 8));
  CHECK(rat_from_double(-2.5) == Rat(-5, 2));
  CHECK(rat_from_double(0.0) == Rat(0));
  CHECK(rat_from_double(1.0 / 3.0) != Rat(1, 3));  // 1/3 is not dyadic
}

TEST_CASE("single free pair saturates") {
  Instance in = path_inst(3, {{0, 2}});
  LPSolution sol = solve_relaxation(in);
  CHECK(sol.exact);
  CHECK(sol.objective == Rat(1));
  CHECK(sol.x[0] == Rat(1));
  PathFlow f = decompose_to_paths(sol, in);
  CHECK(f.value() == Rat(1));
  CHECK(f.feasible(in));
  REQUIRE(f.entries.size() == 1);
  CHECK(f.entries[0].path == std::vector<int>{0, 1, 2});
}

TEST_CASE("shared unit edge splits the objective") {
  // Both pairs must use edge 1-2.
  Instance in = path_inst(4, {{0, 3}, {1, 2}});
  LPSolution sol = solve_relaxation(in);
  CHECK(sol.objective == Rat(1));
  PathFlow f = decompose_to_paths(sol, in);
  CHECK(f.value() == Rat(1));
  CHECK(f.feasible(in));
}

TEST_CASE("c4 fractionally routes both crossing pairs") {
  Instance in;
  in.graph = CapGraph(4);
  in.graph.add_edge(0, 1, 1);
  in.graph.add_edge(1, 2, 1);
  in.graph.add_edge(2, 3, 1);
  in.graph.add_edge(0, 3, 1);
  in.pairs.pairs = {{0, 2}, {1, 3}};
  LPSolution sol = solve_relaxation(in);
  CHECK(sol.objective == Rat(2));
  PathFlow f = decompose_to_paths(sol, in);
  CHECK(f.value() == Rat(2));
  CHECK(f.pair_value(0) == Rat(1));
  CHECK(f.feasible(in));
}

TEST_CASE("ndp vertex capacity binds") {
  // Star: both pairs must cross the unit-capacity center.
  Instance in;
  in.graph = CapGraph(5);
  for (int leaf = 1; leaf <= 4; ++leaf) in.graph.add_edge(0, leaf, 1);
  in.graph.node_caps.assign(5, 1);
  in.pairs.pairs = {{1, 2}, {3, 4}};
  in.mode = Mode::Ndp;
  LPSolution sol = solve_relaxation(in);
  CHECK(sol.objective == Rat(1));
  PathFlow f = decompose_to_paths(sol, in);
  CHECK(f.value() == Rat(1));
  CHECK(f.feasible(in));
}

TEST_CASE("float fallback stays within tolerance and feasible") {
  Instance in = path_inst(6, {{0, 5}, {1, 4}});
  LPSolution sol = solve_relaxation(in, 0);  // force floating point
  CHECK(!sol.exact);
  CHECK(std::abs(approx(sol.objective) - 1.0) < 1e-6);
  PathFlow f = decompose_to_paths(sol, in);
  CHECK(f.feasible(in));  // exact feasibility after scaling
  CHECK(approx(f.value()) > 1.0 - 1e-6);
}

TEST_CASE("grid gap instances reach half-integral objectives") {
  for (int k = 2; k <= 3; ++k) {
    Instance in = gen_grid_gap(k);
    Rat lp;
    PathFlow f = lp_flow(in, &lp);
    CHECK(approx(lp) >= k / 2.0 - 1e-6);
    CHECK(f.feasible(in));
    CHECK(f.value() >= lp - Rat(1, 1000000));
  }
}

TEST_CASE("disconnected pair contributes nothing") {
  Instance in;
  in.graph = CapGraph(4);
  in.graph.add_edge(0, 1, 1);
  in.graph.add_edge(2, 3, 1);
  in.pairs.pairs = {{0, 1}, {0, 3}};
  LPSolution sol = solve_relaxation(in);
  CHECK(sol.objective == Rat(1));
  CHECK(sol.x[1] == Rat(0));
}
