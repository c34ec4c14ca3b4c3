#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twr/lp.hpp"
#include "twr/oracle.hpp"

using namespace twr;

static Instance cycle4() {
  Instance in;
  in.graph = CapGraph(4);
  in.graph.add_edge(0, 1, 1);
  in.graph.add_edge(1, 2, 1);
  in.graph.add_edge(2, 3, 1);
  in.graph.add_edge(0, 3, 1);
  in.pairs.pairs = {{0, 2}, {1, 3}};
  return in;
}

TEST_CASE("single path instance") {
  Instance in;
  in.graph = CapGraph(3);
  in.graph.add_edge(0, 1, 1);
  in.graph.add_edge(1, 2, 1);
  in.pairs.pairs = {{0, 2}};
  OracleResult res = exact_maxedp(in);
  CHECK(res.opt == 1);
  res.witness.audit_feasible(in);
}

TEST_CASE("crossing pairs on c4: lp 2, opt 1") {
  Instance in = cycle4();
  OracleResult res = exact_opt(in);
  CHECK(res.opt == 1);
  res.witness.audit_feasible(in);
  LPSolution sol = solve_relaxation(in);
  CHECK(sol.objective == Rat(2));  // the classic gap of 2
}

TEST_CASE("doubling capacities routes both") {
  Instance in = cycle4();
  for (auto& e : in.graph.edges) e.cap = 2;
  CHECK(exact_maxedp(in).opt == 2);
}

TEST_CASE("ndp center capacity") {
  Instance in;
  in.graph = CapGraph(5);
  for (int leaf = 1; leaf <= 4; ++leaf) in.graph.add_edge(0, leaf, 1);
  in.graph.node_caps.assign(5, 1);
  in.pairs.pairs = {{1, 2}, {3, 4}};
  in.mode = Mode::Ndp;
  CHECK(exact_maxndp(in).opt == 1);
  in.graph.node_caps[0] = 2;
  OracleResult res = exact_opt(in);
  CHECK(res.opt == 2);
  res.witness.audit_feasible(in);
}

TEST_CASE("unroutable pair is skipped") {
  Instance in;
  in.graph = CapGraph(4);
  in.graph.add_edge(0, 1, 1);
  in.graph.add_edge(2, 3, 1);
  in.pairs.pairs = {{0, 3}, {2, 3}};
  CHECK(exact_maxedp(in).opt == 1);
}

TEST_CASE("size guards reject big inputs") {
  Instance in;
  in.graph = CapGraph(40);
  for (int i = 0; i + 1 < 40; ++i) in.graph.add_edge(i, i + 1, 1);
  in.pairs.pairs = {{0, 39}};
  CHECK_THROWS_AS(exact_maxedp(in), InputError);
  CHECK(exact_maxedp(in, 64).opt == 1);
}

TEST_CASE("edge capacities above one are honored") {
  // Two pairs across one edge of capacity 2, one more of capacity 1.
  Instance in;
  in.graph = CapGraph(2);
  in.graph.add_edge(0, 1, 2);
  in.pairs.pairs = {{0, 1}, {0, 1}, {0, 1}};
  CHECK(exact_maxedp(in).opt == 2);
}
