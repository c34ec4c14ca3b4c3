#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "twr/gen.hpp"
#include "twr/lp.hpp"
#include "twr/wl.hpp"

using namespace twr;

TEST_CASE("nice flow balances both sides through f") {
  Instance in;
  in.graph = CapGraph(4);
  for (int i = 0; i + 1 < 4; ++i) in.graph.add_edge(i, i + 1, 1);
  in.pairs.pairs = {{0, 3}};
  PathFlow f;
  f.entries = {{0, {0, 1, 2, 3}, Rat(1)}};
  PathFlow g;
  g.entries = {{0, {0, 1}, Rat(1)}, {3, {3, 2}, Rat(1)}};
  NiceFlowResult res = nice_flow(in, f, g, {1, 2}, Rat(1));
  CHECK(res.z == 1);  // tie between 1 and 2 broken downward
  CHECK(res.h.value() == Rat(2, 3));
  Rat from0, from3;
  for (const auto& e : res.h.entries) {
    CHECK(e.path.back() == res.z);
    if (e.pair == 0) from0 += e.weight;
    if (e.pair == 3) from3 += e.weight;
  }
  CHECK(from0 == Rat(1, 3));
  CHECK(from3 == Rat(1, 3));
}

TEST_CASE("nice flow respects the stated floor") {
  Instance in;
  in.graph = CapGraph(5);
  for (int i = 0; i + 1 < 5; ++i) in.graph.add_edge(i, i + 1, 2);
  in.pairs.pairs = {{0, 4}};
  PathFlow f;
  f.entries = {{0, {0, 1, 2, 3, 4}, Rat(1, 2)}};
  PathFlow g;
  g.entries = {{0, {0, 1, 2}, Rat(1, 8)}, {4, {4, 3, 2}, Rat(1, 8)}};
  NiceFlowResult res = nice_flow(in, f, g, {2}, Rat(4));
  CHECK(res.z == 2);
  CHECK(res.h.value() * 3 * 4 * 1 >= f.value());
}

static void check_decomposition(const Instance& in, const RootedDecomposition& d, int r) {
  PathFlow f = lp_flow(in);
  WLResult res = wl_decompose(in, d, f, r);
  CHECK(res.flow_value == f.value());

  // Components partition (a subset of) the normalized universe node-disjointly.
  std::set<int> used;
  for (const WLComponent& c : res.components)
    for (int v : c.subgraph.verts) CHECK(used.insert(v).second);
  for (int v : res.inst.graph.verts) CHECK(used.count(v) == 1);

  Rat total;
  for (const WLComponent& c : res.components) {
    std::string why;
    CHECK_MESSAGE(verify_wl_certificate(c, res.inst.pairs, &why), why);
    for (int t : c.terminals)
      if (c.pi.count(t)) total += c.pi.at(t);
  }
  CHECK(total == res.total);
  CHECK(res.total >= res.bound);
}

TEST_CASE("well-linked decomposition on a plain path") {
  Instance in;
  in.graph = CapGraph(6);
  for (int i = 0; i + 1 < 6; ++i) in.graph.add_edge(i, i + 1, 1);
  in.pairs.pairs = {{0, 5}, {1, 4}};
  check_decomposition(in, heuristic_decomposition(in.graph, false), 2);
}

TEST_CASE("well-linked decomposition on seeded partial k-trees") {
  for (unsigned seed : {1u, 2u, 3u}) {
    GenResult g = gen_partial_ktree(20, 3, 5, seed);
    check_decomposition(g.inst, g.decomp, validate(g.decomp, g.inst.graph) + 1);
  }
}

TEST_CASE("certificate tampering is caught") {
  GenResult g = gen_partial_ktree(18, 2, 4, 5);
  PathFlow f = lp_flow(g.inst);
  WLResult res = wl_decompose(g.inst, g.decomp, f, validate(g.decomp, g.inst.graph) + 1);
  for (WLComponent c : res.components) {
    if (c.pi.empty()) continue;
    c.pi.begin()->second += 1;  // break pi == delivered totals
    std::string why;
    CHECK(!verify_wl_certificate(c, res.inst.pairs, &why));
    CHECK(!why.empty());
    break;
  }
}

TEST_CASE("node-capacitated instances are rejected") {
  GenResult g = gen_caterpillar(8, 2, 2, 2, 3);
  PathFlow f = lp_flow(g.inst);
  CHECK_THROWS_AS(wl_decompose(g.inst, g.decomp, f, 3), InputError);
}
