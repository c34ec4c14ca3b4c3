#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "twr/hardness.hpp"
#include "twr/oracle.hpp"

using namespace twr;

static MCCInstance mcc_k3n2(const std::vector<std::pair<int, int>>& edges) {
  MCCInstance m;
  m.k = 3;
  m.n = 2;
  m.edges = edges;
  m.check_valid();
  return m;
}

// class i member a has id 2i + a
static const std::vector<std::pair<int, int>> kTriangle = {{0, 2}, {0, 4}, {2, 4}};

TEST_CASE("mcc json roundtrip and validation") {
  std::istringstream in(R"({"k": 3, "n": 2, "edges": [[0, 2], [1, 5]]})");
  MCCInstance m = parse_mcc(in);
  CHECK(m.k == 3);
  CHECK(m.edges.size() == 2);
  CHECK(m.cls(5) == 2);

  MCCInstance bad;
  bad.k = 2;
  bad.n = 2;
  bad.edges = {{0, 1}};  // same class
  CHECK_THROWS_AS(bad.check_valid(), InputError);
}

TEST_CASE("gadget closed forms") {
  GadgetOutput g = build_gadget(mcc_k3n2(kTriangle));
  int k = 3, n = 2;
  CHECK(g.ell == k * (n - 1) + k * (k - 1) / 2);                     // 6
  CHECK(g.inst.graph.n == k * n * (k - 1) + 2 * k * (n - 1) + k * (k - 1) / 2);  // 21
  CHECK(g.inst.mode == Mode::Ndp);
  for (long long c : g.inst.graph.node_caps) CHECK(c == 1);
  g.inst.check_valid();
}

TEST_CASE("a clique certifies a full routing") {
  GadgetOutput g = build_gadget(mcc_k3n2(kTriangle));
  Routing r = clique_to_routing(g, {0, 0, 0});
  CHECK(r.size() == g.ell);
  r.audit_feasible(g.inst);
  // Members 1 have no triangle among them.
  CHECK_THROWS_AS(clique_to_routing(g, {1, 1, 1}), InputError);
}

TEST_CASE("oracle matches clique existence both ways") {
  GadgetOutput with = build_gadget(mcc_k3n2(kTriangle));
  CHECK(exact_maxndp(with.inst).opt == with.ell);

  auto broken = kTriangle;
  broken.pop_back();  // no triangle without edge 2-4
  GadgetOutput without = build_gadget(mcc_k3n2(broken));
  CHECK(exact_maxndp(without.inst).opt < without.ell);
}

TEST_CASE("equivalence harness agrees on yes and no instances") {
  CHECK(verify_equivalence(mcc_k3n2(kTriangle)));
  CHECK(verify_equivalence(mcc_k3n2({{0, 2}, {0, 4}})));
}

TEST_CASE("treedepth witness is a valid elimination forest within the bound") {
  GadgetOutput g = build_gadget(mcc_k3n2(kTriangle));
  TreedepthWitness w = treedepth_witness(g);
  int k = 3;
  CHECK(w.depth <= k * (k - 1) / 2 + k + 3);
  REQUIRE(static_cast<int>(w.parent.size()) == g.inst.graph.n);
  // Every edge joins an ancestor-descendant pair.
  auto is_ancestor = [&](int a, int v) {
    for (int x = v; x != -1; x = w.parent[x])
      if (x == a) return true;
    return false;
  };
  for (const auto& e : g.inst.graph.edges)
    CHECK((is_ancestor(e.u, e.v) || is_ancestor(e.v, e.u)));
  // Depth matches the parent array.
  int depth = 0;
  for (int v = 0; v < g.inst.graph.n; ++v) {
    int d = 0;
    for (int x = v; x != -1; x = w.parent[x]) ++d;
    depth = std::max(depth, d);
  }
  CHECK(depth == w.depth);
}

TEST_CASE("gadget scales with n") {
  MCCInstance m;
  m.k = 2;
  m.n = 3;
  m.edges = {{0, 3}, {1, 4}};
  GadgetOutput g = build_gadget(m);
  CHECK(g.ell == 2 * 2 + 1);
  CHECK(verify_equivalence(m));
}
