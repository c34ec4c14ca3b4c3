#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twr/flowkit.hpp"

using namespace twr;

TEST_CASE("max flow with duality-checked cut") {
  // Classic diamond with a cross arc.
  FlowNetwork net;
  for (int i = 0; i < 4; ++i) net.add_node();
  net.source = 0;
  net.sink = 3;
  net.add_arc(0, 1, Rat(3));
  net.add_arc(0, 2, Rat(2));
  net.add_arc(1, 2, Rat(5));
  net.add_arc(1, 3, Rat(2));
  net.add_arc(2, 3, Rat(3));
  MaxFlowResult res = max_flow_min_cut(net);
  CHECK(res.value == Rat(5));
  CHECK(res.cut.capacity == Rat(5));
  Rat out;
  for (int a : res.cut.saturated) out += net.arcs[a].cap;
  CHECK(out == Rat(5));
}

TEST_CASE("fractional capacities stay exact") {
  FlowNetwork net;
  for (int i = 0; i < 3; ++i) net.add_node();
  net.source = 0;
  net.sink = 2;
  net.add_arc(0, 1, Rat(1, 3));
  net.add_arc(1, 2, Rat(1, 7));
  CHECK(max_flow_min_cut(net).value == Rat(1, 7));
}

TEST_CASE("infinite arcs never cross the min cut") {
  FlowNetwork net;
  for (int i = 0; i < 4; ++i) net.add_node();
  net.source = 0;
  net.sink = 3;
  net.add_arc(0, 1, Rat(1));
  net.add_arc(1, 2, Rat(0), true);
  net.add_arc(2, 3, Rat(100));
  MaxFlowResult res = max_flow_min_cut(net);
  CHECK(res.value == Rat(1));
  for (int a : res.cut.saturated) CHECK(!net.arcs[a].infinite);
}

TEST_CASE("lower bounds force and forbid") {
  FlowNetwork net;
  for (int i = 0; i < 4; ++i) net.add_node();
  net.source = 0;
  net.sink = 3;
  int a0 = net.add_arc(0, 1, Rat(2));
  net.add_arc(0, 2, Rat(2));
  int a2 = net.add_arc(1, 3, Rat(2));
  net.add_arc(2, 3, Rat(2));
  std::vector<Rat> lower(net.arcs.size(), Rat(0));
  lower[a0] = Rat(3, 2);
  Rat value;
  auto flow = max_flow_lower_bounds(net, lower, &value);
  REQUIRE(flow.has_value());
  CHECK((*flow)[a0] >= Rat(3, 2));
  CHECK((*flow)[a2] >= Rat(3, 2));
  CHECK(value == Rat(4));

  lower[a0] = Rat(5);  // above capacity: rejected outright
  CHECK_THROWS_AS(max_flow_lower_bounds(net, lower), InputError);

  // Forced inflow exceeding the outgoing capacity: no feasible circulation.
  FlowNetwork tight;
  for (int i = 0; i < 3; ++i) tight.add_node();
  tight.source = 0;
  tight.sink = 2;
  int b0 = tight.add_arc(0, 1, Rat(2));
  tight.add_arc(1, 2, Rat(1));
  std::vector<Rat> lb(tight.arcs.size(), Rat(0));
  lb[b0] = Rat(2);
  CHECK(!max_flow_lower_bounds(tight, lb).has_value());
}

TEST_CASE("flow decomposition recovers the value") {
  FlowNetwork net;
  for (int i = 0; i < 4; ++i) net.add_node();
  net.source = 0;
  net.sink = 3;
  net.add_arc(0, 1, Rat(1));
  net.add_arc(0, 2, Rat(1));
  net.add_arc(1, 3, Rat(1));
  net.add_arc(2, 3, Rat(1));
  MaxFlowResult res = max_flow_min_cut(net);
  auto paths = decompose_flow(net, res.arc_flow);
  Rat total;
  for (auto& [p, w] : paths) {
    CHECK(p.front() == 0);
    CHECK(p.back() == 3);
    total += w;
  }
  CHECK(total == Rat(2));
}

TEST_CASE("graph networks split vertices only for ndp") {
  CapGraph g(3);
  g.add_edge(0, 1, 2);
  g.add_edge(1, 2, 2);
  GraphNetwork edp = make_graph_network(g, Mode::Edp);
  CHECK(edp.in_node(1) == 1);
  CHECK(edp.out_node(1) == 1);
  g.node_caps.assign(3, 1);
  GraphNetwork ndp = make_graph_network(g, Mode::Ndp);
  CHECK(ndp.in_node(1) == 2);
  CHECK(ndp.out_node(1) == 3);
  CHECK(ndp.vertex_of(3) == 1);

  // Middle vertex of capacity 1 caps the ndp flow at 1.
  ndp.net.source = ndp.out_node(0);
  ndp.net.sink = ndp.in_node(2);
  CHECK(max_flow_min_cut(ndp.net).value == Rat(1));
}

static Instance p5_instance() {
  Instance in;
  in.graph = CapGraph(5);
  for (int i = 0; i + 1 < 5; ++i) in.graph.add_edge(i, i + 1, 1);
  in.pairs.pairs = {{0, 4}};
  return in;
}

static RootedDecomposition p5_decomp() {
  RootedDecomposition d;
  for (int i = 0; i + 1 < 5; ++i) {
    d.bags.push_back({i, i + 1});
    d.parent.push_back(i - 1);
  }
  d.root = 0;
  d.is_path = true;
  return d;
}

TEST_CASE("good nodes and prefix truncation") {
  Instance in = p5_instance();
  RootedDecomposition d = p5_decomp();
  PathFlow f;
  f.entries = {{0, {0, 1, 2, 3, 4}, Rat(1)}};
  CHECK(is_good(d, 3, f));  // sigma = {3}, the path crosses it
  PathFlow g = prefix_truncate(f, d, 3);
  REQUIRE(g.entries.size() == 1);
  CHECK(g.entries[0].path == std::vector<int>{4, 3});
  CHECK(g.entries[0].pair == 4);  // origin-keyed
  CHECK(g.entries[0].weight == Rat(1));
}

TEST_CASE("a path dodging the adhesion makes the node bad") {
  Instance in = p5_instance();
  in.pairs.pairs = {{3, 4}};
  RootedDecomposition d;
  d.bags = {{0, 1}, {1, 2}, {2, 3, 4}};
  d.parent = {-1, 0, 1};
  CHECK(validate(d, in.graph) == 2);
  PathFlow f;
  f.entries = {{0, {3, 4}, Rat(1)}};
  CHECK(!is_good(d, 2, f));  // sigma = {2} is avoided
  CHECK_THROWS_AS(prefix_truncate(f, d, 2), InputError);
}

TEST_CASE("safety witness delivers the demand") {
  Instance in = p5_instance();
  RootedDecomposition d = p5_decomp();
  PathFlow f;
  f.entries = {{0, {0, 1, 2, 3, 4}, Rat(1)}};
  SafetyResult sr = is_safe(in, d, 3, f, 2);
  REQUIRE(sr.safe);
  Rat delivered;
  for (const auto& e : sr.witness.entries) {
    CHECK(e.pair == 4);  // the only flow endpoint in gamma(3)
    CHECK(e.path.back() == 3);
    delivered += e.weight;
  }
  CHECK(delivered == Rat(1, 8));  // x(4)/(4r)
  CHECK(sr.witness.feasible(in));
}

TEST_CASE("empty adhesion with positive flow below is unsafe") {
  Instance in = p5_instance();
  RootedDecomposition d = p5_decomp();
  PathFlow f;
  f.entries = {{0, {0, 1, 2, 3, 4}, Rat(1)}};
  SafetyResult sr = is_safe(in, d, 0, f, 2);  // root: sigma empty
  CHECK(!sr.safe);
  CHECK(sr.deficit > 0);
  std::vector<int> U = extract_violating_set(in, d, 0, f, 2);
  CHECK(U.size() == 5);  // whole component; boundary cut is empty
}

TEST_CASE("bottleneck edge yields a proper violating set") {
  // Long path, all terminals beyond the unit edge 1-2: the subtree at the
  // second bag must push 10 * x/8 = 5/4 through that edge, so it is unsafe.
  Instance in;
  in.graph = CapGraph(12);
  for (int i = 0; i + 1 < 12; ++i) in.graph.add_edge(i, i + 1, 1);
  in.pairs.pairs = {{2, 3}, {4, 5}, {6, 7}, {8, 9}, {10, 11}};
  RootedDecomposition d;
  for (int i = 0; i + 1 < 12; ++i) {
    d.bags.push_back({i, i + 1});
    d.parent.push_back(i - 1);
  }
  CHECK(validate(d, in.graph) == 1);
  PathFlow f;
  for (int i = 0; i < in.pairs.size(); ++i) {
    auto [s, t] = in.pairs.pairs[i];
    std::vector<int> p;
    for (int v = s; v <= t; ++v) p.push_back(v);
    f.entries.push_back({i, p, Rat(1)});
  }
  CHECK(f.feasible(in));

  SafetyResult sr = is_safe(in, d, 1, f, 2);  // sigma = {1}
  CHECK(!sr.safe);
  std::vector<int> U = extract_violating_set(in, d, 1, f, 2);
  std::vector<char> inU(in.graph.n, 0);
  for (int v : U) inU[v] = 1;
  CHECK(!inU[0]);
  CHECK(!inU[1]);
  Rat xU, cut;
  for (int v : U) xU += f.marginal(v);
  for (const auto& e : in.graph.edges)
    if (inU[e.u] != inU[e.v]) cut += e.cap;
  CHECK(cut < xU / 8);
}
