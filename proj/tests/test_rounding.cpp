#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twr/rounding.hpp"

using namespace twr;

// k crossing pairs through a star center: f routes one unit per pair, g
// delivers x(v)/4 from every terminal into S = {center}.
static RoundingInput star_input(int k, long long center_cap, Mode mode) {
  RoundingInput in;
  int n = 2 * k + 1;
  in.inst.graph = CapGraph(n);
  for (int v = 1; v < n; ++v)
    in.inst.graph.add_edge(0, v, mode == Mode::Edp ? 2 : 1);
  if (mode == Mode::Ndp) {
    in.inst.graph.node_caps.assign(n, 1);
    in.inst.graph.node_caps[0] = center_cap;
  }
  in.inst.mode = mode;
  for (int i = 0; i < k; ++i) {
    in.inst.pairs.pairs.push_back({2 * i + 1, 2 * i + 2});
    in.f.entries.push_back({i, {2 * i + 1, 0, 2 * i + 2}, Rat(1)});
  }
  for (int v = 1; v < n; ++v) in.g.entries.push_back({v, {v, 0}, Rat(1, 4)});
  in.S = {0};
  in.alpha = 4;
  return in;
}

static void check_stage_chain(const RoundingInput& in, const RoundingResult& res) {
  const StageLog& log = res.log;
  Rat s_size = static_cast<int>(in.S.size());
  CHECK(log.f1 == log.f_val / 3);
  CHECK(log.f2 * s_size >= log.f1);
  CHECK(2 * log.h_sum >= log.g2);
  CHECK(log.m_second * log.d * log.d >= log.m_prime);
  if (log.local_branch) {
    CHECK(2 * log.routed >= log.m_second);
  } else {
    CHECK(5 * log.routed >= log.m_final);
    CHECK(2 * log.m_final >= log.m_second);
  }
  CHECK(Rat(log.routed) * 60 * log.d * log.d * in.alpha * s_size >= log.f_val);
  CHECK(res.routing.size() == log.routed);
  res.routing.audit_feasible(in.inst);
  for (const auto& [pr, path] : res.routing.paths) {
    auto [s, t] = in.inst.pairs.pairs[pr];
    CHECK(((path.front() == s && path.back() == t) ||
           (path.front() == t && path.back() == s)));
  }
}

TEST_CASE("node-capacitated star rounds to at least one pair") {
  for (int k : {2, 3, 5}) {
    RoundingInput in = star_input(k, k, Mode::Ndp);
    CHECK(in.f.feasible(in.inst));
    CHECK(in.g.feasible(in.inst));
    RoundingResult res = route_round(in);
    CHECK(res.log.routed >= 1);
    CHECK(res.log.f_val == Rat(k));
    check_stage_chain(in, res);
  }
}

TEST_CASE("edge-capacitated star goes through the subdivision reduction") {
  for (int k : {2, 4}) {
    RoundingInput in = star_input(k, 0, Mode::Edp);
    CHECK(in.f.feasible(in.inst));
    RoundingResult res = route_round(in);
    CHECK(res.log.routed >= 1);
    check_stage_chain(in, res);
  }
}

TEST_CASE("two-vertex cut with split delivery") {
  // Two centers joined by a wide edge; pairs cross from left leaves to right
  // leaves, deliveries go to the near center. S = {0, 1}.
  int k = 3;
  RoundingInput in;
  int n = 2 + 2 * k;
  in.inst.graph = CapGraph(n);
  in.inst.graph.add_edge(0, 1, 2 * k);
  for (int i = 0; i < k; ++i) {
    in.inst.graph.add_edge(0, 2 + i, 1);
    in.inst.graph.add_edge(1, 2 + k + i, 1);
  }
  in.inst.graph.node_caps.assign(n, 1);
  in.inst.graph.node_caps[0] = k;
  in.inst.graph.node_caps[1] = k;
  in.inst.mode = Mode::Ndp;
  for (int i = 0; i < k; ++i) {
    in.inst.pairs.pairs.push_back({2 + i, 2 + k + i});
    in.f.entries.push_back({i, {2 + i, 0, 1, 2 + k + i}, Rat(1)});
    in.g.entries.push_back({2 + i, {2 + i, 0}, Rat(1, 4)});
    in.g.entries.push_back({2 + k + i, {2 + k + i, 1}, Rat(1, 4)});
  }
  in.S = {0, 1};
  in.alpha = 4;
  CHECK(in.f.feasible(in.inst));
  CHECK(in.g.feasible(in.inst));
  RoundingResult res = route_round(in);
  CHECK(res.log.routed >= 1);
  check_stage_chain(in, res);
}

TEST_CASE("fractional pair values survive the pipeline") {
  RoundingInput in = star_input(4, 2, Mode::Ndp);
  for (auto& e : in.f.entries) e.weight = Rat(1, 2);
  for (auto& e : in.g.entries) e.weight = Rat(1, 8);
  CHECK(in.f.feasible(in.inst));
  RoundingResult res = route_round(in);
  CHECK(res.log.f_val == Rat(2));
  CHECK(res.log.routed >= 1);
  check_stage_chain(in, res);
}

TEST_CASE("empty flow rounds to an empty routing") {
  RoundingInput in = star_input(2, 2, Mode::Ndp);
  in.f.entries.clear();
  in.g.entries.clear();
  RoundingResult res = route_round(in);
  CHECK(res.log.routed == 0);
  CHECK(res.routing.size() == 0);
}
