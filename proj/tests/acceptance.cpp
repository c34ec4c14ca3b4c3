// End-to-end acceptance gate: one pass/fail line per criterion, nonzero exit
// on any failure. Each criterion re-derives its inequality from scratch
// instead of trusting the library's internal audits.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "twr/gen.hpp"
#include "twr/hardness.hpp"
#include "twr/lp.hpp"
#include "twr/oracle.hpp"
#include "twr/router.hpp"
#include "twr/wl.hpp"

using namespace twr;

namespace {

struct Sandwich {
  std::string name;
  int routed = 0, opt = 0;
  double lp = 0;
};
std::vector<Sandwich> g_sandwich;

int g_failures = 0;

void criterion(int num, const std::string& what, double budget_s,
               const std::function<void()>& body) {
  auto start = std::chrono::steady_clock::now();
  std::string fail;
  try {
    body();
  } catch (const std::exception& e) {
    fail = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (fail.empty() && budget_s > 0 && secs > budget_s) {
    std::ostringstream os;
    os << "over time budget: " << secs << "s > " << budget_s << "s";
    fail = os.str();
  }
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(1);
  line << "criterion " << num << " (" << what << "): ";
  if (fail.empty()) {
    line << "pass [" << secs << "s]";
  } else {
    line << "FAIL: " << fail;
    ++g_failures;
  }
  std::cout << line.str() << std::endl;
}

void expect(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

Rat decay_pow(int r, int exp) {
  Rat d = 1;
  for (int i = 0; i < exp; ++i) d *= Rat(r - 1, r);
  return d;
}

// Levels recomputed from the definitions, max over preprocessed components.
std::pair<int, int> recompute_levels(const Instance& inst, const RootedDecomposition& d,
                                     const PathFlow& f, int r) {
  int l1 = 0, l2 = 0;
  for (const auto& sp : preprocess(inst, d, f)) {
    Levels lv = compute_levels(sp.inst, sp.decomp, sp.flow, r);
    l1 = std::max(l1, lv.l1);
    l2 = std::max(l2, lv.l2);
  }
  return {l1, l2};
}

void c1_integrality_gap() {
  for (int k = 2; k <= 4; ++k) {
    Instance in = gen_grid_gap(k);
    Rat lp;
    PathFlow f = lp_flow(in, &lp);
    expect(approx(lp) >= k / 2.0 - 1e-6, "lp objective below k/2 at k=" + std::to_string(k));
    OracleResult oc = exact_maxedp(in, in.graph.n);
    expect(oc.opt == 1, "oracle opt != 1 at k=" + std::to_string(k));
    RootedDecomposition d = heuristic_decomposition(in.graph, false);
    int r = validate(d, in.graph) + 1;
    RouteReport rep = solve_edp(in, d, f, r);
    expect(rep.routed >= 1, "no pair routed at k=" + std::to_string(k));
    rep.routing.audit_feasible(in);
    g_sandwich.push_back({"grid-" + std::to_string(k), rep.routed, oc.opt, approx(lp)});
  }
}

void c2_edp_bound() {
  std::mt19937 rng(2024);
  for (int i = 0; i < 30; ++i) {
    int n = 20 + static_cast<int>(rng() % 21);        // 20..40
    int rw = 2 + static_cast<int>(rng() % 2);         // width 2..3
    int k = 4 + static_cast<int>(rng() % 7);          // 4..10 pairs
    GenResult g = gen_partial_ktree(n, rw, k, 100 + i);
    int r = validate(g.decomp, g.inst.graph) + 1;
    PathFlow f = lp_flow(g.inst);
    RouteReport rep = solve_edp(g.inst, g.decomp, f, r);
    auto [l1, l2] = recompute_levels(g.inst, g.decomp, f, r);
    Rat bound = decay_pow(r, l1 + l2) * f.value() / (Rat(144) * r * r * r);
    expect(Rat(rep.routed) >= bound, "bound violated at instance " + std::to_string(i));
    rep.routing.audit_feasible(g.inst);
  }
}

void c3_ndp_bound() {
  std::mt19937 rng(777);
  for (int i = 0; i < 20; ++i) {
    int spine = 8 + static_cast<int>(rng() % 7);  // 8..14
    int k = 3 + static_cast<int>(rng() % 4);      // 3..6 pairs
    GenResult g = gen_caterpillar(spine, 2, 2, k, 300 + i);
    int r = validate(g.decomp, g.inst.graph) + 1;
    Rat lp;
    PathFlow f = lp_flow(g.inst, &lp);
    RouteReport rep = solve_ndp(g.inst, g.decomp, f, r);
    auto [l1, l2] = recompute_levels(g.inst, g.decomp, f, r);
    Rat bound = decay_pow(r, l1 + l2) * f.value() / (rep.constant * r * r * r);
    expect(Rat(rep.routed) >= bound, "bound violated at instance " + std::to_string(i));
    rep.routing.audit_feasible(g.inst);
    OracleResult oc = exact_maxndp(g.inst, 60);
    expect(rep.routed <= oc.opt, "routing beats the oracle at instance " + std::to_string(i));
    g_sandwich.push_back({"caterpillar-" + std::to_string(i), rep.routed, oc.opt,
                          approx(lp)});
  }
}

// Crossing pairs through one or two cut vertices, randomized sizes, caps and
// weights; f and g constructed directly so the delivery premise holds exactly.
RoundingInput make_rounding_input(std::mt19937& rng) {
  RoundingInput in;
  int k = 2 + static_cast<int>(rng() % 5);
  bool two_centers = rng() % 2 == 0;
  bool edp = rng() % 2 == 0;
  Rat w = rng() % 2 == 0 ? Rat(1) : Rat(1, 1 + static_cast<int>(rng() % 3));
  int centers = two_centers ? 2 : 1;
  int n = centers + 2 * k;
  in.inst.graph = CapGraph(n);
  in.inst.mode = edp ? Mode::Edp : Mode::Ndp;
  if (two_centers) in.inst.graph.add_edge(0, 1, 2 * k);
  for (int i = 0; i < k; ++i) {
    in.inst.graph.add_edge(0, centers + i, edp ? 2 : 1);
    in.inst.graph.add_edge(centers - 1, centers + k + i, edp ? 2 : 1);
  }
  if (!edp) {
    in.inst.graph.node_caps.assign(n, 1);
    for (int c = 0; c < centers; ++c) in.inst.graph.node_caps[c] = k;
  }
  in.alpha = 4;
  for (int i = 0; i < k; ++i) {
    int s = centers + i, t = centers + k + i;
    in.inst.pairs.pairs.push_back({s, t});
    std::vector<int> path = two_centers ? std::vector<int>{s, 0, 1, t}
                                        : std::vector<int>{s, 0, t};
    in.f.entries.push_back({i, path, w});
    in.g.entries.push_back({s, {s, 0}, w / in.alpha});
    in.g.entries.push_back({t, {t, centers - 1}, w / in.alpha});
  }
  for (int c = 0; c < centers; ++c) in.S.push_back(c);
  return in;
}

void c4_stage_chain() {
  std::mt19937 rng(4242);
  for (int i = 0; i < 20; ++i) {
    RoundingInput in = make_rounding_input(rng);
    expect(in.f.feasible(in.inst), "generated f infeasible");
    expect(in.g.feasible(in.inst), "generated g infeasible");
    RoundingResult res = route_round(in);
    const StageLog& log = res.log;
    Rat s_size = static_cast<int>(in.S.size());
    std::string at = " at input " + std::to_string(i);
    expect(log.f1 == log.f_val / 3, "|f1| != |f|/3" + at);
    expect(log.f2 * s_size >= log.f1, "|f2| < |f1|/|S|" + at);
    expect(2 * log.h_sum >= log.g2, "|hs|+|ht| < |g2|/2" + at);
    expect(log.m_second * log.d * log.d >= log.m_prime, "|M''| < |M'|/d^2" + at);
    if (log.local_branch)
      expect(2 * log.routed >= log.m_second, "local: routed < |M''|/2" + at);
    else
      expect(5 * log.routed >= log.m_final && 2 * log.m_final >= log.m_second,
             "distant: routed < |M''|/(2*5)" + at);
    res.routing.audit_feasible(in.inst);
  }
}

void c5_violating_sets() {
  int found = 0;
  for (int seed = 0; found < 50 && seed < 400; ++seed) {
    GenResult g = gen_partial_ktree(16 + seed % 10, 2, 4 + seed % 3, 500 + seed,
                                    seed % 2 ? 1 : 3, seed % 2 ? 2 : 4);
    PathFlow f;
    try {
      f = lp_flow(g.inst);
    } catch (const std::exception&) {
      continue;
    }
    int r = 2;
    for (const auto& sp : preprocess(g.inst, g.decomp, f)) {
      for (int t = 0; t < sp.decomp.node_count() && found < 50; ++t) {
        SafetyResult sr = is_safe(sp.inst, sp.decomp, t, sp.flow, r);
        if (sr.safe) continue;
        std::vector<int> U = extract_violating_set(sp.inst, sp.decomp, t, sp.flow, r);
        ++found;
        std::vector<char> inU(sp.inst.graph.n, 0);
        for (int v : U) inU[v] = 1;
        // cap(delta(U)) < x(U)/(4r) inside G(t), by direct scan.
        CapGraph gt = graph_at(sp.decomp, sp.inst.graph, t);
        Rat xU, cut;
        for (int v : U) xU += sp.flow.marginal(v);
        for (const auto& e : gt.edges)
          if (inU[e.u] != inU[e.v]) cut += e.cap;
        expect(cut * 4 * r < xU, "cut not small against x(U)");
        // sigma(s) inside U forces gamma(s) inside U, for every s below t.
        for (int s : sp.decomp.subtree(t)) {
          bool sig_in = true;
          for (int v : sp.decomp.sigma(s)) sig_in = sig_in && inU[v];
          if (!sig_in || sp.decomp.sigma(s).empty()) continue;
          for (int v : sp.decomp.gamma(s))
            expect(inU[v], "closure violated below the unsafe node");
        }
      }
    }
  }
  expect(found == 50, "only found " + std::to_string(found) + " unsafe configurations");
}

void c6_well_linked() {
  std::mt19937 rng(606);
  for (int i = 0; i < 20; ++i) {
    int n = 14 + static_cast<int>(rng() % 13);
    int rw = 2 + static_cast<int>(rng() % 2);
    int k = 3 + static_cast<int>(rng() % 4);
    GenResult g = gen_partial_ktree(n, rw, k, 600 + i);
    int r = validate(g.decomp, g.inst.graph) + 1;
    PathFlow f = lp_flow(g.inst);
    WLResult res = wl_decompose(g.inst, g.decomp, f, r);
    std::string at = " at instance " + std::to_string(i);

    Rat total;
    std::vector<char> used(res.inst.graph.n, 0);
    for (const WLComponent& c : res.components) {
      std::string why;
      expect(verify_wl_certificate(c, res.inst.pairs, &why), why + at);
      for (int v : c.subgraph.verts) {
        expect(!used[v], "components overlap" + at);
        used[v] = 1;
      }
      for (int t : c.terminals)
        if (c.pi.count(t)) total += c.pi.at(t);
    }
    Rat bound = decay_pow(r, res.l1 + res.l2) * f.value() / (Rat(12) * r * r * r);
    expect(total >= bound, "total weight below the floor" + at);
  }
}

void c7_hardness() {
  const int k = 3, n = 2;
  const std::pair<int, int> tri[3] = {{0, 2}, {0, 4}, {2, 4}};
  for (int mask = 0; mask < 8; ++mask) {
    MCCInstance m;
    m.k = k;
    m.n = n;
    // Distractor edges among the second members, never completing a clique.
    m.edges = {{1, 3}, {1, 5}};
    for (int b = 0; b < 3; ++b)
      if (mask & (1 << b)) m.edges.push_back(tri[b]);
    std::string at = " at pattern " + std::to_string(mask);
    GadgetOutput g = build_gadget(m);
    expect(g.ell == k * (n - 1) + k * (k - 1) / 2, "ell closed form" + at);
    expect(g.inst.graph.n == k * n * (k - 1) + 2 * k * (n - 1) + k * (k - 1) / 2,
           "|V(H)| closed form" + at);
    expect(verify_equivalence(m), "equivalence fails" + at);
    TreedepthWitness w = treedepth_witness(g);
    expect(w.depth <= k * (k - 1) / 2 + k + 3, "treedepth witness too deep" + at);
  }
}

void c8_monotonicity() {
  std::mt19937 rng(808);
  int trials = 0;
  for (int pool = 0; trials < 200; ++pool) {
    GenResult g = gen_partial_ktree(14, 2, 4, 800 + pool);
    PathFlow f = lp_flow(g.inst);
    if (f.entries.empty()) continue;
    for (int j = 0; j < 25 && trials < 200; ++j, ++trials) {
      int t = static_cast<int>(rng() % g.decomp.node_count());
      PathFlow sub;
      for (const auto& e : f.entries)
        if (rng() % 2) sub.entries.push_back(e);
      std::string at = " at trial " + std::to_string(trials);
      if (is_good(g.decomp, t, f))
        expect(is_good(g.decomp, t, sub), "deleting paths broke goodness" + at);
      if (is_safe(g.inst, g.decomp, t, f, 2).safe)
        expect(is_safe(g.inst, g.decomp, t, sub, 2).safe, "deleting paths broke safety" + at);
    }
  }
}

void c9_sandwich() {
  expect(!g_sandwich.empty(), "no oracle samples collected");
  for (const Sandwich& s : g_sandwich) {
    expect(s.routed <= s.opt, "routing beats the oracle on " + s.name);
    expect(s.opt <= static_cast<int>(std::ceil(s.lp + 1e-6)),
           "oracle beats ceil(lp) on " + s.name);
  }
}

}  // namespace

int main() {
  criterion(1, "integrality gap staircase", 30, c1_integrality_gap);
  criterion(2, "edge-disjoint bound on partial k-trees", 120, c2_edp_bound);
  criterion(3, "node-disjoint bound on caterpillars", 120, c3_ndp_bound);
  criterion(4, "rounding stage chain", 0, c4_stage_chain);
  criterion(5, "violating-set certificates", 0, c5_violating_sets);
  criterion(6, "well-linked decomposition", 0, c6_well_linked);
  criterion(7, "hardness gadget equivalence", 60, c7_hardness);
  criterion(8, "good/safe monotonicity", 0, c8_monotonicity);
  criterion(9, "routing <= oracle <= ceil(lp)", 0, c9_sandwich);
  return g_failures == 0 ? 0 : 1;
}
