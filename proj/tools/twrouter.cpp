#include <chrono>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "twr/gen.hpp"
#include "twr/hardness.hpp"
#include "twr/instance_io.hpp"
#include "twr/lp.hpp"
#include "twr/oracle.hpp"
#include "twr/router.hpp"
#include "twr/wl.hpp"

namespace {

using namespace twr;

constexpr const char* kCsvHeader = "instance,n,m,k,r,lp,flow,l1,l2,routed,bound,constant,ms";

std::string fmt(const Rat& r) {
  std::ostringstream os;
  os << std::setprecision(10) << approx(r);
  return os.str();
}

struct RunRow {
  std::string name;
  int n = 0, m = 0, k = 0, r = 0, l1 = 0, l2 = 0, routed = 0;
  Rat lp, flow, bound, constant;
  long long ms = 0;
};

std::string csv_row(const RunRow& row) {
  std::ostringstream os;
  os << row.name << ',' << row.n << ',' << row.m << ',' << row.k << ',' << row.r << ','
     << fmt(row.lp) << ',' << fmt(row.flow) << ',' << row.l1 << ',' << row.l2 << ','
     << row.routed << ',' << fmt(row.bound) << ',' << fmt(row.constant) << ',' << row.ms;
  return os.str();
}

nlohmann::json json_row(const RunRow& row) {
  return {{"instance", row.name}, {"n", row.n},         {"m", row.m},
          {"k", row.k},           {"r", row.r},         {"lp", approx(row.lp)},
          {"flow", approx(row.flow)}, {"l1", row.l1},   {"l2", row.l2},
          {"routed", row.routed}, {"bound", approx(row.bound)},
          {"constant", approx(row.constant)}, {"ms", row.ms}};
}

RootedDecomposition decomposition_for(const Instance& inst, const std::string& td_path,
                                      bool want_path) {
  if (!td_path.empty()) {
    std::ifstream in(td_path);
    require(in.good(), "cannot open " + td_path);
    return parse_td(in, want_path);
  }
  return heuristic_decomposition(inst.graph, want_path);
}

RunRow run_solve(const std::string& name, const Instance& inst,
                 const RootedDecomposition& d, int r, Routing* routing_out = nullptr) {
  auto start = std::chrono::steady_clock::now();
  RunRow row;
  row.name = name;
  row.n = inst.graph.vertex_count();
  row.m = inst.graph.edge_count();
  row.k = inst.pairs.size();
  row.r = r;
  PathFlow f = lp_flow(inst, &row.lp);
  RouteReport rep = solve_routing(inst, d, f, r);
  row.flow = rep.flow_value;
  row.l1 = rep.l1;
  row.l2 = rep.l2;
  row.routed = rep.routed;
  row.bound = rep.bound;
  row.constant = rep.constant;
  row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
               .count();
  if (routing_out) *routing_out = rep.routing;
  return row;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    int v = std::stoi(s);
    return {v, v};
  }
  return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

std::vector<std::pair<int, int>> parse_edge_list(const std::string& s) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dash = item.find('-');
    require(dash != std::string::npos, "edge list item without '-': " + item);
    out.push_back({std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1))});
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Approximate disjoint-paths routing on tree and path decompositions"};
  app.require_subcommand(1);

  std::string graph_path, td_path, out_path, routing_path;
  int r_opt = 0;
  bool as_json = false;

  auto add_common = [&](CLI::App* cmd, bool with_td) {
    cmd->add_option("--graph", graph_path, "instance file (json or dimacs-like)")
        ->required();
    if (with_td) cmd->add_option("--td", td_path, "decomposition in .td format");
    cmd->add_option("--r", r_opt, "width bound (default: decomposition width + 1)");
    cmd->add_flag("--json", as_json, "emit a json report instead of csv");
    cmd->add_option("--routing-out", routing_path, "write the routing to this file");
  };

  auto* edp = app.add_subcommand("solve-edp", "route edge-disjoint paths");
  add_common(edp, true);
  auto* ndp = app.add_subcommand("solve-ndp", "route node-disjoint paths");
  add_common(ndp, true);
  auto* wl = app.add_subcommand("wl-decompose", "well-linked decomposition");
  add_common(wl, true);

  auto* orc = app.add_subcommand("oracle", "exhaustive exact optimum");
  orc->add_option("--graph", graph_path, "instance file")->required();
  int orc_max_n = 30, orc_max_k = 8;
  orc->add_option("--max-n", orc_max_n, "vertex guard");
  orc->add_option("--max-k", orc_max_k, "pair guard");
  orc->add_flag("--json", as_json);

  auto* gen = app.add_subcommand("gen", "instance generators");
  std::string family = "grid";
  int g_k = 3, g_n = 20, g_r = 3, g_pairs = 5, g_seed = 1;
  std::string td_out;
  gen->add_option("--family", family, "grid | ktree | caterpillar")->required();
  gen->add_option("--k", g_k, "grid pairs");
  gen->add_option("--n", g_n, "vertex count / spine length");
  gen->add_option("--r", g_r, "clique size (ktree)");
  gen->add_option("--pairs", g_pairs, "terminal pairs");
  gen->add_option("--seed", g_seed, "rng seed");
  gen->add_option("--out", out_path, "instance output file (default stdout)");
  gen->add_option("--td-out", td_out, "decomposition output file");

  auto* gh = app.add_subcommand("gen-hardness", "multicolored-clique gadget");
  int h_k = 3, h_n = 2;
  std::string h_edges;
  bool h_verify = false, h_complete = false;
  gh->add_option("--k", h_k, "classes")->required();
  gh->add_option("--n", h_n, "members per class")->required();
  gh->add_option("--edges", h_edges, "cross edges as 'v-u,v-u,...' (global ids)");
  gh->add_flag("--complete", h_complete, "all cross edges");
  gh->add_flag("--verify", h_verify, "check gadget/clique equivalence (tiny only)");
  gh->add_option("--out", out_path, "instance output file (default stdout)");

  auto* bench = app.add_subcommand("bench", "batch runs, csv to stdout");
  std::string b_k = "1..4", b_seeds = "1..5";
  int b_n = 30, b_r = 3, b_pairs = 5;
  bench->add_option("--family", family, "grid | ktree | caterpillar")->required();
  bench->add_option("--k", b_k, "grid pair range, e.g. 1..4");
  bench->add_option("--seeds", b_seeds, "seed range for random families");
  bench->add_option("--n", b_n, "vertex count / spine length");
  bench->add_option("--r", b_r, "clique size / width");
  bench->add_option("--pairs", b_pairs, "terminal pairs");

  CLI11_PARSE(app, argc, argv);

  auto emit_row = [&](const RunRow& row) {
    if (as_json)
      std::cout << json_row(row).dump(2) << "\n";
    else
      std::cout << kCsvHeader << "\n" << csv_row(row) << "\n";
  };
  auto write_routing = [&](const Routing& rt, const Instance& inst) {
    if (routing_path.empty()) return;
    std::ofstream out(routing_path);
    require(out.good(), "cannot open " + routing_path);
    emit_routing(out, rt, inst);
  };

  if (edp->parsed() || ndp->parsed()) {
    Instance inst = load_instance(graph_path);
    bool want_path = ndp->parsed();
    require(inst.mode == (want_path ? Mode::Ndp : Mode::Edp),
            "instance mode does not match the subcommand");
    RootedDecomposition d = decomposition_for(inst, td_path, want_path);
    int r = r_opt > 0 ? r_opt : validate(d, inst.graph) + 1;
    Routing rt;
    RunRow row = run_solve(graph_path, inst, d, r, &rt);
    emit_row(row);
    write_routing(rt, inst);
    return 0;
  }

  if (wl->parsed()) {
    Instance inst = load_instance(graph_path);
    RootedDecomposition d = decomposition_for(inst, td_path, false);
    int r = r_opt > 0 ? r_opt : validate(d, inst.graph) + 1;
    Rat lp;
    PathFlow f = lp_flow(inst, &lp);
    WLResult res = wl_decompose(inst, d, f, r);
    if (as_json) {
      nlohmann::json j{{"lp", approx(lp)},       {"flow", approx(res.flow_value)},
                       {"r", res.r},             {"l1", res.l1},
                       {"l2", res.l2},           {"total", approx(res.total)},
                       {"bound", approx(res.bound)}, {"components", nlohmann::json::array()}};
      for (const WLComponent& c : res.components) {
        nlohmann::json jc{{"z", c.z},
                          {"vertices", c.subgraph.verts},
                          {"pairs", c.pairs},
                          {"pi", nlohmann::json::object()}};
        for (const auto& [v, w] : c.pi) jc["pi"][std::to_string(v)] = approx(w);
        j["components"].push_back(std::move(jc));
      }
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "lp=" << fmt(lp) << " flow=" << fmt(res.flow_value) << " r=" << res.r
                << " l1=" << res.l1 << " l2=" << res.l2 << " components="
                << res.components.size() << " total=" << fmt(res.total)
                << " bound=" << fmt(res.bound) << "\n";
      for (const WLComponent& c : res.components) {
        Rat px = 0;
        for (int v : c.terminals)
          if (c.pi.count(v)) px += c.pi.at(v);
        std::cout << "  component z=" << c.z << " |V|=" << c.subgraph.vertex_count()
                  << " pairs=" << c.pairs.size() << " pi(X)=" << fmt(px) << "\n";
      }
    }
    return 0;
  }

  if (orc->parsed()) {
    Instance inst = load_instance(graph_path);
    OracleResult res = exact_opt(inst, orc_max_n, orc_max_k);
    if (as_json)
      std::cout << nlohmann::json{{"opt", res.opt}}.dump() << "\n";
    else
      std::cout << "opt=" << res.opt << "\n";
    return 0;
  }

  if (gen->parsed()) {
    Instance inst;
    RootedDecomposition d;
    bool have_d = false;
    if (family == "grid") {
      inst = gen_grid_gap(g_k);
    } else if (family == "ktree") {
      GenResult gr = gen_partial_ktree(g_n, g_r, g_pairs, g_seed);
      inst = std::move(gr.inst);
      d = std::move(gr.decomp);
      have_d = true;
    } else if (family == "caterpillar") {
      GenResult gr = gen_caterpillar(g_n, 2, 2, g_pairs, g_seed);
      inst = std::move(gr.inst);
      d = std::move(gr.decomp);
      have_d = true;
    } else {
      throw InputError("unknown family " + family);
    }
    if (out_path.empty()) {
      emit_instance(std::cout, inst);
    } else {
      std::ofstream out(out_path);
      require(out.good(), "cannot open " + out_path);
      emit_instance(out, inst);
    }
    if (!td_out.empty()) {
      require(have_d, "family " + family + " has no companion decomposition");
      std::ofstream out(td_out);
      require(out.good(), "cannot open " + td_out);
      emit_td(out, d, inst.graph.n);
    }
    return 0;
  }

  if (gh->parsed()) {
    MCCInstance mcc;
    mcc.k = h_k;
    mcc.n = h_n;
    if (h_complete) {
      for (int v = 0; v < h_k * h_n; ++v)
        for (int u = v + 1; u < h_k * h_n; ++u)
          if (mcc.cls(v) != mcc.cls(u)) mcc.edges.push_back({v, u});
    } else {
      mcc.edges = parse_edge_list(h_edges);
    }
    GadgetOutput g = build_gadget(mcc);
    TreedepthWitness w = treedepth_witness(g);
    std::cerr << "k=" << g.k << " n=" << g.n << " ell=" << g.ell
              << " |V|=" << g.inst.graph.n << " treedepth<=" << w.depth << "\n";
    if (h_verify) {
      bool ok = verify_equivalence(mcc);
      std::cerr << "equivalence " << (ok ? "passes" : "FAILS") << "\n";
      audit(ok, "gadget/clique equivalence check failed");
    }
    if (out_path.empty()) {
      emit_instance(std::cout, g.inst);
    } else {
      std::ofstream out(out_path);
      require(out.good(), "cannot open " + out_path);
      emit_instance(out, g.inst);
    }
    return 0;
  }

  if (bench->parsed()) {
    struct Job {
      std::string name;
      Instance inst;
      RootedDecomposition d;
      int r;
    };
    std::vector<Job> jobs;
    if (family == "grid") {
      auto [lo, hi] = parse_range(b_k);
      for (int k = lo; k <= hi; ++k) {
        Job j;
        j.name = "grid-" + std::to_string(k);
        j.inst = gen_grid_gap(k);
        j.d = heuristic_decomposition(j.inst.graph, false);
        j.r = validate(j.d, j.inst.graph) + 1;
        jobs.push_back(std::move(j));
      }
    } else if (family == "ktree" || family == "caterpillar") {
      auto [lo, hi] = parse_range(b_seeds);
      for (int s = lo; s <= hi; ++s) {
        Job j;
        j.name = family + "-" + std::to_string(s);
        GenResult gr = family == "ktree"
                           ? gen_partial_ktree(b_n, b_r, b_pairs, s)
                           : gen_caterpillar(b_n, 2, 2, b_pairs, s);
        j.inst = std::move(gr.inst);
        j.d = std::move(gr.decomp);
        j.r = validate(j.d, j.inst.graph) + 1;
        jobs.push_back(std::move(j));
      }
    } else {
      throw InputError("unknown family " + family);
    }
    std::vector<std::future<RunRow>> futs;
    for (const Job& j : jobs)
      futs.push_back(std::async(std::launch::async, [&j] {
        return run_solve(j.name, j.inst, j.d, j.r);
      }));
    std::cout << kCsvHeader << "\n";
    for (auto& f : futs) std::cout << csv_row(f.get()) << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const twr::AuditError& e) {
    std::cerr << "audit failure: " << e.what() << "\n";
    return 2;
  } catch (const twr::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
