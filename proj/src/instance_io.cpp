#include "twr/instance_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace twr {

using nlohmann::json;

namespace {

Instance parse_json(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad instance json: ") + e.what());
  }
  require(j.contains("vertices") && j.contains("edges") && j.contains("pairs"),
          "instance json missing vertices/edges/pairs");
  Instance inst;
  int n = j.at("vertices").get<int>();
  require(n >= 0, "negative vertex count");
  inst.graph = CapGraph(n);
  std::string mode = j.value("mode", "edp");
  require(mode == "edp" || mode == "ndp", "mode must be edp or ndp");
  inst.mode = mode == "edp" ? Mode::Edp : Mode::Ndp;
  if (inst.mode == Mode::Ndp || j.contains("node_caps"))
    inst.graph.node_caps.assign(n, 1);
  if (j.contains("node_caps"))
    for (const auto& nc : j.at("node_caps")) {
      int v = nc.at(0).get<int>();
      require(v >= 0 && v < n, "node_caps: vertex out of range");
      inst.graph.node_caps[v] = nc.at(1).get<long long>();
      require(inst.graph.node_caps[v] >= 1, "node capacity must be >= 1");
    }
  for (const auto& e : j.at("edges")) {
    int u = e.at(0).get<int>(), v = e.at(1).get<int>();
    long long cap = e.size() > 2 ? e.at(2).get<long long>() : 1;
    require(u >= 0 && u < n && v >= 0 && v < n, "edge endpoint out of range");
    inst.graph.add_edge(u, v, cap);
  }
  for (const auto& p : j.at("pairs")) {
    int s = p.at(0).get<int>(), t = p.at(1).get<int>();
    require(s >= 0 && s < n && t >= 0 && t < n, "terminal out of range");
    inst.pairs.pairs.push_back({s, t});
  }
  inst.check_valid();
  return inst;
}

Instance parse_dimacs(std::istream& in) {
  Instance inst;
  std::string line;
  int n = -1;
  bool node_caps_seen = false;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok) || tok == "c") continue;
    if (tok == "p") {
      int m, k;
      require(static_cast<bool>(ss >> n >> m >> k), "bad p line");
      require(n >= 0, "negative vertex count");
      inst.graph = CapGraph(n);
    } else if (tok == "e") {
      int u, v;
      long long cap = 1;
      require(static_cast<bool>(ss >> u >> v), "bad e line");
      ss >> cap;
      require(u >= 1 && u <= n && v >= 1 && v <= n, "edge endpoint out of range");
      inst.graph.add_edge(u - 1, v - 1, cap);
    } else if (tok == "n") {
      int v;
      long long cap;
      require(static_cast<bool>(ss >> v >> cap), "bad n line");
      require(v >= 1 && v <= n, "node cap vertex out of range");
      if (!node_caps_seen) {
        inst.graph.node_caps.assign(n, 1);
        node_caps_seen = true;
      }
      inst.graph.node_caps[v - 1] = cap;
    } else if (tok == "d") {
      int s, t;
      require(static_cast<bool>(ss >> s >> t), "bad d line");
      require(s >= 1 && s <= n && t >= 1 && t <= n, "terminal out of range");
      inst.pairs.pairs.push_back({s - 1, t - 1});
    } else if (tok == "m") {
      std::string m;
      ss >> m;
      require(m == "edp" || m == "ndp", "mode must be edp or ndp");
      inst.mode = m == "edp" ? Mode::Edp : Mode::Ndp;
    } else {
      throw InputError("unknown line type '" + tok + "'");
    }
  }
  require(n >= 0, "missing p line");
  if (inst.mode == Mode::Ndp && !node_caps_seen) inst.graph.node_caps.assign(n, 1);
  inst.check_valid();
  return inst;
}

std::string rat_str(const Rat& r) {
  std::ostringstream ss;
  ss << r;
  return ss.str();
}

Rat parse_rat(const std::string& s) {
  try {
    return Rat(s);
  } catch (const std::exception&) {
    throw InputError("bad rational '" + s + "'");
  }
}

}  // namespace

Instance parse_instance(std::istream& in) {
  // Autodetect: json starts with '{'.
  int c;
  while ((c = in.peek()) != EOF && std::isspace(c)) in.get();
  require(c != EOF, "empty instance input");
  return c == '{' ? parse_json(in) : parse_dimacs(in);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open " + path);
  return parse_instance(in);
}

void emit_instance(std::ostream& out, const Instance& inst) {
  json j;
  j["vertices"] = inst.graph.n;
  j["mode"] = mode_name(inst.mode);
  j["edges"] = json::array();
  for (const auto& e : inst.graph.edges) j["edges"].push_back({e.u, e.v, e.cap});
  if (inst.graph.node_capacitated()) {
    j["node_caps"] = json::array();
    for (int v = 0; v < inst.graph.n; ++v)
      j["node_caps"].push_back({v, inst.graph.node_caps[v]});
  }
  j["pairs"] = json::array();
  for (auto [s, t] : inst.pairs.pairs) j["pairs"].push_back({s, t});
  out << j.dump(2) << "\n";
}

PathFlow parse_flow(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad flow json: ") + e.what());
  }
  PathFlow f;
  for (const auto& je : j.at("entries")) {
    FlowEntry e;
    e.pair = je.at("pair").get<int>();
    e.path = je.at("path").get<std::vector<int>>();
    require(!e.path.empty(), "flow entry with empty path");
    e.weight = parse_rat(je.at("weight").get<std::string>());
    f.entries.push_back(std::move(e));
  }
  return f;
}

void emit_flow(std::ostream& out, const PathFlow& f) {
  json j;
  j["value"] = rat_str(f.value());
  j["entries"] = json::array();
  for (const auto& e : f.entries)
    j["entries"].push_back({{"pair", e.pair}, {"path", e.path}, {"weight", rat_str(e.weight)}});
  out << j.dump(2) << "\n";
}

void emit_routing(std::ostream& out, const Routing& r, const Instance& inst) {
  json j;
  j["routed"] = r.size();
  j["paths"] = json::array();
  for (const auto& [pair, path] : r.paths) {
    auto [s, t] = inst.pairs.pairs[pair];
    j["paths"].push_back({{"pair", pair}, {"s", s}, {"t", t}, {"path", path}});
  }
  out << j.dump(2) << "\n";
}

}  // namespace twr
