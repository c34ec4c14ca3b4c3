#pragma once

#include <iosfwd>
#include <string>

#include "twr/pathflow.hpp"

namespace twr {

// Canonical instance format: a JSON document with fields
//   vertices  (count; ids are 0..vertices-1)
//   edges     (list of [u, v, cap])
//   node_caps (optional list of [v, cap]; defaults to 1 everywhere for ndp)
//   pairs     (list of [s, t])
//   mode      ("edp" | "ndp")
// A DIMACS-like plain-text alternative is autodetected: lines
//   p <n> <m> <k>   /  e <u> <v> <cap>  /  n <v> <cap>  /  d <s> <t>
// with 1-based vertex ids and `c` comment lines.
Instance parse_instance(std::istream& in);
Instance load_instance(const std::string& path);

void emit_instance(std::ostream& out, const Instance& inst);

// Fractional flows, exact: weights serialized as "num/den" strings.
PathFlow parse_flow(std::istream& in);
void emit_flow(std::ostream& out, const PathFlow& f);

void emit_routing(std::ostream& out, const Routing& r, const Instance& inst);

}  // namespace twr
