#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace twr {

// Exact rational scalar used throughout the flow machinery. LP solutions
// obtained in floating point are converted losslessly (doubles are dyadic
// rationals), so everything downstream of the LP is exact.
using Rat = boost::multiprecision::cpp_rational;

inline double approx(const Rat& r) { return r.convert_to<double>(); }

inline Rat rat_of(long long num, long long den = 1) { return Rat(num, den); }

// Feasibility tolerance for float-valued inputs (LP solutions above the
// exact-arithmetic threshold). Overridable via TWROUTER_EPS.
inline double flow_eps() {
  static double eps = [] {
    if (const char* s = std::getenv("TWROUTER_EPS")) return std::atof(s);
    return 1e-7;
  }();
  return eps;
}

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated internal contract or postcondition self-check.
struct AuditError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

inline void audit(bool cond, const std::string& msg) {
  if (!cond) throw AuditError(msg);
}

}  // namespace twr
