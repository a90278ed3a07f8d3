#pragma once

#include <cmath>
#include <string>

namespace natspec {

/// A recorded comparison lhs <= rhs (or lhs == rhs) with its operands, so
/// that every verdict can be recomputed from the artifact alone.
struct Inequality {
  std::string relation = "<=";
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool required = true;
};

inline Inequality leq(double lhs, double rhs, double tol = 0.0, bool required = true) {
  return {"<=", lhs, rhs, rhs - lhs, tol, lhs <= rhs + tol, required};
}

inline Inequality lt(double lhs, double rhs, double tol = 0.0, bool required = true) {
  return {"<", lhs, rhs, rhs - lhs, tol, lhs < rhs + tol, required};
}

inline Inequality geq(double lhs, double rhs, double tol = 0.0, bool required = true) {
  return {">=", lhs, rhs, lhs - rhs, tol, lhs >= rhs - tol, required};
}

inline Inequality eq(double lhs, double rhs, double tol, bool required = true) {
  return {"==", lhs, rhs, tol - std::abs(lhs - rhs), tol, std::abs(lhs - rhs) <= tol, required};
}

inline Inequality informational(Inequality in) {
  in.required = false;
  return in;
}

}  // namespace natspec
