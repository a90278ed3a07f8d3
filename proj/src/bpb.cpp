#include "natspec/bpb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>

namespace natspec {

std::vector<std::size_t> symmetrize(const CharacterTable& table, std::vector<std::size_t> set) {
  const std::size_t base = set.size();
  for (std::size_t i = 0; i < base; ++i) {
    if (set[i] >= table.size) throw Error(ErrorCode::InvalidArgument, "character index out of range");
    set.push_back(table.inverse[set[i]]);
  }
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

std::vector<Complex> table_transform(const CharacterTable& table, const std::vector<double>& values) {
  const std::size_t n = table.size;
  std::vector<Complex> out(n);
  for (std::size_t c = 0; c < n; ++c) {
    Complex acc = 0.0;
    for (std::size_t p = 0; p < n; ++p) acc += values[p] * std::conj(table.value(c, p));
    out[c] = acc / static_cast<double>(n);
  }
  return out;
}

namespace {

/// Negation on points, read off the phase columns.
std::vector<std::size_t> point_inverse(const CharacterTable& table) {
  const std::size_t n = table.size;
  std::map<std::vector<std::int64_t>, std::size_t> columns;
  std::vector<std::vector<std::int64_t>> negated(n, std::vector<std::int64_t>(n));
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<std::int64_t> col(n);
    for (std::size_t c = 0; c < n; ++c) {
      col[c] = table.phase[c * n + p];
      negated[p][c] = (table.modulus - col[c]) % table.modulus;
    }
    columns.emplace(std::move(col), p);
  }
  std::vector<std::size_t> out(n);
  for (std::size_t p = 0; p < n; ++p) out[p] = columns.at(negated[p]);
  return out;
}

/// The L1 program restricted to real even functions, which loses nothing
/// because the constraint sets are inversion-closed with real targets.
struct L1Program {
  LpProblem lp;
  std::vector<std::size_t> lambda;
  std::vector<std::size_t> support;
  /// Points of each inversion orbit.
  std::vector<std::vector<std::size_t>> orbits;
  /// Constraint row per character, or npos.
  std::vector<std::size_t> row_of;
};

L1Program build_program(const CharacterTable& table, const std::vector<std::size_t>& lambda_in,
                        const std::vector<std::size_t>& support_in) {
  const std::size_t n = table.size;
  L1Program prog;
  prog.lambda = symmetrize(table, lambda_in);
  prog.support = symmetrize(table, support_in);
  if (!std::includes(prog.support.begin(), prog.support.end(), prog.lambda.begin(), prog.lambda.end())) {
    throw Error(ErrorCode::InvalidArgument, "interpolation set must lie inside the allowed support");
  }
  std::vector<std::uint8_t> in_lambda(n, 0), in_support(n, 0);
  for (auto c : prog.lambda) in_lambda[c] = 1;
  for (auto c : prog.support) in_support[c] = 1;

  const auto neg = point_inverse(table);
  for (std::size_t p = 0; p < n; ++p) {
    if (neg[p] < p) continue;
    prog.orbits.push_back(neg[p] == p ? std::vector<std::size_t>{p} : std::vector<std::size_t>{p, neg[p]});
  }
  std::vector<std::size_t> characters;
  prog.row_of.assign(n, static_cast<std::size_t>(-1));
  for (std::size_t c = 0; c < n; ++c) {
    if (table.inverse[c] < c) continue;
    if (!in_lambda[c] && in_support[c]) continue;
    prog.row_of[c] = characters.size();
    prog.row_of[table.inverse[c]] = characters.size();
    characters.push_back(c);
  }
  const std::size_t k = prog.orbits.size();
  LpProblem& lp = prog.lp;
  lp.rows = characters.size();
  lp.cols = 2 * k;
  lp.a.assign(lp.rows * lp.cols, 0.0);
  lp.b.resize(lp.rows);
  lp.c.resize(lp.cols);
  for (std::size_t o = 0; o < k; ++o) {
    lp.c[o] = lp.c[k + o] = static_cast<double>(prog.orbits[o].size());
  }
  for (std::size_t r = 0; r < lp.rows; ++r) {
    const std::size_t c = characters[r];
    for (std::size_t o = 0; o < k; ++o) {
      double coef = 0.0;
      for (auto p : prog.orbits[o]) coef += table.value(c, p).real();
      lp.at(r, o) = coef;
      lp.at(r, k + o) = -coef;
    }
    lp.b[r] = in_lambda[c] ? static_cast<double>(n) : 0.0;
  }
  return prog;
}

L1Solution finish(const CharacterTable& table, const L1Program& prog, LpResult result) {
  if (result.status == LpStatus::Infeasible) {
    throw Error(ErrorCode::Infeasible, "interpolation constraints are contradictory");
  }
  if (result.status == LpStatus::Unbounded) {
    throw Error(ErrorCode::Unbounded, "L1 objective reported unbounded");
  }
  const std::size_t n = table.size;
  const std::size_t k = prog.orbits.size();
  L1Solution sol;
  sol.lambda = prog.lambda;
  sol.support = prog.support;
  sol.lp = std::move(result);
  sol.certificate = verify_optimality(prog.lp, sol.lp);
  sol.values.assign(n, 0.0);
  for (std::size_t o = 0; o < k; ++o) {
    for (auto p : prog.orbits[o]) sol.values[p] = sol.lp.x[o] - sol.lp.x[k + o];
  }
  sol.optimum = sol.lp.objective / static_cast<double>(n);
  sol.transform = table_transform(table, sol.values);
  return sol;
}

}  // namespace

L1Solution lp_min_l1(const CharacterTable& table, const std::vector<std::size_t>& lambda_in,
                     const std::vector<std::size_t>& support_in, const LpOptions& options) {
  const auto prog = build_program(table, lambda_in, support_in);
  return finish(table, prog, solve_lp(prog.lp, options));
}

BpbPolynomial bpb_search(const CharacterTable& table, const std::vector<std::size_t>& lambda_in, double epsilon,
                         double bound_constant, const LpOptions& options) {
  if (lambda_in.empty()) throw Error(ErrorCode::InvalidArgument, "interpolation set is empty");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0,1]");
  const auto lambda = symmetrize(table, lambda_in);
  auto support = lambda;
  BpbPolynomial out;
  out.epsilon = epsilon;
  out.lambda = lambda;

  auto prog = build_program(table, lambda, support);
  SimplexSolver solver(prog.lp, options);
  L1Solution best = finish(table, prog, solver.result());
  out.lp_calls = 1;
  const double goal = 1.0 + epsilon + 1e-12;
  const double n = static_cast<double>(table.size);
  double current = best.optimum;
  while (current > goal) {
    if (support.size() == table.size) {
      throw Error(ErrorCode::Exhausted, "full support did not reach 1 + eps");
    }
    std::vector<std::uint8_t> taken(table.size, 0);
    for (auto c : support) taken[c] = 1;
    // Each candidate frees one constraint row; score it warm from the current optimum.
    bool found = false;
    double pick_value = 0.0;
    std::size_t pick = 0;
    for (std::size_t c = 0; c < table.size; ++c) {
      if (taken[c] || table.inverse[c] < c) continue;
      const double value = solver.relaxed_objective({prog.row_of[c]}) / n;
      ++out.lp_calls;
      if (!found || value < pick_value - 1e-12) {
        pick_value = value;
        pick = c;
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::Exhausted, "no candidate characters left");
    solver.relax({prog.row_of[pick]});
    current = solver.result().objective / n;
    support.push_back(pick);
    support.push_back(table.inverse[pick]);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
  }
  if (support.size() > lambda.size()) {
    // Solve the final support from scratch for a clean certificate.
    prog = build_program(table, lambda, support);
    best = finish(table, prog, solve_lp(prog.lp, options));
    ++out.lp_calls;
  }

  out.values = best.values;
  out.transform = best.transform;
  out.support = support;
  out.l1 = 0.0;
  for (auto v : out.values) out.l1 += std::abs(v);
  out.l1 /= static_cast<double>(table.size);
  out.lp_certified = best.certificate.pass;

  std::vector<std::uint8_t> in_support(table.size, 0);
  for (auto c : support) in_support[c] = 1;
  for (auto c : lambda) out.interpolation_error = std::max(out.interpolation_error, std::abs(out.transform[c] - 1.0));
  for (std::size_t c = 0; c < table.size; ++c) {
    if (!in_support[c]) out.off_support_max = std::max(out.off_support_max, std::abs(out.transform[c]));
  }

  out.bound.support_size = support.size();
  out.bound.lambda_size = lambda.size();
  out.bound.constant = bound_constant;
  out.bound.log_bound = 2.0 * static_cast<double>(lambda.size()) * std::log(bound_constant / epsilon);
  out.bound.within_bound = std::log(static_cast<double>(support.size())) <= out.bound.log_bound + 1e-12;
  out.bound.note = "C is a configured stand-in; the absolute constant is not specified";
  return out;
}

GroupFunction to_function(const FiniteAbelianGroup& group, const std::vector<double>& values) {
  return GroupFunction::from_real(group, values, Side::Primal);
}

L1Solution lp_min_l1(const FiniteAbelianGroup& group, const std::vector<Index>& lambda,
                     const std::vector<Index>& support, const LpOptions& options) {
  return lp_min_l1(CharacterTable::of(group), lambda, support, options);
}

BpbPolynomial bpb_search(const FiniteAbelianGroup& group, const std::vector<Index>& lambda, double epsilon,
                         double bound_constant, const LpOptions& options) {
  return bpb_search(CharacterTable::of(group), lambda, epsilon, bound_constant, options);
}

}  // namespace natspec
