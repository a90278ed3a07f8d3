#include <doctest.h>

#include <limits>

#include "natspec/catalog.hpp"
#include "natspec/error.hpp"
#include "natspec/lp.hpp"

using namespace natspec;

namespace {

LpProblem make(std::size_t rows, std::size_t cols, std::vector<double> a, std::vector<double> b,
               std::vector<double> c) {
  return LpProblem{rows, cols, std::move(a), std::move(b), std::move(c)};
}

// Best basic feasible solution over every choice of basis columns.
double vertex_optimum(const LpProblem& p) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pick(p.rows);
  for (std::size_t i = 0; i < p.rows; ++i) pick[i] = i;
  while (true) {
    std::vector<double> m(p.rows * p.rows);
    for (std::size_t i = 0; i < p.rows; ++i)
      for (std::size_t j = 0; j < p.rows; ++j) m[i * p.rows + j] = p.at(i, pick[j]);
    std::vector<double> y;
    if (solve_dense(m, p.b, p.rows, y)) {
      bool feasible = true;
      double cost = 0.0;
      for (std::size_t j = 0; j < p.rows; ++j) {
        feasible = feasible && y[j] >= -1e-9;
        cost += p.c[pick[j]] * y[j];
      }
      if (feasible) best = std::min(best, cost);
    }
    std::size_t k = p.rows;
    while (k > 0 && pick[k - 1] == p.cols - p.rows + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < p.rows; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

LpProblem random_problem(Rng& rng, std::size_t rows, std::size_t cols) {
  LpProblem p{rows, cols, std::vector<double>(rows * cols), std::vector<double>(rows), std::vector<double>(cols)};
  std::vector<double> x0(cols);
  for (auto& v : x0) v = rng.uniform() < 0.5 ? 0.0 : rng.uniform(0, 2);
  for (auto& v : p.a) v = std::round(rng.uniform(-3, 3));
  for (auto& v : p.c) v = std::round(rng.uniform(0, 5));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) p.b[i] += p.at(i, j) * x0[j];
  return p;
}

LpProblem drop_rows(const LpProblem& p, const std::vector<std::size_t>& rows) {
  LpProblem out{0, p.cols, {}, {}, p.c};
  for (std::size_t i = 0; i < p.rows; ++i) {
    if (std::find(rows.begin(), rows.end(), i) != rows.end()) continue;
    ++out.rows;
    out.b.push_back(p.b[i]);
    for (std::size_t j = 0; j < p.cols; ++j) out.a.push_back(p.at(i, j));
  }
  return out;
}

}  // namespace

TEST_CASE("small programs") {
  // min x + 2y, x + y = 1
  auto r = solve_lp(make(1, 2, {1, 1}, {1}, {1, 2}));
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(1.0));
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.x[1] == doctest::Approx(0.0));

  // Redundant row.
  r = solve_lp(make(2, 3, {1, 1, 0, 2, 2, 0}, {1, 2}, {0, 1, 1}));
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(0.0));
  CHECK(r.kept_rows.size() == 1);

  // x + y = -1 has no nonnegative solution.
  CHECK(solve_lp(make(1, 2, {1, 1}, {-1}, {1, 1})).status == LpStatus::Infeasible);

  // min -x, x - y = 0.
  CHECK(solve_lp(make(1, 2, {1, -1}, {0}, {-1, 0})).status == LpStatus::Unbounded);
}

TEST_CASE("cell cap") {
  LpOptions opt;
  opt.cell_cap = 10;
  LpProblem p{4, 8, std::vector<double>(32, 1.0), std::vector<double>(4, 1.0), std::vector<double>(8, 1.0)};
  try {
    solve_lp(p, opt);
    FAIL("expected OverLpCap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverLpCap);
  }
}

TEST_CASE("random programs agree with vertex enumeration") {
  Rng rng(101);
  for (int t = 0; t < 300; ++t) {
    const std::size_t rows = 1 + rng.below(4);
    const std::size_t cols = rows + 1 + rng.below(5);
    const auto p = random_problem(rng, rows, cols);
    const auto r = solve_lp(p);
    const double oracle = vertex_optimum(p);
    if (!std::isfinite(oracle)) {
      // Rank-deficient data: feasibility was built in, so only degenerate bases are missing.
      CHECK(r.status == LpStatus::Optimal);
      continue;
    }
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(oracle).epsilon(1e-9).scale(1.0));
    const auto check = verify_optimality(p, r);
    CHECK(check.pass);
    CHECK(check.primal_residual < 1e-9);
    CHECK(check.min_x >= -1e-9);
  }
}

TEST_CASE("warm relaxations match cold solves") {
  Rng rng(202);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 2 + rng.below(4);
    const std::size_t cols = rows + 2 + rng.below(6);
    const auto p = random_problem(rng, rows, cols);
    SimplexSolver solver(p);
    REQUIRE(solver.result().status == LpStatus::Optimal);
    CHECK(solver.result().objective == doctest::Approx(solve_lp(p).objective).epsilon(1e-9).scale(1.0));

    std::vector<std::size_t> drop{rng.below(rows)};
    const double warm = solver.relaxed_objective(drop);
    const auto cold = solve_lp(drop_rows(p, drop));
    REQUIRE(cold.status == LpStatus::Optimal);
    CHECK(warm == doctest::Approx(cold.objective).epsilon(1e-9).scale(1.0));
    CHECK(warm <= solver.result().objective + 1e-9);

    solver.relax(drop);
    CHECK(solver.result().objective == doctest::Approx(cold.objective).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("optimality check rejects a wrong answer") {
  const auto p = make(1, 2, {1, 1}, {1}, {1, 2});
  auto r = solve_lp(p);
  REQUIRE(verify_optimality(p, r).pass);
  r.x = {0.0, 1.0};
  r.basis = {1};
  r.objective = 2.0;
  CHECK_FALSE(verify_optimality(p, r).pass);
}

TEST_CASE("dense solve") {
  std::vector<double> y;
  REQUIRE(solve_dense({2, 1, 1, 3}, {3, 5}, 2, y));
  CHECK(y[0] == doctest::Approx(0.8));
  CHECK(y[1] == doctest::Approx(1.4));
  CHECK_FALSE(solve_dense({1, 2, 2, 4}, {1, 1}, 2, y));
}
