#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace natspec {

/// min c'x subject to A x = b, x >= 0. A is dense, row-major.
struct LpProblem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;

  double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOptions {
  /// Maximum number of tableau cells (rows x columns).
  std::size_t cell_cap = 4'000'000;
  double pivot_tol = 1e-9;
  double cost_tol = 1e-9;
  double feas_tol = 1e-9;
  std::size_t max_iterations = 200'000;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  /// Basic column for each kept row.
  std::vector<std::size_t> basis;
  /// Original row indices that survived redundancy removal.
  std::vector<std::size_t> kept_rows;
  std::size_t iterations = 0;
};

class Tableau;

/// Two-phase dense tableau simplex with periodic refactorization. Keeps the
/// optimal tableau so that relaxations can be warm-started.
class SimplexSolver {
 public:
  /// Throws OverLpCap when the tableau would exceed the cell cap.
  explicit SimplexSolver(const LpProblem& problem, const LpOptions& options = {});
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;

  const LpResult& result() const { return result_; }

  /// Optimum after dropping the equality constraints of the given original rows,
  /// re-optimized from the current basis. Requires an optimal result.
  double relaxed_objective(const std::vector<std::size_t>& rows) const;

  /// Drops the given rows permanently and re-optimizes; result() then
  /// describes the relaxed program.
  void relax(const std::vector<std::size_t>& rows);

 private:
  void collect();

  LpOptions options_;
  std::size_t cols_ = 0;
  bool bounded_ = false;
  double scale_ = 1.0;
  std::vector<std::uint8_t> eligible_;
  LpResult result_;
  std::unique_ptr<Tableau> tableau_;
};

LpResult solve_lp(const LpProblem& problem, const LpOptions& options = {});

struct OptimalityCheck {
  double primal_residual = 0.0;
  double min_x = 0.0;
  double min_reduced_cost = 0.0;
  double duality_gap = 0.0;
  bool pass = false;
};

/// Recomputes duals from the basis and checks feasibility, reduced costs and
/// the duality gap independently of the tableau.
OptimalityCheck verify_optimality(const LpProblem& problem, const LpResult& result, double tol = 1e-9);

/// Solves the square system M y = r by Gaussian elimination with partial pivoting.
/// Returns false if M is numerically singular.
bool solve_dense(std::vector<double> m, std::vector<double> r, std::size_t n, std::vector<double>& y);

}  // namespace natspec
