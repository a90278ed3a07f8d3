#include "natspec/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "natspec/error.hpp"

namespace natspec {

namespace {

constexpr double kSnap = 1e-14;
constexpr double kHarris = 1e-9;
constexpr double kDegenerate = 1e-9;
constexpr double kPerturb = 1e-7;
constexpr std::size_t kSettleRefresh = 64;

}  // namespace

/// Dense tableau. Each row ends with a perturbation column and the right-hand
/// side; ratio tests use their sum while the reported values use the true side.
class Tableau {
 public:
  /// `initial` holds m rows of width+2 entries: coefficients, perturbation, right-hand side.
  Tableau(std::size_t m, std::size_t width, std::vector<double> initial)
      : m_(m), w_(width + 2), t_(initial), orig_(std::move(initial)), basis_(m), origin_(m), price_(width, 0.0) {
    t_.resize((m + 1) * w_, 0.0);
    for (std::size_t i = 0; i < m; ++i) origin_[i] = i;
  }

  double& cell(std::size_t i, std::size_t j) { return t_[i * w_ + j]; }
  double& rhs(std::size_t i) { return t_[i * w_ + w_ - 1]; }
  double shifted(std::size_t i) const { return t_[i * w_ + w_ - 1] + t_[i * w_ + w_ - 2]; }
  double& cost(std::size_t j) { return t_[m_ * w_ + j]; }
  double& cost_rhs() { return t_[m_ * w_ + w_ - 1]; }
  double cost_rhs() const { return t_[m_ * w_ + w_ - 1]; }
  std::size_t rows() const { return m_; }
  std::size_t width() const { return w_ - 2; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& origin() const { return origin_; }

  /// Installs a cost vector and prices it against the current basis.
  void set_cost(std::vector<double> c) {
    price_ = std::move(c);
    reprice();
  }

  /// Copy with the negations of the given columns appended at the negated cost.
  Tableau with_negated(const std::vector<std::size_t>& cols) const {
    const std::size_t extra = cols.size();
    const std::size_t nw = w_ + extra;
    const std::size_t m0 = orig_.size() / w_;
    Tableau out = *this;
    out.w_ = nw;
    out.t_.assign((m_ + 1) * nw, 0.0);
    out.orig_.assign(m0 * nw, 0.0);
    auto widen = [&](const std::vector<double>& src, std::vector<double>& dst, std::size_t rows) {
      for (std::size_t i = 0; i < rows; ++i) {
        const double* s = &src[i * w_];
        double* d = &dst[i * nw];
        std::copy(s, s + w_ - 2, d);
        for (std::size_t k = 0; k < extra; ++k) d[w_ - 2 + k] = -s[cols[k]];
        d[nw - 2] = s[w_ - 2];
        d[nw - 1] = s[w_ - 1];
      }
    };
    widen(t_, out.t_, m_ + 1);
    widen(orig_, out.orig_, m0);
    out.price_.resize(nw - 2, 0.0);
    for (std::size_t k = 0; k < extra; ++k) out.price_[w_ - 2 + k] = -price_[cols[k]];
    return out;
  }

  /// Copy restricted to the kept columns (which must cover the basis), with
  /// the negations of `negate` appended. Returns false if a basic column is missing.
  bool select(const std::vector<std::size_t>& keep, const std::vector<std::size_t>& negate, Tableau& out) const {
    std::vector<std::size_t> pos(w_ - 2, static_cast<std::size_t>(-1));
    for (std::size_t k = 0; k < keep.size(); ++k) pos[keep[k]] = k;
    std::vector<std::size_t> basis(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      basis[i] = pos[basis_[i]];
      if (basis[i] == static_cast<std::size_t>(-1)) return false;
    }
    const std::size_t nw = keep.size() + negate.size() + 2;
    const std::size_t m0 = orig_.size() / w_;
    auto gather = [&](const std::vector<double>& src, std::vector<double>& dst, std::size_t rows) {
      dst.assign(rows * nw, 0.0);
      for (std::size_t i = 0; i < rows; ++i) {
        const double* s = &src[i * w_];
        double* d = &dst[i * nw];
        for (std::size_t k = 0; k < keep.size(); ++k) d[k] = s[keep[k]];
        for (std::size_t k = 0; k < negate.size(); ++k) d[keep.size() + k] = -s[negate[k]];
        d[nw - 2] = s[w_ - 2];
        d[nw - 1] = s[w_ - 1];
      }
    };
    out.m_ = m_;
    out.w_ = nw;
    gather(t_, out.t_, m_ + 1);
    gather(orig_, out.orig_, m0);
    out.basis_ = std::move(basis);
    out.origin_ = origin_;
    out.price_.assign(nw - 2, 0.0);
    for (std::size_t k = 0; k < keep.size(); ++k) out.price_[k] = price_[keep[k]];
    for (std::size_t k = 0; k < negate.size(); ++k) out.price_[keep.size() + k] = -price_[negate[k]];
    out.since_refresh_ = since_refresh_;
    return true;
  }

  void pivot(std::size_t r, std::size_t c) {
    double* pr = &t_[r * w_];
    const double inv = 1.0 / pr[c];
    for (std::size_t j = 0; j < w_; ++j) pr[j] *= inv;
    pr[c] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double* pi = &t_[i * w_];
      const double factor = pi[c];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < w_; ++j) pi[j] -= factor * pr[j];
      pi[c] = 0.0;
    }
    basis_[r] = c;
    ++since_refresh_;
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r * w_), t_.begin() + static_cast<std::ptrdiff_t>((r + 1) * w_));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    origin_.erase(origin_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

  /// Shifts the right-hand side of each current row by a small distinct amount.
  void perturb(double scale) {
    const std::size_t m0 = orig_.size() / w_;
    for (std::size_t i = 0; i < m0; ++i) orig_[i * w_ + w_ - 2] = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      const double d = scale * (1.0 + static_cast<double>((r * 2654435761ULL) % 1009) / 1009.0);
      t_[r * w_ + w_ - 2] = d;
      for (std::size_t i = 0; i < m0; ++i) orig_[i * w_ + w_ - 2] += d * orig_[i * w_ + basis_[r]];
    }
  }

  /// Zeroes the perturbation in the original data and in the current rows.
  void clear_perturbation() {
    const std::size_t m0 = orig_.size() / w_;
    for (std::size_t i = 0; i < m0; ++i) orig_[i * w_ + w_ - 2] = 0.0;
    for (std::size_t i = 0; i <= m_; ++i) t_[i * w_ + w_ - 2] = 0.0;
  }

  /// Rebuilds every row from the original data for the current basis.
  bool refresh() {
    const std::size_t k = m_;
    std::vector<double> lhs(k * k);
    std::vector<double> aug(k * w_);
    for (std::size_t i = 0; i < k; ++i) {
      const double* src = &orig_[origin_[i] * w_];
      for (std::size_t r = 0; r < k; ++r) lhs[i * k + r] = src[basis_[r]];
      std::copy(src, src + w_, aug.begin() + static_cast<std::ptrdiff_t>(i * w_));
    }
    for (std::size_t col = 0; col < k; ++col) {
      std::size_t piv = col;
      for (std::size_t i = col + 1; i < k; ++i) {
        if (std::abs(lhs[i * k + col]) > std::abs(lhs[piv * k + col])) piv = i;
      }
      if (std::abs(lhs[piv * k + col]) < 1e-13) return false;
      if (piv != col) {
        std::swap_ranges(lhs.begin() + static_cast<std::ptrdiff_t>(col * k),
                         lhs.begin() + static_cast<std::ptrdiff_t>((col + 1) * k),
                         lhs.begin() + static_cast<std::ptrdiff_t>(piv * k));
        std::swap_ranges(aug.begin() + static_cast<std::ptrdiff_t>(col * w_),
                         aug.begin() + static_cast<std::ptrdiff_t>((col + 1) * w_),
                         aug.begin() + static_cast<std::ptrdiff_t>(piv * w_));
      }
      for (std::size_t i = 0; i < k; ++i) {
        if (i == col) continue;
        const double f = lhs[i * k + col] / lhs[col * k + col];
        if (f == 0.0) continue;
        for (std::size_t j = col; j < k; ++j) lhs[i * k + j] -= f * lhs[col * k + j];
        for (std::size_t j = 0; j < w_; ++j) aug[i * w_ + j] -= f * aug[col * w_ + j];
      }
    }
    for (std::size_t r = 0; r < k; ++r) {
      const double d = lhs[r * k + r];
      for (std::size_t j = 0; j < w_; ++j) {
        double v = aug[r * w_ + j] / d;
        if (std::abs(v) < kSnap) v = 0.0;
        t_[r * w_ + j] = v;
      }
      t_[r * w_ + basis_[r]] = 1.0;
    }
    reprice();
    since_refresh_ = 0;
    return true;
  }

  /// Primal simplex over eligible columns: most negative reduced cost enters,
  /// two-pass ratio test on the perturbed side. Bland's rule takes over while
  /// stalled. Returns false if unbounded. With `bounded` set, a column without
  /// a pivot is numerical noise and is skipped.
  bool optimize(const std::vector<std::uint8_t>& eligible, const LpOptions& opt, std::size_t& iterations,
                bool bounded = false) {
    const std::size_t cols = eligible.size();
    std::vector<std::uint8_t> skipped(cols, 0);
    const std::size_t interval = std::max<std::size_t>(50, m_);
    const std::size_t stall_limit = 2 * m_ + 10;
    std::size_t stalled = 0;
    while (true) {
      if (since_refresh_ >= interval) refresh();
      const bool bland = stalled >= stall_limit;
      std::size_t enter = cols;
      double most = -opt.cost_tol;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!eligible[j] || skipped[j] || cost(j) >= most) continue;
        enter = j;
        if (bland) break;
        most = cost(j);
      }
      if (enter == cols) {
        if (since_refresh_ >= kSettleRefresh && refresh()) continue;
        return true;
      }
      std::size_t leave = m_;
      if (!bland) {
        double limit = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m_; ++i) {
          const double a = cell(i, enter);
          if (a > opt.pivot_tol) limit = std::min(limit, (std::max(shifted(i), 0.0) + kHarris) / a);
        }
        double best = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
          const double a = cell(i, enter);
          if (a <= opt.pivot_tol || std::max(shifted(i), 0.0) / a > limit) continue;
          if (a > best) {
            best = a;
            leave = i;
          }
        }
      } else {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m_; ++i) {
          const double a = cell(i, enter);
          if (a <= opt.pivot_tol) continue;
          const double ratio = std::max(shifted(i), 0.0) / a;
          if (leave == m_ || ratio < best - 1e-12) {
            best = ratio;
            leave = i;
          } else if (ratio <= best + 1e-12 && basis_[i] < basis_[leave]) {
            leave = i;
          }
        }
      }
      if (leave == m_) {
        if (since_refresh_ >= kSettleRefresh && refresh()) continue;
        if (!bounded) return false;
        skipped[enter] = 1;
        continue;
      }
      std::fill(skipped.begin(), skipped.end(), 0);
      const double gain = -cost(enter) * std::max(shifted(leave), 0.0) / cell(leave, enter);
      pivot(leave, enter);
      stalled = gain <= kDegenerate ? stalled + 1 : 0;
      if (++iterations > opt.max_iterations) {
        throw Error(ErrorCode::Internal, "simplex iteration limit reached");
      }
    }
  }

  /// Dual simplex on the true side from a dual feasible basis. Returns false if
  /// a negative row has no entering column.
  bool restore_feasibility(const std::vector<std::uint8_t>& eligible, const LpOptions& opt, double tol,
                           std::size_t& iterations) {
    while (true) {
      std::size_t leave = m_;
      double worst = -tol;
      for (std::size_t i = 0; i < m_; ++i) {
        if (rhs(i) < worst) {
          worst = rhs(i);
          leave = i;
        }
      }
      if (leave == m_) return true;
      std::size_t enter = eligible.size();
      double best = std::numeric_limits<double>::infinity();
      double best_pivot = 0.0;
      for (std::size_t j = 0; j < eligible.size(); ++j) {
        const double a = cell(leave, j);
        if (!eligible[j] || a >= -opt.pivot_tol) continue;
        const double ratio = std::max(cost(j), 0.0) / -a;
        if (ratio < best - 1e-12 || (ratio <= best + 1e-12 && -a > best_pivot)) {
          best = std::min(best, ratio);
          best_pivot = -a;
          enter = j;
        }
      }
      if (enter == eligible.size()) return false;
      pivot(leave, enter);
      if (++iterations > opt.max_iterations) {
        throw Error(ErrorCode::Internal, "simplex iteration limit reached");
      }
    }
  }

 private:
  void reprice() {
    for (std::size_t j = 0; j + 2 < w_; ++j) cost(j) = price_[j];
    t_[m_ * w_ + w_ - 2] = 0.0;
    cost_rhs() = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = price_[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < w_; ++j) t_[m_ * w_ + j] -= cb * t_[i * w_ + j];
    }
    for (std::size_t i = 0; i < m_; ++i) cost(basis_[i]) = 0.0;
  }

  std::size_t m_;
  std::size_t w_;
  std::vector<double> t_;
  std::vector<double> orig_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> origin_;
  std::vector<double> price_;
  std::size_t since_refresh_ = 0;
};

namespace {

/// Optimizes, then drops the perturbation and repairs primal feasibility; repeats
/// until the true-side basis is both primal and dual feasible.
bool settle(Tableau& t, const std::vector<std::uint8_t>& eligible, const LpOptions& opt, double tol,
            std::size_t& iterations, bool bounded) {
  for (int round = 0; round < 8; ++round) {
    if (!t.optimize(eligible, opt, iterations, bounded)) return false;
    t.clear_perturbation();
    if (!t.restore_feasibility(eligible, opt, tol, iterations)) return true;
    bool dual_ok = true;
    for (std::size_t j = 0; j < eligible.size(); ++j) dual_ok = dual_ok && (!eligible[j] || t.cost(j) >= -opt.cost_tol);
    if (dual_ok) return true;
  }
  return t.optimize(eligible, opt, iterations, bounded);
}

}  // namespace

SimplexSolver::SimplexSolver(const LpProblem& p, const LpOptions& opt) : options_(opt), cols_(p.cols) {
  if (p.a.size() != p.rows * p.cols || p.b.size() != p.rows || p.c.size() != p.cols) {
    throw Error(ErrorCode::DimensionMismatch, "inconsistent LP dimensions");
  }
  if ((p.rows + 1) * (p.cols + p.rows + 2) > opt.cell_cap) {
    throw Error(ErrorCode::OverLpCap, "LP with " + std::to_string(p.rows) + " rows and " + std::to_string(p.cols) +
                                          " columns exceeds the tableau cap");
  }
  const std::size_t m = p.rows;
  const std::size_t n = p.cols;
  const std::size_t w = n + m + 2;
  double bscale = 1.0;
  for (auto v : p.b) bscale = std::max(bscale, std::abs(v));
  scale_ = bscale;
  std::vector<double> initial(m * w, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = p.b[i] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) initial[i * w + j] = sign * p.at(i, j);
    initial[i * w + n + i] = 1.0;
    initial[i * w + w - 1] = sign * p.b[i];
  }
  auto t = std::make_unique<Tableau>(m, n + m, std::move(initial));
  for (std::size_t i = 0; i < m; ++i) t->basis()[i] = n + i;
  t->perturb(kPerturb * bscale);
  // Phase 1 minimizes the sum of artificials.
  std::vector<double> phase1(n + m, 0.0);
  std::fill(phase1.begin() + static_cast<std::ptrdiff_t>(n), phase1.end(), 1.0);
  t->set_cost(phase1);

  if (!t->optimize(std::vector<std::uint8_t>(n + m, 1), opt, result_.iterations, true)) {
    throw Error(ErrorCode::Internal, "phase one reported unbounded");
  }
  const double slack = opt.feas_tol * bscale * static_cast<double>(std::max<std::size_t>(m, 1));
  if (-t->cost_rhs() > slack + 4.0 * kPerturb * bscale * static_cast<double>(m)) {
    result_.status = LpStatus::Infeasible;
    return;
  }
  // Drive artificials out of the basis; rows with no usable pivot are redundant.
  for (std::size_t i = 0; i < t->rows();) {
    if (t->basis()[i] < n) {
      ++i;
      continue;
    }
    std::size_t col = n;
    double best = 1e-9;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(t->cell(i, j)) > best) {
        best = std::abs(t->cell(i, j));
        col = j;
      }
    }
    if (col < n) {
      t->pivot(i, col);
      ++i;
    } else {
      t->drop_row(i);
    }
  }
  std::vector<double> phase2(n + m, 0.0);
  std::copy(p.c.begin(), p.c.end(), phase2.begin());
  t->set_cost(phase2);
  t->refresh();
  // Nonnegative costs bound the objective below.
  bounded_ = std::all_of(p.c.begin(), p.c.end(), [](double v) { return v >= 0.0; });
  eligible_.assign(n + m, 0);
  std::fill(eligible_.begin(), eligible_.begin() + static_cast<std::ptrdiff_t>(n), 1);
  if (!settle(*t, eligible_, opt, opt.feas_tol * bscale, result_.iterations, bounded_)) {
    result_.status = LpStatus::Unbounded;
    return;
  }
  tableau_ = std::move(t);
  result_.status = LpStatus::Optimal;
  collect();
}

SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

void SimplexSolver::collect() {
  Tableau& t = *tableau_;
  result_.x.assign(cols_, 0.0);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (t.basis()[i] < cols_) result_.x[t.basis()[i]] = std::max(0.0, t.rhs(i));
  }
  result_.objective = -t.cost_rhs();
  result_.basis = t.basis();
  result_.kept_rows = t.origin();
}

namespace {

std::vector<std::size_t> artificial_columns(std::size_t n, std::size_t width, const std::vector<std::size_t>& rows) {
  std::vector<std::size_t> out;
  for (auto r : rows) {
    if (n + r >= width) throw Error(ErrorCode::InvalidArgument, "row index out of range");
    out.push_back(n + r);
  }
  return out;
}

}  // namespace

double SimplexSolver::relaxed_objective(const std::vector<std::size_t>& rows) const {
  if (result_.status != LpStatus::Optimal) throw Error(ErrorCode::InvalidArgument, "no optimal basis to relax");
  const std::size_t width = tableau_->width();
  const auto artificial = artificial_columns(cols_, width, rows);
  // Work on the eligible columns plus the freed slacks only.
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < width; ++j) {
    if (eligible_[j] || std::find(artificial.begin(), artificial.end(), j) != artificial.end()) keep.push_back(j);
  }
  Tableau t(0, 0, {});
  std::vector<std::uint8_t> eligible;
  if (tableau_->select(keep, artificial, t)) {
    eligible.assign(t.width(), 1);
  } else {
    t = tableau_->with_negated(artificial);
    eligible = eligible_;
    for (auto a : artificial) eligible[a] = 1;
    eligible.resize(t.width(), 1);
  }
  t.perturb(kPerturb * scale_);
  std::size_t iterations = 0;
  if (!settle(t, eligible, options_, options_.feas_tol * scale_, iterations, bounded_)) {
    return -std::numeric_limits<double>::infinity();
  }
  return -t.cost_rhs();
}

void SimplexSolver::relax(const std::vector<std::size_t>& rows) {
  if (result_.status != LpStatus::Optimal) throw Error(ErrorCode::InvalidArgument, "no optimal basis to relax");
  const std::size_t width = tableau_->width();
  const auto artificial = artificial_columns(cols_, width, rows);
  auto t = std::make_unique<Tableau>(tableau_->with_negated(artificial));
  for (auto a : artificial) eligible_[a] = 1;
  eligible_.resize(t->width(), 1);
  t->perturb(kPerturb * scale_);
  if (!settle(*t, eligible_, options_, options_.feas_tol * scale_, result_.iterations, bounded_)) {
    result_.status = LpStatus::Unbounded;
    return;
  }
  tableau_ = std::move(t);
  collect();
}

LpResult solve_lp(const LpProblem& p, const LpOptions& opt) { return SimplexSolver(p, opt).result(); }

bool solve_dense(std::vector<double> a, std::vector<double> r, std::size_t n, std::vector<double>& y) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i) {
      if (std::abs(a[i * n + col]) > std::abs(a[piv * n + col])) piv = i;
    }
    if (std::abs(a[piv * n + col]) < 1e-13) return false;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[piv * n + j]);
      std::swap(r[col], r[piv]);
    }
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = a[i * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[i * n + j] -= f * a[col * n + j];
      r[i] -= f * r[col];
    }
  }
  y.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = r[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * y[j];
    y[i] = s / a[i * n + i];
  }
  return true;
}

OptimalityCheck verify_optimality(const LpProblem& p, const LpResult& res, double tol) {
  OptimalityCheck chk;
  if (res.status != LpStatus::Optimal) return chk;
  const std::size_t k = res.kept_rows.size();
  double scale = 1.0;
  for (auto v : p.b) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < p.rows; ++i) {
    double s = -p.b[i];
    for (std::size_t j = 0; j < p.cols; ++j) s += p.at(i, j) * res.x[j];
    chk.primal_residual = std::max(chk.primal_residual, std::abs(s));
  }
  chk.min_x = res.x.empty() ? 0.0 : *std::min_element(res.x.begin(), res.x.end());
  // B^T y = c_B over the kept rows.
  std::vector<double> bt(k * k), cb(k);
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t col = res.basis[r];
    cb[r] = p.c[col];
    for (std::size_t i = 0; i < k; ++i) bt[r * k + i] = p.at(res.kept_rows[i], col);
  }
  std::vector<double> y;
  if (!solve_dense(bt, cb, k, y)) return chk;
  chk.min_reduced_cost = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < p.cols; ++j) {
    double d = p.c[j];
    for (std::size_t i = 0; i < k; ++i) d -= y[i] * p.at(res.kept_rows[i], j);
    chk.min_reduced_cost = std::min(chk.min_reduced_cost, d);
  }
  if (p.cols == 0) chk.min_reduced_cost = 0.0;
  double dual_obj = 0.0;
  for (std::size_t i = 0; i < k; ++i) dual_obj += y[i] * p.b[res.kept_rows[i]];
  chk.duality_gap = std::abs(res.objective - dual_obj);
  double cscale = 1.0;
  for (auto v : p.c) cscale = std::max(cscale, std::abs(v));
  chk.pass = chk.primal_residual <= tol * scale * 10 && chk.min_x >= -tol && chk.min_reduced_cost >= -tol * cscale &&
             chk.duality_gap <= tol * std::max(1.0, std::abs(res.objective)) * 10;
  return chk;
}

}  // namespace natspec
