#include "mono/simplex_lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace mono {

namespace {

constexpr double kPivTol = 1e-11;
constexpr double kOptTol = 1e-11;

struct Tableau {
  Matrix T;                // m x (n+1): [B^{-1}A | B^{-1}b]
  std::vector<int> basis;  // column basic in each row
  int m, n;

  void pivot(int row, int col) {
    T.row(row) /= T(row, col);
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = T(i, col);
      if (f != 0.0) T.row(i) -= f * T.row(row);
    }
    basis[row] = col;
  }
};

enum class IterStatus { Optimal, Unbounded, Stalled };

// Primal simplex with Bland's anti-cycling rule on the allowed columns.
IterStatus iterate(Tableau& tab, const Vec& cost, const std::vector<bool>& allowed) {
  const int max_iters = 10000 + 50 * (tab.n + tab.m);
  for (int iter = 0; iter < max_iters; ++iter) {
    // Reduced costs d_j = c_j - c_B^T T_j, entering = smallest eligible j.
    int entering = -1;
    for (int j = 0; j < tab.n; ++j) {
      if (!allowed[j]) continue;
      double d = cost[j];
      for (int i = 0; i < tab.m; ++i) {
        const double t = tab.T(i, j);
        if (t != 0.0) d -= cost[tab.basis[i]] * t;
      }
      if (d < -kOptTol) {
        entering = j;
        break;
      }
    }
    if (entering < 0) return IterStatus::Optimal;

    int leaving = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < tab.m; ++i) {
      const double t = tab.T(i, entering);
      if (t > kPivTol) {
        const double ratio = tab.T(i, tab.n) / t;
        if (ratio < best_ratio - kPivTol ||
            (ratio < best_ratio + kPivTol &&
             (leaving < 0 || tab.basis[i] < tab.basis[leaving]))) {
          best_ratio = ratio;
          leaving = i;
        }
      }
    }
    if (leaving < 0) return IterStatus::Unbounded;
    tab.pivot(leaving, entering);
  }
  return IterStatus::Stalled;
}

// Phase 1: returns the residual infeasibility; on success the tableau holds a
// basic feasible point of {x >= 0 : Ax = b} with artificials eliminated or
// their redundant rows zeroed out of play.
double phase1(Tableau& tab, const Matrix& A, const Vec& b) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  tab.m = m;
  tab.n = n + m;
  tab.T.resize(m, tab.n + 1);
  tab.T.setZero();
  tab.T.block(0, 0, m, n) = A;
  tab.T.block(0, n, m, m) = Matrix::Identity(m, m);
  tab.T.col(tab.n) = b;
  tab.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    if (tab.T(i, tab.n) < 0.0) tab.T.row(i) *= -1.0;
    tab.basis[i] = n + i;
  }

  Vec cost = Vec::Zero(tab.n);
  cost.tail(m).setOnes();
  std::vector<bool> allowed(tab.n, true);
  const IterStatus st = iterate(tab, cost, allowed);
  if (st == IterStatus::Stalled) throw Error("simplex: phase-1 iteration cap exceeded");

  double infeas = 0.0;
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] >= n) infeas += tab.T(i, tab.n);
  }

  // Pivot zero-level artificials out where possible (degenerate but harmless;
  // a row with no eligible pivot is a redundant constraint and is neutralized).
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    int col = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab.T(i, j)) > 1e-9) {
        col = j;
        break;
      }
    }
    if (col >= 0 && std::abs(tab.T(i, tab.n)) <= 1e-9) {
      tab.pivot(i, col);
    } else if (col < 0) {
      tab.T.row(i).setZero();
    }
  }
  return infeas;
}

}  // namespace

LpResult solve_equality_lp(const Matrix& A, const Vec& b, const Vec& c, double feas_tol) {
  if (A.rows() != b.size() || A.cols() != c.size()) {
    throw DimensionError("solve_equality_lp: inconsistent shapes");
  }
  const int n = static_cast<int>(A.cols());

  Tableau tab;
  const double infeas = phase1(tab, A, b);
  if (infeas > feas_tol) {
    return {LpResult::Status::Infeasible, infeas, Eigen::VectorXd()};
  }

  Vec cost = Vec::Zero(tab.n);
  cost.head(n) = c;
  std::vector<bool> allowed(tab.n, false);
  for (int j = 0; j < n; ++j) allowed[j] = true;
  const IterStatus st = iterate(tab, cost, allowed);
  if (st == IterStatus::Stalled) throw Error("simplex: phase-2 iteration cap exceeded");
  if (st == IterStatus::Unbounded) {
    return {LpResult::Status::Unbounded, -std::numeric_limits<double>::infinity(),
            Eigen::VectorXd()};
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < tab.m; ++i) {
    if (tab.basis[i] < n) x[tab.basis[i]] = tab.T(i, tab.n);
  }
  return {LpResult::Status::Optimal, c.dot(x), std::move(x)};
}

bool affine_box_feasible(const Matrix& M, const Vec& v, const Vec& lo, const Vec& hi,
                         double feas_tol) {
  const int rows = static_cast<int>(M.rows());
  const int nw = static_cast<int>(M.cols());
  if (v.size() != rows || lo.size() != nw || hi.size() != nw) {
    throw DimensionError("affine_box_feasible: inconsistent shapes");
  }
  const double inf = std::numeric_limits<double>::infinity();

  // Standard-form encoding: shift finite lower bounds, negate for upper-only
  // coordinates, split free ones, add a slack row per two-sided coordinate.
  int extra_rows = 0;
  for (int i = 0; i < nw; ++i) {
    if (lo[i] > -inf && hi[i] < inf) ++extra_rows;
  }
  std::vector<Vec> cols;
  Vec b = Vec::Zero(rows + extra_rows);
  b.head(rows) = v;
  int slack_row = rows;
  std::vector<int> bounded_rows(nw, -1);

  for (int i = 0; i < nw; ++i) {
    const bool lo_fin = lo[i] > -inf;
    const bool hi_fin = hi[i] < inf;
    if (lo_fin) b.head(rows) -= M.col(i) * lo[i];
    if (!lo_fin && hi_fin) b.head(rows) -= M.col(i) * hi[i];
    if (lo_fin && hi_fin) {
      bounded_rows[i] = slack_row;
      b[slack_row] = hi[i] - lo[i];
      ++slack_row;
    }
  }
  const int total_rows = rows + extra_rows;
  auto col_from = [&](const Vec& body, int bounded_row, double slack_coef) {
    Vec col = Vec::Zero(total_rows);
    col.head(rows) = body;
    if (bounded_row >= 0) col[bounded_row] = slack_coef;
    return col;
  };
  for (int i = 0; i < nw; ++i) {
    const bool lo_fin = lo[i] > -inf;
    const bool hi_fin = hi[i] < inf;
    if (lo_fin) {
      cols.push_back(col_from(M.col(i), bounded_rows[i], 1.0));  // w = lo + u
    } else if (hi_fin) {
      cols.push_back(col_from(-M.col(i), -1, 0.0));  // w = hi - u
    } else {
      cols.push_back(col_from(M.col(i), -1, 0.0));  // w = u+ - u-
      cols.push_back(col_from(-M.col(i), -1, 0.0));
    }
    if (lo_fin && hi_fin) {
      Vec slack = Vec::Zero(total_rows);
      slack[bounded_rows[i]] = 1.0;
      cols.push_back(std::move(slack));
    }
  }

  Matrix A(total_rows, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) A.col(static_cast<int>(j)) = cols[j];

  Tableau tab;
  const double scale = std::max({1.0, v.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  return phase1(tab, A, b) <= feas_tol * scale;
}

}  // namespace mono
