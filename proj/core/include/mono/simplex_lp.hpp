#pragma once

#include "mono/types.hpp"

namespace mono {

/// Result of min c.x  s.t.  A x = b, x >= 0.
struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status;
  double objective = 0.0;
  Eigen::VectorXd x;
};

/// Dense two-phase primal simplex with Bland's rule.  Intended for the tiny
/// polyhedral problems this library generates (a handful of rows, up to a few
/// thousand columns).  `feas_tol` bounds the accepted phase-1 infeasibility;
/// degenerate zero-level artificial basics are pivoted out or their redundant
/// rows dropped.
LpResult solve_equality_lp(const Matrix& A, const Vec& b, const Vec& c, double feas_tol = 1e-9);

/// Feasibility of { w : M w = v, lo <= w <= hi } with possibly infinite
/// bounds, via a phase-1 solve on the standard-form encoding.
bool affine_box_feasible(const Matrix& M, const Vec& v, const Vec& lo, const Vec& hi,
                         double feas_tol = 1e-9);

}  // namespace mono
