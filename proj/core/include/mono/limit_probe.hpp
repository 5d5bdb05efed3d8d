#pragma once

#include <functional>

#include "mono/resolvent.hpp"
#include "mono/schedule.hpp"

namespace mono {

enum class Verdict { Accept, Reject, Inconclusive };
const char* to_string(Verdict v);

/// Indexed operator family n -> T_n, 1-based.
using OperatorFamily = std::function<Operator(int)>;

struct ProbeParams {
  double tol_accept = 1e-4;
  double tol_reject = 1e-2;
  int tail_window = 5;
  /// Nested tolerance budget, fixed ratios off tol_accept: the per-step
  /// inclusion is solved two orders below tol_accept and regularized terms
  /// two orders below that.
  double step_tol_ratio = 1e-2;
  double inner_tol_ratio = 1e-4;
  /// A step that misses step_tol() still counts when its residual is within
  /// this ratio of tol_accept, or within a safety factor of the solver's
  /// working-precision floor with a tiny forward-error estimate (very stiff
  /// late-schedule steps bottom out there without harming the verdict).
  double step_accept_ratio = 0.1;
  int max_iterations = 10000;
  bool warm_start = true;

  double step_tol() const { return step_tol_ratio * tol_accept; }
  double inner_tol() const { return inner_tol_ratio * tol_accept; }
};

/// Per-step record of a membership probe.  Accept requires the final residual
/// under tol_accept with a non-increasing tail; reject requires the whole tail
/// window at or above tol_reject; everything else is inconclusive.
struct ProbeReport {
  std::vector<double> params;     // reported step parameter (eps_n, lambda_n, ...)
  std::vector<double> residuals;  // r_n = ||x_n - x||_p
  std::vector<double> w_norms;    // ||w_n*||_q
  std::vector<int> iterations;
  Verdict verdict = Verdict::Inconclusive;
  double tail_slope = 0.0;  // least-squares slope of log r_n over the tail
  bool bounded = true;      // iterate-boundedness diagnostic
  std::string diagnostic;
};

/// Runs the regularized-inclusion steps x* in T_n(x_n) + J(x_n - x) for the
/// given per-step parameters and renders the verdict.
ProbeReport run_probe_steps(const OperatorFamily& family, const Vec& x, const Covec& xstar,
                            const std::vector<double>& params, const ProbeParams& pp);

/// Membership probe for z = (x, x*) in liminf T_n.  The engine solves the
/// exact (eps = 0) inclusion at every step, so eps_n only labels the report;
/// verdicts are invariant under the eps schedule by construction.
ProbeReport liminf_probe(const OperatorFamily& family, const Vec& x, const Covec& xstar,
                         const Schedule& sched, const ProbeParams& pp = {});

}  // namespace mono
