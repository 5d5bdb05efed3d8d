#include "mono/limit_probe.hpp"

#include <cmath>

namespace mono {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Accept:
      return "accept";
    case Verdict::Reject:
      return "reject";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

void decide(ProbeReport& rep, const ProbeParams& pp) {
  if (!rep.diagnostic.empty() || rep.residuals.empty()) {
    rep.verdict = Verdict::Inconclusive;
    return;
  }
  const int n = static_cast<int>(rep.residuals.size());
  const int w = std::min(pp.tail_window, n);
  double tail_min = SetDescription::kInf, tail_max = 0.0;
  bool nonincreasing = true;
  for (int i = n - w; i < n; ++i) {
    tail_min = std::min(tail_min, rep.residuals[i]);
    tail_max = std::max(tail_max, rep.residuals[i]);
    if (i > n - w) {
      const double slack = std::max(1e-12, 1e-3 * rep.residuals[i - 1]);
      if (rep.residuals[i] > rep.residuals[i - 1] + slack) nonincreasing = false;
    }
  }

  // Tail slope of log r_n (diagnostic only; clamped away from log 0).
  if (w >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = n - w; i < n; ++i) {
      const double xi = static_cast<double>(i);
      const double yi = std::log(std::max(rep.residuals[i], 1e-16));
      sx += xi;
      sy += yi;
      sxx += xi * xi;
      sxy += xi * yi;
    }
    const double denom = w * sxx - sx * sx;
    rep.tail_slope = denom != 0.0 ? (w * sxy - sx * sy) / denom : 0.0;
  }

  if (rep.residuals.back() <= pp.tol_accept && nonincreasing) {
    rep.verdict = Verdict::Accept;
  } else if (tail_min >= pp.tol_reject) {
    rep.verdict = Verdict::Reject;
  } else {
    rep.verdict = Verdict::Inconclusive;
  }
}

}  // namespace

ProbeReport run_probe_steps(const OperatorFamily& family, const Vec& x, const Covec& xstar,
                            const std::vector<double>& params, const ProbeParams& pp) {
  ProbeReport rep;
  rep.params = params;
  const int n_steps = static_cast<int>(params.size());
  SolveOptions opts;
  opts.tol = pp.step_tol();
  opts.max_iterations = pp.max_iterations;

  std::optional<Vec> warm;
  for (int n = 1; n <= n_steps; ++n) {
    InclusionSolution sol;
    try {
      const Operator T_n = family(n);
      require_dim(x, T_n.space().dim(), "liminf_probe: x");
      require_dim(xstar, T_n.space().dim(), "liminf_probe: xstar");
      if (pp.warm_start) opts.initial_guess = warm;
      sol = solve_translated_inclusion(T_n, x, xstar, opts);
      const bool floor_limited = sol.residual <= 100.0 * sol.residual_floor &&
                                 sol.point_error_estimate <= 1e-2 * pp.tol_accept;
      if (!sol.converged && sol.residual > pp.step_accept_ratio * pp.tol_accept &&
          !floor_limited) {
        rep.diagnostic = "step " + std::to_string(n) + ": " + sol.diagnostic;
        break;
      }
      const NormedSpace& space = T_n.space();
      const double r = space.norm(sol.z - x);
      const double wn = space.dual_norm(sol.w_star);
      // Boundedness diagnostic: solutions of the regularized inclusions stay
      // bounded for bounded data, so a blow-up flags misuse, never aborts.
      const double bound = 1e8 * (1.0 + space.norm(x) + space.dual_norm(xstar));
      if (!std::isfinite(r) || !std::isfinite(wn) || r > bound || wn > bound) {
        rep.bounded = false;
        rep.diagnostic = "step " + std::to_string(n) + ": iterate left the boundedness window";
        break;
      }
      rep.residuals.push_back(r);
      rep.w_norms.push_back(wn);
      rep.iterations.push_back(sol.iterations);
      warm = sol.z;
    } catch (const SolverFailure& e) {
      rep.diagnostic = "step " + std::to_string(n) + ": " + e.what();
      break;
    }
  }
  decide(rep, pp);
  return rep;
}

ProbeReport liminf_probe(const OperatorFamily& family, const Vec& x, const Covec& xstar,
                         const Schedule& sched, const ProbeParams& pp) {
  if (sched.kind() != Schedule::Kind::Eps) {
    throw Error("liminf_probe: schedule must be of eps kind");
  }
  std::vector<double> params(sched.length());
  for (int n = 1; n <= sched.length(); ++n) params[n - 1] = sched.eps_at(n);
  return run_probe_steps(family, x, xstar, params, pp);
}

}  // namespace mono
