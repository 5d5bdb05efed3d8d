#include "mono/variational.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "mono/simplex_lp.hpp"

namespace mono {

namespace {

Covec regularized_term(const Operator& T, double param, const Vec& x, const SolveOptions& inner) {
  if (param > 0.0) return moreau_yosida(T, param, x, inner);
  const SetDescription S = T.eval(x);
  if (S.is_empty()) {
    throw MultivaluedEndpointError("operator '" + T.name() +
                                   "' with parameter 0 is undefined at the requested point");
  }
  if (!S.is_singleton(0.0)) {
    throw MultivaluedEndpointError("operator '" + T.name() +
                                   "' is multivalued at the requested point; parameter 0 needs a "
                                   "single-valued operator");
  }
  return S.any_element();
}

// Does the image M*S of a structural set meet rhs?  Used for lift membership.
bool image_contains(const Matrix& M, const SetDescription& S, const Vec& rhs, double tol) {
  switch (S.kind()) {
    case SetDescription::Kind::Empty:
      return false;
    case SetDescription::Kind::Point:
      return (M * S.point_value() - rhs).cwiseAbs().maxCoeff() <=
             tol * (1.0 + rhs.cwiseAbs().maxCoeff());
    case SetDescription::Kind::Finite: {
      for (const auto& p : S.finite_points()) {
        if ((M * p - rhs).cwiseAbs().maxCoeff() <= tol * (1.0 + rhs.cwiseAbs().maxCoeff())) {
          return true;
        }
      }
      return false;
    }
    case SetDescription::Kind::Ray: {
      const Vec base = M * S.ray_apex();
      const Vec dir = M * S.ray_dir();
      const double dn2 = dir.squaredNorm();
      double t = 0.0;
      if (dn2 > 0.0) t = std::max(0.0, (rhs - base).dot(dir) / dn2);
      return (base + t * dir - rhs).cwiseAbs().maxCoeff() <=
             tol * (1.0 + rhs.cwiseAbs().maxCoeff());
    }
    case SetDescription::Kind::Box:
      return affine_box_feasible(M, rhs, S.box_lo(), S.box_hi(),
                                 std::max(tol, 1e-9));
  }
  return false;
}

void run_jobs(int count, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  const int nthreads = std::min(jobs, count);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

Verdict merge_verdicts(const std::vector<ProbeReport>& reports) {
  bool all_accept = !reports.empty();
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Reject) return Verdict::Reject;
    if (r.verdict != Verdict::Accept) all_accept = false;
  }
  return all_accept ? Verdict::Accept : Verdict::Inconclusive;
}

}  // namespace

Covec regularized_sum_eval(const Operator& T1, const Operator& T2, double lambda, double mu,
                           const Vec& x, const SolveOptions& inner) {
  if (lambda < 0.0 || mu < 0.0) throw Error("regularized_sum_eval: parameters must be >= 0");
  return regularized_term(T1, lambda, x, inner) + regularized_term(T2, mu, x, inner);
}

Operator regularized_sum_operator(const Operator& T1, const Operator& T2, double lambda,
                                  double mu, const SolveOptions& inner) {
  if (T1.space().dim() != T2.space().dim()) {
    throw DimensionError("regularized_sum_operator: operator spaces differ");
  }
  SingleValuedMap m;
  m.map = [T1, T2, lambda, mu, inner](const Vec& x) {
    return regularized_sum_eval(T1, T2, lambda, mu, x, inner);
  };
  return Operator(T1.space(), std::move(m),
                  T1.name() + "_l" + std::to_string(lambda) + "+" + T2.name() + "_m" +
                      std::to_string(mu));
}

Operator composition_operator(const Operator& T, const LinearOp& A, const NormedSpace& space_y,
                              double lambda, const SolveOptions& inner) {
  if (A.dim_x() != T.space().dim() || A.dim_y() != space_y.dim()) {
    throw DimensionError("composition_operator: matrix shape does not match the spaces");
  }
  if (!(lambda > 0.0)) throw Error("composition_operator: lambda must be positive");
  SingleValuedMap m;
  m.map = [T, A, lambda, inner](const Vec& y) {
    return A.adjoint_apply(moreau_yosida(T, lambda, A.apply(y), inner));
  };
  return Operator(space_y, std::move(m), "adj(A)*" + T.name() + "_yosida*A");
}

bool LiftValue::contains(const Covec& ystar_part, const Covec& xstar_part, double tol) const {
  if (is_empty()) return false;
  require_dim(ystar_part, dim_y, "LiftValue::contains");
  require_dim(xstar_part, dim_x, "LiftValue::contains");
  // (u, v) is in the set iff some w* in T(Ay) satisfies A^T w* = u + A^T v
  // (then x* = w* - v reproduces both components).
  const Vec rhs = ystar_part + adjoint * xstar_part;
  return image_contains(adjoint, t_at_ay, rhs, tol);
}

bool LiftValue::composition_contains(const Covec& ystar, double tol) const {
  return contains(ystar, Covec::Zero(dim_x), tol);
}

std::optional<Covec> LiftValue::composition_value(double tol) const {
  if (is_empty() || !t_at_ay.is_singleton(tol)) return std::nullopt;
  return adjoint * t_at_ay.any_element();
}

LiftValue lift_eval(const Operator& T, const LinearOp& A, const Vec& y, const Vec& x,
                    double graph_tol) {
  require_dim(y, A.dim_y(), "lift_eval: y");
  require_dim(x, A.dim_x(), "lift_eval: x");
  if (A.dim_x() != T.space().dim()) {
    throw DimensionError("lift_eval: operator space does not match the matrix");
  }
  LiftValue lv;
  lv.dim_y = A.dim_y();
  lv.dim_x = A.dim_x();
  lv.adjoint = A.A.transpose();
  const Vec ay = A.apply(y);
  lv.on_graph = (x - ay).cwiseAbs().maxCoeff() <= graph_tol * (1.0 + ay.cwiseAbs().maxCoeff());
  lv.t_at_ay = lv.on_graph ? T.eval(ay) : SetDescription::empty(lv.dim_x);
  return lv;
}

MergedProbeReport variational_sum_probe(const Operator& T1, const Operator& T2, const Vec& x,
                                        const Covec& xstar, const ScheduleFamily& fam,
                                        const ProbeParams& pp, int jobs) {
  if (fam.empty()) throw Error("variational_sum_probe: empty schedule family");
  for (const auto& s : fam) {
    if (!s.in_class_sum()) throw Error("variational_sum_probe: schedules must be pair-kind");
  }
  SolveOptions inner;
  inner.tol = pp.inner_tol();
  inner.max_iterations = pp.max_iterations;

  MergedProbeReport merged;
  merged.per_schedule.resize(fam.size());
  run_jobs(static_cast<int>(fam.size()), jobs, [&](int si) {
    const Schedule& sched = fam[si];
    OperatorFamily family = [&T1, &T2, &sched, inner](int n) {
      return regularized_sum_operator(T1, T2, sched.lambda_at(n), sched.mu_at(n), inner);
    };
    std::vector<double> params(sched.length());
    for (int n = 1; n <= sched.length(); ++n) {
      params[n - 1] = sched.lambda_at(n) + sched.mu_at(n);
    }
    merged.per_schedule[si] = run_probe_steps(family, x, xstar, params, pp);
  });
  merged.verdict = merge_verdicts(merged.per_schedule);
  return merged;
}

MergedProbeReport variational_composition_probe(const Operator& T, const LinearOp& A,
                                                const NormedSpace& space_y, const Vec& y,
                                                const Covec& ystar, const ScheduleFamily& fam,
                                                const ProbeParams& pp, bool cross_check,
                                                int jobs) {
  if (fam.empty()) throw Error("variational_composition_probe: empty schedule family");
  for (const auto& s : fam) {
    if (!s.in_class_composition()) {
      throw Error("variational_composition_probe: schedules must be eps/lambda-kind");
    }
  }
  SolveOptions inner;
  inner.tol = pp.inner_tol();
  inner.max_iterations = pp.max_iterations;

  MergedProbeReport merged;
  merged.per_schedule.resize(fam.size());
  std::vector<double> cross_max(fam.size(), 0.0);
  run_jobs(static_cast<int>(fam.size()), jobs, [&](int si) {
    const Schedule& sched = fam[si];
    double local_cross = 0.0;
    OperatorFamily family = [&, inner](int n) -> Operator {
      const double lambda = sched.lambda_at(n);
      Operator direct = composition_operator(T, A, space_y, lambda, inner);
      if (!cross_check) return direct;
      // Wrap the direct map with the lift re-derivation of the same value.
      SingleValuedMap m;
      auto base = direct;
      m.map = [base, &T, &A, lambda, inner, &local_cross](const Vec& yy) {
        const Covec direct_val = base.apply_single_valued(yy);
        const Operator t_lam = yosida_operator(T, lambda, inner);
        const LiftValue lv = lift_eval(t_lam, A, yy, A.apply(yy));
        if (const auto lifted = lv.composition_value(1e-9)) {
          const double diff = (*lifted - direct_val).cwiseAbs().maxCoeff();
          if (diff > local_cross) local_cross = diff;
          if (diff > 1e-6 * (1.0 + direct_val.cwiseAbs().maxCoeff())) {
            throw SolverFailure("composition lift cross-check mismatch (" + std::to_string(diff) +
                                    ")",
                                diff);
          }
        }
        return direct_val;
      };
      return Operator(space_y, std::move(m), base.name());
    };
    std::vector<double> params(sched.length());
    for (int n = 1; n <= sched.length(); ++n) params[n - 1] = sched.lambda_at(n);
    merged.per_schedule[si] = run_probe_steps(family, y, ystar, params, pp);
    cross_max[si] = local_cross;
  });
  merged.verdict = merge_verdicts(merged.per_schedule);
  for (double c : cross_max) merged.cross_check_max = std::max(merged.cross_check_max, c);
  return merged;
}

}  // namespace mono
