#include "mono/resolvent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace mono {

namespace {

constexpr double kInf = SetDescription::kInf;

// Residual bookkeeping shared by all solver paths.  `at` builds the exact
// decomposition at a trial point and measures the defining relation through
// Operator::eval, independent of how the point was produced.
struct Verifier {
  const Operator& T;
  const Vec& x;
  const Covec& rhs;
  double lambda;

  InclusionSolution at(const Vec& z) const {
    InclusionSolution s;
    s.z = z;
    s.w_star = T.space().duality_map(z - x);
    s.t_star = (rhs - s.w_star) / lambda;
    const SetDescription S = T.eval(z);
    if (!S.is_empty()) s.residual = lambda * S.distance(s.t_star, T.space());
    return s;
  }

  // Try the point and structure-snapped variants of it; solutions of these
  // inclusions frequently sit exactly on kinks/faces where eval jumps, so the
  // verified residual is only attainable after snapping.
  InclusionSolution best_snapped(const Vec& z) const {
    InclusionSolution best = at(z);
    for (const double st : {1e-9, 1e-6, 1e-4}) {
      for (const Vec& c : T.snap_candidates(z, st)) {
        if (c == z) continue;
        InclusionSolution cand = at(c);
        if (cand.residual < best.residual) best = cand;
      }
    }
    return best;
  }

  void consider(InclusionSolution& best, const Vec& z) const {
    InclusionSolution cand = best_snapped(z);
    if (cand.residual < best.residual) best = cand;
  }
};

enum class Side { Below, Above, Hit };

// ---------------------------------------------------------------------------
// 1-D: safeguarded bisection on the monotone relation g(z) = lambda*T(z) +
// (z - x) - rhs (J is the identity on the line for every p).
// ---------------------------------------------------------------------------
InclusionSolution solve_bisection_1d(const Operator& T, const Vec& x, const Covec& rhs,
                                     double lambda, const SolveOptions& opts,
                                     const Verifier& V) {
  const auto [dlo, dhi] = T.domain_box();
  const double x0 = x[0];
  const double r0 = rhs[0];

  auto classify = [&](double zv) -> Side {
    Vec z(1);
    z[0] = zv;
    const SetDescription S = T.eval(z);
    if (S.is_empty()) return zv > dhi[0] ? Side::Above : Side::Below;
    const double glo = lambda * S.lower_1d() + (zv - x0) - r0;
    const double ghi = lambda * S.upper_1d() + (zv - x0) - r0;
    if (ghi < 0.0) return Side::Below;
    if (glo > 0.0) return Side::Above;
    return Side::Hit;
  };

  InclusionSolution best;
  best.residual = kInf;
  int iters = 0;

  double z0 = std::clamp(x0, std::isfinite(dlo[0]) ? dlo[0] : x0,
                         std::isfinite(dhi[0]) ? dhi[0] : x0);
  Side s0 = classify(z0);
  ++iters;
  if (s0 == Side::Hit) {
    Vec z(1);
    z[0] = z0;
    best = V.best_snapped(z);
    best.iterations = iters;
    best.converged = best.residual <= opts.tol;
    return best;
  }

  double a = z0, b = z0;
  bool have_a = (s0 == Side::Below), have_b = (s0 == Side::Above);
  double step = std::max(1.0, std::abs(z0));
  for (int k = 0; k < 400 && !(have_a && have_b); ++k) {
    ++iters;
    if (!have_b) {
      const double probe = std::max(a, b) + step;
      const Side s = classify(probe);
      if (s == Side::Hit) {
        Vec z(1);
        z[0] = probe;
        best = V.best_snapped(z);
        best.iterations = iters;
        best.converged = best.residual <= opts.tol;
        return best;
      }
      if (s == Side::Above) {
        b = probe;
        have_b = true;
      } else {
        a = probe;
        have_a = true;
      }
    } else if (!have_a) {
      const double probe = std::min(a, b) - step;
      const Side s = classify(probe);
      if (s == Side::Hit) {
        Vec z(1);
        z[0] = probe;
        best = V.best_snapped(z);
        best.iterations = iters;
        best.converged = best.residual <= opts.tol;
        return best;
      }
      if (s == Side::Below) {
        a = probe;
        have_a = true;
      } else {
        b = probe;
        have_b = true;
      }
    }
    step *= 2.0;
  }
  if (!(have_a && have_b)) {
    Vec z(1);
    z[0] = z0;
    best = V.best_snapped(z);
    best.iterations = iters;
    best.diagnostic = "bisection: failed to bracket the monotone relation";
    return best;
  }

  double m = 0.5 * (a + b);
  for (int k = 0; k < 320; ++k) {
    ++iters;
    m = 0.5 * (a + b);
    const Side s = classify(m);
    if (s == Side::Hit) break;
    if (s == Side::Below) {
      a = m;
    } else {
      b = m;
    }
    if ((b - a) <= 1e-16 * std::max(1.0, std::max(std::abs(a), std::abs(b)))) break;
  }

  for (const double zv : {m, a, b}) {
    Vec z(1);
    z[0] = zv;
    V.consider(best, z);
    if (best.residual == 0.0) break;
  }
  best.iterations = iters;
  best.converged = best.residual <= opts.tol;
  if (!best.converged) best.diagnostic = "bisection: residual above tolerance";
  best.point_error_estimate = std::max(0.0, b - a);
  // If the bracket collapsed to a few ulps, the sign change sits between
  // adjacent doubles and the best candidate residual is the attainable floor.
  if ((b - a) <= 8.0 * 2.2e-16 * (1.0 + std::max(std::abs(a), std::abs(b)))) {
    best.residual_floor = best.residual;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Structure polish: Newton refinements that exploit the piecewise-constant
// structural values of the prox-capable zoo.
// ---------------------------------------------------------------------------

// Solve (J(z - x))_F = target_F over the free block F with the other
// coordinates pinned; damped Newton with finite-difference Jacobian.
bool reduced_newton(const NormedSpace& space, const Vec& x, Vec& z,
                    const std::vector<int>& free_idx, const Vec& target, int max_iter) {
  const int nf = static_cast<int>(free_idx.size());
  if (nf == 0) return true;
  auto residual = [&](const Vec& zz) {
    const Covec j = space.duality_map(zz - x);
    Vec r(nf);
    for (int k = 0; k < nf; ++k) r[k] = j[free_idx[k]] - target[k];
    return r;
  };
  Vec F = residual(z);
  for (int it = 0; it < max_iter; ++it) {
    const double m = F.norm();
    if (m <= 1e-14 * (1.0 + target.cwiseAbs().maxCoeff())) return true;
    Matrix Jac(nf, nf);
    for (int k = 0; k < nf; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(z[free_idx[k]]));
      Vec zp = z;
      zp[free_idx[k]] += h;
      Jac.col(k) = (residual(zp) - F) / h;
    }
    Vec dz = Jac.fullPivLu().solve(-F);
    if (!dz.allFinite()) return false;
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      Vec zn = z;
      for (int k = 0; k < nf; ++k) zn[free_idx[k]] += alpha * dz[k];
      Vec Fn = residual(zn);
      if (Fn.norm() < m * (1.0 - 1e-4 * alpha)) {
        z = zn;
        F = std::move(Fn);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) return false;
  }
  return false;
}

// Ball KKT system: J(z-x) + lambda*tau*(z-c) = rhs on the sphere |z-c| = r.
void polish_ball(const NormalCone& nc, const Operator& T, const Vec& x, const Covec& rhs,
                 double lambda, const Verifier& V, InclusionSolution& best) {
  const NormedSpace& space = T.space();
  const int n = space.dim();

  // Interior stationary point J(z-x) = rhs.
  const Vec z_int = x + space.duality_map_inverse(rhs);
  if (nc.in_set(z_int, 0.0)) V.consider(best, z_int);

  Vec d = best.z - nc.center;
  if (d.norm() < 1e-12) return;
  Vec z = nc.center + (nc.radius / d.norm()) * d;
  const Covec g0 = rhs - space.duality_map(z - x);
  double tau = std::max(0.0, g0.dot(z - nc.center) / (lambda * nc.radius * nc.radius));

  auto kkt = [&](const Vec& zz, double tt) {
    Vec F(n + 1);
    F.head(n) = space.duality_map(zz - x) + lambda * tt * (zz - nc.center) - rhs;
    F[n] = 0.5 * ((zz - nc.center).squaredNorm() - nc.radius * nc.radius);
    return F;
  };
  Vec F = kkt(z, tau);
  for (int it = 0; it < 60; ++it) {
    const double m = F.norm();
    if (m <= 1e-13 * (1.0 + rhs.cwiseAbs().maxCoeff())) break;
    Matrix Jac(n + 1, n + 1);
    for (int k = 0; k < n; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(z[k]));
      Vec zp = z;
      zp[k] += h;
      Jac.col(k) = (kkt(zp, tau) - F) / h;
    }
    {
      const double h = 1e-7 * std::max(1.0, std::abs(tau));
      Jac.col(n) = (kkt(z, tau + h) - F) / h;
    }
    Vec dz = Jac.fullPivLu().solve(-F);
    if (!dz.allFinite()) break;
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      Vec zn = z + alpha * dz.head(n);
      const double tn = tau + alpha * dz[n];
      Vec Fn = kkt(zn, tn);
      if (Fn.norm() < m * (1.0 - 1e-4 * alpha)) {
        z = zn;
        tau = tn;
        F = std::move(Fn);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
  }
  if (tau >= -1e-12) {
    Vec dd = z - nc.center;
    if (dd.norm() > 0.0) z = nc.center + (nc.radius / dd.norm()) * dd;
    V.consider(best, z);
  }
}

// Box-structured polish: eval(z) is a box; multivalued coordinates stay
// pinned, single-valued coordinates s_i give the smooth reduced system
// (J(z-x))_i = rhs_i - lambda*s_i.
void polish_box_structure(const Operator& T, const Vec& x, const Covec& rhs, double lambda,
                          const Verifier& V, InclusionSolution& best) {
  const NormedSpace& space = T.space();
  const SetDescription S = T.eval(best.z);
  if (S.is_empty()) return;
  SetDescription::Kind k = S.kind();
  if (k != SetDescription::Kind::Box && k != SetDescription::Kind::Point) return;

  const int n = space.dim();
  std::vector<int> free_idx;
  Vec target(n);
  int nf = 0;
  for (int i = 0; i < n; ++i) {
    double lo_i, hi_i;
    if (k == SetDescription::Kind::Point) {
      lo_i = hi_i = S.point_value()[i];
    } else {
      lo_i = S.box_lo()[i];
      hi_i = S.box_hi()[i];
    }
    if (lo_i == hi_i) {
      free_idx.push_back(i);
      target[nf++] = rhs[i] - lambda * lo_i;
    }
  }
  target.conservativeResize(nf);

  if (nf == n) {
    // Fully single-valued region: closed form z = x + J^{-1}(rhs - lambda*s).
    V.consider(best, x + space.duality_map_inverse(target));
    return;
  }
  Vec z = best.z;
  if (reduced_newton(space, x, z, free_idx, target, 60)) V.consider(best, z);
}

void polish(const Operator& T, const Vec& x, const Covec& rhs, double lambda, const Verifier& V,
            InclusionSolution& best) {
  if (const auto* nc = T.get_if<NormalCone>()) {
    if (nc->set_kind == NormalCone::SetKind::Ball) {
      polish_ball(*nc, T, x, rhs, lambda, V, best);
      return;
    }
  }
  polish_box_structure(T, x, rhs, lambda, V, best);
}

// ---------------------------------------------------------------------------
// Hilbert fast path: for p = 2 the inclusion rhs in lambda*T(z) + (z - x) is
// exactly z = prox_{lambda T}(x + rhs), and the stable displacement oracle
// gives t* = (x + rhs - z)/lambda without the cancellation that plain
// subtraction suffers at small lambda.  Falls through when the verified
// residual misses the tolerance.
// ---------------------------------------------------------------------------
InclusionSolution solve_prox_p2(const Operator& T, const Vec& x, const Covec& rhs, double lambda,
                                const SolveOptions& opts) {
  const Vec v = x + rhs;
  const Vec z = T.prox(v, lambda);
  InclusionSolution s;
  s.t_star = T.displacement(v, lambda) / lambda;
  s.w_star = rhs - lambda * s.t_star;
  s.z = z;
  s.iterations = 1;
  s.residual = kInf;
  const NormedSpace& space = T.space();
  for (const double st : {1e-9, 1e-6, 1e-4}) {
    for (const Vec& cand : T.snap_candidates(z, st)) {
      const SetDescription S = T.eval(cand);
      if (S.is_empty()) continue;
      const double r = lambda * S.distance(s.t_star, space);
      if (r < s.residual) {
        s.residual = r;
        s.z = cand;
      }
    }
  }
  s.converged = s.residual <= opts.tol;
  return s;
}

// ---------------------------------------------------------------------------
// Proximal gradient with backtracking for prox-capable operators:
// minimize lambda*f(z) + .5||z-x||_p^2 - <rhs, z>.  The smooth part has
// gradient J(.-x) - rhs, which is not Lipschitz near z = x for p < 2, so the
// step is always validated by backtracking.
// ---------------------------------------------------------------------------
InclusionSolution solve_prox_gradient(const Operator& T, const Vec& x, const Covec& rhs,
                                      double lambda, const SolveOptions& opts,
                                      const Verifier& V) {
  const NormedSpace& space = T.space();
  Vec z = opts.initial_guess.value_or(x);
  z = T.prox(z, lambda);  // start inside dom f

  auto smooth = [&](const Vec& v) {
    const double nv = space.norm(v - x);
    return 0.5 * nv * nv - rhs.dot(v);
  };

  InclusionSolution best = V.best_snapped(z);
  double eta = 1.0;
  int iter = 0;
  double last_step = SetDescription::kInf;
  while (best.residual > opts.tol && iter < opts.max_iterations) {
    ++iter;
    const Covec grad = space.duality_map(z - x) - rhs;
    const double fz = smooth(z);
    Vec znew;
    bool accepted = false;
    for (int bt = 0; bt < 80; ++bt) {
      znew = T.prox(z - eta * grad, eta * lambda);
      const Vec dz = znew - z;
      const double model = fz + grad.dot(dz) + dz.squaredNorm() / (2.0 * eta);
      if (smooth(znew) <= model + 1e-14 * (1.0 + std::abs(fz))) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;
    const double step = (znew - z).norm();
    z = znew;
    V.consider(best, z);
    eta = std::min(eta * 1.3, 1e8);
    if (best.residual > opts.tol && (iter % 25 == 0)) polish(T, x, rhs, lambda, V, best);
    if (step <= 1e-16 * (1.0 + z.norm())) break;
    last_step = step;
  }
  if (best.residual > opts.tol) polish(T, x, rhs, lambda, V, best);

  best.iterations = iter;
  best.converged = best.residual <= opts.tol;
  best.residual_floor = 2.2e-16 * (1.0 + 1.0 / eta) * (1.0 + z.cwiseAbs().maxCoeff());
  best.point_error_estimate = std::min(last_step, best.residual);
  if (!best.converged) {
    best.diagnostic = "proximal gradient: budget exhausted at residual " +
                      std::to_string(best.residual) + " on operator '" + T.name() + "'";
  }
  return best;
}

// ---------------------------------------------------------------------------
// Damped Newton with ||F|| merit for single-valued operators:
// F(z) = lambda*T(z) + J(z-x) - rhs.
// ---------------------------------------------------------------------------
InclusionSolution solve_newton(const Operator& T, const Vec& x, const Covec& rhs, double lambda,
                               const SolveOptions& opts, const Verifier& V) {
  const NormedSpace& space = T.space();
  const int n = space.dim();
  Vec z = opts.initial_guess.value_or(x);

  auto Fval = [&](const Vec& zz) -> Vec {
    return lambda * T.apply_single_valued(zz) + space.duality_map(zz - x) - rhs;
  };

  InclusionSolution best = V.at(z);
  Vec F = Fval(z);
  int iter = 0;
  double reg = 0.0;
  double jac_norm = 1.0;
  double last_step = SetDescription::kInf;
  double stalled_at = best.residual;
  int stall_count = 0;
  while (best.residual > opts.tol && iter < opts.max_iterations) {
    ++iter;
    const double m = F.norm();
    Matrix Jac(n, n);
    const auto aj = T.jacobian(z);
    if (aj && space.p() == 2.0) {
      Jac = lambda * (*aj) + Matrix::Identity(n, n);
    } else {
      for (int k = 0; k < n; ++k) {
        const double h = 1e-6 * std::max(1.0, std::abs(z[k]));
        Vec zp = z;
        zp[k] += h;
        Jac.col(k) = (Fval(zp) - F) / h;
      }
    }
    jac_norm = std::max(1.0, Jac.cwiseAbs().maxCoeff());
    if (reg > 0.0) Jac += reg * Matrix::Identity(n, n);
    Vec dz = Jac.fullPivLu().solve(-F);
    bool moved = false;
    if (dz.allFinite()) {
      double alpha = 1.0;
      for (int ls = 0; ls < 50; ++ls) {
        const Vec zn = z + alpha * dz;
        const Vec Fn = Fval(zn);
        if (Fn.norm() <= m * (1.0 - 1e-4 * alpha)) {
          z = zn;
          F = Fn;
          last_step = alpha * dz.norm();
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
    }
    if (!moved) {
      // Fall back to a damped monotone-flow step z - beta*F.
      double beta = 1.0 / (1.0 + m);
      for (int ls = 0; ls < 50; ++ls) {
        const Vec zn = z - beta * F;
        const Vec Fn = Fval(zn);
        if (Fn.norm() <= m * (1.0 - 1e-6)) {
          z = zn;
          F = Fn;
          last_step = beta * F.norm();
          moved = true;
          break;
        }
        beta *= 0.5;
      }
    }
    if (!moved) {
      if (reg < 1e-3) {
        reg = (reg == 0.0) ? 1e-10 : reg * 100.0;
        continue;
      }
      break;
    }
    reg = 0.0;
    const InclusionSolution cand = V.at(z);
    if (cand.residual < best.residual) best = cand;
    // Progress stall: at extreme stiffness the merit bottoms out at the
    // representability floor; stop grinding once improvements die off.
    if (best.residual > stalled_at * 0.99) {
      if (++stall_count >= 40) break;
    } else {
      stalled_at = best.residual;
      stall_count = 0;
    }
  }
  best.iterations = iter;
  best.converged = best.residual <= opts.tol;
  best.residual_floor = 2.2e-16 * jac_norm * (1.0 + z.cwiseAbs().maxCoeff());
  best.point_error_estimate = std::min(last_step, best.residual);
  if (!best.converged) {
    best.diagnostic = "newton: budget exhausted at residual " + std::to_string(best.residual) +
                      " on operator '" + T.name() + "'";
  }
  return best;
}

InclusionSolution solve_graph_bruteforce(const Operator& T, const SampledGraph& g,
                                         const SolveOptions& opts, const Verifier& V) {
  InclusionSolution best;
  best.residual = kInf;
  for (const auto& [y, ystar] : g.pairs()) {
    const InclusionSolution cand = V.at(y);
    if (cand.residual < best.residual) best = cand;
  }
  best.iterations = static_cast<int>(g.size());
  best.converged = best.residual <= opts.tol;
  if (!best.converged) {
    best.diagnostic = "graph operator: nearest sample residual " + std::to_string(best.residual);
  }
  return best;
}

}  // namespace

InclusionSolution solve_inclusion(const Operator& T, const Vec& x, const Covec& rhs,
                                  double lambda, const SolveOptions& opts) {
  const NormedSpace& space = T.space();
  require_dim(x, space.dim(), "solve_inclusion: x");
  require_dim(rhs, space.dim(), "solve_inclusion: rhs");
  if (!(lambda > 0.0)) throw Error("solve_inclusion: lambda must be positive");
  if (opts.initial_guess) require_dim(*opts.initial_guess, space.dim(), "solve_inclusion: guess");

  const Verifier V{T, x, rhs, lambda};
  if (const auto* g = T.get_if<SampledGraph>()) return solve_graph_bruteforce(T, *g, opts, V);
  if (space.p() == 2.0 && T.has_prox()) {
    InclusionSolution fast = solve_prox_p2(T, x, rhs, lambda, opts);
    if (fast.converged) return fast;
  }
  if (space.dim() == 1) return solve_bisection_1d(T, x, rhs, lambda, opts, V);
  if (T.has_prox()) return solve_prox_gradient(T, x, rhs, lambda, opts, V);
  if (T.is_single_valued_kind()) return solve_newton(T, x, rhs, lambda, opts, V);
  throw Error("solve_inclusion: operator '" + T.name() + "' exposes no solvable representation");
}

InclusionSolution solve_my_system(const Operator& T, const Vec& x, double lambda,
                                  const SolveOptions& opts) {
  return solve_inclusion(T, x, Covec::Zero(T.space().dim()), lambda, opts);
}

InclusionSolution solve_translated_inclusion(const Operator& T, const Vec& x, const Covec& xstar,
                                             const SolveOptions& opts) {
  return solve_inclusion(T, x, xstar, 1.0, opts);
}

Covec moreau_yosida(const Operator& T, double lambda, const Vec& x, const SolveOptions& opts) {
  const InclusionSolution sol = solve_my_system(T, x, lambda, opts);
  if (!sol.converged) {
    throw SolverFailure("moreau_yosida on '" + T.name() + "' at lambda=" + std::to_string(lambda) +
                            ": " + sol.diagnostic,
                        sol.residual);
  }
  // (1/lambda) J(x - z) = -w_star/lambda = t_star exactly as constructed.
  return sol.t_star;
}

Operator yosida_operator(const Operator& T, double lambda, const SolveOptions& opts) {
  if (!(lambda > 0.0)) throw Error("yosida_operator: lambda must be positive");
  SingleValuedMap m;
  m.map = [T, lambda, opts](const Vec& x) { return moreau_yosida(T, lambda, x, opts); };
  return Operator(T.space(), std::move(m), T.name() + "_yosida");
}

}  // namespace mono
