#pragma once

#include <optional>

#include "mono/operators.hpp"

namespace mono {

struct SolveOptions {
  double tol = 1e-8;
  int max_iterations = 10000;
  std::optional<Vec> initial_guess;  // warm start (solutions are unique; this only speeds things up)
};

/// Solution of rhs in lambda*T(z) + J(z - x).  Stored so that the
/// decomposition rhs = lambda*t_star + w_star holds exactly:
///   w_star = J(z - x)  (computed),  t_star = (rhs - w_star)/lambda,
/// and `residual` is the q-norm distance of lambda*t_star to lambda*T(z),
/// measured through Operator::eval independently of the solve path.
struct InclusionSolution {
  Vec z;
  Covec t_star;
  Covec w_star;
  double residual = SetDescription::kInf;
  int iterations = 0;
  bool converged = false;
  std::string diagnostic;
  /// Smallest residual representable at working precision near z, about
  /// eps * stiffness * (1 + |z|): for very stiff instances (tiny lambda) the
  /// defining relation cannot be evaluated below this even at the exact
  /// solution point.
  double residual_floor = 0.0;
  /// Forward-error estimate for z (final Newton step, bracket width, or last
  /// proximal-gradient step).
  double point_error_estimate = 0.0;
};

/// Core solver: rhs in lambda*T(z) + J(z - x), lambda > 0.  Never throws on
/// non-convergence; `converged` is false and `residual`/`diagnostic` carry the
/// best point seen.
InclusionSolution solve_inclusion(const Operator& T, const Vec& x, const Covec& rhs,
                                  double lambda, const SolveOptions& opts = {});

/// The Moreau-Yosida system 0 in lambda*T(z) + J(z - x); its z is the
/// generalized resolvent R_lambda(x) and t_star = -w_star/lambda = T_lambda(x).
InclusionSolution solve_my_system(const Operator& T, const Vec& x, double lambda,
                                  const SolveOptions& opts = {});

/// The exact translated inclusion xstar in T(z) + J(z - x).  Since J is
/// contained in every J_eps, the returned triple is a valid eps-solution for
/// every eps >= 0.
InclusionSolution solve_translated_inclusion(const Operator& T, const Vec& x, const Covec& xstar,
                                             const SolveOptions& opts = {});

/// T_lambda(x) = (1/lambda) J(x - R_lambda(x)); single-valued, defined for all
/// x.  Throws SolverFailure when the inner solve does not meet its tolerance.
Covec moreau_yosida(const Operator& T, double lambda, const Vec& x, const SolveOptions& opts = {});

/// T_lambda as an Operator (a pure single-valued closure over moreau_yosida).
Operator yosida_operator(const Operator& T, double lambda, const SolveOptions& opts = {});

}  // namespace mono
