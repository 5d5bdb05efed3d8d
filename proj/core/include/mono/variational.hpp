#pragma once

#include <optional>

#include "mono/limit_probe.hpp"

namespace mono {

/// Continuous linear map A: Y -> X stored as a (dim X) x (dim Y) matrix; the
/// adjoint A*: X* -> Y* is the transpose.
struct LinearOp {
  Matrix A;

  explicit LinearOp(Matrix a) : A(std::move(a)) {}
  int dim_x() const { return static_cast<int>(A.rows()); }
  int dim_y() const { return static_cast<int>(A.cols()); }
  Vec apply(const Vec& y) const { return A * y; }
  Covec adjoint_apply(const Covec& xstar) const { return A.transpose() * xstar; }
};

/// T_{1,lambda}(x) + T_{2,mu}(x); a parameter of 0 denotes the raw operator
/// and is legal only where that operator is single-valued (typed error
/// otherwise, naming the offender).
Covec regularized_sum_eval(const Operator& T1, const Operator& T2, double lambda, double mu,
                           const Vec& x, const SolveOptions& inner = {});

/// The sum above packaged as an everywhere-defined single-valued Operator.
Operator regularized_sum_operator(const Operator& T1, const Operator& T2, double lambda,
                                  double mu, const SolveOptions& inner = {});

/// A* T_lambda A as a single-valued Operator on Y.
Operator composition_operator(const Operator& T, const LinearOp& A, const NormedSpace& space_y,
                              double lambda, const SolveOptions& inner = {});

/// The product-space operator value (T^# + N_A)(y, x) in Y* x X*: empty when
/// x != Ay, otherwise {(A* x*, w* - x*) : x* free, w* in T(Ay)}.  Membership
/// of (y*, 0) is exactly y* in A*TA(y).
struct LiftValue {
  bool on_graph = false;
  Matrix adjoint;                                       // A^T
  SetDescription t_at_ay = SetDescription::empty(0);    // T(Ay)
  int dim_y = 0, dim_x = 0;

  bool is_empty() const { return !on_graph || t_at_ay.is_empty(); }
  /// (ystar_part, xstar_part) in the set?
  bool contains(const Covec& ystar_part, const Covec& xstar_part, double tol = 1e-8) const;
  /// Specialization to (y*, 0): y* in A*T(Ay)?
  bool composition_contains(const Covec& ystar, double tol = 1e-8) const;
  /// A* w* when T(Ay) is a singleton (the composition's unique value).
  std::optional<Covec> composition_value(double tol = 1e-12) const;
};

LiftValue lift_eval(const Operator& T, const LinearOp& A, const Vec& y, const Vec& x,
                    double graph_tol = 1e-9);

/// Conjunction of per-schedule probes: accept iff every schedule accepts
/// (finite approximation of the intersection over the schedule class), reject
/// iff any rejects, else inconclusive.
struct MergedProbeReport {
  std::vector<ProbeReport> per_schedule;
  Verdict verdict = Verdict::Inconclusive;
  double cross_check_max = 0.0;  // composition probes only
};

/// Membership probe for the variational sum of T1 and T2 at z = (x, x*).
/// Schedules must be pair-kind (class I); step n probes T_{1,lambda_n} +
/// T_{2,mu_n}.
MergedProbeReport variational_sum_probe(const Operator& T1, const Operator& T2, const Vec& x,
                                        const Covec& xstar, const ScheduleFamily& fam,
                                        const ProbeParams& pp = {}, int jobs = 1);

/// Membership probe for the variational composition (A*TA)_v at z = (y, y*).
/// Schedules must be eps-kind (class J); step n probes A* T_{lambda_n} A.
/// When cross_check is set, every step value is re-derived through lift_eval
/// and the largest discrepancy is reported (a mismatch is inconclusive).
MergedProbeReport variational_composition_probe(const Operator& T, const LinearOp& A,
                                                const NormedSpace& space_y, const Vec& y,
                                                const Covec& ystar, const ScheduleFamily& fam,
                                                const ProbeParams& pp = {},
                                                bool cross_check = true, int jobs = 1);

}  // namespace mono
