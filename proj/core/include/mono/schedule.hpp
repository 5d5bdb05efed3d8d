#pragma once

#include <vector>

#include "mono/types.hpp"

namespace mono {

/// Geometric parameter schedules: eps-kind sequences eps_n = eps0 * decay^(n-1)
/// for regularized-inclusion probes and composition parameters, pair-kind
/// (lambda_n, mu_n) for regularized sums.  Pair components may be individually
/// zero (frozen at zero), but lambda_n + mu_n > 0 always.
class Schedule {
 public:
  enum class Kind { Eps, Pair };

  static Schedule eps(double eps0, double decay, int length);
  static Schedule pair(double lambda0, double mu0, double decay, int length);

  Kind kind() const { return kind_; }
  int length() const { return length_; }
  double decay() const { return decay_; }
  double eps0() const { return a0_; }
  double lambda0() const { return a0_; }
  double mu0() const { return b0_; }

  /// n is 1-based; values follow v0 * decay^(n-1).
  double eps_at(int n) const;
  double lambda_at(int n) const;
  double mu_at(int n) const;

  /// Class I of the sum calculus: pair kind, lambda,mu >= 0, lambda+mu > 0.
  bool in_class_sum() const { return kind_ == Kind::Pair; }
  /// Class J of the composition calculus: strictly positive values -> 0+.
  bool in_class_composition() const { return kind_ == Kind::Eps; }

 private:
  Schedule(Kind k, double a0, double b0, double decay, int length);
  Kind kind_;
  double a0_, b0_, decay_;
  int length_;
};

using ScheduleFamily = std::vector<Schedule>;

}  // namespace mono
