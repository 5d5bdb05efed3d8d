#pragma once

#include "mono/types.hpp"

namespace mono {

/// A finite-dimensional real space equipped with the p-norm, 1 < p < inf.
/// The dual carries the q-norm with 1/p + 1/q = 1.  The norm is smooth and
/// strictly convex in this range, so the duality mapping J = grad(.5*||.||^2)
/// is single-valued, which keeps every resolvent solve deterministic.
/// Values are immutable; all operations are pure.
class NormedSpace {
 public:
  NormedSpace(int dim, double p);

  int dim() const { return dim_; }
  double p() const { return p_; }
  double q() const { return q_; }

  double norm(const Vec& x) const;           // ||x||_p
  double dual_norm(const Covec& xstar) const;  // ||x*||_q

  /// J(x) = ||x||_p^{2-p} * (|x_i|^{p-1} sign(x_i))_i, J(0) = 0.
  /// Satisfies <x, J(x)> = ||x||_p^2 and ||J(x)||_q = ||x||_p.
  Covec duality_map(const Vec& x) const;

  /// Fenchel-Young gap g = .5||u||_p^2 + .5||w||_q^2 - <u,w>.
  /// Always >= 0; w lies in J_eps(u) iff g <= eps, and in J(u) iff g = 0.
  double eps_duality_gap(const Vec& u, const Covec& w) const;

  /// Inverse duality map: the unique u with J(u) = w (the duality map of the
  /// dual space under the q-norm).
  Vec duality_map_inverse(const Covec& w) const;

  Vec zero() const { return Vec::Zero(dim_); }

 private:
  int dim_;
  double p_;
  double q_;
};

}  // namespace mono
