#include "mono/normed_space.hpp"

#include <cmath>

namespace mono {

namespace {

double pnorm(const Eigen::VectorXd& v, double p) {
  if (p == 2.0) return v.norm();
  const double amax = v.cwiseAbs().maxCoeff();
  if (amax == 0.0) return 0.0;
  // Factor out the largest entry to avoid overflow/underflow in the powers.
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    sum += std::pow(std::abs(v[i]) / amax, p);
  }
  return amax * std::pow(sum, 1.0 / p);
}

}  // namespace

NormedSpace::NormedSpace(int dim, double p) : dim_(dim), p_(p) {
  if (dim < 1) throw Error("NormedSpace: dimension must be >= 1");
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error("NormedSpace: exponent p must lie strictly between 1 and infinity");
  }
  q_ = p_ / (p_ - 1.0);
}

double NormedSpace::norm(const Vec& x) const {
  require_dim(x, dim_, "NormedSpace::norm");
  return pnorm(x, p_);
}

double NormedSpace::dual_norm(const Covec& xstar) const {
  require_dim(xstar, dim_, "NormedSpace::dual_norm");
  return pnorm(xstar, q_);
}

Covec NormedSpace::duality_map(const Vec& x) const {
  require_dim(x, dim_, "NormedSpace::duality_map");
  if (p_ == 2.0) return x;
  const double nx = pnorm(x, p_);
  if (nx == 0.0) return Vec::Zero(dim_);
  // J(x) = ||x|| * phi(x/||x||) with phi_i(u) = |u_i|^{p-1} sign(u_i); working
  // on the normalized vector keeps the powers in range for extreme inputs.
  Covec j(dim_);
  for (int i = 0; i < dim_; ++i) {
    const double u = x[i] / nx;
    j[i] = nx * std::pow(std::abs(u), p_ - 1.0) * (u >= 0.0 ? 1.0 : -1.0);
  }
  return j;
}

double NormedSpace::eps_duality_gap(const Vec& u, const Covec& w) const {
  require_dim(u, dim_, "NormedSpace::eps_duality_gap");
  require_dim(w, dim_, "NormedSpace::eps_duality_gap");
  const double nu = pnorm(u, p_);
  const double nw = pnorm(w, q_);
  return 0.5 * nu * nu + 0.5 * nw * nw - u.dot(w);
}

Vec NormedSpace::duality_map_inverse(const Covec& w) const {
  require_dim(w, dim_, "NormedSpace::duality_map_inverse");
  if (p_ == 2.0) return w;
  const double nw = pnorm(w, q_);
  if (nw == 0.0) return Vec::Zero(dim_);
  Vec u(dim_);
  for (int i = 0; i < dim_; ++i) {
    const double s = w[i] / nw;
    u[i] = nw * std::pow(std::abs(s), q_ - 1.0) * (s >= 0.0 ? 1.0 : -1.0);
  }
  return u;
}

}  // namespace mono
