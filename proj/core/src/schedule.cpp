#include "mono/schedule.hpp"

#include <cmath>

namespace mono {

Schedule::Schedule(Kind k, double a0, double b0, double decay, int length)
    : kind_(k), a0_(a0), b0_(b0), decay_(decay), length_(length) {
  if (length < 1) throw Error("Schedule: length must be >= 1");
  if (!(decay > 0.0) || !(decay < 1.0)) throw Error("Schedule: decay must lie in (0, 1)");
  if (!std::isfinite(a0) || !std::isfinite(b0)) throw Error("Schedule: non-finite parameter");
}

Schedule Schedule::eps(double eps0, double decay, int length) {
  if (!(eps0 > 0.0)) throw Error("Schedule::eps: eps0 must be positive");
  return Schedule(Kind::Eps, eps0, 0.0, decay, length);
}

Schedule Schedule::pair(double lambda0, double mu0, double decay, int length) {
  if (lambda0 < 0.0 || mu0 < 0.0) throw Error("Schedule::pair: parameters must be >= 0");
  if (!(lambda0 + mu0 > 0.0)) throw Error("Schedule::pair: lambda0 + mu0 must be positive");
  return Schedule(Kind::Pair, lambda0, mu0, decay, length);
}

double Schedule::eps_at(int n) const {
  if (kind_ != Kind::Eps) throw Error("Schedule::eps_at: not an eps schedule");
  if (n < 1 || n > length_) throw Error("Schedule::eps_at: index out of range");
  return a0_ * std::pow(decay_, n - 1);
}

double Schedule::lambda_at(int n) const {
  if (n < 1 || n > length_) throw Error("Schedule::lambda_at: index out of range");
  return a0_ * std::pow(decay_, n - 1);
}

double Schedule::mu_at(int n) const {
  if (kind_ != Kind::Pair) throw Error("Schedule::mu_at: not a pair schedule");
  if (n < 1 || n > length_) throw Error("Schedule::mu_at: index out of range");
  return b0_ * std::pow(decay_, n - 1);
}

}  // namespace mono
