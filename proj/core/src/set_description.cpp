#include "mono/set_description.hpp"

#include <algorithm>
#include <cmath>

namespace mono {

SetDescription SetDescription::empty(int dim) { return SetDescription(Kind::Empty, dim); }

SetDescription SetDescription::point(Covec v) {
  SetDescription s(Kind::Point, static_cast<int>(v.size()));
  s.a_ = std::move(v);
  return s;
}

SetDescription SetDescription::box(Covec lo, Covec hi) {
  if (lo.size() != hi.size()) throw DimensionError("SetDescription::box: bound sizes differ");
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw Error("SetDescription::box: lo > hi");
  }
  SetDescription s(Kind::Box, static_cast<int>(lo.size()));
  s.a_ = std::move(lo);
  s.b_ = std::move(hi);
  return s;
}

SetDescription SetDescription::ray(Covec apex, Covec dir) {
  if (apex.size() != dir.size()) throw DimensionError("SetDescription::ray: sizes differ");
  SetDescription s(Kind::Ray, static_cast<int>(apex.size()));
  s.a_ = std::move(apex);
  s.b_ = std::move(dir);
  return s;
}

SetDescription SetDescription::finite(std::vector<Covec> points) {
  if (points.empty()) throw Error("SetDescription::finite: no points (use empty())");
  SetDescription s(Kind::Finite, static_cast<int>(points.front().size()));
  s.pts_ = std::move(points);
  return s;
}

bool SetDescription::is_singleton(double tol) const {
  switch (kind_) {
    case Kind::Point:
      return true;
    case Kind::Box:
      return (b_ - a_).cwiseAbs().maxCoeff() <= tol;
    case Kind::Ray:
      return b_.cwiseAbs().maxCoeff() <= tol;
    case Kind::Finite: {
      for (const auto& p : pts_) {
        if ((p - pts_.front()).cwiseAbs().maxCoeff() > tol) return false;
      }
      return true;
    }
    case Kind::Empty:
      return false;
  }
  return false;
}

Covec SetDescription::any_element() const {
  switch (kind_) {
    case Kind::Point:
      return a_;
    case Kind::Box: {
      Covec v(dim_);
      for (int i = 0; i < dim_; ++i) v[i] = std::clamp(0.0, a_[i], b_[i]);
      return v;
    }
    case Kind::Ray:
      return a_;
    case Kind::Finite:
      return pts_.front();
    case Kind::Empty:
      throw Error("SetDescription::any_element: set is empty");
  }
  throw Error("SetDescription::any_element: unreachable");
}

SetDescription::Nearest SetDescription::nearest(const Covec& target,
                                                const NormedSpace& space) const {
  require_dim(target, dim_, "SetDescription::nearest");
  switch (kind_) {
    case Kind::Empty:
      return {Covec(), kInf};
    case Kind::Point:
      return {a_, space.dual_norm(a_ - target)};
    case Kind::Box: {
      // Componentwise clamping minimizes every l_q norm at once.
      Covec v(dim_);
      for (int i = 0; i < dim_; ++i) v[i] = std::clamp(target[i], a_[i], b_[i]);
      return {v, space.dual_norm(v - target)};
    }
    case Kind::Finite: {
      Nearest best{pts_.front(), kInf};
      for (const auto& p : pts_) {
        const double d = space.dual_norm(p - target);
        if (d < best.distance) best = {p, d};
      }
      return best;
    }
    case Kind::Ray: {
      const double dn = b_.norm();
      if (dn == 0.0) return {a_, space.dual_norm(a_ - target)};
      auto h = [&](double t) { return space.dual_norm(a_ + t * b_ - target); };
      // h is convex in t; bracket the minimizer over t >= 0 then trisect.
      double t_hi = 1.0;
      double h0 = h(0.0);
      while (h(t_hi) < h0 && t_hi < 1e18) t_hi *= 2.0;
      double lo = 0.0, hi = t_hi;
      for (int it = 0; it < 200 && (hi - lo) > 1e-15 * (1.0 + hi); ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (h(m1) <= h(m2)) {
          hi = m2;
        } else {
          lo = m1;
        }
      }
      const double t = 0.5 * (lo + hi);
      double ht = h(t);
      double tbest = t;
      if (h0 <= ht) {
        tbest = 0.0;
        ht = h0;
      }
      return {a_ + tbest * b_, ht};
    }
  }
  return {Covec(), kInf};
}

double SetDescription::lower_1d() const {
  if (dim_ != 1) throw DimensionError("SetDescription::lower_1d: set is not 1-D");
  switch (kind_) {
    case Kind::Empty:
      return kInf;  // empty interval: lower > upper
    case Kind::Point:
      return a_[0];
    case Kind::Box:
      return a_[0];
    case Kind::Ray:
      return b_[0] >= 0.0 ? a_[0] : -kInf;
    case Kind::Finite: {
      double lo = kInf;
      for (const auto& p : pts_) lo = std::min(lo, p[0]);
      return lo;
    }
  }
  return kInf;
}

double SetDescription::upper_1d() const {
  if (dim_ != 1) throw DimensionError("SetDescription::upper_1d: set is not 1-D");
  switch (kind_) {
    case Kind::Empty:
      return -kInf;
    case Kind::Point:
      return a_[0];
    case Kind::Box:
      return b_[0];
    case Kind::Ray:
      return b_[0] <= 0.0 ? a_[0] : kInf;
    case Kind::Finite: {
      double hi = -kInf;
      for (const auto& p : pts_) hi = std::max(hi, p[0]);
      return hi;
    }
  }
  return -kInf;
}

}  // namespace mono
