#include "mono/zoo.hpp"

#include <cmath>

namespace mono::zoo {

namespace {

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

}  // namespace

Operator zero(const NormedSpace& space) {
  SingleValuedMap m;
  const int dim = space.dim();
  m.map = [dim](const Vec&) { return Covec::Zero(dim); };
  m.jacobian = [dim](const Vec&) { return Matrix::Zero(dim, dim); };
  return Operator(space, std::move(m), "zero");
}

Operator identity(const NormedSpace& space) {
  SingleValuedMap m;
  const int dim = space.dim();
  m.map = [](const Vec& x) { return x; };
  m.jacobian = [dim](const Vec&) { return Matrix::Identity(dim, dim); };
  return Operator(space, std::move(m), "identity");
}

Operator linear(const NormedSpace& space, Matrix M) {
  return Operator(space, LinearMap{std::move(M)}, "linear");
}

Operator abs(const NormedSpace& space) { return abs_shifted(space, Vec::Zero(space.dim())); }

Operator abs_shifted(const NormedSpace& space, Vec center) {
  require_dim(center, space.dim(), "zoo::abs_shifted");
  const int dim = space.dim();
  const double kink_tol = 1e-9;
  SubdiffOracle f;
  f.value = [center](const Vec& x) { return (x - center).cwiseAbs().sum(); };
  f.prox = [center](const Vec& v, double step) {
    Vec z(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      z[i] = center[i] + soft_threshold(v[i] - center[i], step);
    }
    return z;
  };
  f.structural_eval = [center, dim, kink_tol](const Vec& x) {
    Covec lo(dim), hi(dim);
    for (int i = 0; i < dim; ++i) {
      const double d = x[i] - center[i];
      if (std::abs(d) <= kink_tol * std::max(1.0, std::abs(center[i]))) {
        lo[i] = -1.0;
        hi[i] = 1.0;
      } else {
        lo[i] = hi[i] = (d > 0.0 ? 1.0 : -1.0);
      }
    }
    return SetDescription::box(std::move(lo), std::move(hi));
  };
  f.displacement = [center](const Vec& v, double step) {
    Vec d(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      d[i] = std::clamp(v[i] - center[i], -step, step);
    }
    return d;
  };
  f.snaps = [center](const Vec& x, double tol) {
    std::vector<Vec> out;
    Vec snapped = x;
    bool changed = false;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (std::abs(x[i] - center[i]) <= tol * std::max(1.0, std::abs(center[i]))) {
        snapped[i] = center[i];
        changed = true;
      }
    }
    if (changed) out.push_back(std::move(snapped));
    return out;
  };
  const bool shifted = center.cwiseAbs().maxCoeff() > 0.0;
  return Operator(space, std::move(f), shifted ? "abs_shifted" : "abs");
}

Operator indicator_ball(const NormedSpace& space, Vec center, double radius) {
  require_dim(center, space.dim(), "zoo::indicator_ball");
  return Operator(space, NormalCone::ball(std::move(center), radius), "indicator_ball");
}

Operator indicator_box(const NormedSpace& space, Vec lo, Vec hi) {
  require_dim(lo, space.dim(), "zoo::indicator_box");
  require_dim(hi, space.dim(), "zoo::indicator_box");
  return Operator(space, NormalCone::box(std::move(lo), std::move(hi)), "indicator_box");
}

Operator graph(const NormedSpace& space, SampledGraph g) {
  return Operator(space, std::move(g), "graph");
}

}  // namespace mono::zoo
