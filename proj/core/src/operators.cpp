#include "mono/operators.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstring>

namespace mono {

NormalCone NormalCone::ball(Vec center, double radius) {
  if (!(radius > 0.0)) throw Error("NormalCone::ball: radius must be positive");
  NormalCone c;
  c.set_kind = SetKind::Ball;
  c.center = std::move(center);
  c.radius = radius;
  return c;
}

NormalCone NormalCone::box(Vec lo, Vec hi) {
  if (lo.size() != hi.size()) throw DimensionError("NormalCone::box: bound sizes differ");
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw Error("NormalCone::box: empty box");
  }
  NormalCone c;
  c.set_kind = SetKind::Box;
  c.lo = std::move(lo);
  c.hi = std::move(hi);
  c.radius = 0.0;
  return c;
}

Vec NormalCone::project(const Vec& x) const {
  if (set_kind == SetKind::Ball) {
    const Vec d = x - center;
    const double n = d.norm();
    if (n <= radius) return x;
    return center + (radius / n) * d;
  }
  Vec v(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) v[i] = std::clamp(x[i], lo[i], hi[i]);
  return v;
}

Vec NormalCone::displacement(const Vec& x) const {
  if (set_kind == SetKind::Box) {
    Vec d(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      d[i] = x[i] > hi[i] ? x[i] - hi[i] : (x[i] < lo[i] ? x[i] - lo[i] : 0.0);
    }
    return d;
  }
  const Vec d = x - center;
  long double nd2 = 0.0L;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    nd2 += static_cast<long double>(d[i]) * static_cast<long double>(d[i]);
  }
  const long double r2 = static_cast<long double>(radius) * static_cast<long double>(radius);
  if (nd2 <= r2) return Vec::Zero(x.size());
  const long double nd = sqrtl(nd2);
  // (||d|| - r)/||d|| via the difference of squares keeps the radial excess
  // accurate even when x hugs the sphere.
  const long double scale = (nd2 - r2) / (nd * (nd + static_cast<long double>(radius)));
  Vec out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out[i] = static_cast<double>(static_cast<long double>(d[i]) * scale);
  }
  return out;
}

bool NormalCone::in_set(const Vec& x, double tol) const {
  if (set_kind == SetKind::Ball) return (x - center).norm() <= radius + tol;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < lo[i] - tol || x[i] > hi[i] + tol) return false;
  }
  return true;
}

SetDescription NormalCone::cone_at(const Vec& x, double boundary_tol) const {
  const int dim = static_cast<int>(x.size());
  if (set_kind == SetKind::Ball) {
    const Vec d = x - center;
    const double n = d.norm();
    const double scale = std::max(1.0, radius);
    if (n > radius + boundary_tol * scale) return SetDescription::empty(dim);
    if (n < radius - boundary_tol * scale) return SetDescription::point(Vec::Zero(dim));
    return SetDescription::ray(Vec::Zero(dim), d);
  }
  Covec clo(dim), chi(dim);
  for (int i = 0; i < dim; ++i) {
    const double scale = std::max(1.0, std::max(std::abs(lo[i]), std::abs(hi[i])));
    if (x[i] < lo[i] - boundary_tol * scale || x[i] > hi[i] + boundary_tol * scale) {
      return SetDescription::empty(dim);
    }
    const bool at_lo = x[i] <= lo[i] + boundary_tol * scale;
    const bool at_hi = x[i] >= hi[i] - boundary_tol * scale;
    if (at_lo && at_hi) {  // degenerate coordinate: whole line
      clo[i] = -SetDescription::kInf;
      chi[i] = SetDescription::kInf;
    } else if (at_lo) {
      clo[i] = -SetDescription::kInf;
      chi[i] = 0.0;
    } else if (at_hi) {
      clo[i] = 0.0;
      chi[i] = SetDescription::kInf;
    } else {
      clo[i] = 0.0;
      chi[i] = 0.0;
    }
  }
  return SetDescription::box(std::move(clo), std::move(chi));
}

SampledGraph::SampledGraph(std::vector<std::pair<Vec, Covec>> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw Error("SampledGraph: at least one pair required");
  dim_ = static_cast<int>(pairs_.front().first.size());
  for (const auto& [y, ystar] : pairs_) {
    if (y.size() != dim_ || ystar.size() != dim_) {
      throw DimensionError("SampledGraph: inconsistent pair dimensions");
    }
  }
}

double SampledGraph::min_monotonicity_gap(const Vec& x, const Covec& xstar) const {
  require_dim(x, dim_, "SampledGraph::min_monotonicity_gap");
  require_dim(xstar, dim_, "SampledGraph::min_monotonicity_gap");
  double gap = SetDescription::kInf;
  for (const auto& [y, ystar] : pairs_) {
    gap = std::min(gap, (x - y).dot(xstar - ystar));
  }
  return gap;
}

bool SampledGraph::is_monotone(double tol) const {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs_.size(); ++j) {
      const double g = (pairs_[i].first - pairs_[j].first).dot(pairs_[i].second - pairs_[j].second);
      if (g < -tol) return false;
    }
  }
  return true;
}

bool SampledGraph::monotone_flag() const {
  if (monotone_cache_ < 0) monotone_cache_ = is_monotone(1e-10) ? 1 : 0;
  return monotone_cache_ == 1;
}

void SampledGraph::ensure_monotone() const {
  if (!monotone_flag()) {
    throw NonMonotoneGraphError("sampled graph is not monotone (pairwise product < -1e-10)");
  }
}

SetDescription SampledGraph::eval(const Vec& x, double tol) const {
  require_dim(x, dim_, "SampledGraph::eval");
  std::vector<Covec> at_x;
  for (const auto& [y, ystar] : pairs_) {
    if ((y - x).cwiseAbs().maxCoeff() <= tol) at_x.push_back(ystar);
  }
  if (at_x.empty()) return SetDescription::empty(dim_);
  return SetDescription::finite(std::move(at_x));
}

std::uint64_t SampledGraph::hash() const {
  // FNV-1a over the raw coordinate bytes; used to stamp certificates.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& [y, ystar] : pairs_) {
    for (Eigen::Index i = 0; i < y.size(); ++i) mix(y[i]);
    for (Eigen::Index i = 0; i < ystar.size(); ++i) mix(ystar[i]);
  }
  return h;
}

Operator::Operator(NormedSpace space, Payload payload, std::string name)
    : space_(space), payload_(std::move(payload)), name_(std::move(name)) {
  if (const auto* lin = std::get_if<LinearMap>(&payload_)) {
    if (lin->M.rows() != space_.dim() || lin->M.cols() != space_.dim()) {
      throw DimensionError("Operator '" + name_ + "': matrix shape does not match space");
    }
    const Matrix sym = 0.5 * (lin->M + lin->M.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    const double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -1e-10 * scale) {
      throw Error("Operator '" + name_ + "': symmetric part is not positive semidefinite");
    }
  }
  if (const auto* g = std::get_if<SampledGraph>(&payload_)) {
    if (g->dim() != space_.dim()) {
      throw DimensionError("Operator '" + name_ + "': graph dimension does not match space");
    }
  }
}

SetDescription Operator::eval(const Vec& x) const {
  require_dim(x, space_.dim(), ("Operator '" + name_ + "'::eval").c_str());
  const int dim = space_.dim();
  return std::visit(
      [&](const auto& op) -> SetDescription {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, SubdiffOracle>) {
          if (op.structural_eval) return op.structural_eval(x);
          if (op.subgradient) return SetDescription::point(op.subgradient(x));
          // No structure: approximate the subdifferential at x by the prox
          // gradient (v - prox(v, h))/h, an exact subgradient at prox(v, h).
          const double h = 1e-6;
          return SetDescription::point((x - op.prox(x, h)) / h);
        } else if constexpr (std::is_same_v<T, SingleValuedMap>) {
          return SetDescription::point(op.map(x));
        } else if constexpr (std::is_same_v<T, LinearMap>) {
          return SetDescription::point(op.M * x);
        } else if constexpr (std::is_same_v<T, NormalCone>) {
          return op.cone_at(x, structure_tol_);
        } else {
          static_assert(std::is_same_v<T, SampledGraph>);
          return op.eval(x, structure_tol_);
        }
        return SetDescription::empty(dim);
      },
      payload_);
}

std::vector<Vec> Operator::snap_candidates(const Vec& x, double tol) const {
  std::vector<Vec> out;
  out.push_back(x);
  if (const auto* sd = std::get_if<SubdiffOracle>(&payload_)) {
    if (sd->snaps) {
      for (auto& c : sd->snaps(x, tol)) out.push_back(std::move(c));
    }
  } else if (const auto* nc = std::get_if<NormalCone>(&payload_)) {
    if (nc->set_kind == NormalCone::SetKind::Ball) {
      const Vec d = x - nc->center;
      const double n = d.norm();
      if (std::abs(n - nc->radius) <= tol * std::max(1.0, nc->radius) && n > 0.0) {
        out.push_back(nc->center + (nc->radius / n) * d);
      }
      if (n <= tol) out.push_back(nc->center);
    } else {
      Vec snapped = x;
      bool changed = false;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double scale = std::max(1.0, std::max(std::abs(nc->lo[i]), std::abs(nc->hi[i])));
        if (std::abs(x[i] - nc->lo[i]) <= tol * scale) {
          snapped[i] = nc->lo[i];
          changed = true;
        } else if (std::abs(x[i] - nc->hi[i]) <= tol * scale) {
          snapped[i] = nc->hi[i];
          changed = true;
        }
      }
      if (changed) out.push_back(std::move(snapped));
    }
  }
  return out;
}

std::pair<Vec, Vec> Operator::domain_box() const {
  const int dim = space_.dim();
  Vec lo = Vec::Constant(dim, -SetDescription::kInf);
  Vec hi = Vec::Constant(dim, SetDescription::kInf);
  if (const auto* nc = std::get_if<NormalCone>(&payload_)) {
    if (nc->set_kind == NormalCone::SetKind::Ball) {
      lo = nc->center.array() - nc->radius;
      hi = nc->center.array() + nc->radius;
    } else {
      lo = nc->lo;
      hi = nc->hi;
    }
  } else if (const auto* g = std::get_if<SampledGraph>(&payload_)) {
    lo = Vec::Constant(dim, SetDescription::kInf);
    hi = Vec::Constant(dim, -SetDescription::kInf);
    for (const auto& [y, ystar] : g->pairs()) {
      lo = lo.cwiseMin(y);
      hi = hi.cwiseMax(y);
    }
  }
  return {lo, hi};
}

bool Operator::has_prox() const {
  if (std::holds_alternative<NormalCone>(payload_)) return true;
  if (const auto* sd = std::get_if<SubdiffOracle>(&payload_)) return static_cast<bool>(sd->prox);
  return false;
}

Vec Operator::prox(const Vec& v, double step) const {
  if (const auto* nc = std::get_if<NormalCone>(&payload_)) return nc->project(v);
  if (const auto* sd = std::get_if<SubdiffOracle>(&payload_)) {
    if (sd->prox) return sd->prox(v, step);
  }
  throw Error("Operator '" + name_ + "': no proximal oracle");
}

Vec Operator::displacement(const Vec& v, double step) const {
  if (const auto* nc = std::get_if<NormalCone>(&payload_)) return nc->displacement(v);
  if (const auto* sd = std::get_if<SubdiffOracle>(&payload_)) {
    if (sd->displacement) return sd->displacement(v, step);
    if (sd->prox) return v - sd->prox(v, step);
  }
  throw Error("Operator '" + name_ + "': no proximal oracle");
}

bool Operator::is_single_valued_kind() const {
  return std::holds_alternative<SingleValuedMap>(payload_) ||
         std::holds_alternative<LinearMap>(payload_);
}

Covec Operator::apply_single_valued(const Vec& x) const {
  if (const auto* svm = std::get_if<SingleValuedMap>(&payload_)) return svm->map(x);
  if (const auto* lin = std::get_if<LinearMap>(&payload_)) return lin->M * x;
  throw Error("Operator '" + name_ + "': not a single-valued representation");
}

std::optional<Matrix> Operator::jacobian(const Vec& x) const {
  if (const auto* lin = std::get_if<LinearMap>(&payload_)) return lin->M;
  if (const auto* svm = std::get_if<SingleValuedMap>(&payload_)) {
    if (svm->jacobian) return svm->jacobian(x);
  }
  return std::nullopt;
}

}  // namespace mono
