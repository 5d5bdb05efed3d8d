#pragma once

#include <limits>
#include <vector>

#include "mono/normed_space.hpp"
#include "mono/types.hpp"

namespace mono {

/// Structural description of an operator value T(x): empty, a single point,
/// an axis-aligned box (bounds may be infinite), a ray {apex + t*dir, t >= 0},
/// or a finite list of covectors.  Probes only ever need membership tests,
/// distances and one selection, so no general set arithmetic is provided.
class SetDescription {
 public:
  enum class Kind { Empty, Point, Box, Ray, Finite };

  static SetDescription empty(int dim);
  static SetDescription point(Covec v);
  static SetDescription box(Covec lo, Covec hi);
  static SetDescription ray(Covec apex, Covec dir);
  static SetDescription finite(std::vector<Covec> points);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool is_empty() const { return kind_ == Kind::Empty; }
  bool is_singleton(double tol = 0.0) const;

  /// Some element of the set (the point, box projection of 0, the apex, the
  /// first sample).  Throws on the empty set.
  Covec any_element() const;

  struct Nearest {
    Covec point;
    double distance;
  };
  /// Nearest point of the set to `target` in the dual (q-)norm of `space`.
  /// Empty sets report distance = +inf and an empty point.
  Nearest nearest(const Covec& target, const NormedSpace& space) const;

  double distance(const Covec& target, const NormedSpace& space) const {
    return nearest(target, space).distance;
  }
  bool contains(const Covec& v, const NormedSpace& space, double tol) const {
    return distance(v, space) <= tol;
  }

  /// Interval hull bounds for 1-D sets (used by the bisection solver).
  double lower_1d() const;
  double upper_1d() const;

  // Accessors for the raw data of each kind (valid only for matching kind).
  const Covec& point_value() const { return a_; }
  const Covec& box_lo() const { return a_; }
  const Covec& box_hi() const { return b_; }
  const Covec& ray_apex() const { return a_; }
  const Covec& ray_dir() const { return b_; }
  const std::vector<Covec>& finite_points() const { return pts_; }

  static constexpr double kInf = std::numeric_limits<double>::infinity();

 private:
  SetDescription(Kind k, int dim) : kind_(k), dim_(dim) {}
  Kind kind_;
  int dim_;
  Covec a_;  // point / lo / apex
  Covec b_;  // hi / dir
  std::vector<Covec> pts_;
};

}  // namespace mono
