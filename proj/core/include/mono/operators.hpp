#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mono/set_description.hpp"

namespace mono {

/// Convex function given through oracles.  `prox` is the Euclidean proximal
/// map prox_{step*f}; it is the workhorse of the resolvent engine, so every
/// zoo member ships one in closed form.  `structural_eval` returns the exact
/// subdifferential where known; `snaps` proposes nearby points on the
/// operator's nonsmooth structure (kinks, faces) for residual polishing.
struct SubdiffOracle {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&, double)> prox;  // prox(v, step) = argmin step*f(u) + .5|u-v|^2
  std::function<Covec(const Vec&)> subgradient;                  // optional selection
  std::function<SetDescription(const Vec&)> structural_eval;     // optional exact sets
  std::function<std::vector<Vec>(const Vec&, double)> snaps;     // optional snap candidates
  // Optional cancellation-free v - prox(v, step); Yosida values divide this by
  // the (possibly tiny) parameter, so naive subtraction loses precision.
  std::function<Vec(const Vec&, double)> displacement;
};

/// Continuous single-valued monotone map with an optional Jacobian oracle.
struct SingleValuedMap {
  std::function<Covec(const Vec&)> map;
  std::function<Matrix(const Vec&)> jacobian;  // optional
};

/// x -> M x with M + M^T positive semidefinite (checked at construction).
struct LinearMap {
  Matrix M;
};

/// Normal cone to a closed Euclidean ball or a box.
struct NormalCone {
  enum class SetKind { Ball, Box };
  SetKind set_kind;
  Vec center;     // ball
  double radius;  // ball
  Vec lo, hi;     // box

  static NormalCone ball(Vec center, double radius);
  static NormalCone box(Vec lo, Vec hi);

  Vec project(const Vec& x) const;
  /// x - project(x) evaluated without cancellation (extended-precision radial
  /// excess for balls, exact clamp algebra for boxes).
  Vec displacement(const Vec& x) const;
  bool in_set(const Vec& x, double tol) const;
  /// The cone N_C(x); empty outside C.  Points within boundary_tol of the
  /// boundary are treated as boundary points.
  SetDescription cone_at(const Vec& x, double boundary_tol) const;
};

/// Finite list of (point, covector) pairs identified with an operator graph.
class SampledGraph {
 public:
  SampledGraph(std::vector<std::pair<Vec, Covec>> pairs);

  const std::vector<std::pair<Vec, Covec>>& pairs() const { return pairs_; }
  int dim() const { return dim_; }
  std::size_t size() const { return pairs_.size(); }

  /// min over (y,y*) in G of <x-y, x*-y*> for z=(x,x*); z is monotonically
  /// related to the samples iff the result >= -tol.  Restricted to samples
  /// this over-approximates the true monotone polar (diagnostic only), and it
  /// doubles as the finite-sample NI gap at z.
  double min_monotonicity_gap(const Vec& x, const Covec& xstar) const;

  /// O(n^2) brute force over all pairs.
  bool is_monotone(double tol = 1e-10) const;

  /// Cached is_monotone(1e-10); call before handing the graph to routines
  /// that require monotone input.
  bool monotone_flag() const;
  void ensure_monotone() const;  // throws NonMonotoneGraphError

  /// All covectors stored at x (exact coordinate match within tol).
  SetDescription eval(const Vec& x, double tol) const;

  std::uint64_t hash() const;

 private:
  std::vector<std::pair<Vec, Covec>> pairs_;
  int dim_;
  mutable int monotone_cache_ = -1;  // -1 unknown, 0 no, 1 yes
};

/// A monotone operator in one of five representations, tied to its space.
class Operator {
 public:
  using Payload = std::variant<SubdiffOracle, SingleValuedMap, LinearMap, NormalCone, SampledGraph>;

  Operator(NormedSpace space, Payload payload, std::string name);

  const NormedSpace& space() const { return space_; }
  const std::string& name() const { return name_; }

  /// Structural value T(x).  Evaluation outside Dom(T) yields the empty set.
  SetDescription eval(const Vec& x) const;

  /// Candidate points near x on the operator's nonsmooth structure, used to
  /// polish solver output; always includes x itself.
  std::vector<Vec> snap_candidates(const Vec& x, double tol) const;

  /// Interval hull of Dom(T) per coordinate (+-inf when unbounded).
  std::pair<Vec, Vec> domain_box() const;

  bool has_prox() const;
  Vec prox(const Vec& v, double step) const;
  /// v - prox(v, step); uses the stable displacement oracle when available.
  Vec displacement(const Vec& v, double step) const;
  bool is_single_valued_kind() const;
  Covec apply_single_valued(const Vec& x) const;
  std::optional<Matrix> jacobian(const Vec& x) const;

  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&payload_);
  }

  /// Tolerance used by structural evals to detect boundary/kink membership.
  double structure_tol() const { return structure_tol_; }

 private:
  NormedSpace space_;
  Payload payload_;
  std::string name_;
  double structure_tol_ = 1e-9;
};

}  // namespace mono
