#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mono/operators.hpp"

namespace mono {

/// Sample-restricted Fitzpatrick value at z = (x, x*):
///   max over (y,y*) in G of <y,x*> + <x,y*> - <y,y*>,
/// the defining formula <x,x*> - inf <y-x, y*-x*> with the infimum taken over
/// the samples.  Equals <x,x*> exactly on graph points of a monotone G, and
/// lower-bounds the Fitzpatrick function of any extension of G.
double fitzpatrick_value(const SampledGraph& G, const Vec& x, const Covec& xstar);

/// The coupling <a, z> between pairs used by the conjugate h: for a=(ax,ax*),
/// z=(zx,zx*) it is <ax, zx*> + <zx, ax*>.
double pair_sym(const Vec& ax, const Covec& axstar, const Vec& zx, const Covec& zxstar);

/// Conjugate of the sample-restricted inverse-graph Fitzpatrick function:
/// since that function is a finite max of affine pieces indexed by graph
/// points, its conjugate at z is the linear program
///   min { sum_i mu_i <y_i, y_i*> : sum_i mu_i (y_i, y_i*) = z, mu in simplex }
/// and +inf when infeasible (infeasibility is a value, not an error).
/// Degenerate LPs are resolved by the simplex fallbacks documented in
/// simplex_lp.hpp at feasibility tolerance `feas_tol`.
double representative_value(const SampledGraph& G, const Vec& x, const Covec& xstar,
                            double feas_tol = 1e-9);

/// Uniform rectangular grid, one [lo, hi]/step range applied to every axis of
/// X x X*.
struct GridSpec {
  double lo = -2.0;
  double hi = 2.0;
  double step = 0.1;
};

struct CertificateReport {
  bool pass = false;
  double min_slack = 0.0;  // min over evaluated points of h - pi (finite h only)
  std::vector<std::pair<Vec, Covec>> equality_points;  // |h - pi| <= tol
  std::vector<std::pair<Vec, Covec>> violations;       // h < pi - tol
  std::vector<std::pair<Vec, Covec>> points;           // everything evaluated (grid then graph)
  std::vector<double> slacks;                          // h - pi per point, +inf when infeasible
  GridSpec grid;
  double tol = 0.0;
  std::uint64_t graph_hash = 0;
};

/// Sweeps representative_value over the grid (plus the graph points
/// themselves, so equality on G is always checked at exact sample locations)
/// and certifies the representative inequality h >= pi.  Requires a monotone
/// graph: non-monotone input raises NonMonotoneGraphError.
CertificateReport certify_representative(const SampledGraph& G, const GridSpec& grid, double tol,
                                         int jobs = 1);

}  // namespace mono
