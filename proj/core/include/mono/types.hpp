#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace mono {

// In finite dimensions X and X* are both realized as coordinate vectors; the
// aliases keep signatures readable (Vec lives in X, Covec in X*).
using Vec = Eigen::VectorXd;
using Covec = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Duality product <x, x*> between a point and a covector.
inline double pairing(const Vec& x, const Covec& xstar) { return x.dot(xstar); }

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

/// A graph handed to a routine that requires monotonicity failed the check.
struct NonMonotoneGraphError : Error {
  using Error::Error;
};

/// A regularization parameter of 0 was used where the raw operator is
/// multivalued; carries the offending operator's name.
struct MultivaluedEndpointError : Error {
  using Error::Error;
};

/// Iterative solver exhausted its budget; carries the best residual seen.
struct SolverFailure : Error {
  SolverFailure(const std::string& what, double best_residual)
      : Error(what), best_residual(best_residual) {}
  double best_residual;
};

inline void require_dim(const Eigen::VectorXd& v, Eigen::Index dim, const char* what) {
  if (v.size() != dim) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(dim) +
                         ", got " + std::to_string(v.size()));
  }
}

}  // namespace mono
