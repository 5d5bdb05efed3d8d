#pragma once

#include "mono/operators.hpp"

namespace mono::zoo {

/// T = 0.
Operator zero(const NormedSpace& space);

/// T(x) = x.
Operator identity(const NormedSpace& space);

/// T(x) = M x, M + M^T PSD.
Operator linear(const NormedSpace& space, Matrix M);

/// T = subdifferential of x -> sum_i |x_i - c_i| (c = 0 when omitted).
Operator abs(const NormedSpace& space);
Operator abs_shifted(const NormedSpace& space, Vec center);

/// T = normal cone to the closed Euclidean ball B(center, radius).
Operator indicator_ball(const NormedSpace& space, Vec center, double radius);

/// T = normal cone to the box [lo, hi].
Operator indicator_box(const NormedSpace& space, Vec lo, Vec hi);

/// T = the finite graph itself.
Operator graph(const NormedSpace& space, SampledGraph g);

}  // namespace mono::zoo
