#pragma once

#include <vector>

#include "conc/geometry.hpp"

namespace conc {

/// Gaussian mass of an intersection of half-spaces whose directions lie in the (x1, x2)
/// plane. One-dimensional quadrature in x2 of density(x2) * (phi(hi) - phi(lo)), split at
/// every point where the active bounds change.
double planar_mass(const std::vector<HalfSpace>& hs);

/// Gaussian mass of {x1^2/a^2 + x2^2/b^2 < 1} in the plane.
double ellipse_mass(double a, double b);

/// Gaussian mass of the centered ball of the given radius (n = 2 or 3).
double ball_mass(int dim, double radius);

}  // namespace conc
