#pragma once

#include <cstddef>
#include <vector>

#include "conc/geometry.hpp"
#include "conc/grid.hpp"
#include "conc/measures.hpp"

namespace conc {

class DistanceField;

struct AsymmetryResult {
  double value = 0.0;
  double err = 0.0;
  /// Direction w* (Gaussian) or translation x* (Euclidean).
  Vec minimizer{0.0, 0.0, 0.0};
  std::size_t evaluations = 0;
  double final_step = 0.0;
  /// Euclidean search only: the half-width of the translation scan and whether the
  /// minimizer sits on its edge (a rerun with a wider scan is then advisable).
  double scan_bound = 0.0;
  bool hit_bound = false;
};

/// gamma(E) with s = phi^{-1}(gamma(E)) and the range of s allowed by the error.
struct GaussOffset {
  MeasureEstimate mass;
  double s = 0.0;
  double s_lo = 0.0;
  double s_hi = 0.0;
};

/// Throws DegenerateMass if gamma(E) is within its error of 0 or 1.
GaussOffset gauss_offset(const GridSet& E);

/// Coarse direction grid of the sphere search: 256 angles in n = 2, the vertices of a
/// three-times subdivided icosahedron (642 points) in n = 3.
std::vector<Vec> sphere_directions(int dim);

/// min over w of gamma(E xor H_{w,s}). Coarse enumeration, then golden-section (n = 2) or
/// compass search (n = 3) around the three best coarse directions, to 1e-4 radians.
AsymmetryResult alpha_gauss(const GridSet& E);

/// min over w of |b(E) - b(H_{w,s})| in closed form.
MeasureEstimate beta_strong(const GridSet& E);

/// inf over x of |(E + x) xor sK| with s = (|E|/|K|)^{1/n}. Throws InvalidArgument for
/// an empty set.
AsymmetryResult alpha_convex(const GridSet& E, const ConvexBody& K);

/// alpha(E, F) = alpha_convex(E, F).value.
double alpha_pair(const GridSet& E, const ConvexBody& F);

/// rho_hat with gamma(E + B_rho) = phi(s + rho_hat).
double equivalent_offset(const GridSet& E, double rho);
double equivalent_offset(const DistanceField& field, double rho);

}  // namespace conc
