#pragma once

#include <cmath>
#include <vector>

#include "conc/geometry.hpp"
#include "conc/grid.hpp"

namespace conc {

/// A measured quantity with an absolute error bound.
struct MeasureEstimate {
  double value = 0.0;
  double err = 0.0;

  double lower() const { return value - err; }
  double upper() const { return value + err; }
};

inline MeasureEstimate operator+(MeasureEstimate a, MeasureEstimate b) { return {a.value + b.value, a.err + b.err}; }
inline MeasureEstimate operator-(MeasureEstimate a, MeasureEstimate b) { return {a.value - b.value, a.err + b.err}; }
inline MeasureEstimate operator*(double t, MeasureEstimate a) { return {t * a.value, std::abs(t) * a.err}; }

enum class Weight { Gauss, Lebesgue };

/// Per-axis cell weights: Gaussian content phi(u) - phi(l) or the spacing h.
std::vector<double> axis_weights(const GridSpec& spec, Weight w);

/// Sum of cell contents over inside cells (no error term).
double cell_sum(const GridSet& E, Weight w);

/// Half the larger cell content for every face between an inside and an outside cell.
/// This is the discretization part of every error bound in this library.
double boundary_error(const GridSet& E, Weight w);

/// Gaussian mass that the window cannot see: zero for bounded sets, otherwise the
/// mass of the region within `reach` of the window edge or beyond it.
double window_error(const GridSet& E);

MeasureEstimate gaussian_measure(const GridSet& E);

/// Lebesgue measure. Throws DomainError unless the set is bounded (outside policy Empty).
MeasureEstimate volume(const GridSet& E);

/// Measure of E xor F. The error is the sum of both sets' errors: the xor of two rasters
/// can hide boundary strips that both sets misclassify.
MeasureEstimate sym_diff_measure(const GridSet& E, const GridSet& F, Weight w);

struct PerimeterEstimate {
  MeasureEstimate estimate;
  /// Second-difference estimate of the O(h_q) bias of the outer quotient, reported
  /// separately from the discretization error.
  double quotient_bias = 0.0;
};

/// sqrt(2 pi) (gamma(E + B_hq) - gamma(E)) / hq. hq <= 0 selects the default 4h.
/// Throws InvalidArgument if hq < 2h.
PerimeterEstimate gaussian_perimeter(const GridSet& E, double hq = 0.0);

class DistanceField;
/// Perimeter of E + B_rho read off the distance field of E (E + B_rho + B_hq is taken as
/// E + B_{rho + hq}).
PerimeterEstimate gaussian_perimeter(const DistanceField& field, double rho, double hq = 0.0);

/// (|E + hq K| - |E|) / hq, same conventions.
PerimeterEstimate anisotropic_perimeter(const GridSet& E, const ConvexBody& K, double hq = 0.0);

/// Checks hq >= 2h and resolves the default.
double quotient_step(const GridSpec& spec, double hq);

/// b(E) = integral of x over E against the Gaussian measure, with an error bound on |b|.
struct Barycenter {
  Vec b{0.0, 0.0, 0.0};
  double err = 0.0;
};

Barycenter gauss_barycenter(const GridSet& E);

/// Answers gamma(F cap H_{w,t}) for many half-spaces in O(m^{n-1}) each, using prefix
/// sums along axis 0. Agrees cell for cell with rasterize(H_{w,t}).
class HalfSpaceSweeper {
 public:
  explicit HalfSpaceSweeper(const GridSet& F);

  double mass() const { return total_; }
  /// gamma(F cap H) on the grid.
  double inside(const HalfSpace& H) const;
  /// gamma(F \ H) on the grid.
  double outside(const HalfSpace& H) const { return total_ - inside(H); }
  /// gamma(F xor H) on the grid.
  double sym_diff(const HalfSpace& H) const;
  /// boundary_error(rasterize(H), Gauss) without building the raster.
  double halfspace_error(const HalfSpace& H) const;
  /// Grid mass of the rasterized half-space.
  double halfspace_mass(const HalfSpace& H) const;

 private:
  // number of leading (w0 > 0) or trailing (w0 < 0) cells of a row inside H
  int threshold(const HalfSpace& H, const Vec& row) const;
  bool prefix(const HalfSpace& H) const { return H.direction()[0] >= 0.0; }

  GridSpec spec_;
  std::vector<double> w_;        // axis weights
  std::vector<double> wsum_;     // prefix sums of w_
  std::vector<double> row_w_;    // product of the weights of the non-leading axes
  std::vector<double> prefix_;   // per row: prefix sums of w_ over inside cells, length m+1
  double total_ = 0.0;
};

}  // namespace conc
