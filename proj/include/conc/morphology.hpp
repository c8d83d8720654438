#pragma once

#include <vector>

#include "conc/geometry.hpp"
#include "conc/grid.hpp"

namespace conc {

/// Squared Euclidean distances (in cell units) from every cell center to the nearest
/// inside-cell center of the source set. One field answers E + B_r for every r.
class DistanceField {
 public:
  /// Throws InvalidArgument if the source is empty.
  explicit DistanceField(GridSet source);

  const GridSet& source() const { return source_; }
  const GridSpec& spec() const { return source_.spec(); }
  double squared_cells(std::size_t index) const { return sq_[index]; }
  /// Distance in length units; zero exactly on inside cells.
  double distance(std::size_t index) const;

  /// E + B_r: cells whose field value is below r + h/2. r = 0 returns the source.
  /// Throws WindowOverflow when the enlargement reaches the window edge unexplained.
  GridSet enlarged(double r) const;

 private:
  GridSet source_;
  std::vector<double> sq_;
};

/// Cell-distance rule shared by both enlargements: |d| < r/h + 1/2 in cell units.
inline bool within_enlargement(double squared_cells, double radius_cells) {
  const double t = radius_cells + 0.5;
  return squared_cells < t * t;
}

GridSet enlarge_ball(const GridSet& E, double r);

/// E + rK by brute-force dilation with the structuring element
/// {d : dist(d h, rK) < h/2}. For the ball this is the same rule as enlarge_ball.
GridSet enlarge_convex(const GridSet& E, const ConvexBody& K, double r);

}  // namespace conc
