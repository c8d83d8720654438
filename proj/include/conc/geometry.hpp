#pragma once

#include <array>
#include <cmath>
#include <variant>
#include <vector>

namespace conc {

/// Point or direction in R^n, n <= 3. Components beyond the dimension are zero.
using Vec = std::array<double, 3>;

inline double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }
inline Vec operator+(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec operator-(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec operator*(double t, const Vec& a) { return {t * a[0], t * a[1], t * a[2]}; }
inline Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Vec normalized(const Vec& a);

/// Unit vector at `angle` in the (x1, x2) plane.
inline Vec planar_direction(double angle) { return {std::cos(angle), std::sin(angle), 0.0}; }

/// Coordinate unit vector e_{axis+1}.
inline Vec axis_direction(int axis) {
  Vec e{0.0, 0.0, 0.0};
  e[static_cast<std::size_t>(axis)] = 1.0;
  return e;
}

/// Open half-space {x : <x, direction> < offset} with a unit direction.
class HalfSpace {
 public:
  /// Throws InvalidArgument unless |direction| = 1 within 1e-12 and offset is finite.
  HalfSpace(const Vec& direction, double offset);

  const Vec& direction() const { return direction_; }
  double offset() const { return offset_; }
  bool contains(const Vec& x) const { return dot(x, direction_) < offset_; }
  HalfSpace shifted(double by) const { return HalfSpace(direction_, offset_ + by); }

  bool operator==(const HalfSpace& o) const {
    return direction_ == o.direction_ && offset_ == o.offset_;
  }

 private:
  Vec direction_;
  double offset_;
};

/// Supporting plane {x : <normal, x> <= offset} of a polytope, |normal| = 1, offset > 0.
struct Facet {
  Vec normal;
  double offset;
  std::vector<Vec> loop;  // facet vertices, counter-clockwise seen from outside
};

/// Open bounded convex body containing the origin: a ball, a centered box or a polytope.
///
/// Everything downstream talks to the body through the gauge ||x||_K and the support
/// function ||v||_* = sup_{x in K} <x, v>; the polytope kind precomputes its facets so the
/// gauge is a max over facet functionals.
class ConvexBody {
 public:
  struct Ball {
    double radius;
  };
  struct Box {
    Vec half_extents;
  };
  struct Polytope {
    std::vector<Vec> vertices;
    std::vector<Facet> facets;
    double volume;
  };

  static ConvexBody ball(int dim, double radius);
  static ConvexBody box(int dim, const Vec& half_extents);
  /// Hull of the given vertices; throws InvalidArgument if the hull is flat or the
  /// origin is not strictly inside.
  static ConvexBody polytope(int dim, std::vector<Vec> vertices);
  /// Centered axis-aligned cube of unit volume.
  static ConvexBody unit_cube(int dim) { return box(dim, {0.5, 0.5, 0.5}); }

  int dim() const { return dim_; }
  const std::variant<Ball, Box, Polytope>& shape() const { return shape_; }
  bool is_ball() const { return std::holds_alternative<Ball>(shape_); }
  bool is_box() const { return std::holds_alternative<Box>(shape_); }
  /// Symmetric under every coordinate reflection (balls and centered boxes).
  bool is_unconditional() const { return !std::holds_alternative<Polytope>(shape_); }

  /// inf{lambda > 0 : x in lambda K}.
  double gauge(const Vec& x) const;
  /// sup_{y in K} <y, v>.
  double support(const Vec& v) const;
  /// Lebesgue measure |K|.
  double volume() const;
  /// Euclidean distance from x to scale*K (0 inside).
  double distance(const Vec& x, double scale) const;
  /// max_{y in K} |y|.
  double circumradius() const;
  /// Open membership: gauge(x) < 1.
  bool contains(const Vec& x) const { return gauge(x) < 1.0; }
  ConvexBody scaled(double factor) const;

 private:
  ConvexBody(int dim, std::variant<Ball, Box, Polytope> shape) : dim_(dim), shape_(std::move(shape)) {}

  int dim_;
  std::variant<Ball, Box, Polytope> shape_;
};

}  // namespace conc
