#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "conc/errors.hpp"
#include "conc/geometry.hpp"

namespace conc {

namespace {

constexpr double kPlaneTol = 1e-10;

double segment_distance(const Vec& x, const Vec& a, const Vec& b) {
  const Vec ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(x - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(x - (a + t * ab));
}

std::vector<Facet> hull_2d(std::vector<Vec> pts, double& area) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto turn = [](const Vec& o, const Vec& a, const Vec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Vec> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Vec& p : pts) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 0 ? k - 1 : 0);
  if (hull.size() < 3) throw InvalidArgument("polytope: vertex hull has empty interior");

  area = 0.0;
  std::vector<Facet> facets;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec& a = hull[i];
    const Vec& b = hull[(i + 1) % hull.size()];
    area += 0.5 * (a[0] * b[1] - a[1] * b[0]);
    const Vec n = normalized(Vec{b[1] - a[1], a[0] - b[0], 0.0});
    facets.push_back({n, dot(n, a), {a, b}});
  }
  return facets;
}

std::vector<Facet> hull_3d(const std::vector<Vec>& pts, double& volume) {
  double scale = 0.0;
  for (const Vec& p : pts) scale = std::max(scale, norm(p));
  const double tol = kPlaneTol * std::max(1.0, scale);

  std::vector<Facet> facets;
  const std::size_t count = pts.size();
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      for (std::size_t k = j + 1; k < count; ++k) {
        Vec n = cross(pts[j] - pts[i], pts[k] - pts[i]);
        if (norm(n) <= tol * tol) continue;
        n = normalized(n);
        double b = dot(n, pts[i]);
        bool below = true;
        bool above = true;
        for (const Vec& p : pts) {
          const double v = dot(n, p) - b;
          below = below && v <= tol;
          above = above && v >= -tol;
        }
        if (!below && !above) continue;
        if (!below) {
          n = -1.0 * n;
          b = -b;
        }
        const bool seen = std::any_of(facets.begin(), facets.end(), [&](const Facet& f) {
          return norm(f.normal - n) < 1e-9 && std::abs(f.offset - b) <= tol;
        });
        if (!seen) facets.push_back({n, b, {}});
      }
    }
  }
  if (facets.size() < 4) throw InvalidArgument("polytope: vertex hull has empty interior");

  volume = 0.0;
  for (Facet& f : facets) {
    std::vector<Vec> on;
    for (const Vec& p : pts) {
      if (std::abs(dot(f.normal, p) - f.offset) <= tol &&
          std::none_of(on.begin(), on.end(), [&](const Vec& q) { return norm(q - p) <= tol; })) {
        on.push_back(p);
      }
    }
    Vec c{0.0, 0.0, 0.0};
    for (const Vec& p : on) c = c + p;
    c = (1.0 / static_cast<double>(on.size())) * c;
    const Vec u = normalized(on.front() - c);
    const Vec w = cross(f.normal, u);
    std::sort(on.begin(), on.end(), [&](const Vec& a, const Vec& b) {
      return std::atan2(dot(a - c, w), dot(a - c, u)) < std::atan2(dot(b - c, w), dot(b - c, u));
    });
    double area = 0.0;
    for (std::size_t i = 0; i < on.size(); ++i) {
      area += 0.5 * dot(cross(on[i] - c, on[(i + 1) % on.size()] - c), f.normal);
    }
    f.loop = std::move(on);
    volume += f.offset * area / 3.0;
  }
  return facets;
}

}  // namespace

Vec normalized(const Vec& a) {
  const double len = norm(a);
  if (!(len > 0.0)) throw InvalidArgument("cannot normalize a zero vector");
  return (1.0 / len) * a;
}

HalfSpace::HalfSpace(const Vec& direction, double offset) : direction_(direction), offset_(offset) {
  if (std::abs(norm(direction) - 1.0) > 1e-12) {
    throw InvalidArgument("HalfSpace: direction must be a unit vector");
  }
  if (!std::isfinite(offset)) throw InvalidArgument("HalfSpace: offset must be finite");
}

ConvexBody ConvexBody::ball(int dim, double radius) {
  if (dim < 2 || dim > 3) throw InvalidArgument("ConvexBody: dimension must be 2 or 3");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("ball: radius must be positive");
  return ConvexBody(dim, Ball{radius});
}

ConvexBody ConvexBody::box(int dim, const Vec& half_extents) {
  if (dim < 2 || dim > 3) throw InvalidArgument("ConvexBody: dimension must be 2 or 3");
  Vec a{0.0, 0.0, 0.0};
  for (int i = 0; i < dim; ++i) {
    const double e = half_extents[static_cast<std::size_t>(i)];
    if (!(e > 0.0) || !std::isfinite(e)) throw InvalidArgument("box: half-extents must be positive");
    a[static_cast<std::size_t>(i)] = e;
  }
  return ConvexBody(dim, Box{a});
}

ConvexBody ConvexBody::polytope(int dim, std::vector<Vec> vertices) {
  if (dim < 2 || dim > 3) throw InvalidArgument("ConvexBody: dimension must be 2 or 3");
  if (vertices.empty()) throw InvalidArgument("polytope: vertex list is empty");
  for (Vec& v : vertices) {
    for (int i = dim; i < 3; ++i) v[static_cast<std::size_t>(i)] = 0.0;
  }
  double volume = 0.0;
  std::vector<Facet> facets = dim == 2 ? hull_2d(vertices, volume) : hull_3d(vertices, volume);
  for (const Facet& f : facets) {
    if (!(f.offset > 1e-12)) throw InvalidArgument("polytope: origin must lie strictly inside");
  }
  return ConvexBody(dim, Polytope{std::move(vertices), std::move(facets), volume});
}

double ConvexBody::gauge(const Vec& x) const {
  if (const auto* b = std::get_if<Ball>(&shape_)) return norm(x) / b->radius;
  if (const auto* b = std::get_if<Box>(&shape_)) {
    double g = 0.0;
    for (int i = 0; i < dim_; ++i) {
      const auto k = static_cast<std::size_t>(i);
      g = std::max(g, std::abs(x[k]) / b->half_extents[k]);
    }
    return g;
  }
  const auto& p = std::get<Polytope>(shape_);
  double g = 0.0;
  for (const Facet& f : p.facets) g = std::max(g, dot(f.normal, x) / f.offset);
  return g;
}

double ConvexBody::support(const Vec& v) const {
  if (const auto* b = std::get_if<Ball>(&shape_)) return b->radius * norm(v);
  if (const auto* b = std::get_if<Box>(&shape_)) {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) {
      const auto k = static_cast<std::size_t>(i);
      s += b->half_extents[k] * std::abs(v[k]);
    }
    return s;
  }
  const auto& p = std::get<Polytope>(shape_);
  double s = -std::numeric_limits<double>::infinity();
  for (const Vec& q : p.vertices) s = std::max(s, dot(q, v));
  return s;
}

double ConvexBody::volume() const {
  if (const auto* b = std::get_if<Ball>(&shape_)) {
    const double r = b->radius;
    return dim_ == 2 ? std::numbers::pi * r * r : 4.0 / 3.0 * std::numbers::pi * r * r * r;
  }
  if (const auto* b = std::get_if<Box>(&shape_)) {
    double v = 1.0;
    for (int i = 0; i < dim_; ++i) v *= 2.0 * b->half_extents[static_cast<std::size_t>(i)];
    return v;
  }
  return std::get<Polytope>(shape_).volume;
}

double ConvexBody::distance(const Vec& x, double scale) const {
  if (const auto* b = std::get_if<Ball>(&shape_)) return std::max(0.0, norm(x) - scale * b->radius);
  if (const auto* b = std::get_if<Box>(&shape_)) {
    double d2 = 0.0;
    for (int i = 0; i < dim_; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const double e = std::max(0.0, std::abs(x[k]) - scale * b->half_extents[k]);
      d2 += e * e;
    }
    return std::sqrt(d2);
  }
  if (gauge(x) <= scale) return 0.0;
  const auto& p = std::get<Polytope>(shape_);
  double best = std::numeric_limits<double>::infinity();
  for (const Facet& f : p.facets) {
    const std::size_t n = f.loop.size();
    if (dim_ == 3) {
      const double height = dot(f.normal, x) - scale * f.offset;
      const Vec proj = x - height * f.normal;
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i) {
        const Vec a = scale * f.loop[i];
        const Vec b = scale * f.loop[(i + 1) % n];
        inside = dot(cross(b - a, proj - a), f.normal) >= 0.0;
      }
      if (inside) {
        best = std::min(best, std::abs(height));
        continue;
      }
    }
    const std::size_t edges = dim_ == 2 ? 1 : n;
    for (std::size_t i = 0; i < edges; ++i) {
      best = std::min(best, segment_distance(x, scale * f.loop[i], scale * f.loop[(i + 1) % n]));
    }
  }
  return best;
}

double ConvexBody::circumradius() const {
  if (const auto* b = std::get_if<Ball>(&shape_)) return b->radius;
  if (const auto* b = std::get_if<Box>(&shape_)) return norm(b->half_extents);
  double r = 0.0;
  for (const Vec& v : std::get<Polytope>(shape_).vertices) r = std::max(r, norm(v));
  return r;
}

ConvexBody ConvexBody::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidArgument("scaled: factor must be positive");
  if (const auto* b = std::get_if<Ball>(&shape_)) return ball(dim_, factor * b->radius);
  if (const auto* b = std::get_if<Box>(&shape_)) return box(dim_, factor * b->half_extents);
  std::vector<Vec> v = std::get<Polytope>(shape_).vertices;
  for (Vec& q : v) q = factor * q;
  return polytope(dim_, std::move(v));
}

}  // namespace conc
