#pragma once

// Reference computations that share no code with the library: plain quadrature, polar
// integration and brute-force scans. Slow, but only used on small inputs.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

/// Composite Simpson rule with `panels` (rounded up to even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 4000) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

inline double density(double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * kPi); }

/// Standard normal CDF by quadrature from 0 (|x| <= 9) or over the far tail.
inline double normal_cdf(double x) {
  if (x < -9.0) return simpson(density, x - 40.0, x, 40000);
  if (x > 9.0) return 1.0 - simpson(density, x, x + 40.0, 40000);
  const double half = simpson(density, 0.0, std::abs(x), 20000);
  return x >= 0.0 ? 0.5 + half : 0.5 - half;
}

/// Upper tail 1 - Phi(x) for x >= 0 without cancellation.
inline double normal_tail(double x) { return simpson(density, x, x + 40.0, 40000); }

/// Gaussian mass in the plane of a set star-shaped about the origin, given its radial
/// function rho(theta) (infinite allowed): (1 / 2 pi) int (1 - e^{-rho^2/2}) dtheta.
inline double polar_mass(const std::function<double(double)>& rho, int samples = 200000) {
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * (i + 0.5) / samples;
    const double r = rho(t);
    acc += std::isinf(r) ? 1.0 : 1.0 - std::exp(-0.5 * r * r);
  }
  return acc / samples;
}

/// Radial function of {x : <x, w_i> < t_i for all i} (all t_i > 0), directions as angles.
inline std::function<double(double)> polygon_radial(std::vector<double> angles, std::vector<double> offsets) {
  return [angles, offsets](double t) {
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < angles.size(); ++i) {
      const double c = std::cos(t - angles[i]);
      if (c > 0.0) r = std::min(r, offsets[i] / c);
    }
    return r;
  };
}

/// Squared distance (cell units) from every cell of an m x m grid to the nearest set cell.
inline std::vector<double> brute_edt_2d(const std::vector<unsigned char>& cells, int m) {
  std::vector<double> out(cells.size(), std::numeric_limits<double>::infinity());
  for (int j = 0; j < m * m; ++j) {
    if (!cells[static_cast<std::size_t>(j)]) continue;
    const int jx = j % m, jy = j / m;
    for (int i = 0; i < m * m; ++i) {
      const double dx = i % m - jx, dy = i / m - jy;
      out[static_cast<std::size_t>(i)] = std::min(out[static_cast<std::size_t>(i)], dx * dx + dy * dy);
    }
  }
  return out;
}

/// Support function of the hull of 2-D points: max over points of <p, u>.
inline double support_of_points(const std::vector<std::array<double, 3>>& pts, double ux, double uy, double uz = 0.0) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : pts) best = std::max(best, p[0] * ux + p[1] * uy + p[2] * uz);
  return best;
}

/// Planar gauge by duality: max over a dense set of directions of <x, u> / h(u).
inline double gauge_by_duality(const std::function<double(double, double)>& support, double x, double y,
                               int samples = 20000) {
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * i / samples;
    const double ux = std::cos(t), uy = std::sin(t);
    best = std::max(best, (x * ux + y * uy) / support(ux, uy));
  }
  return best;
}

/// Planar hull membership by Caratheodory: x lies in the hull iff it lies in the closed
/// triangle of some three of the points.
inline bool in_hull_2d(const std::vector<std::array<double, 3>>& pts, double x, double y) {
  const auto side = [](const std::array<double, 3>& a, const std::array<double, 3>& b, double px, double py) {
    return (b[0] - a[0]) * (py - a[1]) - (b[1] - a[1]) * (px - a[0]);
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const double d1 = side(pts[i], pts[j], x, y), d2 = side(pts[j], pts[k], x, y), d3 = side(pts[k], pts[i], x, y);
        if ((d1 >= 0 && d2 >= 0 && d3 >= 0) || (d1 <= 0 && d2 <= 0 && d3 <= 0)) return true;
      }
    }
  }
  return false;
}

/// Gauge of the hull of `pts` at (x, y) by bisection on lambda-membership.
inline double gauge_by_bisection(const std::vector<std::array<double, 3>>& pts, double x, double y) {
  double lo = 0.0, hi = 1.0;
  while (!in_hull_2d(pts, x / hi, y / hi)) hi *= 2.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (in_hull_2d(pts, x / mid, y / mid) ? hi : lo) = mid;
  }
  return hi;
}

/// Area of a planar convex body from its gauge: (1/2) int rho(theta)^2 dtheta.
inline double area_from_gauge(const std::function<double(double, double)>& gauge, int samples = 20000) {
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * (i + 0.5) / samples;
    const double r = 1.0 / gauge(std::cos(t), std::sin(t));
    acc += r * r;
  }
  return 0.5 * acc * 2.0 * kPi / samples;
}

/// Largest overlap |A cap (B + x)| of two axis-aligned centered rectangles over a dense
/// translation scan; both given by half-extents.
inline double best_box_overlap(double ax, double ay, double bx, double by, int samples = 400) {
  const auto overlap_1d = [](double a, double b, double t) {
    return std::max(0.0, std::min(a, t + b) - std::max(-a, t - b));
  };
  double best = 0.0;
  for (int i = 0; i <= samples; ++i) {
    for (int j = 0; j <= samples; ++j) {
      const double tx = -2.0 + 4.0 * i / samples, ty = -2.0 + 4.0 * j / samples;
      best = std::max(best, overlap_1d(ax, bx, tx) * overlap_1d(ay, by, ty));
    }
  }
  return best;
}

}  // namespace oracle
