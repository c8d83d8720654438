#pragma once

// Seeded generators for property tests. Each property runs a fixed number of cases from a
// fixed seed; the failing case index is reported through doctest's INFO.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "conc/geometry.hpp"
#include "conc/grid.hpp"

namespace gen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  conc::Vec direction(int dim) {
    std::normal_distribution<double> g;
    conc::Vec v{g(rng_), g(rng_), dim == 3 ? g(rng_) : 0.0};
    return conc::normalized(v);
  }

  conc::HalfSpace half_space(int dim, double max_offset) {
    return conc::HalfSpace(direction(dim), uniform(-max_offset, max_offset));
  }

  /// Random convex polygon around the origin from sorted angles and radii.
  conc::ConvexBody polygon(int vertices) {
    std::vector<double> angles;
    for (int i = 0; i < vertices; ++i) angles.push_back(uniform(0.0, 6.283185307179586));
    std::sort(angles.begin(), angles.end());
    std::vector<conc::Vec> pts;
    for (double a : angles) {
      const double r = uniform(0.5, 1.5);
      pts.push_back({r * std::cos(a), r * std::sin(a), 0.0});
    }
    // make sure the origin is well inside
    pts.push_back({0.6, 0.0, 0.0});
    pts.push_back({-0.6, 0.0, 0.0});
    pts.push_back({0.0, 0.6, 0.0});
    pts.push_back({0.0, -0.6, 0.0});
    return conc::ConvexBody::polytope(2, pts);
  }

  /// Union of a few random discs rasterized on `spec` (n = 2), all inside the disc of
  /// radius 0.9 * spread * R.
  conc::GridSet blobs(const conc::GridSpec& spec, int count, double spread = 1.0) {
    std::vector<unsigned char> cells(spec.size(), 0);
    const double R = spec.half_width * spread;
    for (int k = 0; k < count; ++k) {
      const double cx = uniform(-0.6 * R, 0.6 * R), cy = uniform(-0.6 * R, 0.6 * R);
      const double rad = uniform(0.05 * R, 0.3 * R);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const conc::Vec c = spec.center_of(i);
        if ((c[0] - cx) * (c[0] - cx) + (c[1] - cy) * (c[1] - cy) < rad * rad) cells[i] = 1;
      }
    }
    return conc::GridSet(spec, std::move(cells));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
