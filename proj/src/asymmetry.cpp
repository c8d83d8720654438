#include "conc/asymmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

#include "conc/errors.hpp"
#include "conc/morphology.hpp"
#include "conc/scalar_gauss.hpp"

namespace conc {

namespace {

constexpr int kPlanarDirections = 256;
constexpr double kAngularTol = 1e-4;
constexpr std::size_t kCandidates = 3;

std::vector<Vec> icosphere(int levels) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec> v{{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                     {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (Vec& p : v) p = normalized(p);
  std::vector<std::array<int, 3>> faces{{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
                                        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
                                        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
  for (int level = 0; level < levels; ++level) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      if (auto it = mid.find(key); it != mid.end()) return it->second;
      v.push_back(normalized(v[static_cast<std::size_t>(a)] + v[static_cast<std::size_t>(b)]));
      const int id = static_cast<int>(v.size()) - 1;
      mid.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    for (const auto& f : faces) {
      const int a = midpoint(f[0], f[1]);
      const int b = midpoint(f[1], f[2]);
      const int c = midpoint(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    faces = std::move(next);
  }
  return v;
}

// Indices of the k smallest values, ties to the lower index.
std::vector<std::size_t> best_indices(const std::vector<double>& values, std::size_t k) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  idx.resize(std::min(k, idx.size()));
  return idx;
}

// Orthonormal pair spanning the tangent plane at w.
std::pair<Vec, Vec> tangent_basis(const Vec& w) {
  const Vec helper = std::abs(w[0]) < 0.9 ? Vec{1.0, 0.0, 0.0} : Vec{0.0, 1.0, 0.0};
  const Vec u = normalized(cross(w, helper));
  return {u, cross(w, u)};
}

}  // namespace

GaussOffset gauss_offset(const GridSet& E) {
  GaussOffset out;
  out.mass = gaussian_measure(E);
  const double p = out.mass.value;
  // a few ulps of slack so that value + err landing next to 1 still counts as touching it
  constexpr double slack = 8.0 * std::numeric_limits<double>::epsilon();
  if (!(out.mass.lower() > slack && out.mass.upper() < 1.0 - slack)) {
    throw DegenerateMass("Gaussian mass is 0 or 1 within its error bound");
  }
  out.s = phi_inv(p);
  out.s_lo = phi_inv(out.mass.lower());
  out.s_hi = phi_inv(out.mass.upper());
  return out;
}

std::vector<Vec> sphere_directions(int dim) {
  if (dim == 2) {
    std::vector<Vec> out;
    for (int j = 0; j < kPlanarDirections; ++j) out.push_back(planar_direction(2.0 * std::numbers::pi * j / kPlanarDirections));
    return out;
  }
  if (dim == 3) return icosphere(3);
  throw InvalidArgument("sphere_directions: dimension must be 2 or 3");
}

AsymmetryResult alpha_gauss(const GridSet& E) {
  const GaussOffset g = gauss_offset(E);
  const HalfSpaceSweeper sweep(E);
  const int dim = E.spec().dim;
  AsymmetryResult res;
  auto f = [&](const Vec& w) {
    ++res.evaluations;
    return std::max(0.0, sweep.sym_diff(HalfSpace(w, g.s)));
  };

  const std::vector<Vec> coarse = sphere_directions(dim);
  std::vector<double> values(coarse.size());
  for (std::size_t i = 0; i < coarse.size(); ++i) values[i] = f(coarse[i]);

  const auto starts = best_indices(values, kCandidates);
  Vec best_w = coarse[starts.front()];
  double best = values[starts.front()];

  if (dim == 2) {
    const double spacing = 2.0 * std::numbers::pi / kPlanarDirections;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::size_t start : starts) {
      const double center = 2.0 * std::numbers::pi * static_cast<double>(start) / kPlanarDirections;
      double a = center - spacing;
      double b = center + spacing;
      double x1 = b - inv_phi * (b - a);
      double x2 = a + inv_phi * (b - a);
      double f1 = f(planar_direction(x1));
      double f2 = f(planar_direction(x2));
      while (b - a > kAngularTol) {
        if (f1 <= f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - inv_phi * (b - a);
          f1 = f(planar_direction(x1));
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + inv_phi * (b - a);
          f2 = f(planar_direction(x2));
        }
      }
      res.final_step = b - a;
      const double x = f1 <= f2 ? x1 : x2;
      const double fx = std::min(f1, f2);
      if (fx < best) {
        best = fx;
        best_w = planar_direction(x);
      }
    }
  } else {
    // compass search on the sphere, starting at a quarter of the icosphere edge angle
    for (std::size_t start : starts) {
      Vec w = coarse[start];
      double fw = values[start];
      double step = 0.04;
      while (step >= kAngularTol) {
        const auto [u, v] = tangent_basis(w);
        bool moved = false;
        for (const Vec& d : {u, -1.0 * u, v, -1.0 * v}) {
          const Vec cand = normalized(std::cos(step) * w + std::sin(step) * d);
          const double fc = f(cand);
          if (fc < fw) {
            w = cand;
            fw = fc;
            moved = true;
            break;
          }
        }
        if (!moved) step *= 0.5;
      }
      res.final_step = step;
      if (fw < best) {
        best = fw;
        best_w = w;
      }
    }
  }

  res.value = best;
  res.minimizer = best_w;
  const HalfSpace H(best_w, g.s);
  res.err = g.mass.err + sweep.halfspace_error(H) + cube_tail(dim, E.spec().half_width);
  return res;
}

MeasureEstimate beta_strong(const GridSet& E) {
  const GaussOffset g = gauss_offset(E);
  const Barycenter b = gauss_barycenter(E);
  const double nb = norm(b.b);
  const double target = gauss_density(g.s);
  const double value = nb > 0.0 ? std::abs(nb - target) : target;
  const double spread = std::abs(gauss_density(g.s_hi) - gauss_density(g.s_lo));
  // the density is maximal at 0, which may lie inside the s bracket
  const double dmax = (g.s_lo <= 0.0 && g.s_hi >= 0.0) ? kInvSqrt2Pi : std::max(gauss_density(g.s_lo), gauss_density(g.s_hi));
  return {value, b.err + std::max(spread, dmax - target)};
}

namespace {

struct TranslationObjective {
  const GridSet& E;
  const ConvexBody& K;
  double s;
  double h;
  std::size_t set_cells;
  std::size_t evaluations = 0;

  // index range of lattice cells whose centers may lie in sK - x along axis k
  std::pair<int, int> range(const Vec& x, int k) const {
    const double R = E.spec().half_width;
    const double lo = -s * K.support(-1.0 * axis_direction(k)) - x[static_cast<std::size_t>(k)];
    const double hi = s * K.support(axis_direction(k)) - x[static_cast<std::size_t>(k)];
    return {static_cast<int>(std::floor((lo + R) / h - 0.5)) - 1, static_cast<int>(std::ceil((hi + R) / h - 0.5)) + 1};
  }

  template <typename Visit>
  void scan(const Vec& x, Visit&& visit) const {
    const GridSpec& spec = E.spec();
    const int dim = spec.dim;
    const int m = spec.cells;
    const auto r0 = range(x, 0);
    const auto r1 = range(x, 1);
    const auto r2 = dim == 3 ? range(x, 2) : std::pair<int, int>{0, 0};
    for (int i2 = r2.first; i2 <= r2.second; ++i2) {
      for (int i1 = r1.first; i1 <= r1.second; ++i1) {
        for (int i0 = r0.first; i0 <= r0.second; ++i0) {
          const Vec c{spec.center(i0), spec.center(i1), dim == 3 ? spec.center(i2) : 0.0};
          const bool in_k = K.gauge(c + x) < s;
          const bool in_window = i0 >= 0 && i0 < m && i1 >= 0 && i1 < m && (dim == 2 || (i2 >= 0 && i2 < m));
          const bool in_e = in_window && E.at(i0, i1, dim == 3 ? i2 : 0);
          visit(i0, i1, i2, in_k, in_e);
        }
      }
    }
  }

  double operator()(const Vec& x) {
    ++evaluations;
    std::size_t kc = 0;
    std::size_t overlap = 0;
    scan(x, [&](int, int, int, bool in_k, bool in_e) {
      kc += in_k;
      overlap += in_k && in_e;
    });
    const double cells = static_cast<double>(set_cells + kc) - 2.0 * static_cast<double>(overlap);
    return cells * std::pow(h, E.spec().dim);
  }

  // boundary_error of the raster of sK - x, computed on the scan box
  double raster_error(const Vec& x) const {
    const int dim = E.spec().dim;
    const auto r0 = range(x, 0);
    const auto r1 = range(x, 1);
    const auto r2 = dim == 3 ? range(x, 2) : std::pair<int, int>{0, 0};
    const int n0 = r0.second - r0.first + 1;
    const int n1 = r1.second - r1.first + 1;
    const int n2 = r2.second - r2.first + 1;
    std::vector<std::uint8_t> box(static_cast<std::size_t>(n0) * n1 * n2);
    scan(x, [&](int i0, int i1, int i2, bool in_k, bool) {
      box[static_cast<std::size_t>((i0 - r0.first) + n0 * ((i1 - r1.first) + n1 * (i2 - r2.first)))] = in_k;
    });
    std::size_t faces = 0;
    auto at = [&](int a, int b, int c) { return box[static_cast<std::size_t>(a + n0 * (b + n1 * c))]; };
    for (int c = 0; c < n2; ++c) {
      for (int b = 0; b < n1; ++b) {
        for (int a = 0; a < n0; ++a) {
          if (a + 1 < n0 && at(a, b, c) != at(a + 1, b, c)) ++faces;
          if (b + 1 < n1 && at(a, b, c) != at(a, b + 1, c)) ++faces;
          if (c + 1 < n2 && at(a, b, c) != at(a, b, c + 1)) ++faces;
        }
      }
    }
    return 0.5 * static_cast<double>(faces) * std::pow(h, dim);
  }
};

}  // namespace

AsymmetryResult alpha_convex(const GridSet& E, const ConvexBody& K) {
  const GridSpec& spec = E.spec();
  if (K.dim() != spec.dim) throw InvalidArgument("alpha_convex: body and grid dimensions differ");
  const MeasureEstimate vol = volume(E);
  const std::size_t count = E.count();
  if (count == 0) throw InvalidArgument("alpha_convex: set is empty");
  const int dim = spec.dim;
  const double h = spec.spacing();
  const double s = std::pow(vol.value / K.volume(), 1.0 / dim);

  Vec centroid{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < E.cells().size(); ++i) {
    if (E.at(i)) centroid = centroid + spec.center_of(i);
  }
  centroid = (1.0 / static_cast<double>(count)) * centroid;
  Vec k_center{0.0, 0.0, 0.0};
  if (const auto* p = std::get_if<ConvexBody::Polytope>(&K.shape())) {
    for (const Vec& v : p->vertices) k_center = k_center + v;
    k_center = (s / static_cast<double>(p->vertices.size())) * k_center;
  }
  const Vec x0 = k_center - centroid;

  TranslationObjective f{E, K, s, h, count};
  const int points = dim == 2 ? 9 : 5;
  const double bound = 2.0 * spec.half_width * std::sqrt(static_cast<double>(dim)) / 4.0;
  const double stride = std::max(1.0, std::round(2.0 * bound / (points - 1) / h)) * h;
  const int half = (points - 1) / 2;

  AsymmetryResult res;
  res.scan_bound = stride * half;
  Vec best_x = x0;
  double best = f(x0);
  for (int j2 = (dim == 3 ? -half : 0); j2 <= (dim == 3 ? half : 0); ++j2) {
    for (int j1 = -half; j1 <= half; ++j1) {
      for (int j0 = -half; j0 <= half; ++j0) {
        const Vec x = x0 + Vec{j0 * stride, j1 * stride, j2 * stride};
        const double v = f(x);
        if (v < best) {
          best = v;
          best_x = x;
        }
      }
    }
  }

  double step = 0.5 * stride;
  while (step >= h / 8.0) {
    bool moved = false;
    for (int k = 0; k < dim && !moved; ++k) {
      for (double sign : {1.0, -1.0}) {
        Vec x = best_x;
        x[static_cast<std::size_t>(k)] += sign * step;
        if (std::abs(x[static_cast<std::size_t>(k)] - x0[static_cast<std::size_t>(k)]) > res.scan_bound) continue;
        const double v = f(x);
        if (v < best) {
          best = v;
          best_x = x;
          moved = true;
          break;
        }
      }
    }
    if (!moved) step *= 0.5;
  }

  for (int k = 0; k < dim; ++k) {
    const auto a = static_cast<std::size_t>(k);
    res.hit_bound = res.hit_bound || std::abs(best_x[a] - x0[a]) >= res.scan_bound - step;
  }
  res.value = best;
  res.minimizer = best_x;
  res.final_step = step;
  res.evaluations = f.evaluations;
  res.err = vol.err + f.raster_error(best_x);
  return res;
}

double alpha_pair(const GridSet& E, const ConvexBody& F) { return alpha_convex(E, F).value; }

double equivalent_offset(const GridSet& E, double rho) { return equivalent_offset(DistanceField(E), rho); }

double equivalent_offset(const DistanceField& field, double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("equivalent_offset: rho must be positive");
  const GaussOffset g = gauss_offset(field.source());
  const MeasureEstimate grown = gaussian_measure(field.enlarged(rho));
  if (!(grown.value < 1.0)) throw DegenerateMass("equivalent_offset: enlarged set has full mass");
  return phi_inv(grown.value) - g.s;
}

}  // namespace conc
