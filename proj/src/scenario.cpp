#include "conc/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "conc/errors.hpp"
#include "conc/quadrature.hpp"
#include "conc/scalar_gauss.hpp"

namespace conc {

namespace {

constexpr std::array<std::pair<Family, const char*>, 6> kFamilyNames{{
    {Family::TiltedHalfspace, "tilted-halfspace"},
    {Family::ShiftedSlab, "shifted-slab-halfspace"},
    {Family::CenteredBall, "centered-ball"},
    {Family::Box, "box"},
    {Family::TwoHalfspaceUnion, "two-halfspace-union"},
    {Family::PerturbedK, "perturbed-K"},
}};

// Root of a monotone function on [a, b] to full double precision.
template <typename F>
double solve(F f, double a, double b, const char* what) {
  const double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0.0) == (fb < 0.0)) throw GenerationError(std::string(what) + ": no solution in the search bracket");
  std::uintmax_t iters = 200;
  auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (lo + hi);
}

double shrink(double eps, int dim) { return std::pow(1.0 + eps, -1.0 / (dim - 1)); }

// Semi-axes (1 + eps, (1 + eps)^{-1/(n-1)}, ...) times `scale`.
Vec stretched(double scale, double eps, int dim) {
  Vec a{scale * (1.0 + eps), scale * shrink(eps, dim), 0.0};
  if (dim == 3) a[2] = a[1];
  return a;
}

Region ellipsoid(const Vec& a, int dim) {
  return Region::bounded([a, dim](const Vec& x) {
    double q = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double t = x[static_cast<std::size_t>(k)] / a[static_cast<std::size_t>(k)];
      q += t * t;
    }
    return q < 1.0;
  });
}

double unit_ball_volume(int dim) { return dim == 2 ? std::numbers::pi : 4.0 / 3.0 * std::numbers::pi; }

std::vector<Vec> body_vertices(const ConvexBody& K) {
  if (const auto* b = std::get_if<ConvexBody::Box>(&K.shape())) {
    std::vector<Vec> v;
    const int corners = 1 << K.dim();
    for (int c = 0; c < corners; ++c) {
      Vec p{0.0, 0.0, 0.0};
      for (int k = 0; k < K.dim(); ++k) {
        const auto a = static_cast<std::size_t>(k);
        p[a] = (c >> k) & 1 ? b->half_extents[a] : -b->half_extents[a];
      }
      v.push_back(p);
    }
    return v;
  }
  if (const auto* p = std::get_if<ConvexBody::Polytope>(&K.shape())) return p->vertices;
  throw GenerationError("perturbed-K: the reference body must be a box or a polytope");
}

using Mat = std::array<Vec, 3>;  // rows

Vec mul(const Mat& A, const Vec& x) { return {dot(A[0], x), dot(A[1], x), dot(A[2], x)}; }

// Seeded rotation: a planar angle in n = 2, a unit quaternion in n = 3.
Mat rotation(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  if (dim == 2) {
    const double t = std::uniform_real_distribution<double>(0.0, std::numbers::pi)(rng);
    return Mat{Vec{std::cos(t), -std::sin(t), 0.0}, Vec{std::sin(t), std::cos(t), 0.0}, Vec{0.0, 0.0, 1.0}};
  }
  std::normal_distribution<double> g;
  std::array<double, 4> q{g(rng), g(rng), g(rng), g(rng)};
  const double len = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  for (double& c : q) c /= len;
  const auto [w, x, y, z] = q;
  return Mat{Vec{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
             Vec{2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
             Vec{2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}};
}

// |E + rK| for polytopes E, K as the hull of pairwise vertex sums.
double minkowski_volume(const std::vector<Vec>& e, const std::vector<Vec>& k, double r, int dim) {
  std::vector<Vec> sums;
  sums.reserve(e.size() * k.size());
  for (const Vec& p : e) {
    for (const Vec& q : k) sums.push_back(p + r * q);
  }
  return ConvexBody::polytope(dim, std::move(sums)).volume();
}

std::pair<Region, ExactData> gaussian_member(const ScenarioFamily& f) {
  const Probability p(f.mass);
  const double s = phi_inv(p);
  const int n = f.dim;
  const Vec e1 = axis_direction(0);
  ExactData ex;
  ex.s = s;
  ex.measure = p.value();

  auto halfspace = [&](const HalfSpace& H) {
    ex.alpha = 0.0;
    ex.enlarged = [s](double r) { return phi(s + r); };
    ex.equality_at_zero = true;
    return std::pair{Region::half_space(H), ex};
  };

  switch (f.family) {
    case Family::TiltedHalfspace:
      return halfspace(HalfSpace(planar_direction(f.eps), s));

    case Family::ShiftedSlab: {
      if (f.eps == 0.0) return halfspace(HalfSpace(e1, s));
      // move Gaussian mass eps from just below s to the mirrored slab just above it
      if (!(f.eps < p.value())) throw GenerationError("shifted-slab: eps must be below the mass");
      const double a = phi_inv(p.value() - f.eps);
      const double b = 2.0 * s - a;
      if (!(phi(b) + f.eps < 1.0)) throw GenerationError("shifted-slab: slab mass does not fit above the boundary");
      const double b2 = phi_inv(phi(b) + f.eps);
      const Region region = Region::half_space(HalfSpace(e1, a)) |
                            (Region::half_space(HalfSpace(e1, b2)) & Region::half_space(HalfSpace(-1.0 * e1, -b)));
      // for s >= 0 the slab and the gap are both closer to the boundary than any tilt can reach
      if (s >= 0.0) ex.alpha = 2.0 * f.eps;
      ex.enlarged = [a, b, b2](double r) {
        return phi(a + r) + phi_interval(std::max(b - r, a + r), std::max(b2 + r, a + r));
      };
      ex.equality_at_zero = true;
      return {region, ex};
    }

    case Family::TwoHalfspaceUnion: {
      if (f.eps == 0.0) return halfspace(HalfSpace(e1, s));
      if (!(f.eps > 0.0 && f.eps < 0.5 * std::numbers::pi)) {
        throw GenerationError("two-halfspace-union: eps must lie in (0, pi/2)");
      }
      const Vec w = planar_direction(f.eps);
      auto union_mass = [e1, w](double t) {
        return 1.0 - planar_mass({HalfSpace(-1.0 * e1, -t), HalfSpace(-1.0 * w, -t)});
      };
      const double t = solve([&](double x) { return union_mass(x) - p.value(); }, s - 10.0, s + 2.0, "two-halfspace-union");
      // gamma(U xor H) = 2 gamma(H \ U) when both have mass p; symmetric about the bisector
      auto objective = [&](double theta) {
        return 2.0 * planar_mass({HalfSpace(planar_direction(theta), s), HalfSpace(-1.0 * e1, -t), HalfSpace(-1.0 * w, -t)});
      };
      const auto best = boost::math::tools::brent_find_minima(objective, 0.5 * f.eps - 0.5, 0.5 * f.eps + 0.5, 40);
      ex.alpha = best.second;
      ex.enlarged = [union_mass, t](double r) { return union_mass(t + r); };
      ex.equality_at_zero = true;
      return {Region::half_space(HalfSpace(e1, t)) | Region::half_space(HalfSpace(w, t)), ex};
    }

    case Family::CenteredBall: {
      if (f.eps < 0.0) throw GenerationError("centered-ball: eps must be nonnegative");
      if (p.value() == 0.5) ex.alpha = 0.5;  // centrally symmetric with s = 0: every half-space splits it evenly
      if (f.eps == 0.0) {
        const double rho = solve([&](double x) { return ball_mass(n, x) - p.value(); }, 1e-6, 12.0, "centered-ball");
        ex.enlarged = [n, rho](double r) { return ball_mass(n, rho + r); };
        return {Region::body(ConvexBody::ball(n, rho)), ex};
      }
      if (n != 2) throw GenerationError("centered-ball: perturbed ellipsoids are only generated in n = 2");
      const double rho = solve([&](double x) { return ellipse_mass(x * (1.0 + f.eps), x / (1.0 + f.eps)) - p.value(); },
                               1e-6, 12.0, "centered-ball");
      return {ellipsoid(stretched(rho, f.eps, n), n), ex};
    }

    case Family::Box: {
      if (f.eps < 0.0) throw GenerationError("box: eps must be nonnegative");
      if (p.value() == 0.5) ex.alpha = 0.5;
      auto mass = [&](double L) {
        const Vec a = stretched(L, f.eps, n);
        double m = 1.0;
        for (int k = 0; k < n; ++k) {
          const double ak = a[static_cast<std::size_t>(k)];
          m *= phi_interval(-ak, ak);
        }
        return m;
      };
      const double L = solve([&](double x) { return mass(x) - p.value(); }, 1e-6, 12.0, "box");
      return {Region::body(ConvexBody::box(n, stretched(L, f.eps, n))), ex};
    }

    case Family::PerturbedK:
      throw GenerationError("perturbed-K is a Euclidean family");
  }
  throw GenerationError("unknown family");
}

std::pair<Region, ExactData> euclidean_member(const ScenarioFamily& f) {
  const ConvexBody K = f.reference();
  const int n = f.dim;
  if (K.dim() != n) throw GenerationError("reference body and scenario dimensions differ");
  if (f.eps < 0.0) throw GenerationError("eps must be nonnegative");
  const double V = f.target_volume();
  const double lambda = std::pow(V / K.volume(), 1.0 / n);
  ExactData ex;
  ex.measure = V;

  switch (f.family) {
    case Family::Box: {
      const auto* kb = std::get_if<ConvexBody::Box>(&K.shape());
      if (!kb) throw GenerationError("box family needs a box reference body");
      Vec e{0.0, 0.0, 0.0};
      const Vec st = stretched(lambda, f.eps, n);
      for (int k = 0; k < n; ++k) {
        const auto a = static_cast<std::size_t>(k);
        e[a] = st[a] * kb->half_extents[a];
      }
      const Vec kh = kb->half_extents;
      double overlap = 1.0;
      for (int k = 0; k < n; ++k) {
        const auto a = static_cast<std::size_t>(k);
        overlap *= 2.0 * std::min(e[a], lambda * kh[a]);
      }
      ex.alpha = 2.0 * (V - overlap);
      ex.enlarged = [e, kh, n](double r) {
        double v = 1.0;
        for (int k = 0; k < n; ++k) v *= 2.0 * (e[static_cast<std::size_t>(k)] + r * kh[static_cast<std::size_t>(k)]);
        return v;
      };
      ex.equality_at_zero = true;
      if (f.eps == 0.0) return {Region::body(K, lambda), ex};
      return {Region::body(ConvexBody::box(n, e)), ex};
    }

    case Family::CenteredBall: {
      const double rho = std::pow(V / unit_ball_volume(n), 1.0 / n);
      const Vec a = stretched(rho, f.eps, n);
      if (const auto* kb = std::get_if<ConvexBody::Box>(&K.shape())) {
        const Vec k = kb->half_extents;
        if (n == 2) {
          ex.enlarged = [V, a, k, KV = K.volume()](double r) {
            return V + 4.0 * r * (k[0] * a[1] + k[1] * a[0]) + r * r * KV;
          };
        } else if (f.eps == 0.0) {
          // rounded box: box(r k) plus its faces, edges and corners swept by the ball
          ex.enlarged = [rho, k](double r) {
            const double c0 = r * k[0], c1 = r * k[1], c2 = r * k[2];
            const double faces = 8.0 * (c0 * c1 + c0 * c2 + c1 * c2);
            const double edges = 8.0 * (c0 + c1 + c2);
            return 8.0 * c0 * c1 * c2 + rho * faces + 0.25 * std::numbers::pi * rho * rho * edges +
                   4.0 / 3.0 * std::numbers::pi * rho * rho * rho;
          };
        }
      }
      if (f.eps == 0.0) return {Region::body(ConvexBody::ball(n, rho)), ex};
      return {ellipsoid(a, n), ex};
    }

    case Family::PerturbedK: {
      const std::vector<Vec> kv = body_vertices(K);
      ex.equality_at_zero = true;
      if (f.eps == 0.0) {
        ex.alpha = 0.0;
        ex.enlarged = [V, lambda, n](double r) { return V * std::pow((lambda + r) / lambda, n); };
        return {Region::body(K, lambda), ex};
      }
      const Mat R = rotation(n, f.seed);
      const Vec st = stretched(lambda, f.eps, n);
      std::vector<Vec> ev;
      for (const Vec& v : kv) {
        // R diag(st) R^T v
        const Vec rt{R[0][0] * v[0] + R[1][0] * v[1] + R[2][0] * v[2],
                     R[0][1] * v[0] + R[1][1] * v[1] + R[2][1] * v[2],
                     R[0][2] * v[0] + R[1][2] * v[1] + R[2][2] * v[2]};
        ev.push_back(mul(R, Vec{st[0] * rt[0], st[1] * rt[1], n == 3 ? st[2] * rt[2] : 0.0}));
      }
      const ConvexBody E = ConvexBody::polytope(n, ev);
      ex.measure = E.volume();
      ex.enlarged = [ev, kv, n](double r) { return minkowski_volume(ev, kv, r, n); };
      return {Region::body(E), ex};
    }

    case Family::TiltedHalfspace:
    case Family::ShiftedSlab:
    case Family::TwoHalfspaceUnion:
      throw GenerationError(to_string(f.family) + " is a Gaussian family");
  }
  throw GenerationError("unknown family");
}

}  // namespace

std::string to_string(Family f) {
  for (const auto& [fam, name] : kFamilyNames) {
    if (fam == f) return name;
  }
  return "unknown";
}

std::string to_string(Setting s) { return s == Setting::Gaussian ? "gauss" : "euclid"; }

Family family_from_string(const std::string& name) {
  for (const auto& [fam, n] : kFamilyNames) {
    if (name == n) return fam;
  }
  if (name == "shifted-slab") return Family::ShiftedSlab;
  throw InvalidArgument("unknown scenario family '" + name + "'");
}

Setting setting_from_string(const std::string& name) {
  if (name == "gauss" || name == "gaussian") return Setting::Gaussian;
  if (name == "euclid" || name == "euclidean") return Setting::Euclidean;
  throw InvalidArgument("unknown setting '" + name + "' (expected gauss or euclid)");
}

std::string ScenarioFamily::id() const {
  std::string out = fmt::format("{}:{}:n{}:eps{:g}", to_string(setting), to_string(family), dim, eps);
  if (setting == Setting::Gaussian && mass != 0.5) out += fmt::format(":p{:g}", mass);
  if (setting == Setting::Euclidean && volume > 0.0) out += fmt::format(":v{:g}", volume);
  return out;
}

std::pair<Region, ExactData> family_region(const ScenarioFamily& family) {
  if (family.dim != 2 && family.dim != 3) throw InvalidArgument("scenario dimension must be 2 or 3");
  if (!std::isfinite(family.eps)) throw GenerationError("eps must be finite");
  return family.setting == Setting::Gaussian ? gaussian_member(family) : euclidean_member(family);
}

Scenario generate_family(const ScenarioFamily& family, const GridSpec& spec) {
  if (family.dim != spec.dim) throw InvalidArgument("scenario and grid dimensions differ");
  auto [region, exact] = family_region(family);
  GridSet set = rasterize(region, spec);
  if (set.is_empty()) throw GenerationError(family.id() + ": rasterized set is empty");
  if (region.outside().kind() == OutsidePolicy::Kind::Empty) {
    // a bounded member must not touch the outer cell layer
    const int m = spec.cells;
    for (std::size_t i = 0; i < set.cells().size(); ++i) {
      if (!set.at(i)) continue;
      std::size_t idx = i;
      for (int k = 0; k < spec.dim; ++k, idx /= static_cast<std::size_t>(m)) {
        const auto c = static_cast<int>(idx % static_cast<std::size_t>(m));
        if (c == 0 || c == m - 1) throw GenerationError(family.id() + ": set does not fit in the grid window");
      }
    }
  }
  return Scenario{family, std::move(region), std::move(set), std::move(exact)};
}

GridSpec gaussian_window(int dim, int cells, double s, double r_max) {
  return GridSpec{dim, std::max(6.0, std::abs(s) + r_max + 2.0), cells};
}

}  // namespace conc
