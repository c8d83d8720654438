#include "conc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "conc/errors.hpp"
#include "conc/scalar_gauss.hpp"

namespace conc {

namespace {

constexpr double kCut = 12.0;  // density beyond is below 1e-31

template <typename F>
double integrate(F&& f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-14);
}

// x1-interval (lo, hi) admitted by the half-spaces at height x2; empty if lo >= hi
std::pair<double, double> slice(const std::vector<HalfSpace>& hs, double x2) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const HalfSpace& h : hs) {
    const double c = h.direction()[0];
    const double s = h.direction()[1];
    const double rhs = h.offset() - s * x2;
    if (c > 0.0) {
      hi = std::min(hi, rhs / c);
    } else if (c < 0.0) {
      lo = std::max(lo, rhs / c);
    } else if (!(0.0 < rhs)) {
      return {0.0, 0.0};
    }
  }
  return {lo, hi};
}

}  // namespace

double planar_mass(const std::vector<HalfSpace>& hs) {
  for (const HalfSpace& h : hs) {
    if (h.direction()[2] != 0.0) throw InvalidArgument("planar_mass: directions must lie in the (x1, x2) plane");
  }
  std::vector<double> cuts{-kCut, kCut};
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const Vec& a = hs[i].direction();
    if (a[0] == 0.0 && a[1] != 0.0) cuts.push_back(hs[i].offset() / a[1]);
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      const Vec& b = hs[j].direction();
      if (a[0] == 0.0 || b[0] == 0.0) continue;
      // (t_a - s_a x2)/c_a = (t_b - s_b x2)/c_b
      const double den = a[1] / a[0] - b[1] / b[0];
      if (den == 0.0) continue;
      cuts.push_back((hs[i].offset() / a[0] - hs[j].offset() / b[0]) / den);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  auto f = [&](double x2) {
    const auto [lo, hi] = slice(hs, x2);
    return lo < hi ? gauss_density(x2) * phi_interval(std::max(lo, -40.0), std::min(hi, 40.0)) : 0.0;
  };
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = std::clamp(cuts[k], -kCut, kCut);
    const double b = std::clamp(cuts[k + 1], -kCut, kCut);
    total += integrate(f, a, b);
  }
  return total;
}

double ellipse_mass(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("ellipse_mass: semi-axes must be positive");
  // x2 = b sin(t) removes the square-root endpoint behaviour
  auto f = [&](double t) {
    const double c = std::cos(t);
    const double half = a * c;
    return gauss_density(b * std::sin(t)) * phi_interval(-half, half) * b * c;
  };
  return integrate(f, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
}

double ball_mass(int dim, double radius) {
  if (!(radius >= 0.0)) throw InvalidArgument("ball_mass: radius must be nonnegative");
  if (dim == 2) return -std::expm1(-0.5 * radius * radius);
  if (dim == 3) return phi_interval(-radius, radius) - 2.0 * radius * gauss_density(radius);
  throw InvalidArgument("ball_mass: dimension must be 2 or 3");
}

}  // namespace conc
