#include <doctest.h>

#include <cmath>

#include "conc/errors.hpp"
#include "conc/measures.hpp"
#include "conc/morphology.hpp"
#include "conc/quadrature.hpp"
#include "conc/scalar_gauss.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace conc;

namespace {

const GridSpec kGauss{2, 6.0, 512};
const GridSpec kEuclid{2, 3.2, 512};

bool within(const MeasureEstimate& m, double exact) { return std::abs(m.value - exact) <= m.err; }

}  // namespace

TEST_SUITE("measures") {

TEST_CASE("half-plane mass") {
  for (double s : {-1.0, 0.0, 0.5, 2.0}) {
    const MeasureEstimate m = gaussian_measure(rasterize(HalfSpace({1.0, 0.0, 0.0}, s), kGauss));
    INFO("s = " << s);
    CHECK(within(m, oracle::normal_cdf(s)));
    CHECK(m.err <= 5e-3);
  }
}

TEST_CASE("property: tilted half-planes within err") {
  gen::Gen g(51);
  const GridSpec spec{2, 6.0, 256};
  for (int k = 0; k < 30; ++k) {
    const HalfSpace H = g.half_space(2, 2.5);
    const MeasureEstimate m = gaussian_measure(rasterize(H, spec));
    INFO("case " << k << " offset " << H.offset());
    CHECK(within(m, oracle::normal_cdf(H.offset())));
    CHECK(m.value >= 0.0);
    CHECK(m.value <= 1.0);
  }
}

TEST_CASE("full window and centered ball") {
  const MeasureEstimate full = gaussian_measure(GridSet::full(kGauss));
  const double inside = std::pow(1.0 - 2.0 * oracle::normal_tail(6.0), 2);
  // err is zero here; the remaining gap is summation roundoff over m^2 cells
  CHECK(std::abs(full.value - inside) <= full.err + 1e-13);
  const GridSet B = rasterize(ConvexBody::ball(2, std::sqrt(2.0 * std::log(2.0))), kGauss);
  CHECK(within(gaussian_measure(B), 0.5));
  const GridSet B3 = rasterize(ConvexBody::ball(3, 1.5), GridSpec{3, 6.0, 128});
  const double chi3 = oracle::simpson([](double t) { return std::sqrt(2.0 / oracle::kPi) * t * t * std::exp(-0.5 * t * t); }, 0.0, 1.5);
  CHECK(within(gaussian_measure(B3), chi3));
}

TEST_CASE("volumes") {
  CHECK(volume(rasterize(ConvexBody::unit_cube(2), kEuclid)).value == doctest::Approx(1.0).epsilon(1e-12));
  const MeasureEstimate disk = volume(rasterize(ConvexBody::ball(2, 1.0), kEuclid));
  CHECK(within(disk, oracle::kPi));
  CHECK_THROWS_AS(volume(rasterize(HalfSpace({1.0, 0.0, 0.0}, 0.0), kEuclid)), DomainError);
}

TEST_CASE("symmetric differences") {
  const GridSet B = rasterize(ConvexBody::ball(2, std::sqrt(2.0 * std::log(2.0))), kGauss);
  CHECK(sym_diff_measure(B, B, Weight::Gauss).value == 0.0);
  const GridSet H = rasterize(HalfSpace(planar_direction(0.4), 0.0), kGauss);
  CHECK(within(sym_diff_measure(B, H, Weight::Gauss), 0.5));
  const GridSet H0 = rasterize(HalfSpace({1.0, 0.0, 0.0}, 0.0), kGauss);
  const GridSet He = rasterize(HalfSpace({1.0, 0.0, 0.0}, 0.1), kGauss);
  CHECK(within(sym_diff_measure(H0, He, Weight::Gauss), oracle::normal_cdf(0.1) - 0.5));
}

TEST_CASE("property: additivity and range") {
  gen::Gen g(52);
  const GridSpec spec{2, 4.0, 64};
  for (int k = 0; k < 30; ++k) {
    const GridSet A = g.blobs(spec, 2);
    const GridSet B = g.blobs(spec, 2) - A;
    INFO("case " << k);
    CHECK(cell_sum(A | B, Weight::Gauss) == doctest::Approx(cell_sum(A, Weight::Gauss) + cell_sum(B, Weight::Gauss)).epsilon(1e-14));
    CHECK(cell_sum(A | B, Weight::Lebesgue) == doctest::Approx(cell_sum(A, Weight::Lebesgue) + cell_sum(B, Weight::Lebesgue)).epsilon(1e-14));
    const double v = gaussian_measure(A | B).value;
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("half-plane perimeter") {
  // the quotient is low by about s h_q / 2; at s = 1 that needs the finer grid to stay within 5%
  const GridSpec fine{2, 6.0, 1024};
  for (double s : {0.0, 1.0}) {
    const PerimeterEstimate p = gaussian_perimeter(rasterize(HalfSpace({1.0, 0.0, 0.0}, s), s == 0.0 ? kGauss : fine));
    const double exact = std::exp(-0.5 * s * s);
    INFO("s = " << s);
    CHECK(std::abs(p.estimate.value / exact - 1.0) <= 0.05);
    CHECK(std::abs(p.estimate.value - exact) <= p.estimate.err + p.quotient_bias);
  }
}

TEST_CASE("perimeter quotient converges to first order") {
  // frozen constant: |P(hq) - P(hq/2)| <= 0.6 hq for s in [-1, 1]
  const double h = kGauss.spacing();
  for (double s : {-1.0, 0.0, 0.5, 1.0}) {
    const GridSet H = rasterize(HalfSpace({1.0, 0.0, 0.0}, s), kGauss);
    const double hq = 16.0 * h;
    const double a = gaussian_perimeter(H, hq).estimate.value;
    const double b = gaussian_perimeter(H, hq / 2.0).estimate.value;
    INFO("s = " << s << " diff " << std::abs(a - b));
    CHECK(std::abs(a - b) <= 0.6 * hq);
  }
}

TEST_CASE("perimeter of the mass-1/2 disc") {
  const double rho = std::sqrt(2.0 * std::log(2.0));
  const PerimeterEstimate p = gaussian_perimeter(rasterize(ConvexBody::ball(2, rho), kGauss));
  const double exact = std::sqrt(2.0 * oracle::kPi) * rho * std::exp(-0.5 * rho * rho);
  CHECK(p.estimate.value >= 1.0);
  CHECK(p.estimate.value == doctest::Approx(exact).epsilon(0.05));
}

TEST_CASE("anisotropic perimeter") {
  const ConvexBody Q = ConvexBody::unit_cube(2);
  for (double s : {1.0, 1.5}) {
    const double p = anisotropic_perimeter(rasterize(Q, kEuclid, s), Q).estimate.value;
    INFO("s = " << s);
    CHECK(p == doctest::Approx(2.0 * s * Q.volume()).epsilon(0.05));
  }
  const ConvexBody D = ConvexBody::ball(2, 1.0);
  const PerimeterEstimate pd = anisotropic_perimeter(rasterize(D, kEuclid), D);
  // curved K: the half-cell rounding of the enlargement pushes the quotient up, so only
  // sandwich it between the continuous quotient and the disk of radius 1 + h_q + h/2
  {
    const double h = kEuclid.spacing(), hq = 4.0 * h;
    CHECK(pd.estimate.value >= oracle::kPi * (2.0 + hq) * 0.99);
    CHECK(pd.estimate.value <= oracle::kPi * (std::pow(1.0 + hq + 0.5 * h, 2) - std::pow(1.0 - h, 2)) / hq);
  }
  // with K the unit ball this is the classical outer Minkowski content
  const GridSet E = rasterize(ConvexBody::box(2, {1.0, 0.25, 0.0}), kEuclid);
  const double hq = 4.0 * kEuclid.spacing();
  const double classical = (volume(enlarge_ball(E, hq)).value - volume(E).value) / hq;
  CHECK(anisotropic_perimeter(E, D, hq).estimate.value == doctest::Approx(classical).epsilon(1e-12));
  CHECK_THROWS_AS(anisotropic_perimeter(E, Q, kEuclid.spacing()), InvalidArgument);
  CHECK(quotient_step(kEuclid, 0.0) == doctest::Approx(4.0 * kEuclid.spacing()));
}

TEST_CASE("barycenters") {
  for (double s : {0.0, 0.7}) {
    const Vec w = planar_direction(0.3);
    const Barycenter b = gauss_barycenter(rasterize(HalfSpace(w, s), kGauss));
    const double scale = -oracle::density(s);
    INFO("s = " << s);
    CHECK(std::abs(b.b[0] - scale * w[0]) <= b.err);
    CHECK(std::abs(b.b[1] - scale * w[1]) <= b.err);
  }
  const Barycenter h = gauss_barycenter(rasterize(HalfSpace({1.0, 0.0, 0.0}, 0.0), kGauss));
  CHECK(std::abs(h.b[0] + 0.3989422804014327) <= 5e-3);
  CHECK(std::abs(h.b[1]) <= 5e-3);
  const Barycenter full = gauss_barycenter(GridSet::full(kGauss));
  CHECK(norm(full.b) <= full.err + 1e-15);
}

TEST_CASE("property: half-space sweeper agrees with rasterization") {
  gen::Gen g(53);
  for (int k = 0; k < 20; ++k) {
    const int dim = k % 2 ? 3 : 2;
    const GridSpec spec{dim, 3.0, dim == 3 ? 24 : 64};
    GridSet F = rasterize(ConvexBody::ball(dim, g.uniform(0.5, 2.5)), spec);
    const HalfSpaceSweeper sw(F);
    for (int t = 0; t < 5; ++t) {
      const HalfSpace H = g.half_space(dim, 2.0);
      const GridSet R = rasterize(H, spec);
      INFO("case " << k << "." << t);
      CHECK(sw.inside(H) == doctest::Approx(cell_sum(F & R, Weight::Gauss)).epsilon(1e-12));
      CHECK(sw.sym_diff(H) == doctest::Approx(cell_sum(F ^ R, Weight::Gauss)).epsilon(1e-12));
      CHECK(sw.halfspace_mass(H) == doctest::Approx(cell_sum(R, Weight::Gauss)).epsilon(1e-12));
      CHECK(sw.halfspace_error(H) == doctest::Approx(boundary_error(R, Weight::Gauss)).epsilon(1e-12));
    }
  }
}

}

TEST_SUITE("quadrature") {

TEST_CASE("planar masses") {
  CHECK(planar_mass({HalfSpace({1.0, 0.0, 0.0}, 0.7)}) == doctest::Approx(oracle::normal_cdf(0.7)).epsilon(1e-12));
  // wedge between two lines through the origin
  const double theta = 0.9;
  const double wedge = planar_mass({HalfSpace(planar_direction(0.0), 0.0), HalfSpace(planar_direction(oracle::kPi - theta), 0.0)});
  CHECK(wedge == doctest::Approx(theta / (2.0 * oracle::kPi)).epsilon(1e-10));
  // triangle around the origin, against polar integration
  const std::vector<double> angles{0.2, 2.3, 4.1}, offsets{0.5, 1.1, 0.8};
  std::vector<HalfSpace> hs;
  for (std::size_t i = 0; i < 3; ++i) hs.emplace_back(planar_direction(angles[i]), offsets[i]);
  CHECK(planar_mass(hs) == doctest::Approx(oracle::polar_mass(oracle::polygon_radial(angles, offsets))).epsilon(1e-6));
}

TEST_CASE("ellipse and ball masses") {
  CHECK(ellipse_mass(1.2, 1.2) == doctest::Approx(1.0 - std::exp(-0.72)).epsilon(1e-12));
  const double a = 1.5, b = 0.6;
  const auto rho = [a, b](double t) {
    return 1.0 / std::sqrt(std::cos(t) * std::cos(t) / (a * a) + std::sin(t) * std::sin(t) / (b * b));
  };
  CHECK(ellipse_mass(a, b) == doctest::Approx(oracle::polar_mass(rho)).epsilon(1e-8));
  CHECK(ball_mass(2, 1.1) == doctest::Approx(1.0 - std::exp(-0.605)).epsilon(1e-12));
  const double chi3 = oracle::simpson([](double t) { return std::sqrt(2.0 / oracle::kPi) * t * t * std::exp(-0.5 * t * t); }, 0.0, 2.0);
  CHECK(ball_mass(3, 2.0) == doctest::Approx(chi3).epsilon(1e-10));
}

}
