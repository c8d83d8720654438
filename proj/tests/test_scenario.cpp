#include <doctest.h>

#include <cmath>

#include "conc/errors.hpp"
#include "conc/measures.hpp"
#include "conc/morphology.hpp"
#include "conc/scalar_gauss.hpp"
#include "conc/scenario.hpp"
#include "oracles.hpp"

using namespace conc;

namespace {

const GridSpec kGauss{2, 6.0, 512};
const GridSpec kEuclid{2, 3.2, 512};

ScenarioFamily member(Setting setting, Family family, double eps, double mass = 0.5) {
  ScenarioFamily f;
  f.setting = setting;
  f.family = family;
  f.eps = eps;
  f.mass = mass;
  return f;
}

// gamma of {x1 < a} union {b < x1 < b2} by quadrature
double slab_mass(double a, double b, double b2) {
  double m = oracle::normal_cdf(a);
  if (b2 > std::max(a, b)) m += oracle::simpson(oracle::density, std::max(a, b), b2, 4000);
  return m;
}

// gamma of {x1 >= u, <x, (cos e, sin e)> >= u}: integrate over x1, inner tail by quadrature
double wedge_complement(double u, double e) {
  const double c = std::cos(e), s = std::sin(e);
  return oracle::simpson(
      [&](double x) {
        const double lo = (u - x * c) / s;
        return oracle::density(x) * (1.0 - oracle::normal_cdf(lo));
      },
      u, u + 14.0, 1400);
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("names round trip") {
  for (Family f : {Family::TiltedHalfspace, Family::ShiftedSlab, Family::CenteredBall, Family::Box,
                   Family::TwoHalfspaceUnion, Family::PerturbedK}) {
    CHECK(family_from_string(to_string(f)) == f);
  }
  CHECK(family_from_string("shifted-slab") == Family::ShiftedSlab);
  CHECK(setting_from_string("gauss") == Setting::Gaussian);
  CHECK_THROWS_AS(family_from_string("torus"), InvalidArgument);
  CHECK_THROWS_AS(setting_from_string("hyperbolic"), InvalidArgument);
  CHECK(member(Setting::Gaussian, Family::ShiftedSlab, 0.05).id() == "gauss:shifted-slab-halfspace:n2:eps0.05");
  CHECK(member(Setting::Gaussian, Family::Box, 0.5, 0.8).id() == "gauss:box:n2:eps0.5:p0.8");
}

TEST_CASE("eps = 0 members reproduce their model sets bit for bit") {
  for (double p : {0.5, 0.8, 0.3}) {
    const GridSet H = rasterize(HalfSpace({1.0, 0.0, 0.0}, phi_inv(p)), kGauss);
    for (Family f : {Family::TiltedHalfspace, Family::ShiftedSlab, Family::TwoHalfspaceUnion}) {
      INFO(to_string(f) << " p = " << p);
      CHECK(generate_family(member(Setting::Gaussian, f, 0.0, p), kGauss).set == H);
    }
  }
  const double rho = std::sqrt(2.0 * std::log(2.0));
  CHECK(generate_family(member(Setting::Gaussian, Family::CenteredBall, 0.0), kGauss).set ==
        rasterize(ConvexBody::ball(2, rho), kGauss));
  const ConvexBody Q = ConvexBody::unit_cube(2);
  CHECK(generate_family(member(Setting::Euclidean, Family::Box, 0.0), kEuclid).set == rasterize(Q, kEuclid));
  CHECK(generate_family(member(Setting::Euclidean, Family::PerturbedK, 0.0), kEuclid).set == rasterize(Q, kEuclid));
  ScenarioFamily big = member(Setting::Euclidean, Family::PerturbedK, 0.0);
  big.volume = 4.0;
  CHECK(generate_family(big, kEuclid).set == rasterize(Q, kEuclid, 2.0));
}

TEST_CASE("centered ball of mass 1/2 has radius sqrt(2 ln 2)") {
  const auto [region, ex] = family_region(member(Setting::Gaussian, Family::CenteredBall, 0.0));
  const double rho = std::sqrt(2.0 * std::log(2.0));
  CHECK(region.contains({rho - 1e-9, 0.0, 0.0}));
  CHECK_FALSE(region.contains({0.0, rho + 1e-9, 0.0}));
  CHECK(ex.enlarged(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ex.alpha.value() == 0.5);
}

TEST_CASE("shifted slab: closed forms against quadrature") {
  for (double eps : {0.02, 0.05, 0.1}) {
    const auto [region, ex] = family_region(member(Setting::Gaussian, Family::ShiftedSlab, eps));
    // recover the slab boundaries from the region along the x1 axis
    double lo = -3.0, hi = 0.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (region.contains({mid, 0.0, 0.0}) ? lo : hi) = mid;
    }
    const double a_cut = lo;
    // the region is (-inf, a] u [b, b2]; step forward into the slab before bisecting its edges
    double inside = 0.0;
    while (!region.contains({inside, 0.0, 0.0})) {
      inside += 1e-3;
      REQUIRE(inside < 3.0);
    }
    lo = inside - 1e-3, hi = inside;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (region.contains({mid, 0.0, 0.0}) ? hi : lo) = mid;
    }
    const double b = hi;
    lo = inside, hi = 5.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (region.contains({mid, 0.0, 0.0}) ? lo : hi) = mid;
    }
    const double b2 = lo;
    INFO("eps = " << eps);
    CHECK(slab_mass(a_cut, b, b2) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(b == doctest::Approx(-a_cut).epsilon(1e-9));
    CHECK(ex.alpha.value() == doctest::Approx(2.0 * eps));
    for (double r : {0.25, 0.5, 1.0}) {
      CHECK(ex.enlarged(r) == doctest::Approx(slab_mass(a_cut + r, b - r, b2 + r)).epsilon(1e-8));
    }
  }
}

TEST_CASE("two-halfspace union: closed forms against quadrature") {
  const double eps = 0.16;
  const auto [region, ex] = family_region(member(Setting::Gaussian, Family::TwoHalfspaceUnion, eps));
  double lo = -2.0, hi = 2.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (region.contains({mid, 50.0, 0.0}) ? lo : hi) = mid;
  }
  const double t = lo;  // far along +x2 the tilted half-plane excludes everything near the cut
  CHECK(1.0 - wedge_complement(t, eps) == doctest::Approx(0.5).epsilon(1e-7));
  for (double r : {0.5, 1.0}) CHECK(ex.enlarged(r) == doctest::Approx(1.0 - wedge_complement(t + r, eps)).epsilon(1e-7));
  CHECK(ex.alpha.value() > 0.0);
  CHECK(ex.alpha.value() < 0.05);
}

TEST_CASE("grid measures of generated members match their metadata") {
  for (Family f : {Family::TiltedHalfspace, Family::ShiftedSlab, Family::TwoHalfspaceUnion, Family::CenteredBall,
                   Family::Box}) {
    for (double eps : {0.05, 0.3}) {
      // at mass 1/2 neither family can absorb eps = 0.3
      if ((f == Family::TwoHalfspaceUnion || f == Family::ShiftedSlab) && eps > 0.2) continue;
      const Scenario sc = generate_family(member(Setting::Gaussian, f, eps), kGauss);
      const MeasureEstimate m = gaussian_measure(sc.set);
      INFO(to_string(f) << " eps = " << eps);
      CHECK(std::abs(m.value - 0.5) <= m.err);
      if (sc.exact.enlarged) {
        const MeasureEstimate g = gaussian_measure(enlarge_ball(sc.set, 0.5));
        CHECK(std::abs(g.value - sc.exact.enlarged(0.5)) <= g.err);
      }
    }
  }
  for (Family f : {Family::Box, Family::CenteredBall, Family::PerturbedK}) {
    const ScenarioFamily fam = member(Setting::Euclidean, f, 0.3);
    const Scenario sc = generate_family(fam, kEuclid);
    const MeasureEstimate v = volume(sc.set);
    INFO(to_string(f));
    CHECK(std::abs(v.value - 1.0) <= v.err);
    const MeasureEstimate big = volume(enlarge_convex(sc.set, fam.reference(), 0.5));
    CHECK(std::abs(big.value - sc.exact.enlarged(0.5)) <= big.err);
  }
}

TEST_CASE("Euclidean box family closed forms") {
  const auto [region, ex] = family_region(member(Setting::Euclidean, Family::Box, 1.0));
  // 2 x 1/2 box against the unit square
  CHECK(region.contains({0.99, 0.24, 0.0}));
  CHECK_FALSE(region.contains({1.01, 0.0, 0.0}));
  CHECK(ex.alpha.value() == doctest::Approx(1.0));
  CHECK(ex.enlarged(0.3) == doctest::Approx(2.3 * 0.8));
  const double overlap = oracle::best_box_overlap(1.0, 0.25, 0.5, 0.5);
  CHECK(ex.alpha.value() == doctest::Approx(2.0 * (1.0 - overlap)));
}

TEST_CASE("perturbed-K is seeded") {
  ScenarioFamily f = member(Setting::Euclidean, Family::PerturbedK, 0.2);
  const GridSet a = generate_family(f, kEuclid).set;
  CHECK(generate_family(f, kEuclid).set == a);
  f.seed = 7;
  CHECK_FALSE(generate_family(f, kEuclid).set == a);
  CHECK(family_region(f).second.measure == doctest::Approx(1.0));
}

TEST_CASE("generation errors") {
  CHECK_THROWS_AS(family_region(member(Setting::Gaussian, Family::ShiftedSlab, 0.6)), GenerationError);
  CHECK_THROWS_AS(family_region(member(Setting::Gaussian, Family::TwoHalfspaceUnion, 2.0)), GenerationError);
  CHECK_THROWS_AS(family_region(member(Setting::Gaussian, Family::PerturbedK, 0.1)), GenerationError);
  CHECK_THROWS_AS(family_region(member(Setting::Euclidean, Family::TiltedHalfspace, 0.1)), GenerationError);
  CHECK_THROWS(family_region(member(Setting::Gaussian, Family::Box, 0.1, 1.0)));
  ScenarioFamily disk = member(Setting::Euclidean, Family::Box, 0.1);
  disk.body = ConvexBody::ball(2, 1.0);
  CHECK_THROWS_AS(family_region(disk), GenerationError);
  ScenarioFamily huge = member(Setting::Euclidean, Family::Box, 0.0);
  huge.volume = 64.0;
  CHECK_THROWS_AS(generate_family(huge, kEuclid), GenerationError);
  CHECK_THROWS_AS(generate_family(member(Setting::Gaussian, Family::Box, 0.1), GridSpec{3, 6.0, 32}), InvalidArgument);
}

TEST_CASE("Gaussian window") {
  CHECK(gaussian_window(2, 512, 0.0, 2.0).half_width == 6.0);
  CHECK(gaussian_window(2, 512, -3.0, 2.0).half_width == 7.0);
}

}
