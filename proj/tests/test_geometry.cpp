#include <doctest.h>

#include <cmath>

#include "conc/errors.hpp"
#include "conc/geometry.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace conc;

TEST_SUITE("geometry") {

TEST_CASE("ball gauge and support") {
  const ConvexBody B = ConvexBody::ball(2, 1.0);
  CHECK(B.gauge({0.3, -0.4, 0.0}) == doctest::Approx(0.5));
  CHECK(B.gauge({0.0, 0.0, 0.0}) == 0.0);
  CHECK(B.support({0.6, 0.8, 0.0}) == doctest::Approx(1.0));
  CHECK(B.volume() == doctest::Approx(oracle::kPi));
  CHECK(ConvexBody::ball(3, 2.0).volume() == doctest::Approx(4.0 / 3.0 * oracle::kPi * 8.0));
}

TEST_CASE("box gauge and support") {
  const ConvexBody K = ConvexBody::box(2, {1.0, 0.5, 0.0});
  CHECK(K.gauge({0.5, 0.5, 0.0}) == doctest::Approx(1.0));
  CHECK(K.support({0.0, 1.0, 0.0}) == doctest::Approx(0.5));
  CHECK(K.volume() == doctest::Approx(2.0));
  CHECK(K.circumradius() == doctest::Approx(std::sqrt(1.25)));
  // support against dense sampling of K
  double best = 0.0;
  for (int i = 0; i <= 200; ++i) {
    for (int j = 0; j <= 200; ++j) {
      const double x = -1.0 + 2.0 * i / 200.0, y = -0.5 + j / 200.0;
      best = std::max(best, 0.6 * x - 0.8 * y);
    }
  }
  CHECK(K.support({0.6, -0.8, 0.0}) == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("box gauge by bisection on membership") {
  const ConvexBody K = ConvexBody::box(2, {1.0, 0.5, 0.0});
  const Vec x{0.7, -0.2, 0.0};
  double lo = 0.0, hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const bool inside = std::abs(x[0]) < mid * 1.0 && std::abs(x[1]) < mid * 0.5;
    (inside ? hi : lo) = mid;
  }
  CHECK(K.gauge(x) == doctest::Approx(hi).epsilon(1e-12));
}

TEST_CASE("distance to scaled bodies") {
  const ConvexBody K = ConvexBody::box(2, {1.0, 0.5, 0.0});
  CHECK(K.distance({0.5, 0.2, 0.0}, 1.0) == 0.0);
  CHECK(K.distance({3.0, 0.0, 0.0}, 1.0) == doctest::Approx(2.0));
  CHECK(K.distance({3.0, 2.0, 0.0}, 2.0) == doctest::Approx(std::hypot(1.0, 1.0)));
  CHECK(ConvexBody::ball(2, 1.0).distance({3.0, 4.0, 0.0}, 2.0) == doctest::Approx(3.0));
}

TEST_CASE("polytope matches the box it spans") {
  const ConvexBody P = ConvexBody::polytope(2, {{1, 0.5, 0}, {-1, 0.5, 0}, {-1, -0.5, 0}, {1, -0.5, 0}});
  const ConvexBody B = ConvexBody::box(2, {1.0, 0.5, 0.0});
  gen::Gen g(21);
  for (int k = 0; k < 200; ++k) {
    const Vec x{g.uniform(-3, 3), g.uniform(-3, 3), 0.0};
    INFO("case " << k);
    CHECK(P.gauge(x) == doctest::Approx(B.gauge(x)).epsilon(1e-12));
    CHECK(P.support(x) == doctest::Approx(B.support(x)).epsilon(1e-12));
    CHECK(P.distance(x, 1.3) == doctest::Approx(B.distance(x, 1.3)).epsilon(1e-9));
  }
  CHECK(P.volume() == doctest::Approx(2.0));
}

TEST_CASE("3-D polytopes") {
  const double a = 0.8;
  const ConvexBody oct = ConvexBody::polytope(3, {{a, 0, 0}, {-a, 0, 0}, {0, a, 0}, {0, -a, 0}, {0, 0, a}, {0, 0, -a}});
  CHECK(oct.volume() == doctest::Approx(4.0 / 3.0 * a * a * a));
  CHECK(oct.gauge({0.2, 0.2, 0.2}) == doctest::Approx(0.6 / a));
  CHECK(oct.support({1.0, 0.0, 0.0}) == doctest::Approx(a));
  CHECK(oct.distance({1.0, 1.0, 1.0}, 1.0) == doctest::Approx((3.0 - a) / std::sqrt(3.0)));
  std::vector<Vec> cube;
  for (int i = 0; i < 8; ++i) cube.push_back({i & 1 ? 0.5 : -0.5, i & 2 ? 0.25 : -0.25, i & 4 ? 1.0 : -1.0});
  const ConvexBody P = ConvexBody::polytope(3, cube);
  CHECK(P.volume() == doctest::Approx(1.0));
  CHECK(P.gauge({0.25, 0.0, 0.0}) == doctest::Approx(0.5));
  CHECK(P.distance({0.0, 0.0, 3.0}, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("property: random polygons against hull oracles") {
  gen::Gen g(22);
  for (int k = 0; k < 25; ++k) {
    const ConvexBody K = g.polygon(g.integer(3, 9));
    const auto& poly = std::get<ConvexBody::Polytope>(K.shape());
    const auto h = [&](double ux, double uy) { return oracle::support_of_points(poly.vertices, ux, uy); };
    INFO("case " << k);
    for (int t = 0; t < 10; ++t) {
      const Vec x{g.uniform(-2, 2), g.uniform(-2, 2), 0.0};
      CHECK(K.support(x) == doctest::Approx(h(x[0], x[1])).epsilon(1e-12));
      CHECK(K.gauge(x) == doctest::Approx(oracle::gauge_by_bisection(poly.vertices, x[0], x[1])).epsilon(1e-12));
      CHECK(K.gauge(x) >= oracle::gauge_by_duality(h, x[0], x[1]) * (1.0 - 1e-12));
      // duality inequality gauge(x) * support(x/|x|) >= |x|
      const double n = norm(x);
      CHECK(K.gauge(x) * K.support((1.0 / n) * x) >= n * (1.0 - 1e-12));
    }
    const auto gauge = [&](double x, double y) { return K.gauge({x, y, 0.0}); };
    CHECK(K.volume() == doctest::Approx(oracle::area_from_gauge(gauge)).epsilon(1e-6));
  }
}

TEST_CASE("scaling") {
  const ConvexBody K = ConvexBody::box(2, {1.0, 0.5, 0.0}).scaled(2.0);
  CHECK(K.volume() == doctest::Approx(8.0));
  CHECK(K.gauge({1.0, 0.0, 0.0}) == doctest::Approx(0.5));
}

TEST_CASE("half-space validation") {
  CHECK_THROWS_AS(HalfSpace({1.0, 1.0, 0.0}, 0.0), InvalidArgument);
  CHECK_THROWS_AS(HalfSpace({1.0, 0.0, 0.0}, std::nan("")), InvalidArgument);
  const HalfSpace h(planar_direction(0.3), 0.5);
  CHECK(h.contains({0.0, 0.0, 0.0}));
  CHECK_FALSE(h.contains(planar_direction(0.3)));
  CHECK(h.shifted(1.0).offset() == doctest::Approx(1.5));
}

TEST_CASE("invalid bodies") {
  CHECK_THROWS_AS(ConvexBody::polytope(2, {{1, 0, 0}, {2, 0, 0}, {3, 0, 0}}), InvalidArgument);
  CHECK_THROWS_AS(ConvexBody::polytope(2, {{1, 0, 0}, {2, 0, 0}, {2, 1, 0}}), InvalidArgument);
  CHECK_THROWS(ConvexBody::ball(2, -1.0));
  CHECK_THROWS(ConvexBody::box(2, {1.0, 0.0, 0.0}));
}

}
