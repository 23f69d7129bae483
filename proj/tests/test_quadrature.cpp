#include <doctest.h>

#include <cmath>

#include "confext/errors.hpp"
#include "confext/geometry.hpp"
#include "confext/quadrature.hpp"

using namespace confext;

TEST_SUITE("quadrature") {

TEST_CASE("sphere rule measures") {
  auto s3 = sphere_rule(3, 8);
  auto s2 = sphere_rule(2, 8);
  CHECK(std::abs(integrate(*s3, [](const Vec&) { return 1.0; }).value - 4 * kPi) < 1e-10);
  CHECK(std::abs(integrate(*s2, [](const Vec&) { return 1.0; }).value - 2 * kPi) < 1e-12);
  CHECK(std::abs(integrate(*s3, [](const Vec& z) { return z.last(); }).value) < 1e-12);
  for (std::size_t i = 0; i < s3->size(); ++i) {
    CHECK(s3->weights[i] > 0);
    CHECK(std::abs(norm(s3->nodes[i].x) - 1) < 1e-12);
  }
  for (int n = 2; n <= 5; ++n)
    CHECK(integrate(*sphere_rule(n, 6), [](const Vec&) { return 1.0; }).value ==
          doctest::Approx(sphere_area(n)).epsilon(1e-10));
}

TEST_CASE("ball rule measures") {
  auto one = [](const Vec&) { return 1.0; };
  CHECK(std::abs(integrate(*ball_rule(3, 8, 0.0), one).value - 4 * kPi / 3) < 1e-9);
  CHECK(std::abs(integrate(*ball_rule(2, 8, 0.0), one).value - kPi) < 1e-10);
  auto b = ball_rule(3, 6, 0.5);
  for (std::size_t i = 0; i < b->size(); ++i) {
    CHECK(b->weights[i] > 0);
    CHECK(norm(b->nodes[i].x) < 1.0);
  }
}

TEST_CASE("radial singularity at the sphere") {
  // 2 pi int_0^1 r (1-r^2)^{-1/4} dr = 2 pi (2/3)
  auto r = ball_rule(2, 8, 0.5);
  double v = integrate(*r, [](const Node& x) {
               double g = x.gap;  // 1 - |x|
               return std::pow(g * (2.0 - g), -0.25);
             }).value;
  // the rule stops at gaps of 1e-12, which drops ~2e-9 of the mass
  CHECK(v == doctest::Approx(2 * kPi * 2.0 / 3.0).epsilon(2e-8));
}

TEST_CASE("weakly singular sphere integral") {
  // int_{S^2} |zeta - e_n|^{alpha-3} = pi 2^alpha/(alpha-1), alpha = 1.5
  const double a = 1.5;
  CapRule cap = cap_rule(3, 1e-12, 8);  // dyadic panels down to ~pi 2^-42
  double v = 0.0;
  for (std::size_t i = 0; i < cap.polar.size(); ++i) {
    double ring = 0.0;
    for (std::size_t j = 0; j < cap.ring->size(); ++j) ring += cap.ring->weights[j];
    double chord = 2.0 * std::sin(0.5 * cap.polar.lo[i]);
    v += cap.polar.w[i] * ring * std::pow(chord, a - 3);  // weights carry sin(phi)
  }
  CHECK(v == doctest::Approx(kPi * std::pow(2.0, a) / (a - 1)).epsilon(1e-7));
}

TEST_CASE("pole at a node is reported") {
  auto s = sphere_rule(3, 4);
  Vec pole = s->nodes[3].x;
  try {
    integrate(*s, [&](const Vec& z) { return 1.0 / dist(z, pole); });
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(dist(e.node(), pole) == 0.0);
  }
}

TEST_CASE("half-space pullback rules") {
  auto b = halfspace_rule_via_pullback(3, 8, false);
  double v = integrate(*b, [](const Vec& y) { return std::pow(w_raw(y), 4); }).value;
  CHECK(v == doctest::Approx(4 * kPi).epsilon(1e-10));
  double u = integrate(*b, [](const Vec& y) { return std::pow(1 + norm2(y), -3); }).value;
  CHECK(u == doctest::Approx(kPi / 2).epsilon(1e-9));
  for (std::size_t i = 0; i < b->size(); ++i) CHECK(b->nodes[i].x.last() == 0.0);

  // interior: int x_n^2 (1+|x|^2)^{-4} over R^3_+. The pulled-back integrand is
  // only finitely smooth at the image of infinity, so convergence is algebraic.
  auto f = [](const Vec& x) { return x.last() * x.last() * std::pow(1 + norm2(x), -4); };
  double i10 = integrate(*halfspace_rule_via_pullback(3, 10, true), f).value;
  double i12 = integrate(*halfspace_rule_via_pullback(3, 12, true), f).value;
  // polar reduction: 2 pi int_0^inf r^4 (1+r^2)^-4 dr int_0^{pi/2} cos^2 sin = 2pi (pi/32)(1/3)
  const double exact = 2 * kPi * (kPi / 32) / 3;
  CHECK(std::abs(i12 - exact) < std::abs(i10 - exact));
  CHECK(i12 == doctest::Approx(exact).epsilon(1e-5));
}

TEST_CASE("pullback integrates off-center gaussians") {
  for (int k = 0; k < 4; ++k) {
    Vec c{0.4 * k - 0.5, 0.2 * k, 0};
    auto g = [&](const Vec& y) { return std::exp(-dist2(y, c)); };
    double v12 = integrate(*halfspace_rule_via_pullback(3, 12, false), g).value;
    CHECK(v12 == doctest::Approx(kPi).epsilon(1e-7));
  }
}

TEST_CASE("error estimates shrink with level") {
  auto f = [](const Vec& z) { return std::exp(z[0] + 0.5 * z[2]); };
  double prev = 1e300;
  for (int L = 4; L <= 8; ++L) {
    double d = std::abs(integrate(*sphere_rule(3, L), f).value -
                        integrate(*sphere_rule(3, L + 2), f).value);
    CHECK(d <= prev);
    prev = d;
  }
  CHECK(integrate(*sphere_rule(3, 6), f).est_error >= 0.0);
}

TEST_CASE("rules are deterministic and cached") {
  auto a = sphere_rule(3, 7);
  auto b = sphere_rule(3, 7);
  CHECK(a.get() == b.get());
  QuadratureRule c = build_sphere_rule(3, 7);
  REQUIRE(c.size() == a->size());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c.weights[i] == a->weights[i]);
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
  Rule1D r = tanh_sinh(tanh_sinh_step(8), 0.0, 1.0, 1e-300);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::pow(r.lo[i], -0.5);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-10));
}

}
