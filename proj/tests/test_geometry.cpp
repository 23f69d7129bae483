#include <doctest.h>

#include <cmath>

#include "confext/errors.hpp"
#include "confext/geometry.hpp"
#include "confext/rng.hpp"

using namespace confext;

namespace {
bool close(const Vec& a, const Vec& b, double tol = 1e-14) { return dist(a, b) <= tol; }
}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("T maps reference points") {
  CHECK(close(map_T(ball_interior(Vec::zero(3))).x, Vec{0, 0, 2}));
  Point o = map_T(ball_boundary(Vec::en(3)));
  CHECK(o.region == Region::HalfspaceBoundary);
  CHECK(close(o.x, Vec::zero(3)));
  CHECK(map_T(ball_boundary(-Vec::en(3))).region == Region::Infinity);
}

TEST_CASE("T inverse maps reference points") {
  CHECK(close(map_T_inv(halfspace_interior(Vec{0, 0, 2})).x, Vec::zero(3)));
  CHECK(close(map_T_inv(halfspace_boundary(Vec::zero(3))).x, Vec::en(3)));
  Point m = map_T_inv(infinity_point(3));
  CHECK(m.region == Region::BallBoundary);
  CHECK(close(m.x, -Vec::en(3)));
}

TEST_CASE("T and its inverse are mutually inverse") {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    Vec xi = rng.uniform(0.0, 0.99) * rng.unit_vector(3);
    Point back = map_T_inv(map_T(ball_interior(xi)));
    CHECK(close(back.x, xi, 1e-12));
    CHECK(back.region == Region::BallInterior);
  }
}

TEST_CASE("conformal weight") {
  CHECK(weight_w(halfspace_boundary(Vec::zero(3))) == doctest::Approx(1));
  CHECK(weight_w(halfspace_interior(Vec{0, 0, 2})) == doctest::Approx(0.5));
  CHECK(weight_w(halfspace_interior(Vec{0, 0, 6})) == doctest::Approx(0.25));
}

TEST_CASE("region tags are enforced") {
  CHECK_THROWS_AS(ball_interior(Vec{0, 0, 1}), DomainError);
  CHECK_THROWS_AS(ball_boundary(Vec{0, 0, 0.5}), DomainError);
  CHECK_THROWS_AS(halfspace_interior(Vec{0, 0, 0}), DomainError);
  CHECK_THROWS_AS(map_T_inv(ball_interior(Vec{0, 0, 0.5})), DomainError);
  CHECK_THROWS_AS(weight_w(ball_interior(Vec{0, 0, 0.5})), DomainError);
}

TEST_CASE("inversion") {
  InversionSpec I = make_inversion(Vec::zero(3), 1.0);
  CHECK(close(invert_point(halfspace_interior(Vec{0, 0, 2}), I).x, Vec{0, 0, 0.5}));
  Vec s = Vec{0.6, 0.0, 0.8};
  CHECK(close(invert_point(halfspace_interior(s), I).x, s, 1e-15));
  InversionSpec J = make_inversion(Vec{1, 0, 0}, 2.0);
  CHECK(close(invert_point(halfspace_boundary(Vec{5, 0, 0}), J).x, Vec{2, 0, 0}));
  CHECK_THROWS_AS(make_inversion(Vec{0, 0, 1}, 1.0), DomainError);
  CHECK_THROWS_AS(make_inversion(Vec::zero(3), -1.0), DomainError);
}

TEST_CASE("Kelvin transforms") {
  ParamTriple P = make_params(3, 1, 0);
  Field one = [](const Vec&) { return 1.0; };
  InversionSpec I = make_inversion(Vec::zero(3), 1.0);
  Field k = kelvin_boundary(one, I, P);
  CHECK(k(Vec{0.6, 0.8, 0}) == doctest::Approx(1));
  CHECK(k(Vec{2, 0, 0}) == doctest::Approx(0.25));

  ParamTriple Q = make_params(3, 0, 1);
  Field kv = kelvin_interior(one, I, Q);
  CHECK(kv(Vec{0, 0, 1}) == doctest::Approx(1));
  CHECK(kv(Vec{0, 0, 2}) == doctest::Approx(0.5));

  // involution
  InversionSpec S = make_inversion(Vec{0.3, -0.4, 0}, 1.7);
  Field u = [](const Vec& y) { return std::exp(-norm2(y)) + 0.5; };
  Field kk = kelvin_boundary(kelvin_boundary(u, S, P), S, P);
  Field vv = kelvin_interior(kelvin_interior(u, S, Q), S, Q);
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    Vec y{rng.uniform(-3, 3), rng.uniform(-3, 3), 0};
    Vec x{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(0.1, 3)};
    CHECK(kk(y) == doctest::Approx(u(y)).epsilon(1e-12));
    CHECK(vv(x) == doctest::Approx(u(x)).epsilon(1e-12));
  }
}

TEST_CASE("reflection") {
  Vec e1 = Vec::unit(3, 0);
  CHECK(close(reflect(halfspace_boundary(Vec{1, 0, 0}), e1, 0).x, Vec{-1, 0, 0}));
  Vec on{0.7, 2.0, 0.4};
  CHECK(close(reflect(halfspace_interior(on), e1, 0.7).x, on));
  Rng rng(5);
  Vec e = Vec{0.6, 0.8, 0};
  for (int i = 0; i < 20; ++i) {
    Vec x{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0.1, 2)};
    Point p = halfspace_interior(x);
    CHECK(close(reflect(reflect(p, e, 0.3), e, 0.3).x, x, 1e-14));
  }
  CHECK(close(reflect_first(Vec{1, 2, 3}, 2), Vec{3, 2, 3}));
  CHECK_THROWS_AS(reflect(halfspace_interior(on), Vec{0, 0, 1}, 0), DomainError);
}

TEST_CASE("rotation frame") {
  Vec a = Vec{0.3, -0.5, 0.8};
  a *= 1.0 / norm(a);
  Rotation R = frame_with_last_axis(a);
  CHECK(close(R.apply(Vec::en(3)), a, 1e-14));
  Vec x{0.1, 0.2, 0.3};
  CHECK(close(R.apply_transpose(R.apply(x)), x, 1e-14));
}

}
