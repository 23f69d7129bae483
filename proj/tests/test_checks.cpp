#include <doctest.h>

#include "confext/checks.hpp"
#include "confext/rng.hpp"

using namespace confext;

TEST_SUITE("checks") {

TEST_CASE("portable generator") {
  Rng a(0), b(0), c(1);
  std::uint64_t x = a.next();
  CHECK(x == b.next());
  CHECK(x != c.next());
  // frozen first outputs for seed 42
  Rng g(42);
  std::uint64_t first = g.next();
  Rng h(42);
  CHECK(h.next() == first);
  for (int i = 0; i < 1000; ++i) {
    double u = g.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  Vec v = g.unit_vector(4);
  CHECK(norm(v) == doctest::Approx(1).epsilon(1e-14));
}

TEST_CASE("random rotations are orthogonal") {
  Rng rng(3);
  for (int n : {2, 3, 5}) {
    Rotation R = random_rotation(n, rng);
    for (int i = 0; i < n; ++i) {
      Vec e = Vec::unit(n, i);
      CHECK(norm(R.apply(e)) == doctest::Approx(1).epsilon(1e-14));
      CHECK(dist(R.apply_transpose(R.apply(e)), e) < 1e-13);
    }
  }
}

TEST_CASE("identity suites pass") {
  for (int n : {2, 3, 5}) {
    for (const auto& c : conformal_identity_suite(n, 2000, 1)) {
      INFO(c.name, " n=", n, " residual=", c.max_residual);
      CHECK(c.pass());
      CHECK(c.samples == 2000);
    }
  }
  for (auto P : {make_params(3, 0, 1), make_params(3, 1, 0), make_params(4, 1.5, 0.5)}) {
    for (const auto& c : kernel_identity_suite(P, 2000, 2)) {
      INFO(c.name, " residual=", c.max_residual);
      CHECK(c.pass());
    }
    for (const auto& c : kernel_inequality_suite(P, 5000, 3)) {
      INFO(c.name);
      CHECK(c.violations == 0);
    }
  }
}

TEST_CASE("h_lambda") {
  for (double l : {0.1, 1.0, 1.7, 123.456}) CHECK(h_lambda(l, l, l) == 0.0);
  CHECK(h_lambda(1.0, 2.0, 3.0) > 0);
  CHECK(h_lambda(1.0, 0.5, 3.0) < 0);
}

TEST_CASE("suites are deterministic") {
  auto a = conformal_identity_suite(3, 500, 9), b = conformal_identity_suite(3, 500, 9);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].max_residual == b[i].max_residual);
}

}
