#include <doctest.h>

#include <cmath>

#include "confext/constants.hpp"
#include "confext/errors.hpp"
#include "confext/sweep.hpp"

using namespace confext;

TEST_SUITE("sweep") {

TEST_CASE("constant trial attains the constants") {
  ParamTriple P = make_params(3, 1, 0);
  ExponentSet E = conformal_exponents(P);
  double q = rayleigh_quotient(TrialFunction::constant(1), P, E.p, E.s, 7);
  CHECK(q == doctest::Approx(sharp_constant_Ce(P, 10).value).epsilon(1e-7));
  ExponentSet S = exponents(P, 4, 1.3);
  double r = rayleigh_quotient(TrialFunction::constant(1), P, S.p, S.s, 7);
  CHECK(r == doctest::Approx(subcritical_constant(P, 4, 1.3, 10).value).epsilon(1e-6));
}

TEST_CASE("quotient is homogeneous") {
  ParamTriple P = make_params(3, 0, 1);
  ExponentSet E = conformal_exponents(P);
  auto f = TrialFunction::perturbed(1, {{1, 0.2}, {3, -0.1}}, Vec{1, 1, 0});
  double q = rayleigh_quotient(f, P, E.p, E.s, 5);
  for (double k : {0.5, 3.0})
    CHECK(std::abs(rayleigh_quotient(f.scaled(k), P, E.p, E.s, 5) - q) <= 1e-12 * q);
  CHECK_THROWS_AS(rayleigh_quotient(TrialFunction::constant(0), P, E.p, E.s, 5), DomainError);
}

TEST_CASE("half-space trials are carried to the sphere") {
  ParamTriple P = make_params(3, 1, 0);
  ExponentSet E = conformal_exponents(P);
  Bubble b = make_bubble(1, 2, Vec{0.5, 0, 0});
  CHECK(rayleigh_quotient(TrialFunction::bubble(b, P), P, E.p, E.s, 6) ==
        rayleigh_quotient(TrialFunction::ball_bubble(b, P), P, E.p, E.s, 6));
}

TEST_CASE("config validation") {
  SweepConfig c;
  CHECK_NOTHROW(validate_sweep_config(c));
  c.amplitudes = {-0.1, 0.1};
  CHECK_THROWS_AS(validate_sweep_config(c), DomainError);
  c = SweepConfig{};
  c.degrees = {0, 1};
  CHECK_THROWS_AS(validate_sweep_config(c), DomainError);
}

TEST_CASE("perturbation sweep") {
  ParamTriple P = make_params(3, 1, 0);
  ExponentSet E = conformal_exponents(P);
  SweepConfig c;
  c.level = 6;
  c.degrees = {1, 2};
  c.amplitudes = {-1.5, -0.2, -0.1, 0.0, 0.1, 0.2};
  auto rows = perturbation_sweep(c, P, E.p, E.s);
  REQUIRE(rows.size() == 12);
  double q0 = rayleigh_quotient(TrialFunction::constant(1), P, E.p, E.s, 6);
  double Ce = sharp_constant_Ce(P, 10).value;
  auto at = [&](int l, double e) {
    for (const auto& r : rows)
      if (r.degree == l && r.amplitude == e) return r;
    FAIL("missing row");
    return SweepRow{};
  };
  for (int l : {1, 2}) {
    CHECK(at(l, 0.0).quotient == q0);
    CHECK(at(l, 0.1).quotient <= q0);
    CHECK(at(l, -0.1).quotient <= q0);
    // odd part is O(eps^3)
    double o1 = at(l, 0.1).quotient - at(l, -0.1).quotient;
    double o2 = at(l, 0.2).quotient - at(l, -0.2).quotient;
    if (std::abs(o2) > 1e-9 * q0) CHECK(o2 / o1 == doctest::Approx(8).epsilon(0.25));
    else CHECK(std::abs(o1) <= 1e-9 * q0);
  }
  // sorted by (degree, amplitude)
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK((rows[i - 1].degree < rows[i].degree ||
           (rows[i - 1].degree == rows[i].degree && rows[i - 1].amplitude < rows[i].amplitude)));
  // 1 - 1.5 t changes sign on the sphere
  CHECK(at(1, -1.5).flagged);
  CHECK(std::isnan(at(1, -1.5).quotient));
  for (const auto& r : rows)
    if (!r.flagged) CHECK(r.quotient <= Ce * (1 + 1e-3));
}

TEST_CASE("subcritical sweep stays below the subcritical constant") {
  ParamTriple P = make_params(3, 1, 0);
  ExponentSet S = exponents(P, 4, 1.3);
  SweepConfig c;
  c.level = 5;
  c.degrees = {1, 3};
  c.amplitudes = {-0.3, 0.0, 0.3};
  double bound = subcritical_constant(P, 4, 1.3, 10).value;
  for (const auto& r : perturbation_sweep(c, P, S.p, S.s)) CHECK(r.quotient <= bound * (1 + 1e-3));
}

TEST_CASE("bubble family is flat") {
  ParamTriple P = make_params(3, 0, 1);
  BubbleScan B = bubble_family_scan(P, {0.5, 1, 2}, {Vec::zero(3), Vec::unit(3, 0)}, 6);
  CHECK(B.rows.size() == 6);
  CHECK(B.spread < 1e-4);
  CHECK(B.max_quotient <= sharp_constant_Ce(P, 10).value * (1 + 1e-3));
}

TEST_CASE("ascent from a constant is a fixed point") {
  ParamTriple P = make_params(3, 1, 0);
  ExponentSet E = conformal_exponents(P);
  AscentResult A = ascend(P, E.p, E.s, TrialFunction::constant(1), 5, 0.1, 5);
  double q0 = rayleigh_quotient(TrialFunction::constant(1), P, E.p, E.s, 5);
  CHECK(A.best_quotient == q0);
  for (double t : A.trace) CHECK(t == q0);
}

TEST_CASE("ascent from a perturbed constant climbs toward C_e") {
  ParamTriple P = make_params(3, 1, 0);
  ExponentSet E = conformal_exponents(P);
  auto start = TrialFunction::perturbed(1, {{1, 0.2}, {2, 0.1}}, Vec::unit(3, 0));
  AscentResult A = ascend(P, E.p, E.s, start, 30, 0.1, 5);
  for (std::size_t i = 1; i < A.trace.size(); ++i) CHECK(A.trace[i] >= A.trace[i - 1]);
  double Ce = sharp_constant_Ce(P, 10).value;
  CHECK(A.best_quotient <= Ce * (1 + 1e-3));
  CHECK(A.best_quotient == doctest::Approx(Ce).epsilon(1e-3));
}

TEST_CASE("ascent over the bubble chart stays on the plateau") {
  ParamTriple P = make_params(3, 1, 0);
  ExponentSet E = conformal_exponents(P);
  auto start = TrialFunction::bubble(make_bubble(1, 0.7, Vec{0.3, 0, 0}), P);
  AscentResult A = ascend(P, E.p, E.s, start, 3, 0.2, 5);
  CHECK(A.best_quotient == doctest::Approx(sharp_constant_Ce(P, 10).value).epsilon(1e-3));
}

}
