// Acceptance suite: one PASS/FAIL line per criterion, diagnostics indented below.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "confext/checks.hpp"
#include "confext/constants.hpp"
#include "confext/errors.hpp"
#include "confext/extremals.hpp"
#include "confext/operators.hpp"
#include "confext/operators_impl.hpp"
#include "confext/quadrature.hpp"
#include "confext/rng.hpp"
#include "confext/sweep.hpp"
#include "oracles.hpp"

using namespace confext;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, std::string note) {
    pass = pass && ok;
    notes.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", note));
  }
  void note(std::string s) { notes.push_back("     " + std::move(s)); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sig3(double x) { return fmt::format("{:.2e}", x); }

Vec boundary_point(int n, std::initializer_list<double> head) {
  Vec v(n);
  int i = 0;
  for (double h : head) v[i++] = h;
  return v;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto suite = conformal_identity_suite(3, 10000, 42, 1e-10);
  double dt = seconds_since(t0);
  for (const auto& c : suite)
    o.require(c.pass(), fmt::format("{:<30} samples={} max_rel={:.2e} violations={}", c.name,
                                    c.samples, c.max_residual, c.violations));
  o.require(dt < 5.0, fmt::format("runtime {:.2f} s < 5 s", dt));
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  for (auto P : {make_params(3, 0, 1), make_params(3, 1, 0), make_params(3, 0.5, 0.25)}) {
    for (const auto& c : kernel_inequality_suite(P, 100000, 7)) {
      o.require(c.violations == 0, fmt::format("{} {:<28} samples={} violations={}", to_string(P),
                                               c.name, c.samples, c.violations));
    }
  }
  double dt = seconds_since(t0);
  bool exact = true;
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    double l = rng.log_uniform(1e-3, 1e3);
    exact = exact && h_lambda(l, l, l) == 0.0;
  }
  o.require(exact, "h_lambda(lambda, lambda) == 0 exactly for 1000 random lambda");
  o.require(dt < 5.0, fmt::format("runtime {:.2f} s < 5 s", dt));
  return o;
}

Outcome criterion3() {
  Outcome o;
  constexpr int kLevel = 10;
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(2024);
  for (int k = 0; k < 5; ++k) {
    ParamTriple P = k % 2 == 0 ? make_params(3, 0, 1) : make_params(3, 1, 0);
    Vec axis = rng.unit_vector(3);
    Vec bvec = 0.5 * rng.unit_vector(3);
    auto f = TrialFunction::perturbed(1.0, {{1, rng.uniform(-0.3, 0.3)}, {2, rng.uniform(-0.3, 0.3)}}, axis);
    InteriorField g = [bvec](const Node& x) { return std::exp(dot(bvec, x.x)); };
    double extend_side = pairing(f, g, P, kLevel);
    auto sphere = sphere_rule(3, kLevel);
    double restrict_side = integrate(*sphere, [&](const Vec& z) {
                             return f(z) * detail::restrict_ball_impl(g, P, z, kLevel);
                           }).value;
    double rel = std::abs(extend_side - restrict_side) / std::abs(extend_side);
    o.require(rel < 1e-8, fmt::format("pair {} {}: <E f, g> = {:.15g}, <f, R g> = {:.15g}, rel = {:.2e}",
                                      k, to_string(P), extend_side, restrict_side, rel));
  }
  double dt = seconds_since(t0);
  o.require(dt < 30.0, fmt::format("runtime {:.1f} s < 30 s", dt));
  return o;
}

// int_B Psi^s over gaps in [lo, hi], integrated in log(gap) so that bands far
// below 1e-15 stay resolved.
double psi_band(const ParamTriple& P, double s, double lo, double hi, int level) {
  Rule1D r = gauss_legendre(24, std::log(lo), std::log(hi));
  double sum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double g = std::exp(r.x[i]);
    sum += r.w[i] * g * std::pow(1.0 - g, P.n - 1) * std::pow(psi_at_gap(P, g, level), s);
  }
  return sphere_area(P.n) * sum;
}

// Psi ~ K gap^(-1/s) for an inadmissible triple, so the integrand of int_B Psi^s
// is ~ |S^(n-1)| K^s / gap and each four decades of cutoff add |S^(n-1)| K^s log(1e4).
void divergence_diagnostic(Outcome& o, const ParamTriple& P, double s) {
  constexpr int kLevel = 10;
  std::vector<double> edges{1e-4, 1e-8, 1e-12, 1e-16, 1e-20};
  std::string bands;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    bands += fmt::format(" {:.2f}", psi_band(P, s, edges[i + 1], edges[i], kLevel));
  const double g = 1e-30;
  double K = psi_at_gap(P, g, kLevel) * std::pow(g, 1.0 / s);
  double predicted = sphere_area(P.n) * std::pow(K, s) * std::log(1e4);
  o.note(fmt::format("  int Psi^{} over gap bands [1e-8,1e-4], [1e-12,1e-8], [1e-16,1e-12], [1e-20,1e-16]:{}", s, bands));
  o.note(fmt::format("  leading-term prediction per band |S^{}| K^{} log(1e4) = {:.2f}: constant increments, log divergence",
                     P.n - 1, s, predicted));
}

Outcome criterion4() {
  Outcome o;
  struct Case {
    int n;
    double a, b;
  };
  for (Case c : {Case{3, 0, 1}, Case{3, 1, 0}, Case{2, 0.5, 0.25}}) {
    auto t0 = std::chrono::steady_clock::now();
    ParamTriple P = make_params(c.n, c.a, c.b);
    std::string tag = fmt::format("({}, {}, {})", c.n, c.a, c.b);
    if (!P.valid()) {
      double lhs = (c.n - c.a - 2 * c.b) / (2.0 * c.n) + (c.n - c.a) / (2.0 * (c.n - 1));
      o.require(false, fmt::format("{} is inadmissible: failed '{}' (left side = {})", tag,
                                   P.failed.front(), lhs));
      o.note("  C_e is infinite for this triple; the radial integral diverges at the sphere:");
      ParamTriple raw{c.n, c.a, c.b, {}};
      divergence_diagnostic(o, raw, 2.0 * c.n / (c.n - c.a - 2 * c.b));
      continue;
    }
    ExponentSet E = conformal_exponents(P);
    ConstantResult Ce = sharp_constant_Ce(P, 10);
    double rq = rayleigh_quotient(TrialFunction::constant(1), P, E.p, E.s, 10);
    double rel = std::abs(rq - Ce.value) / Ce.value;
    o.require(rel < 1e-4, fmt::format("{} C_e = {:.10f} (two-level delta {:.1e}), Rayleigh quotient = {:.10f}, rel = {:.1e}",
                                      tag, Ce.value, Ce.two_level_delta, rq, rel));
    double mc = oracle::mc_ball_constant(c.a, c.b, 1.0 / E.p, E.s, 7);
    o.require(sig3(mc) == sig3(Ce.value),
              fmt::format("{} Monte-Carlo (1e7 samples) = {:.6f}: {} vs {}", tag, mc, sig3(mc), sig3(Ce.value)));
    double dt = seconds_since(t0);
    o.require(dt < 120.0, fmt::format("{} runtime {:.1f} s < 120 s", tag, dt));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (auto P : {make_params(3, 0, 1), make_params(3, 1, 0), make_params(3, 0.5, 0.25)}) {
    ExponentSet E = conformal_exponents(P);
    double a = sharp_constant_Ce(P, 10).value;
    double b = subcritical_constant(P, E.p, E.t, 10).value;
    double rel = std::abs(a - b) / a;
    o.require(rel < 1e-10, fmt::format("{} conformal pair: subcritical = {:.15g}, C_e = {:.15g}, rel = {:.1e}",
                                       to_string(P), b, a, rel));
  }
  ParamTriple P = make_params(3, 1, 0);
  ConstantResult S = subcritical_constant(P, 4, 1.3, 10);
  double mc = oracle::mc_ball_constant(1, 0, 0.25, conj(1.3), 7);
  o.require(sig3(mc) == sig3(S.value), fmt::format("(3,1,0) p=4 t=1.3: {:.10f} vs Monte-Carlo {:.6f} ({} vs {})",
                                                   S.value, mc, sig3(S.value), sig3(mc)));
  return o;
}

// Half-space EL ratios computed from the operator kernels directly; used for
// triples the library refuses.
RatioStats raw_el_ratios(const ParamTriple& P, const std::vector<Point>& ys, int level) {
  const int n = P.n;
  const double kappa = (n + P.alpha + 2 * P.beta) / (n - P.alpha - 2 * P.beta);
  Bubble b = make_bubble(1, 1, Vec(n));
  TrialFunction F = TrialFunction::ball_bubble(b, P);
  std::vector<double> r;
  for (const auto& y : ys) {
    Vec zeta = T_inv_raw(y.x);
    zeta *= 1.0 / norm(zeta);
    auto g = [&](const Node& xi) {
      return std::pow(detail::extend_ball_impl(F, P, xi.x, xi.gap, std::min(level, 5)), kappa);
    };
    double rhs = std::pow(w_raw(y.x), n - P.alpha) * detail::restrict_ball_impl(g, P, zeta, level);
    double lhs = std::pow(bubble_value(b, P, y.x), (n - P.alpha) / (n + P.alpha - 2));
    r.push_back(rhs / lhs);
  }
  return ratio_stats(r);
}

Outcome criterion6() {
  Outcome o;
  struct Case {
    int n;
    double a, b;
  };
  for (Case c : {Case{3, 0, 1}, Case{3, 1, 0}, Case{2, 0.5, 0.25}}) {
    auto t0 = std::chrono::steady_clock::now();
    ParamTriple P = make_params(c.n, c.a, c.b);
    std::string tag = fmt::format("({}, {}, {})", c.n, c.a, c.b);
    auto ys = boundary_samples(c.n, 20, 0);
    if (!P.valid()) {
      o.require(false, fmt::format("{} is inadmissible ('{}' fails); the EL right side diverges", tag,
                                   P.failed.front()));
      ParamTriple raw{c.n, c.a, c.b, {}};
      for (int L : {6, 8, 10}) {
        RatioStats s = raw_el_ratios(raw, ys, L);
        o.note(fmt::format("  kernel-level evaluation, level {:>2}: ratio_mean = {:.6f}, ratio_cv = {:.2e}", L,
                           s.ratio_mean, s.ratio_cv));
      }
      o.note("  (cv does not shrink and the mean drifts with level: no finite Lagrange multiplier)");
      continue;
    }
    Bubble b = make_bubble(1, 1, Vec(c.n));
    RatioStats s6 = el_residual_halfspace(b, P, ys, 6);
    RatioStats s10 = el_residual_halfspace(b, P, ys, 10);
    o.require(s10.ratio_cv < 1e-3, fmt::format("{} level 10: ratio_mean = {:.8f}, ratio_cv = {:.2e} < 1e-3",
                                               tag, s10.ratio_mean, s10.ratio_cv));
    double shrink = s6.ratio_cv / s10.ratio_cv;
    o.require(shrink >= 4.0, fmt::format("{} cv level 6 = {:.2e} -> level 10 = {:.2e}: shrink {:.1f}x >= 4x",
                                         tag, s6.ratio_cv, s10.ratio_cv, shrink));
    o.note(fmt::format("{} {:.1f} s", tag, seconds_since(t0)));
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  constexpr int kLevel = 10;
  Bubble b = make_bubble(1, 1, Vec(3));
  Point x = halfspace_boundary(boundary_point(3, {0.3, -0.2}));
  double fx = bubble_value(b, make_params(3, 0, 1), x.x);

  ParamTriple A = make_params(3, 0, 1);
  LimitScan a = boundary_limit_scan(b, A, x, default_limit_grid(LimitCase::A), kLevel);
  double ra = a.extrapolated / (2 * kPi * fx);
  o.require(ra >= 0.99 && ra <= 1.01, fmt::format("(a) (3,0,1): extrapolated {:.10f} / (2 pi f(x')) = {:.8f} in [0.99, 1.01]",
                                                   a.extrapolated, ra));

  ParamTriple B = make_params(3, 1, 0.5);
  double fb = bubble_value(b, B, x.x);
  LimitScan sb = boundary_limit_scan(b, B, x, default_limit_grid(LimitCase::B), kLevel);
  double rb = sb.extrapolated / (4 * kPi * fb);
  o.require(rb >= 0.95 && rb <= 1.05, fmt::format("(b) (3,1,0.5): extrapolated {:.10f} / (4 pi f(x')) = {:.8f} in [0.95, 1.05]",
                                                  sb.extrapolated, rb));
  o.note(fmt::format("  same limit against (n-1) omega_(n-1) f(x') = 2 pi f(x'): ratio = {:.8f}",
                     sb.extrapolated / (equator_area(3) * fb)));

  ParamTriple C = make_params(3, 1.5, 0.25);
  LimitScan sc = boundary_limit_scan(b, C, x, default_limit_grid(LimitCase::C), kLevel);
  o.require(sc.ratio >= 0.99 && sc.ratio <= 1.01,
            fmt::format("(c) (3,1.5,0.25): extrapolated {:.10f} / direct integral {:.10f} = {:.8f} in [0.99, 1.01]",
                        sc.extrapolated, sc.reference, sc.ratio));
  double dt = seconds_since(t0);
  o.require(dt < 120.0, fmt::format("runtime {:.1f} s < 120 s", dt));
  return o;
}

Outcome criterion8() {
  Outcome o;
  BlowupFit a = blowup_rate(make_params(3, 0.5, 0.25), kDefaultBlowupWindow, 10);
  o.require(!a.log_flag && std::abs(a.exponent_fit + 0.25) <= 0.05,
            fmt::format("(3,0.5,0.25): power law, exponent {:.4f} within 0.05 of -0.25 (rms {:.1e})", a.exponent_fit,
                        a.fit_residual));
  BlowupFit b = blowup_rate(make_params(3, 1, 0), kDefaultBlowupWindow, 10);
  o.require(b.log_flag, fmt::format("(3,1,0): log model selected (rms log {:.1e} vs power {:.1e}, log slope {:.4f})",
                                    b.log_residual, b.power_residual, b.log_slope));
  BlowupFit c = blowup_rate(make_params(3, 1.5, 0.25), kDefaultBlowupWindow, 10);
  o.require(c.bounded, fmt::format("(3,1.5,0.25): bounded profile (slope {:.4f}, log flag {})", c.exponent_fit,
                                   c.log_flag));
  return o;
}

Outcome criterion9() {
  Outcome o;
  struct Case {
    int n;
    double a, b;
  };
  for (Case c : {Case{3, 0, 1}, Case{3, 1, 0}, Case{2, 0.5, 0.25}}) {
    ParamTriple P{c.n, c.a, c.b, {}};  // closed-form checks only need the exponents
    std::string tag = fmt::format("({}, {}, {})", c.n, c.a, c.b);
    Bubble b = make_bubble(1.0, 1.3, boundary_point(c.n, {0.2}));
    auto ys = boundary_samples(c.n, 20, 11);
    Rng rng(99);
    double worst = 0.0;
    int validated = 0;
    for (int k = 0; k < 10; ++k) {
      Vec z(c.n);
      for (int i = 0; i + 1 < c.n; ++i) z[i] = rng.uniform(-2, 2);
      KelvinCheck K = kelvin_fixed_point_check(b, P, z, ys);
      worst = std::max(worst, K.max_residual);
      validated += K.lambda_validated;
    }
    o.require(worst < 1e-12, fmt::format("{} Kelvin fixed point, 10 centers: max residual {:.1e} < 1e-12", tag, worst));
    o.require(validated == 10, fmt::format("{} lambda_bar confirmed by root solve at {}/10 centers", tag, validated));
    FrankLiebReport F = frank_lieb_conditions_check(b, P, ys, 5);
    o.require(F.pass, fmt::format("{} Frank-Lieb: inversion {:.1e}, reflection {:.1e}, form {:.1e}, witness {:.2f}",
                                  tag, F.inversion_residual, F.reflection_residual, F.form_residual,
                                  F.witness_residual));
    double worst_norm = 0.0;
    for (int k = 0; k < 3; ++k) {
      Vec z(c.n);
      for (int i = 0; i + 1 < c.n; ++i) z[i] = rng.uniform(-2, 2);
      double r = kelvin_norm_ratio(b, P, z, rng.log_uniform(0.2, 5), 10);
      worst_norm = std::max(worst_norm, std::abs(r - 1));
    }
    o.require(worst_norm < 1e-6, fmt::format("{} Kelvin L^(theta+1) isometry, 3 random (z, lambda): |ratio - 1| <= {:.1e}",
                                             tag, worst_norm));
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  constexpr int kLevel = 7;
  for (auto P : {make_params(3, 0, 1), make_params(3, 1, 0)}) {
    auto t0 = std::chrono::steady_clock::now();
    ExponentSet E = conformal_exponents(P);
    double Ce = sharp_constant_Ce(P, 10).value;
    SweepConfig cfg;
    cfg.level = kLevel;
    auto rows = perturbation_sweep(cfg, P, E.p, E.s);
    double qmax = 0.0;
    int flagged = 0;
    for (const auto& r : rows) {
      if (r.flagged) ++flagged;
      else qmax = std::max(qmax, r.quotient);
    }
    o.require(qmax <= Ce * (1 + 1e-3),
              fmt::format("{} sweep l<=4, |eps|<=0.3 ({} rows, {} flagged): max quotient {:.10f} <= C_e {:.10f} (excess {:.1e})",
                          to_string(P), rows.size(), flagged, qmax, Ce, qmax / Ce - 1));
    BubbleScan B = bubble_family_scan(P, {0.5, 1, 2}, {Vec(3), Vec::unit(3, 0)}, kLevel);
    o.require(B.max_quotient <= Ce * (1 + 1e-3),
              fmt::format("{} bubble family max {:.10f} <= C_e (1 + 1e-3)", to_string(P), B.max_quotient));
    o.require(B.spread < 1e-4, fmt::format("{} bubble family spread {:.2e} < 1e-4", to_string(P), B.spread));
    o.note(fmt::format("{} {:.1f} s", to_string(P), seconds_since(t0)));
  }
  return o;
}

Outcome criterion11() {
  Outcome o;
  ParamTriple P = make_params(3, 1.5, 0.25);
  ConstantResult C = sphere_kernel_constant(P, 10);
  double closed = kPi * std::pow(2.0, 1.5) / 0.5;
  o.require(std::abs(C.value - closed) <= 1e-8 * closed,
            fmt::format("C(3, 1.5) = {:.15g} vs pi 2^1.5 / 0.5 = {:.15g}", C.value, closed));
  TrialFunction w = TrialFunction::pullback(TrialFunction::constant(1), P);  // w(y)^{n+alpha-2}
  Rng rng(31);
  for (int k = 0; k < 5; ++k) {
    Vec x = boundary_point(3, {rng.uniform(-3, 3), rng.uniform(-3, 3)});
    double lhs = direct_boundary_integral(w, P, x, 10);
    double rhs = C.value * std::pow(w_raw(x), 3 - 1.5);
    double rel = std::abs(lhs - rhs) / rhs;
    o.require(rel < 1e-4, fmt::format("x' = ({:+.3f}, {:+.3f}): integral {:.12f}, C w(x')^(n-alpha) {:.12f}, rel {:.1e}",
                                      x[0], x[1], lhs, rhs, rel));
  }
  return o;
}

}  // namespace

// Optional arguments select criteria by number; no arguments runs all of them.
int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"conformal identity suite", criterion1},
      {"kernel inequality suite", criterion2},
      {"adjointness of E_B and R_B", criterion3},
      {"sharp constant consistency", criterion4},
      {"subcritical constant", criterion5},
      {"Euler-Lagrange residuals", criterion6},
      {"boundary limits", criterion7},
      {"blow-up rates", criterion8},
      {"classification invariances", criterion9},
      {"sharpness sweep", criterion10},
      {"phi identity", criterion11},
  };
  std::vector<bool> run(criteria.size(), argc < 2);
  for (int a = 1; a < argc; ++a) {
    int k = std::atoi(argv[a]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: acceptance [criterion 1..%zu]...\n", criteria.size());
      return 2;
    }
    run[k - 1] = true;
  }
  int failed = 0, ran = 0;
  auto all0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!run[i]) continue;
    ++ran;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double dt = seconds_since(t0);
    std::printf("%s criterion %zu: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), dt);
    for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %d criteria passed (%.1f s)\n", ran - failed, ran,
              seconds_since(all0));
  return failed == 0 ? 0 : 1;
}
