#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "confext/checks.hpp"
#include "confext/constants.hpp"
#include "confext/errors.hpp"
#include "confext/extremals.hpp"
#include "confext/geometry.hpp"
#include "confext/params.hpp"
#include "confext/rng.hpp"
#include "confext/sweep.hpp"

namespace cli {

using namespace confext;

namespace {

Vec boundary_vec(int n, const std::vector<double>& coords, const char* what) {
  Vec v(n);
  if (coords.empty()) return v;
  if (static_cast<int>(coords.size()) != n - 1)
    throw DomainError(fmt::format("--{} needs {} coordinates, got {}", what, n - 1, coords.size()));
  for (int i = 0; i < n - 1; ++i) v[i] = coords[i];
  return v;
}

Bubble bubble_of(const Options& o) { return make_bubble(o.c, o.d, boundary_vec(o.n, o.y0, "y0")); }

ParamTriple checked_params(const Options& o, RunReport& rep) {
  ParamTriple P = make_params(o.n, o.alpha, o.beta);
  rep.params = P;
  require_valid(P);
  return P;
}

// (p, s) for quotient computations: conformal unless --p/--t are given.
ExponentSet working_exponents(const Options& o, const ParamTriple& P) {
  if (o.p.has_value() != o.t.has_value()) throw DomainError("--p and --t go together");
  return o.p ? exponents(P, *o.p, *o.t) : conformal_exponents(P);
}

void add_ratio_rows(RunReport& rep, const std::string& prefix, const RatioStats& s, double tol) {
  rep.value(prefix + "ratio_mean", s.ratio_mean);
  rep.check(prefix + "ratio_cv", s.ratio_cv, 0.0, tol);
  ResultTable t{prefix + "ratios", {"sample", "ratio"}, {}};
  for (std::size_t i = 0; i < s.ratios.size(); ++i)
    t.rows.push_back({static_cast<double>(i), s.ratios[i]});
  rep.tables.push_back(std::move(t));
}

void run_params(const Options& o, RunReport& rep) {
  ParamTriple P = make_params(o.n, o.alpha, o.beta);
  rep.params = P;
  if (o.action == "check") {
    for (const char* cond : {kCondBeta, kCondPositive, kCondUpper, kCondSubAffine}) {
      bool failed = std::find(P.failed.begin(), P.failed.end(), cond) != P.failed.end();
      rep.flag(cond, !failed);
    }
    if (o.p) {
      require_valid(P);
      ExponentSet E = working_exponents(o, P);
      rep.exponents = E;
      rep.value("hyperbola_defect", hyperbola_defect(E.p, E.t, P));
      rep.flag("subcritical_or_critical",
               strictly_subcritical(E.p, E.t, P) || on_critical_hyperbola(E.p, E.t, P));
    }
    return;
  }
  require_valid(P);
  if (o.action == "exponents") {
    ExponentSet E = working_exponents(o, P);
    rep.exponents = E;
    rep.value("hyperbola_defect", hyperbola_defect(E.p, E.t, P));
    rep.value("on_critical_hyperbola", on_critical_hyperbola(E.p, E.t, P) ? 1.0 : 0.0);
    return;
  }
  // split
  if (!o.p || !o.t) throw DomainError("params split needs --p and --t");
  rep.exponents = exponents(P, *o.p, *o.t);
  SplitExponent a = select_split_exponent(P, *o.p, *o.t);
  rep.value("a", a.a);
  rep.value("interval_lo", a.lo);
  rep.value("interval_hi", a.hi);
  rep.value("bounded_kernel", a.bounded_kernel ? 1.0 : 0.0);
}

void record_constant(RunReport& rep, const std::string& name, const ConstantResult& R) {
  rep.value(name, R.value);
  rep.two_level_delta = R.two_level_delta;
}

void run_constants(const Options& o, RunReport& rep) {
  const std::string& w = o.action;
  if (w == "c-n-alpha" || w == "sphere-kernel") {
    // these only need n and alpha
    ParamTriple P{o.n, o.alpha, o.beta, {}};
    rep.params = make_params(o.n, o.alpha, o.beta);
    if (w == "c-n-alpha") {
      record_constant(rep, "C_n_alpha", c_n_alpha(P, o.level));
    } else {
      ConstantResult R = sphere_kernel_constant(P, o.level);
      record_constant(rep, "C_n_alpha_sphere", R);
      if (o.n == 3) rep.check("closed_form", R.value, kPi * std::pow(2.0, o.alpha) / (o.alpha - 1.0), 1e-8);
    }
    return;
  }
  if (w == "psi" || w == "blowup") {
    // profile diagnostics also make sense on inadmissible triples
    ParamTriple P{o.n, o.alpha, o.beta, {}};
    rep.params = make_params(o.n, o.alpha, o.beta);
    if (w == "psi") {
      if (!o.r) throw DomainError("constants psi needs --r");
      rep.value("psi", psi_profile(P, *o.r, o.level));
      rep.two_level_delta = std::abs(psi_profile(P, *o.r, o.level) - psi_profile(P, *o.r, o.level - 1));
    } else {
      BlowupFit f = blowup_rate(P, {o.r_lo, o.r_hi}, o.level);
      rep.value("exponent_fit", f.exponent_fit);
      rep.value("log_flag", f.log_flag ? 1.0 : 0.0);
      rep.value("bounded", f.bounded ? 1.0 : 0.0);
      rep.value("fit_residual", f.fit_residual);
      rep.value("power_residual", f.power_residual);
      rep.value("log_residual", f.log_residual);
    }
    return;
  }
  ParamTriple P = checked_params(o, rep);
  if (w == "sharp") {
    rep.exponents = conformal_exponents(P);
    record_constant(rep, "C_e", sharp_constant_Ce(P, o.level));
  } else {
    if (!o.p || !o.t) throw DomainError("constants subcritical needs --p and --t");
    rep.exponents = exponents(P, *o.p, *o.t);
    record_constant(rep, "C_subcritical", subcritical_constant(P, *o.p, *o.t, o.level));
  }
}

void run_identities(const Options& o, RunReport& rep) {
  const int samples = o.samples > 0 ? o.samples : 10000;
  std::vector<IdentityCheck> all = conformal_identity_suite(o.n, samples, o.seed);
  ParamTriple P = make_params(o.n, o.alpha, o.beta);
  rep.params = P;
  if (P.valid()) {
    for (auto& c : kernel_identity_suite(P, samples, o.seed + 1)) all.push_back(c);
    for (auto& c : kernel_inequality_suite(P, samples, o.seed + 2)) all.push_back(c);
  }
  ResultTable t{"identities", {"samples", "max_residual", "violations", "tolerance"}, {}};
  for (const auto& c : all) {
    ResultRow& r = rep.value(c.name, c.max_residual);
    r.tolerance = c.tolerance;
    r.pass = c.pass();
    t.rows.push_back({static_cast<double>(c.samples), c.max_residual,
                      static_cast<double>(c.violations), c.tolerance});
  }
  rep.flag("h_lambda_exact_zero", h_lambda(1.7, 1.7, 0.3) == 0.0 && h_lambda(0.4, 2.5, 0.4) == 0.0);
  rep.tables.push_back(std::move(t));
}

void run_el(const Options& o, RunReport& rep) {
  ParamTriple P = checked_params(o, rep);
  rep.exponents = conformal_exponents(P);
  Bubble b = bubble_of(o);
  auto samples = boundary_samples(o.n, o.samples > 0 ? o.samples : 20, o.seed);
  RatioStats s = el_residual_halfspace(b, P, samples, o.level);
  add_ratio_rows(rep, "", s, o.tol.value_or(1e-3));
  RatioStats coarse = el_residual_halfspace(b, P, samples, o.level - 1);
  rep.two_level_delta = std::abs(s.ratio_mean - coarse.ratio_mean);
  if (o.system) {
    SystemReport S = system_residual(b, P, samples, o.level);
    add_ratio_rows(rep, "boundary_eq_", S.boundary_eq, o.tol.value_or(1e-3));
    add_ratio_rows(rep, "interior_eq_", S.interior_eq, o.tol.value_or(1e-3));
    rep.check("u_form_residual", S.u_form_residual, 0.0, 1e-12);
    rep.check("axial_asymmetry", S.axial_asymmetry, 0.0, 1e-8);
  }
}

void run_limits(const Options& o, RunReport& rep) {
  ParamTriple P = checked_params(o, rep);
  Bubble b = bubble_of(o);
  Vec xp = o.x.empty() ? Vec(o.n) : boundary_vec(o.n, o.x, "x");
  if (o.x.empty()) {
    xp[0] = 0.3;
    if (o.n > 2) xp[1] = -0.2;
  }
  LimitCase kase = limit_case(P);
  auto grid = default_limit_grid(kase);
  LimitScan S = boundary_limit_scan(b, P, halfspace_boundary(xp), grid, o.level);
  LimitScan C = boundary_limit_scan(b, P, halfspace_boundary(xp), grid, o.level - 1);
  rep.value(fmt::format("case_{}", limit_case_name(kase)), static_cast<double>(kase));
  rep.value("extrapolated", S.extrapolated);
  rep.value("reference", S.reference);
  rep.check("ratio", S.ratio, 1.0, o.tol.value_or(kase == LimitCase::B ? 0.05 : 0.01));
  rep.two_level_delta = std::abs(S.extrapolated - C.extrapolated);
  ResultTable t{"scan", {"x_n", "scaled_value"}, {}};
  for (std::size_t i = 0; i < S.xn.size(); ++i) t.rows.push_back({S.xn[i], S.scaled_values[i]});
  rep.tables.push_back(std::move(t));
}

void run_symmetry(const Options& o, RunReport& rep) {
  ParamTriple P = checked_params(o, rep);
  rep.exponents = conformal_exponents(P);
  Bubble b = bubble_of(o);
  auto samples = boundary_samples(o.n, o.samples > 0 ? o.samples : 20, o.seed);

  Rng rng(o.seed + 7);
  ResultTable kt{"kelvin", {"z_1", "lambda_bar", "lambda_solved", "max_residual"}, {}};
  double worst = 0.0;
  int validated = 0;
  Vec z_first;
  double lambda_first = 0.0;
  for (int k = 0; k < 10; ++k) {
    Vec z(o.n);
    for (int i = 0; i < o.n - 1; ++i) z[i] = rng.uniform(-2.0, 2.0);
    KelvinCheck K = kelvin_fixed_point_check(b, P, z, samples);
    worst = std::max(worst, K.max_residual);
    validated += K.lambda_validated;
    kt.rows.push_back({z[0], K.lambda_bar, K.lambda_solved, K.max_residual});
    if (k == 0) z_first = z, lambda_first = K.lambda_bar;
  }
  rep.check("kelvin_max_residual", worst, 0.0, 1e-12);
  rep.check("kelvin_lambda_validated", validated, 10.0, 0.0);
  rep.check("kelvin_norm_ratio", kelvin_norm_ratio(b, P, z_first, 0.5 * lambda_first, o.level), 1.0, 1e-6);
  rep.tables.push_back(std::move(kt));

  FrankLiebReport F = frank_lieb_conditions_check(b, P, samples, o.seed);
  rep.value("frank_lieb_inversion_residual", F.inversion_residual);
  rep.value("frank_lieb_reflection_residual", F.reflection_residual);
  rep.value("frank_lieb_witness_residual", F.witness_residual);
  rep.value("frank_lieb_form_residual", F.form_residual);
  rep.flag("frank_lieb", F.pass);

  Vec e = Vec::unit(o.n, 0);
  MovingPlaneReport M = moving_plane_reflection_check(b, P, e, dot(b.y0, e), samples);
  rep.value("moving_plane_considered", M.considered);
  rep.flag("moving_plane_relation", M.relation_holds);
  rep.flag("moving_plane_equality_at_center", M.equality);
}

void run_sweep(const Options& o, RunReport& rep) {
  ParamTriple P = checked_params(o, rep);
  ExponentSet E = working_exponents(o, P);
  rep.exponents = E;
  const bool conformal = !o.p;
  ConstantResult bound = conformal ? sharp_constant_Ce(P, o.level)
                                   : subcritical_constant(P, E.p, E.t, o.level);
  rep.value("bound", bound.value);
  rep.two_level_delta = bound.two_level_delta;

  SweepConfig cfg;
  cfg.degrees = o.degrees;
  cfg.amplitudes = o.amplitudes;
  cfg.level = o.level;
  cfg.axis = Vec::unit(o.n, 0);
  auto rows = perturbation_sweep(cfg, P, E.p, E.s);
  ResultTable st{"perturbation_sweep", {"degree", "amplitude", "quotient", "flagged"}, {}};
  double qmax = 0.0;
  for (const auto& r : rows) {
    st.rows.push_back({static_cast<double>(r.degree), r.amplitude, r.quotient, r.flagged ? 1.0 : 0.0});
    if (!r.flagged) qmax = std::max(qmax, r.quotient);
  }
  rep.tables.push_back(std::move(st));
  rep.value("sweep_max_quotient", qmax);
  rep.flag("sweep_within_bound", qmax <= bound.value * (1.0 + 1e-3));

  if (conformal) {
    std::vector<Vec> y0s{Vec(o.n), Vec::unit(o.n, 0)};
    BubbleScan B = bubble_family_scan(P, o.d_grid, y0s, o.level);
    ResultTable bt{"bubble_family", {"d", "y0_1", "quotient"}, {}};
    for (const auto& r : B.rows) bt.rows.push_back({r.d, r.y0[0], r.quotient});
    rep.tables.push_back(std::move(bt));
    rep.check("bubble_spread", B.spread, 0.0, 1e-4);
    rep.flag("bubble_within_bound", B.max_quotient <= bound.value * (1.0 + 1e-3));
  }

  if (o.ascend_steps > 0) {
    auto start = TrialFunction::perturbed(1.0, {{1, 0.2}, {2, 0.1}}, Vec::unit(o.n, 0));
    AscentResult A = ascend(P, E.p, E.s, start, o.ascend_steps, o.ascend_step, o.level);
    rep.value("ascent_best_quotient", A.best_quotient);
    rep.value("ascent_evaluations", A.evaluations);
    rep.flag("ascent_within_bound", A.best_quotient <= bound.value * (1.0 + 1e-3));
    ResultTable at{"ascent_trace", {"step", "quotient"}, {}};
    for (std::size_t i = 0; i < A.trace.size(); ++i) at.rows.push_back({static_cast<double>(i), A.trace[i]});
    rep.tables.push_back(std::move(at));
  }
}

}  // namespace

RunReport run_command(const Options& o) {
  RunReport rep;
  rep.command = o.command;
  if (!o.action.empty()) rep.command += " " + o.action;
  rep.level = o.level;
  if (o.level < 3) throw DomainError("--level must be at least 3 (two-level estimates use level - 1)");
  if (o.command == "params") run_params(o, rep);
  else if (o.command == "constants") run_constants(o, rep);
  else if (o.command == "verify-identities") run_identities(o, rep);
  else if (o.command == "verify-el") run_el(o, rep);
  else if (o.command == "verify-limits") run_limits(o, rep);
  else if (o.command == "verify-symmetry") run_symmetry(o, rep);
  else if (o.command == "sweep") run_sweep(o, rep);
  else throw Error("unknown command " + o.command);
  return rep;
}

}  // namespace cli
