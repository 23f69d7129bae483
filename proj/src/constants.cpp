#include "confext/constants.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "confext/errors.hpp"
#include "confext/parallel.hpp"
#include "confext/quadrature.hpp"

namespace confext {

namespace {

constexpr int kDeepPolar = 220;       // dyadic depth for the 1-D profile
constexpr double kRadialFloor = 1e-60;

}  // namespace

double equator_area(int n) { return n == 2 ? 2.0 : sphere_area(n - 1); }

double phi_at_gap(const ParamTriple& P, double gap, int level) {
  const int n = P.n;
  const double r = 1.0 - gap;
  Rule1D polar = graded_polar(gap, level, kDeepPolar);
  const double half_expo = 0.5 * (P.alpha - n);
  std::vector<double> terms(polar.size());
  for (std::size_t i = 0; i < polar.size(); ++i) {
    double phi = polar.x[i];
    double sp = std::sin(phi <= 0.5 * kPi ? polar.lo[i] : polar.hi[i]);
    double sh = std::sin(0.5 * polar.lo[i]);
    double d2 = gap * gap + 4.0 * r * sh * sh;
    terms[i] = polar.w[i] * std::pow(sp, n - 2) * std::pow(d2, half_expo);
  }
  return equator_area(n) * pairwise_sum(terms);
}

double psi_at_gap(const ParamTriple& P, double gap, int level) {
  if (!(gap > 0.0) || gap > 1.0) throw DomainError(fmt::format("psi needs 0 <= r < 1 (gap {})", gap));
  double v = phi_at_gap(P, gap, level);
  if (P.beta != 0.0) v *= std::pow(0.5 * gap * (2.0 - gap), P.beta);
  return v;
}

double psi_profile(const ParamTriple& P, double r, int level) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError(fmt::format("psi_profile needs 0 <= r < 1, got {}", r));
  return psi_at_gap(P, 1.0 - r, level);
}

double psi_power_integral(const ParamTriple& P, double q, int level, double gap_floor) {
  const int n = P.n;
  Rule1D rad = tanh_sinh(tanh_sinh_step(level), 0.0, 1.0, std::max(gap_floor, 1e-300));
  std::vector<double> terms = parallel_map(rad.size(), [&](std::size_t i) {
    if (rad.hi[i] < gap_floor) return 0.0;
    double psi = psi_at_gap(P, rad.hi[i], level);
    return rad.w[i] * std::pow(rad.x[i], n - 1) * std::pow(psi, q);
  });
  return sphere_area(n) * pairwise_sum(terms);
}

namespace {

double ball_constant_value(const ParamTriple& P, double inv_p, double tconj, int level) {
  const double area = sphere_area(P.n);
  double I = psi_power_integral(P, tconj, level, kRadialFloor);
  return std::pow(area, -inv_p) * std::pow(I, 1.0 / tconj);
}

template <class F>
ConstantResult two_level(const ParamTriple& P, int level, F&& value) {
  if (level < 2) throw DomainError("constants need level >= 2");
  ConstantResult R;
  R.params = P;
  R.value = value(level);
  double coarse = value(level - 1);
  R.two_level_delta = std::abs(R.value - coarse);
  R.levels_used = {level - 1, level};
  return R;
}

}  // namespace

ConstantResult sharp_constant_Ce(const ParamTriple& P, int level) {
  require_valid(P);
  const int n = P.n;
  const double inv_p = (n + P.alpha - 2.0) / (2.0 * (n - 1));
  const double s = 2.0 * n / (n - P.alpha - 2.0 * P.beta);
  return two_level(P, level, [&](int L) { return ball_constant_value(P, inv_p, s, L); });
}

ConstantResult subcritical_constant(const ParamTriple& P, double p, double t, int level) {
  require_ball_hypotheses(P, p, t, /*allow_critical=*/true);
  const double tc = conj(t);
  return two_level(P, level, [&](int L) { return ball_constant_value(P, 1.0 / p, tc, L); });
}

ConstantResult c_n_alpha(const ParamTriple& P, int level) {
  if (!(P.alpha < 1.0)) throw DomainError("C_{n,alpha} diverges for alpha >= 1");
  const int n = P.n;
  // r = tan(theta): |S^{n-2}| int_0^{pi/2} sin^{n-2}(theta) cos^{-alpha}(theta) dtheta
  auto value = [&](int L) {
    Rule1D th = tanh_sinh(tanh_sinh_step(L), 0.0, 0.5 * kPi, 1e-300);
    std::vector<double> terms(th.size());
    for (std::size_t i = 0; i < th.size(); ++i) {
      double s = std::sin(th.x[i]);
      double c = std::sin(th.hi[i]);
      terms[i] = th.w[i] * std::pow(s, n - 2) * std::pow(c, -P.alpha);
    }
    return equator_area(n) * pairwise_sum(terms);
  };
  return two_level(P, level, value);
}

ConstantResult sphere_kernel_constant(const ParamTriple& P, int level) {
  if (!(P.alpha > 1.0)) throw DomainError("C(n,alpha) diverges for alpha <= 1");
  const int n = P.n;
  // |S^{n-2}| int_0^pi sin^{n-2}(phi) (2 sin(phi/2))^{alpha-n} dphi
  auto value = [&](int L) {
    Rule1D ph = tanh_sinh(tanh_sinh_step(L), 0.0, kPi, 1e-300);
    std::vector<double> terms(ph.size());
    for (std::size_t i = 0; i < ph.size(); ++i) {
      double s = std::sin(ph.x[i] <= 0.5 * kPi ? ph.lo[i] : ph.hi[i]);
      double chord = 2.0 * std::sin(0.5 * ph.lo[i]);
      // s/chord stays O(1) at the pole; splitting it off avoids 0 * inf
      terms[i] = ph.w[i] * std::pow(s / chord, n - 2) * std::pow(chord, P.alpha - 2.0);
    }
    return equator_area(n) * pairwise_sum(terms);
  };
  return two_level(P, level, value);
}

namespace {

struct LineFit {
  double a = 0, b = 0, rms = 0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i];
  double mx = sx / m, my = sy / m, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.b = sxy / sxx;
  f.a = my - f.b * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - f.a - f.b * x[i];
    ss += e * e;
  }
  f.rms = std::sqrt(ss / m);
  return f;
}

}  // namespace

BlowupFit blowup_rate(const ParamTriple& P, std::pair<double, double> window, int level) {
  auto [r_lo, r_hi] = window;
  if (!(r_lo >= 0.9 && r_lo < r_hi && r_hi < 1.0 - 1e-6))
    throw DomainError(fmt::format("degenerate blow-up window ({}, {})", r_lo, r_hi));
  constexpr int kSamples = 20;
  const double g_lo = 1.0 - r_lo, g_hi = 1.0 - r_hi;
  std::vector<double> lg(kSamples), llg(kSamples), lpsi(kSamples);
  for (int k = 0; k < kSamples; ++k) {
    double gap = g_lo * std::pow(g_hi / g_lo, static_cast<double>(k) / (kSamples - 1));
    lg[k] = std::log(gap);
    llg[k] = std::log(std::abs(lg[k]));
    lpsi[k] = std::log(psi_at_gap(P, gap, level));
  }
  LineFit pw = least_squares(lg, lpsi);
  LineFit lo = least_squares(llg, lpsi);
  BlowupFit out;
  out.exponent_fit = pw.b;
  out.power_residual = pw.rms;
  out.log_residual = lo.rms;
  out.log_slope = lo.b;
  out.log_flag = lo.rms < pw.rms;
  out.fit_residual = out.log_flag ? lo.rms : pw.rms;
  out.bounded = !out.log_flag && pw.b > -0.05;
  return out;
}

}  // namespace confext
