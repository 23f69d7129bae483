#include "confext/extremals.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "confext/constants.hpp"
#include "confext/errors.hpp"
#include "confext/operators_impl.hpp"
#include "confext/rng.hpp"

namespace confext {

double bubble_eval(const Bubble& b, const ParamTriple& P, const Point& y) {
  if (y.region != Region::HalfspaceBoundary)
    throw DomainError("bubble_eval expects a halfspace-boundary point");
  return bubble_value(b, P, y.x);
}

TrialFunction bubble_to_ball(const Bubble& b, const ParamTriple& P) {
  return TrialFunction::ball_bubble(b, P);
}

double bubble_u(const Bubble& b, const ParamTriple& P, const Vec& y) {
  const double n = P.n;
  double c1 = std::pow(b.c, (n - P.alpha) / (n + P.alpha - 2.0));
  return c1 * std::pow(b.d * b.d + dist2(y, b.y0), -0.5 * (n - P.alpha));
}

RatioStats ratio_stats(std::vector<double> ratios) {
  RatioStats s;
  const double m = static_cast<double>(ratios.size());
  if (ratios.empty()) return s;
  s.ratio_mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) / m;
  double ss = 0.0;
  for (double r : ratios) ss += (r - s.ratio_mean) * (r - s.ratio_mean);
  s.ratio_cv = std::sqrt(ss / m) / std::abs(s.ratio_mean);
  s.ratios = std::move(ratios);
  return s;
}

std::vector<Point> boundary_samples(int n, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> out;
  for (int k = 0; k < count; ++k) {
    Vec dir(1);
    if (n > 2) dir = rng.unit_vector(n - 1);
    else dir[0] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    double r = rng.log_uniform(0.05, 5.0);
    out.push_back(Point{lift(r * dir, 0.0), Region::HalfspaceBoundary});
  }
  return out;
}

std::vector<Point> sphere_samples(int n, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> out;
  for (int k = 0; k < count; ++k) out.push_back(Point{rng.unit_vector(n), Region::BallBoundary});
  return out;
}

namespace {

// The inner extension is already accurate to ~1e-10 at this level; the
// outer restriction carries the requested level.
constexpr int kInnerExtendLevel = 5;

// R_B((E_B F)^kappa)(zeta) for a ball trial F
double el_rhs_ball(const TrialFunction& F, const ParamTriple& P, double kappa, const Vec& zeta,
                   int level) {
  const int inner = std::min(level, kInnerExtendLevel);
  auto g = [&](const Node& xi) {
    double V = detail::extend_ball_impl(F, P, xi.x, xi.gap, inner);
    return std::pow(V, kappa);
  };
  return detail::restrict_ball_impl(g, P, zeta, level);
}

void check_boundary_samples(const std::vector<Point>& samples) {
  for (const auto& y : samples)
    if (y.region != Region::HalfspaceBoundary)
      throw DomainError("EL samples must be halfspace-boundary points");
}

}  // namespace

RatioStats el_residual_halfspace(const TrialFunction& f, const ParamTriple& P,
                                 const std::vector<Point>& samples, int level) {
  require_valid(P);
  if (f.on_ball()) throw DomainError("el_residual_halfspace expects a half-space trial");
  check_boundary_samples(samples);
  const ExponentSet E = conformal_exponents(P);
  const TrialFunction F = to_ball(f, P);
  const double n = P.n;
  auto ratios = parallel_map(samples.size(), [&](std::size_t i) {
    const Vec& y = samples[i].x;
    Vec zeta = T_inv_raw(y);
    zeta *= 1.0 / norm(zeta);
    double rhs = std::pow(w_raw(y), n - P.alpha) * el_rhs_ball(F, P, E.kappa, zeta, level);
    double lhs = std::pow(f(y), (n - P.alpha) / (n + P.alpha - 2.0));
    return rhs / lhs;
  });
  return ratio_stats(std::move(ratios));
}

RatioStats el_residual_halfspace(const Bubble& b, const ParamTriple& P,
                                 const std::vector<Point>& samples, int level) {
  if (!(b.c > 0.0)) throw DomainError("el_residual_halfspace needs c > 0");
  return el_residual_halfspace(TrialFunction::bubble(b, P), P, samples, level);
}

RatioStats el_residual_ball(const TrialFunction& f, const ParamTriple& P, double p, double s,
                            const std::vector<Point>& samples, int level) {
  require_valid(P);
  if (!f.on_ball()) throw DomainError("el_residual_ball expects a trial on the sphere");
  for (const auto& z : samples)
    if (z.region != Region::BallBoundary) throw DomainError("samples must lie on the sphere");
  auto ratios = parallel_map(samples.size(), [&](std::size_t i) {
    Vec zeta = (1.0 / norm(samples[i].x)) * samples[i].x;
    double rhs = el_rhs_ball(f, P, s - 1.0, zeta, level);
    return rhs / std::pow(f(zeta), p - 1.0);
  });
  return ratio_stats(std::move(ratios));
}

SystemReport system_residual(const Bubble& b, const ParamTriple& P,
                             const std::vector<Point>& samples, int level) {
  require_valid(P);
  if (!(b.c > 0.0)) throw DomainError("system_residual needs c > 0");
  check_boundary_samples(samples);
  const ExponentSet E = conformal_exponents(P);
  const TrialFunction F = bubble_to_ball(b, P);
  const double n = P.n;
  BoundaryField u = [=](const Vec& y) { return bubble_u(b, P, y); };
  InteriorField v = [=](const Node& x) {
    Node xi = T_inv_node(x.x);
    return std::pow(w_raw(x.x), n - P.alpha - 2.0 * P.beta) *
           detail::extend_ball_impl(F, P, xi.x, xi.gap, level);
  };
  WeightedPair W = weighted_pair_apply(u, v, P, E.p, E.t, level);

  SystemReport R;
  auto r1 = parallel_map(samples.size(), [&](std::size_t i) {
    return W.lhs(samples[i].x) / u(samples[i].x);
  });
  R.boundary_eq = ratio_stats(std::move(r1));

  const double heights[] = {0.25, 0.5, 1.0};
  auto interior = [&](std::size_t i) {
    Vec x = samples[i].x;
    x.last() = heights[i % 3];
    return x;
  };
  auto r2 = parallel_map(samples.size(), [&](std::size_t i) {
    Node x{interior(i), 0.0};
    x.gap = x.x.last();
    return v(x) / W.rhs(x);
  });
  R.interior_eq = ratio_stats(std::move(r2));

  for (const auto& y : samples) {
    double f = bubble_value(b, P, y.x);
    double u_pow = std::pow(f, (n - P.alpha) / (n + P.alpha - 2.0));
    R.u_form_residual = std::max(R.u_form_residual, std::abs(u(y.x) - u_pow) / u_pow);
  }
  auto asym = parallel_map(samples.size(), [&](std::size_t i) {
    Vec x = interior(i);
    Vec xr = x;
    for (int k = 0; k + 1 < x.n; ++k) xr[k] = 2.0 * b.y0[k] - x[k];
    double a = v(Node{x, x.last()}), c = v(Node{xr, xr.last()});
    return std::abs(a - c) / std::abs(a);
  });
  for (double a : asym) R.axial_asymmetry = std::max(R.axial_asymmetry, a);
  return R;
}

const char* limit_case_name(LimitCase c) {
  switch (c) {
    case LimitCase::A: return "a";
    case LimitCase::B: return "b";
    case LimitCase::C: return "c";
  }
  return "?";
}

LimitCase limit_case(const ParamTriple& P) {
  if (std::abs(P.alpha - 1.0) <= kParamTol) return LimitCase::B;
  return P.alpha < 1.0 ? LimitCase::A : LimitCase::C;
}

std::vector<double> default_limit_grid(LimitCase c) {
  std::vector<double> g;
  if (c == LimitCase::B) {
    for (int k = 2; k <= 7; ++k) g.push_back(std::pow(4.0, -k));
  } else {
    for (int k = 4; k <= 11; ++k) g.push_back(std::ldexp(1.0, -k));
  }
  return g;
}

double richardson(const std::vector<double>& h, const std::vector<double>& S,
                  const std::vector<double>& powers) {
  std::vector<double> col = S;
  double best = col.back();
  double best_gap = col.size() >= 2 ? std::abs(col[col.size() - 1] - col[col.size() - 2])
                                    : std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < powers.size() && col.size() >= 3; ++j) {
    std::vector<double> next;
    std::size_t off = j + 1;  // h index of next[k] is k + off - 1 .. k + off
    for (std::size_t k = 0; k + 1 < col.size(); ++k) {
      double a = std::pow(h[k + off - 1], powers[j]);
      double b = std::pow(h[k + off], powers[j]);
      next.push_back((col[k + 1] * a - col[k] * b) / (a - b));
    }
    col = std::move(next);
    double gap = std::abs(col[col.size() - 1] - col[col.size() - 2]);
    if (gap < best_gap) {
      best_gap = gap;
      best = col.back();
    }
  }
  return best;
}

namespace {

// int_{R^{n-1}} g(center + r e) r^{n-2} dr de with r = scale u/(1-u); g gets
// (point, r) so singular radial factors can be applied exactly.
template <class G>
double polar_boundary_integral(G&& g, const Vec& center, double scale, int n, int level) {
  // r = scale u/(1-u), tanh-sinh on dyadic panels in u. Integrands with
  // features at r ~ |center| put complex singularities close to the real u
  // axis; one panel over [0, 1] then converges very slowly.
  static constexpr double kCuts[] = {0.0, 0.25, 0.5, 0.75, 0.875, 0.9375, 0.96875, 1.0};
  constexpr int kPanels = static_cast<int>(std::size(kCuts)) - 1;
  auto dirs = n - 1 >= 2 ? sphere_rule(n - 1, level) : cap_rule(n, 1.0, 1).ring;
  std::vector<double> totals(kPanels);
  for (int p = 0; p < kPanels; ++p) {
    const double a = kCuts[p], b = kCuts[p + 1];
    Rule1D u = tanh_sinh(tanh_sinh_step(level), a, b, 1e-60);
    std::vector<double> terms = parallel_map(u.size(), [&](std::size_t i) {
      // distances to u = 0 and u = 1 without cancellation at the outer panels
      double u0 = p == 0 ? u.lo[i] : u.x[i];
      double u1 = p == kPanels - 1 ? u.hi[i] : 1.0 - u.x[i];
      double r = scale * u0 / u1;
      double jac = scale / (u1 * u1);  // dr/du
      double inner = 0.0;
      for (std::size_t j = 0; j < dirs->size(); ++j) {
        Vec y = center;
        for (int k = 0; k + 1 < n; ++k) y[k] += r * dirs->nodes[j].x[k];
        y.last() = 0.0;
        inner += dirs->weights[j] * g(y, r);
      }
      return u.w[i] * jac * std::pow(r, n - 2) * inner;
    });
    totals[p] = pairwise_sum(terms);
  }
  return pairwise_sum(totals);
}

}  // namespace

double direct_boundary_integral(const TrialFunction& f, const ParamTriple& P,
                                const Vec& x_prime, int level) {
  return polar_boundary_integral(
      [&](const Vec& y, double r) { return std::pow(r, P.alpha - P.n) * f(y); }, x_prime, 1.0,
      P.n, level);
}

LimitScan boundary_limit_scan(const Bubble& b, const ParamTriple& P, const Point& x_prime,
                              const std::vector<double>& xn_grid, int level) {
  if (x_prime.region != Region::HalfspaceBoundary)
    throw DomainError("boundary_limit_scan expects a halfspace-boundary point");
  if (xn_grid.size() < 4) throw DomainError("grid too coarse for extrapolation (< 4 points)");
  for (std::size_t k = 0; k < xn_grid.size(); ++k) {
    if (!(xn_grid[k] > 1e-5 && xn_grid[k] <= 0.5))
      throw DomainError(fmt::format("x_n grid value {} outside (1e-5, 0.5]", xn_grid[k]));
    if (k && !(xn_grid[k] < xn_grid[k - 1])) throw DomainError("x_n grid must decrease");
  }
  const TrialFunction f = TrialFunction::bubble(b, P);
  const double fx = bubble_value(b, P, x_prime.x);
  LimitScan S;
  S.kase = limit_case(P);
  S.xn = xn_grid;
  S.scaled_values = parallel_map(xn_grid.size(), [&](std::size_t k) {
    double h = xn_grid[k];
    Vec x = x_prime.x;
    x.last() = h;
    double E = extend_halfspace(f, P, Point{x, Region::HalfspaceInterior}, level);
    switch (S.kase) {
      case LimitCase::A: return std::pow(h, 1.0 - P.alpha - P.beta) * E;
      case LimitCase::B: return -E / (std::pow(h, P.beta) * std::log(h));
      case LimitCase::C: return std::pow(h, -P.beta) * E;
    }
    return 0.0;
  });
  const std::size_t m = xn_grid.size();
  switch (S.kase) {
    case LimitCase::A:
      S.extrapolated = richardson(xn_grid, S.scaled_values,
                                  {1.0 - P.alpha, 2.0, 3.0 - P.alpha, 4.0});
      S.reference = c_n_alpha(P, std::max(level, 12)).value * fx;  // 1-D, cheap
      break;
    case LimitCase::B: {
      // linear in 1/|log x_n| through the two finest points
      double h1 = -1.0 / std::log(xn_grid[m - 2]), h2 = -1.0 / std::log(xn_grid[m - 1]);
      double s1 = S.scaled_values[m - 2], s2 = S.scaled_values[m - 1];
      S.extrapolated = (s2 * h1 - s1 * h2) / (h1 - h2);
      S.reference = equator_area(P.n) * fx;
      break;
    }
    case LimitCase::C:
      S.extrapolated = richardson(xn_grid, S.scaled_values,
                                  {P.alpha - 1.0, 2.0, P.alpha + 1.0, 4.0});
      S.reference = direct_boundary_integral(f, P, x_prime.x, level + 2);
      break;
  }
  S.ratio = S.extrapolated / S.reference;
  return S;
}

namespace {

double kelvin_u(const Bubble& b, const ParamTriple& P, const Vec& z, double lambda,
                const Vec& y) {
  double r = dist(y, z);
  return std::pow(lambda / r, P.n - P.alpha) * bubble_u(b, P, invert_raw(y, z, lambda));
}

std::vector<double> lambda_roots(const Bubble& b, const ParamTriple& P, const Vec& z,
                                 const Vec& y, double scale) {
  auto g = [&](double lam) {
    return std::log(kelvin_u(b, P, z, lam, y)) - std::log(bubble_u(b, P, y));
  };
  std::vector<double> roots;
  constexpr int kScan = 4000;
  double lo = scale * 1e-3, hi = scale * 1e3;
  double prev_l = lo, prev_g = g(lo);
  for (int k = 1; k <= kScan; ++k) {
    double l = lo * std::pow(hi / lo, static_cast<double>(k) / kScan);
    double gl = g(l);
    if (gl == 0.0) {
      roots.push_back(l);
    } else if ((prev_g < 0.0) != (gl < 0.0) && prev_g != 0.0) {
      boost::uintmax_t it = 200;
      auto br = boost::math::tools::toms748_solve(
          g, prev_l, l, prev_g, gl, boost::math::tools::eps_tolerance<double>(52), it);
      roots.push_back(0.5 * (br.first + br.second));
    }
    prev_l = l;
    prev_g = gl;
  }
  return roots;
}

}  // namespace

KelvinCheck kelvin_fixed_point_check(const Bubble& b, const ParamTriple& P, const Vec& z,
                                     const std::vector<Point>& samples, double lambda_scale) {
  if (!(b.c > 0.0)) throw DomainError("kelvin_fixed_point_check needs c > 0");
  if (z.last() != 0.0) throw DomainError("Kelvin center must lie on the boundary");
  KelvinCheck K;
  K.lambda_bar = std::sqrt(b.d * b.d + dist2(z, b.y0));
  const double lam = lambda_scale * K.lambda_bar;
  for (const auto& y : samples) {
    if (dist2(y.x, z) == 0.0) continue;
    double u = bubble_u(b, P, y.x);
    K.max_residual = std::max(K.max_residual, std::abs(kelvin_u(b, P, z, lam, y.x) - u) / u);
  }
  // Independent determination of the fixed radius from two samples
  // The second root of each probe sits at |y - z|; the nearest and farthest
  // samples keep those apart.
  std::vector<Vec> probes;
  const Point* near = nullptr;
  const Point* far = nullptr;
  for (const auto& y : samples) {
    double r = dist2(y.x, z);
    if (r == 0.0) continue;
    if (!near || r < dist2(near->x, z)) near = &y;
    if (!far || r > dist2(far->x, z)) far = &y;
  }
  if (near && far && near != far) probes = {near->x, far->x};
  if (probes.size() == 2) {
    auto r1 = lambda_roots(b, P, z, probes[0], K.lambda_bar);
    auto r2 = lambda_roots(b, P, z, probes[1], K.lambda_bar);
    for (double a : r1)
      for (double c : r2)
        if (std::abs(a - c) <= 1e-8 * a) K.lambda_solved = a;
    K.lambda_validated = K.lambda_solved > 0.0 &&
                         std::abs(K.lambda_solved - K.lambda_bar) <= 1e-9 * K.lambda_bar;
  }
  return K;
}

double kelvin_norm_ratio(const Bubble& b, const ParamTriple& P, const Vec& z, double lambda,
                         int level) {
  if (!(lambda > 0.0)) throw DomainError("Kelvin radius must be positive");
  const double q = conformal_exponents(P).theta + 1.0;
  // Polar rules about each bubble's peak. The Kelvin image is again a bubble:
  // invert (y0, d) in the upper half-space to read off its center and scale.
  const double m2 = b.d * b.d + dist2(b.y0, z);
  const Vec peak = z + (lambda * lambda / m2) * (b.y0 - z);
  double a = polar_boundary_integral(
      [&](const Vec& y, double) { return std::pow(bubble_u(b, P, y), q); }, b.y0, b.d, P.n, level);
  double k = polar_boundary_integral(
      [&](const Vec& y, double) { return std::pow(kelvin_u(b, P, z, lambda, y), q); }, peak,
      b.d * lambda * lambda / m2, P.n, level);
  return std::pow(k / a, 1.0 / q);
}

FrankLiebReport frank_lieb_conditions_check(const Bubble& b, const ParamTriple& P,
                                            const std::vector<Point>& samples,
                                            std::uint64_t seed) {
  if (!(b.c > 0.0)) throw DomainError("frank_lieb_conditions_check needs c > 0");
  const int n = P.n;
  const int m = n - 1;  // dimension of the boundary hyperplane
  const double theta = (n + P.alpha - 2.0) / (n - P.alpha);
  auto g = [&](const Vec& y) { return std::pow(bubble_u(b, P, y), theta + 1.0); };
  Rng rng(seed);
  auto random_dir = [&] {
    Vec e(1);
    if (m >= 2) e = rng.unit_vector(m);
    else e[0] = 1.0;
    return lift(e, 0.0);
  };
  FrankLiebReport R;
  for (int k = 0; k < 10; ++k) {
    Vec z = lift(rng.uniform(-2.0, 2.0) * head(random_dir()), 0.0);
    double lam = std::sqrt(b.d * b.d + dist2(z, b.y0));
    for (const auto& y : samples) {
      double r = dist(y.x, z);
      if (r == 0.0) continue;
      double gy = g(y.x);
      double gi = std::pow(lam / r, 2.0 * m) * g(invert_raw(y.x, z, lam));
      R.inversion_residual = std::max(R.inversion_residual, std::abs(gi - gy) / gy);
    }
  }
  for (int k = 0; k < 10; ++k) {
    Vec e = random_dir();
    double mu = dot(e, b.y0);
    for (const auto& y : samples) {
      double gy = g(y.x);
      R.reflection_residual =
          std::max(R.reflection_residual, std::abs(g(reflect_raw(y.x, e, mu)) - gy) / gy);
      R.witness_residual = std::max(
          R.witness_residual, std::abs(g(reflect_raw(y.x, e, mu + 0.5)) - gy) / gy);
    }
  }
  const double c1 = std::pow(b.c, (n - P.alpha) / (n + P.alpha - 2.0));
  const double cprime = std::pow(c1, theta + 1.0);
  for (const auto& y : samples) {
    double target = cprime * std::pow(b.d * b.d + dist2(y.x, b.y0), -(n - 1.0));
    R.form_residual = std::max(R.form_residual, std::abs(g(y.x) - target) / target);
  }
  R.pass = R.inversion_residual < 1e-12 && R.reflection_residual < 1e-12 &&
           R.form_residual < 1e-12 && R.witness_residual > 1e-6;
  return R;
}

MovingPlaneReport moving_plane_reflection_check(const Bubble& b, const ParamTriple& P,
                                                const Vec& e, double mu,
                                                const std::vector<Point>& samples) {
  if (std::abs(norm(e) - 1.0) > 1e-12 || std::abs(e.last()) > 1e-12)
    throw DomainError("moving-plane direction must be a unit vector orthogonal to e_n");
  MovingPlaneReport R;
  constexpr double kTol = 1e-13;
  bool all_equal = true;
  for (const auto& y : samples) {
    if (dot(y.x, e) < mu) continue;
    ++R.considered;
    double u = bubble_u(b, P, y.x);
    double ur = bubble_u(b, P, reflect_raw(y.x, e, mu));
    double rel = (ur - u) / u;
    R.max_rel_diff = std::max(R.max_rel_diff, std::abs(rel));
    if (rel < -kTol) ++R.violations;
    if (rel > kTol) ++R.strict;
    if (std::abs(rel) > kTol) all_equal = false;
  }
  R.relation_holds = R.violations == 0;
  R.equality = R.considered > 0 && all_equal;
  return R;
}

}  // namespace confext
