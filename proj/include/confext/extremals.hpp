#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "confext/geometry.hpp"
#include "confext/operators.hpp"
#include "confext/params.hpp"
#include "confext/trial.hpp"

namespace confext {

double bubble_eval(const Bubble& b, const ParamTriple& P, const Point& y);
TrialFunction bubble_to_ball(const Bubble& b, const ParamTriple& P);
// u = f^{(n-alpha)/(n+alpha-2)} in the closed form c1 (d^2 + |y-y0|^2)^{-(n-alpha)/2}
double bubble_u(const Bubble& b, const ParamTriple& P, const Vec& y);

struct RatioStats {
  double ratio_mean = 0.0;
  double ratio_cv = 0.0;  // population standard deviation / mean
  std::vector<double> ratios;
};
RatioStats ratio_stats(std::vector<double> ratios);

// Seeded boundary samples with |y'| spread over [0.05, 5].
std::vector<Point> boundary_samples(int n, int count, std::uint64_t seed);
// Seeded points on the unit sphere.
std::vector<Point> sphere_samples(int n, int count, std::uint64_t seed);

RatioStats el_residual_halfspace(const Bubble& b, const ParamTriple& P,
                                 const std::vector<Point>& samples, int level);
// Same check for an arbitrary half-space trial (e.g. a perturbed bubble).
RatioStats el_residual_halfspace(const TrialFunction& f, const ParamTriple& P,
                                 const std::vector<Point>& samples, int level);
RatioStats el_residual_ball(const TrialFunction& f, const ParamTriple& P, double p, double s,
                            const std::vector<Point>& samples, int level);

struct SystemReport {
  RatioStats boundary_eq;   // u = int x_n^beta v^kappa |x-y|^{alpha-n} dx
  RatioStats interior_eq;   // v = int x_n^beta u^theta |x-y|^{alpha-n} dy
  double u_form_residual = 0.0;  // closed-form u against f^{(n-alpha)/(n+alpha-2)}
  double axial_asymmetry = 0.0;  // max |v(x) - v(reflected x)| / v(x)
};
SystemReport system_residual(const Bubble& b, const ParamTriple& P,
                             const std::vector<Point>& samples, int level);

enum class LimitCase { A, B, C };
const char* limit_case_name(LimitCase c);
LimitCase limit_case(const ParamTriple& P);
std::vector<double> default_limit_grid(LimitCase c);

struct LimitScan {
  LimitCase kase = LimitCase::A;
  std::vector<double> xn;
  std::vector<double> scaled_values;
  double extrapolated = 0.0;
  double reference = 0.0;
  double ratio = 0.0;  // extrapolated / reference
};
LimitScan boundary_limit_scan(const Bubble& b, const ParamTriple& P, const Point& x_prime,
                              const std::vector<double>& xn_grid, int level);

// Richardson elimination of the listed powers of h from S(h) on a
// geometric grid; returns the entry of the most self-consistent column.
double richardson(const std::vector<double>& h, const std::vector<double>& S,
                  const std::vector<double>& powers);

// int_{R^{n-1}} f(y) |x' - y|^{alpha-n} dy by polar quadrature about x'.
double direct_boundary_integral(const TrialFunction& f, const ParamTriple& P,
                                const Vec& x_prime, int level);

struct KelvinCheck {
  double lambda_bar = 0.0;
  double lambda_solved = 0.0;  // common root of u_{z,lambda}(y) = u(y) at two samples
  bool lambda_validated = false;
  double max_residual = 0.0;
};
KelvinCheck kelvin_fixed_point_check(const Bubble& b, const ParamTriple& P, const Vec& z,
                                     const std::vector<Point>& samples,
                                     double lambda_scale = 1.0);

// ||u_{z,lambda}|| / ||u|| in L^{theta+1}(boundary), theta conformal, by
// pullback quadrature; 1 for every (z, lambda) up to quadrature error.
double kelvin_norm_ratio(const Bubble& b, const ParamTriple& P, const Vec& z, double lambda,
                         int level);

struct FrankLiebReport {
  double inversion_residual = 0.0;
  double reflection_residual = 0.0;
  double witness_residual = 0.0;  // plane not through y0
  double form_residual = 0.0;
  bool pass = false;
};
FrankLiebReport frank_lieb_conditions_check(const Bubble& b, const ParamTriple& P,
                                            const std::vector<Point>& samples,
                                            std::uint64_t seed = 0);

struct MovingPlaneReport {
  int considered = 0;   // samples with y.e >= mu
  int violations = 0;   // u(y) > u(R y)
  int strict = 0;       // u(y) < u(R y)
  double max_rel_diff = 0.0;
  bool relation_holds = false;  // no violations
  bool equality = false;        // all considered samples equal
};
MovingPlaneReport moving_plane_reflection_check(const Bubble& b, const ParamTriple& P,
                                                const Vec& e, double mu,
                                                const std::vector<Point>& samples);

}  // namespace confext
