#pragma once

#include <functional>
#include <utility>

#include "confext/geometry.hpp"
#include "confext/params.hpp"
#include "confext/quadrature.hpp"
#include "confext/trial.hpp"

namespace confext {

using BoundaryField = std::function<double(const Vec&)>;
using InteriorField = std::function<double(const Node&)>;

// Public extend_ball refuses points with 1 - |xi| below this floor.
inline constexpr double kNearBoundaryFloor = 1e-6;
// Interior nodes closer to the sphere than this are dropped.
inline constexpr double kGapFloor = 1e-12;

double kernel_ball(const ParamTriple& P, const Point& xi, const Point& zeta);
double kernel_halfspace(const ParamTriple& P, const Point& x, const Point& y);
// H(xi, zeta) with 1 - |xi| = gap supplied
double kernel_ball_raw(const ParamTriple& P, const Vec& xi, double gap, const Vec& zeta);
double kernel_halfspace_raw(const ParamTriple& P, const Vec& x, const Vec& y);

// Ball node with an accurate gap 1 - |xi|.
Node ball_node(const Vec& xi);
// x = T(xi) with x_n computed from the gap of xi.
Node T_node(const Node& xi);
// xi = T^{-1}(x) with the gap computed from x_n.
Node T_inv_node(const Vec& x);

double extend_ball(const TrialFunction& f, const ParamTriple& P, const Point& xi, int level);
// E_B f at a ball node (no floor check; graded depth capped at 40).
double extend_ball_at(const BoundaryField& f, const ParamTriple& P, const Node& xi, int level);
double extend_ball_at(const TrialFunction& f, const ParamTriple& P, const Node& xi, int level);

double restrict_ball(const InteriorField& g, const ParamTriple& P, const Point& zeta, int level);

// E f(x) on the half-space, through the ball: w(x)^{n-alpha-2beta} E_B F(T^{-1} x).
double extend_halfspace(const TrialFunction& f, const ParamTriple& P, const Point& x, int level);

// Kernel powers for the split-exponent finiteness checks:
// int_B H(xi, zeta)^q dxi and int_{dB} H(xi, zeta)^q dS_zeta.
double ball_kernel_power_integral(const ParamTriple& P, const Vec& zeta, double q, int level);
double sphere_kernel_power_integral(const ParamTriple& P, const Node& xi, double q, int level);

// Images of the weighted half-space system: lhs(y) is the boundary
// integral operator applied to v, rhs(x) the interior one applied to u.
struct WeightedPair {
  BoundaryField lhs;
  InteriorField rhs;
};
WeightedPair weighted_pair_apply(BoundaryField u, InteriorField v, const ParamTriple& P,
                                 double p, double t, int level);

// Ball-to-half-space transform of a ball solution f:
// u(y) = w(y)^{2(n-1)/p'} f^{p-1}(rho T^{-1} y), v(x) = w(x)^{2n/t'} (E_B f)(rho T^{-1} x).
struct TransformedSolution {
  BoundaryField u;
  InteriorField v;
};
TransformedSolution transform_ball_solution(const TrialFunction& f, const ParamTriple& P,
                                            double p, double t, const Rotation& rho, int level);

// Double integral of H f g over dB x B on graded rules (E_B evaluated at
// the nodes of the ball rule).
double pairing(const TrialFunction& f, const InteriorField& g, const ParamTriple& P, int level);
// Same pairing for half-space data, through the conformal pullback.
double pairing_halfspace(const TrialFunction& f, const InteriorField& g, const ParamTriple& P,
                         int level);

// Three evaluations of the pairing on one shared sphere rule and one ball
// rule: the double sum, <E_B f, g> and <f, R_B g>.
struct Adjointness {
  double pairing = 0, extend_side = 0, restrict_side = 0;
};
Adjointness adjointness_on_rules(const BoundaryField& f, const InteriorField& g,
                                 const ParamTriple& P, const QuadratureRule& sphere,
                                 const QuadratureRule& ball);

double boundary_norm(const TrialFunction& f, double p, const ParamTriple& P, int level);
double interior_norm_ball(const InteriorField& g, double t, const ParamTriple& P, int level);
double interior_norm_halfspace(const InteriorField& g, double t, const ParamTriple& P,
                               int level);

// Grading of the radial tanh-sinh map used for interior norms.
inline constexpr double kNormGrading = 0.25;

}  // namespace confext
