#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <type_traits>
#include <vector>

#include "confext/errors.hpp"
#include "confext/geometry.hpp"
#include "confext/parallel.hpp"
#include "confext/vec.hpp"

namespace confext {

inline constexpr double kPi = std::numbers::pi;

double unit_ball_volume(int n);                   // omega_n
inline double sphere_area(int n) { return n * unit_ball_volume(n); }  // |S^{n-1}|

// 1-D rule on an interval. lo/hi hold the distance of each node to the left
// and right endpoint, each accurate near its own endpoint.
struct Rule1D {
  std::vector<double> x, w, lo, hi;
  std::size_t size() const { return x.size(); }
};

Rule1D gauss_legendre(int m, double a, double b);
// tanh-sinh on (a, b) with step h; nodes whose distance to either endpoint,
// relative to b - a, falls below floor are dropped.
Rule1D tanh_sinh(double h, double a, double b, double floor);
double tanh_sinh_step(int level);

// Polar-angle rule on [0, pi] with dyadic panels refined towards 0 down to
// roughly `gap`; m Gauss-Legendre points per panel.
Rule1D graded_polar(double gap, int m, int max_depth);

// Radial rule on (0, 1): Gauss-Legendre for grading 0, otherwise tanh-sinh
// in s with r = 1 - (1-s)^{1/(1-grading)}. lo = r, hi = 1 - r. The weights
// do not include r^{n-1}.
Rule1D radial_rule(int level, double grading, double gap_floor);

enum class Domain { Sphere, Ball, BoundaryHalfspace, Halfspace };
const char* domain_name(Domain d);

// gap is 1 - |x| for ball nodes (0 on the sphere) and x_n on the half-space.
struct Node {
  Vec x;
  double gap = 0.0;
};

struct QuadratureRule {
  Domain domain = Domain::Sphere;
  int dim = 0;
  int level = 0;
  std::vector<Node> nodes;
  std::vector<double> weights;
  double est_error_budget = 0.0;
  std::shared_ptr<const QuadratureRule> coarse;  // level - 1, for est_error

  std::size_t size() const { return nodes.size(); }
};

// Rules are cached per (kind, n, level, grading); returned rules are shared
// and immutable.
std::shared_ptr<const QuadratureRule> sphere_rule(int n, int level);
std::shared_ptr<const QuadratureRule> ball_rule(int n, int level, double grading);
std::shared_ptr<const QuadratureRule> halfspace_rule_via_pullback(int n, int level,
                                                                  bool interior);

// Rules without the embedded coarse rule. sphere_nodes(1, .) is S^0 = {-1, 1}.
QuadratureRule build_sphere_rule(int n, int level);
QuadratureRule build_ball_rule(int n, int level, double grading, double gap_floor);

// Sphere rule graded around the unit vector axis, for kernels peaked there
// at scale gap.
struct CapRule {
  Rule1D polar;
  std::shared_ptr<const QuadratureRule> ring;  // sphere in dimension n-1
};
CapRule cap_rule(int n, double gap, int level, int max_depth = 40);

struct Estimate {
  double value = 0.0;
  double est_error = 0.0;
};

namespace detail {
template <class F>
double call_field(F& f, const Node& nd) {
  if constexpr (std::is_invocable_r_v<double, F&, const Node&>)
    return f(nd);
  else
    return f(nd.x);
}

template <class F>
double weighted_sum(const QuadratureRule& rule, F& f, Exec exec) {
  std::vector<double> vals(rule.size());
  parallel_fill(
      rule.size(),
      [&](std::size_t i) {
        double v = call_field(f, rule.nodes[i]);
        if (!std::isfinite(v)) throw QuadratureError(rule.nodes[i].x, v);
        return rule.weights[i] * v;
      },
      vals.data(), exec);
  return pairwise_sum(vals);
}
}  // namespace detail

// Sum of w_i f(node_i) in a fixed order. The field may take a Vec or a Node.
template <class F>
Estimate integrate(const QuadratureRule& rule, F&& f, Exec exec = default_exec()) {
  Estimate e;
  e.value = detail::weighted_sum(rule, f, exec);
  if (rule.coarse) e.est_error = std::abs(e.value - detail::weighted_sum(*rule.coarse, f, exec));
  return e;
}

template <class F>
Estimate integrate_serial(const QuadratureRule& rule, F&& f) {
  return integrate(rule, f, Exec::Serial);
}

}  // namespace confext
