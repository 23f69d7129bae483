#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "confext/params.hpp"
#include "confext/vec.hpp"

namespace confext {

// c (d^2 + |y - y0|^2)^{-(n+alpha-2)/2} on the boundary hyperplane.
struct Bubble {
  double c = 1.0;
  double d = 1.0;
  Vec y0;  // n coordinates, last one 0
};
Bubble make_bubble(double c, double d, const Vec& y0);

// Normalized zonal polynomial of degree l in dimension n: the Gegenbauer
// polynomial C_l^{(n-2)/2}(t)/C_l^{(n-2)/2}(1), Chebyshev T_l(t) for n = 2.
// Inline: it sits in the innermost loop of every zonal trial evaluation.
inline double zonal(int n, int l, double t) {
  if (l == 0) return 1.0;
  double c0 = 1.0, c1 = t;
  if (n == 2) {
    for (int k = 1; k < l; ++k) {
      double c2 = 2.0 * t * c1 - c0;
      c0 = c1, c1 = c2;
    }
    return c1;
  }
  // C_l^lam(1) = prod_{k<l} (k + 2 lam)/(k + 1), which is 1 for n = 3
  const double lam = 0.5 * (n - 2);
  c1 = 2.0 * lam * t;
  double norm = 2.0 * lam;
  for (int k = 1; k < l; ++k) {
    double c2 = (2.0 * (k + lam) * t * c1 - (k + 2.0 * lam - 1.0) * c0) / (k + 1);
    c0 = c1, c1 = c2;
    norm *= (k + 2.0 * lam) / (k + 1);
  }
  return n == 3 ? c1 : c1 / norm;
}

struct Zonal {
  int degree = 1;
  double eps = 0.0;
};

// 1 + sum eps_l Y_l(t)
inline double zonal_factor(const std::vector<Zonal>& terms, int n, double t) {
  t = t < -1.0 ? -1.0 : (t > 1.0 ? 1.0 : t);
  double s = 1.0;
  for (const auto& z : terms) s += z.eps * zonal(n, z.degree, t);
  return s;
}

struct ConstantTrial {
  double c = 1.0;
};
struct BubbleTrial {
  Bubble b;
  ParamTriple P;
};
// (2/|zeta + e_n|)^{n+alpha-2} f(T zeta) for the bubble f, in closed form
struct BallBubbleTrial {
  Bubble b;
  ParamTriple P;
};
// c * base(zeta) * (1 + sum eps_l Y_l(zeta . axis)); base = 1 without a bubble
struct PerturbedTrial {
  double c = 1.0;
  std::vector<Zonal> terms;
  Vec axis;
  bool has_base = false;
  BallBubbleTrial base;
};
// Zonal table: linear interpolation of values over ascending t = zeta . axis
struct TabulatedTrial {
  Vec axis;
  std::vector<double> t, values;
};

class TrialFunction;
// w(y)^{n+alpha-2} F(T^{-1} y): a ball trial seen on the half-space boundary
struct PullbackTrial {
  std::shared_ptr<const TrialFunction> ball;
  ParamTriple P;
};

class TrialFunction {
 public:
  using Variant = std::variant<ConstantTrial, BubbleTrial, BallBubbleTrial,
                               PerturbedTrial, TabulatedTrial, PullbackTrial>;

  TrialFunction() : v_(ConstantTrial{}) {}
  TrialFunction(Variant v) : v_(std::move(v)) {}

  static TrialFunction constant(double c);
  static TrialFunction bubble(const Bubble& b, const ParamTriple& P);
  static TrialFunction ball_bubble(const Bubble& b, const ParamTriple& P);
  static TrialFunction perturbed(double c, std::vector<Zonal> terms, const Vec& axis);
  static TrialFunction tabulated(const Vec& axis, std::vector<double> t,
                                 std::vector<double> values);
  static TrialFunction pullback(const TrialFunction& ball, const ParamTriple& P);

  // true for functions on the sphere, false for the boundary hyperplane
  bool on_ball() const;
  bool is_constant() const { return std::holds_alternative<ConstantTrial>(v_); }
  double operator()(const Vec& y) const;
  std::string describe() const;
  TrialFunction scaled(double k) const;

  const Variant& variant() const { return v_; }

 private:
  Variant v_;
};

// Ball representative of a trial: F = (2/|zeta+e_n|)^{n+alpha-2} f(T zeta)
// for half-space trials, the trial itself otherwise.
TrialFunction to_ball(const TrialFunction& f, const ParamTriple& P);

double ball_bubble_eval(const Bubble& b, const ParamTriple& P, const Vec& zeta);
double bubble_value(const Bubble& b, const ParamTriple& P, const Vec& y);

}  // namespace confext
