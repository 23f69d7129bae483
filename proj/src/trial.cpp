#include "confext/trial.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "confext/errors.hpp"
#include "confext/geometry.hpp"

namespace confext {

Bubble make_bubble(double c, double d, const Vec& y0) {
  if (!(d > 0.0)) throw DomainError("bubble scale d must be positive");
  if (!(c >= 0.0)) throw DomainError("bubble amplitude c must be nonnegative");
  if (y0.last() != 0.0) throw DomainError("bubble center must lie on the boundary");
  return Bubble{c, d, y0};
}

double bubble_value(const Bubble& b, const ParamTriple& P, const Vec& y) {
  if (b.c == 0.0) return 0.0;
  double k = P.n + P.alpha - 2.0;
  return b.c * std::pow(b.d * b.d + dist2(y, b.y0), -0.5 * k);
}

double ball_bubble_eval(const Bubble& b, const ParamTriple& P, const Vec& zeta) {
  if (b.c == 0.0) return 0.0;
  const int n = zeta.n;
  double k = n + P.alpha - 2.0;
  Vec q = zeta;
  q.last() += 1.0;
  Vec c0 = b.y0;
  c0.last() = 2.0;
  double q2 = norm2(q);
  // N = |q|^2 (d^2 + |T zeta - y0|^2) = d^2|q|^2 + |4q/|q| - |q| c0|^2
  double N;
  if (q2 > 1e-6) {
    double qn = std::sqrt(q2);
    Vec v = (4.0 / qn) * q - qn * c0;
    N = b.d * b.d * q2 + norm2(v);
  } else {
    N = b.d * b.d * q2 + 16.0 - 8.0 * dot(q, c0) + q2 * norm2(c0);
  }
  return b.c * std::pow(0.25 * N, -0.5 * k);
}

TrialFunction TrialFunction::constant(double c) { return TrialFunction(ConstantTrial{c}); }
TrialFunction TrialFunction::bubble(const Bubble& b, const ParamTriple& P) {
  return TrialFunction(BubbleTrial{b, P});
}
TrialFunction TrialFunction::ball_bubble(const Bubble& b, const ParamTriple& P) {
  return TrialFunction(BallBubbleTrial{b, P});
}
TrialFunction TrialFunction::perturbed(double c, std::vector<Zonal> terms, const Vec& axis) {
  for (const auto& z : terms)
    if (z.degree < 1) throw DomainError("perturbation degree must be >= 1");
  PerturbedTrial t;
  t.c = c;
  t.terms = std::move(terms);
  t.axis = (1.0 / norm(axis)) * axis;
  return TrialFunction(t);
}
TrialFunction TrialFunction::tabulated(const Vec& axis, std::vector<double> t,
                                       std::vector<double> values) {
  if (t.size() < 2 || t.size() != values.size())
    throw DomainError("tabulated trial needs matching grids with >= 2 points");
  if (!std::is_sorted(t.begin(), t.end())) throw DomainError("tabulated grid must ascend");
  return TrialFunction(TabulatedTrial{(1.0 / norm(axis)) * axis, std::move(t), std::move(values)});
}
TrialFunction TrialFunction::pullback(const TrialFunction& ball, const ParamTriple& P) {
  if (!ball.on_ball()) throw DomainError("pullback expects a trial on the sphere");
  return TrialFunction(PullbackTrial{std::make_shared<const TrialFunction>(ball), P});
}

bool TrialFunction::on_ball() const {
  return !std::holds_alternative<BubbleTrial>(v_) && !std::holds_alternative<PullbackTrial>(v_);
}

double TrialFunction::operator()(const Vec& y) const {
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstantTrial>) {
          return f.c;
        } else if constexpr (std::is_same_v<T, BubbleTrial>) {
          return bubble_value(f.b, f.P, y);
        } else if constexpr (std::is_same_v<T, BallBubbleTrial>) {
          return ball_bubble_eval(f.b, f.P, y);
        } else if constexpr (std::is_same_v<T, PerturbedTrial>) {
          double base = f.has_base ? ball_bubble_eval(f.base.b, f.base.P, y) : 1.0;
          return f.c * base * zonal_factor(f.terms, y.n, dot(y, f.axis));
        } else if constexpr (std::is_same_v<T, TabulatedTrial>) {
          double t = std::clamp(dot(y, f.axis), f.t.front(), f.t.back());
          auto it = std::upper_bound(f.t.begin(), f.t.end(), t);
          std::size_t j = std::clamp<std::size_t>(it - f.t.begin(), 1, f.t.size() - 1);
          double u = (t - f.t[j - 1]) / (f.t[j] - f.t[j - 1]);
          return (1.0 - u) * f.values[j - 1] + u * f.values[j];
        } else {
          double k = y.n + f.P.alpha - 2.0;
          return std::pow(w_raw(y), k) * (*f.ball)(T_inv_raw(y));
        }
      },
      v_);
}

std::string TrialFunction::describe() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstantTrial>) {
          return fmt::format("constant({})", f.c);
        } else if constexpr (std::is_same_v<T, BubbleTrial>) {
          return fmt::format("bubble(c={}, d={}, y0={})", f.b.c, f.b.d, to_string(f.b.y0));
        } else if constexpr (std::is_same_v<T, BallBubbleTrial>) {
          return fmt::format("ball_bubble(c={}, d={}, y0={})", f.b.c, f.b.d, to_string(f.b.y0));
        } else if constexpr (std::is_same_v<T, PerturbedTrial>) {
          std::string s = fmt::format("perturbed(c={}", f.c);
          if (f.has_base) s += fmt::format(", d={}, y0={}", f.base.b.d, to_string(f.base.b.y0));
          for (const auto& z : f.terms) s += fmt::format(", Y{}:{}", z.degree, z.eps);
          return s + ")";
        } else if constexpr (std::is_same_v<T, TabulatedTrial>) {
          return fmt::format("tabulated({} points)", f.t.size());
        } else {
          return "pullback(" + f.ball->describe() + ")";
        }
      },
      v_);
}

TrialFunction TrialFunction::scaled(double k) const {
  return std::visit(
      [&](auto f) -> TrialFunction {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstantTrial> || std::is_same_v<T, PerturbedTrial>) {
          f.c *= k;
        } else if constexpr (std::is_same_v<T, BubbleTrial> || std::is_same_v<T, BallBubbleTrial>) {
          f.b.c *= k;
        } else if constexpr (std::is_same_v<T, TabulatedTrial>) {
          for (auto& v : f.values) v *= k;
        } else {
          f.ball = std::make_shared<const TrialFunction>(f.ball->scaled(k));
        }
        return TrialFunction(f);
      },
      v_);
}

TrialFunction to_ball(const TrialFunction& f, const ParamTriple& P) {
  if (const auto* b = std::get_if<BubbleTrial>(&f.variant()))
    return TrialFunction::ball_bubble(b->b, P);
  if (const auto* pb = std::get_if<PullbackTrial>(&f.variant())) return *pb->ball;
  return f;
}

}  // namespace confext
