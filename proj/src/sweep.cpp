#include "confext/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "confext/errors.hpp"
#include "confext/operators.hpp"
#include "confext/operators_impl.hpp"
#include "confext/quadrature.hpp"

namespace confext {

namespace {

// A ball bubble depends on zeta only through zeta . a: its denominator is
// 2A - v . zeta with A = d^2 + |y0'|^2 + 4 and v = (8 y0', 16 - 2A).
Vec bubble_axis(const Bubble& b, int n) {
  double A = b.d * b.d + norm2(b.y0) + 4.0;
  Vec v = 8.0 * b.y0;
  v.last() = 16.0 - 2.0 * A;
  double nv = norm(v);
  return nv > 0.0 ? (1.0 / nv) * v : Vec::en(n);
}

template <class F>
double quotient_of(const F& f, const ParamTriple& P, double p, double s, int level) {
  auto sphere = sphere_rule(P.n, level);
  double den = integrate(*sphere, [&](const Vec& z) { return std::pow(std::abs(f(z)), p); }).value;
  if (!(den > 0.0)) throw DomainError("rayleigh_quotient of a zero trial");
  InteriorField g = [&](const Node& xi) {
    return detail::extend_ball_impl(f, P, xi.x, xi.gap, level);
  };
  return interior_norm_ball(g, s, P, level) / std::pow(den, 1.0 / p);
}

}  // namespace

double rayleigh_quotient(const TrialFunction& f, const ParamTriple& P, double p, double s,
                         int level) {
  require_valid(P);
  const TrialFunction F = to_ball(f, P);
  if (const auto* bb = std::get_if<BallBubbleTrial>(&F.variant())) {
    // rotate the peak onto the pole, where the tensor rules cluster
    Rotation Q = frame_with_last_axis(bubble_axis(bb->b, P.n));
    auto rotated = [&](const Vec& z) { return F(Q.apply(z)); };
    return quotient_of(rotated, P, p, s, level);
  }
  return quotient_of(F, P, p, s, level);
}

void validate_sweep_config(const SweepConfig& cfg) {
  if (std::find(cfg.amplitudes.begin(), cfg.amplitudes.end(), 0.0) == cfg.amplitudes.end())
    throw DomainError("sweep amplitude grid must contain 0");
  for (int d : cfg.degrees)
    if (d < 1) throw DomainError("sweep degrees must be >= 1");
  if (cfg.level < 2) throw DomainError("sweep level must be >= 2");
}

namespace {

Vec axis_for(const Vec& a, int n) {
  Vec e = Vec::unit(n, 0);
  if (a.n == n && norm(a) > 0.0) e = (1.0 / norm(a)) * a;
  return e;
}

double min_perturbation(const std::vector<Zonal>& terms, int n) {
  double m = std::numeric_limits<double>::infinity();
  constexpr int kGrid = 2000;
  for (int k = 0; k <= kGrid; ++k) {
    double t = -1.0 + 2.0 * k / kGrid;
    double v = 1.0;
    for (const auto& z : terms) v += z.eps * zonal(n, z.degree, t);
    m = std::min(m, v);
  }
  return m;
}

TrialFunction perturb(const TrialFunction& base, const ParamTriple& P, std::vector<Zonal> terms,
                      const Vec& axis) {
  const TrialFunction B = to_ball(base, P);
  PerturbedTrial t;
  t.terms = std::move(terms);
  t.axis = axis;
  if (const auto* c = std::get_if<ConstantTrial>(&B.variant())) {
    t.c = c->c;
  } else if (const auto* bb = std::get_if<BallBubbleTrial>(&B.variant())) {
    t.has_base = true;
    t.base = *bb;
  } else if (const auto* pt = std::get_if<PerturbedTrial>(&B.variant())) {
    if (!pt->terms.empty()) throw DomainError("sweep base must be unperturbed");
    t = *pt;
    t.terms = {};
  } else {
    throw DomainError("sweep base must be a constant or a bubble");
  }
  return TrialFunction(t);
}

}  // namespace

std::vector<SweepRow> perturbation_sweep(const SweepConfig& cfg, const ParamTriple& P, double p,
                                         double s) {
  validate_sweep_config(cfg);
  const Vec axis = axis_for(cfg.axis, P.n);
  std::vector<SweepRow> rows;
  for (int d : cfg.degrees)
    for (double a : cfg.amplitudes) rows.push_back(SweepRow{d, a, 0.0, false});
  std::sort(rows.begin(), rows.end(), [](const SweepRow& x, const SweepRow& y) {
    return x.degree != y.degree ? x.degree < y.degree : x.amplitude < y.amplitude;
  });
  // epsilon = 0 is the same trial for every degree
  const double q0 = rayleigh_quotient(cfg.base, P, p, s, cfg.level);
  for (auto& r : rows) {
    std::vector<Zonal> terms{Zonal{r.degree, r.amplitude}};
    if (r.amplitude == 0.0) {
      r.quotient = q0;
    } else if (min_perturbation(terms, P.n) <= 0.0) {
      r.flagged = true;
      r.quotient = std::numeric_limits<double>::quiet_NaN();
    } else {
      r.quotient = rayleigh_quotient(perturb(cfg.base, P, terms, axis), P, p, s, cfg.level);
    }
  }
  return rows;
}

BubbleScan bubble_family_scan(const ParamTriple& P, const std::vector<double>& d_grid,
                              const std::vector<Vec>& y0_grid, int level) {
  const ExponentSet E = conformal_exponents(P);
  BubbleScan S;
  double lo = std::numeric_limits<double>::infinity();
  for (double d : d_grid) {
    for (const Vec& y0 : y0_grid) {
      if (y0.n != P.n) throw DomainError("bubble center must have n coordinates");
      Bubble b = make_bubble(1.0, d, y0);
      double q = rayleigh_quotient(TrialFunction::bubble(b, P), P, E.p, E.s, level);
      S.rows.push_back(BubbleScanRow{d, y0, q});
      S.max_quotient = std::max(S.max_quotient, q);
      lo = std::min(lo, q);
    }
  }
  if (!S.rows.empty()) S.spread = (S.max_quotient - lo) / S.max_quotient;
  return S;
}

namespace {

// Coordinates of the trial manifold around the start.
struct Chart {
  const ParamTriple* P = nullptr;
  bool bubble = false;
  double c = 1.0;
  Vec axis;
  std::vector<int> degrees;  // one coordinate per degree
  int y0_dims = 0;           // bubble: log d, then y0'

  std::vector<double> origin;

  // nullopt-like: returns false for a non-positive trial
  bool build(const std::vector<double>& x, TrialFunction& out) const {
    if (bubble) {
      double d = std::exp(x[0]);
      Vec y0 = Vec::zero(P->n);
      for (int k = 0; k < y0_dims; ++k) y0[k] = x[1 + k];
      if (!std::isfinite(d) || !(d > 0.0)) return false;
      out = TrialFunction::bubble(make_bubble(c, d, y0), *P);
      return true;
    }
    std::vector<Zonal> terms;
    for (std::size_t k = 0; k < degrees.size(); ++k) terms.push_back(Zonal{degrees[k], x[k]});
    if (min_perturbation(terms, P->n) <= 0.0) return false;
    PerturbedTrial t;
    t.c = c;
    t.axis = axis;
    t.terms = std::move(terms);
    out = TrialFunction(t);
    return true;
  }
};

Chart make_chart(const ParamTriple& P, const TrialFunction& start) {
  Chart ch;
  ch.P = &P;
  ch.axis = Vec::unit(P.n, 0);
  const auto& v = start.variant();
  if (const auto* b = std::get_if<BubbleTrial>(&v)) {
    ch.bubble = true;
    ch.c = b->b.c;
    ch.y0_dims = P.n - 1;
    ch.origin.push_back(std::log(b->b.d));
    for (int k = 0; k < P.n - 1; ++k) ch.origin.push_back(b->b.y0[k]);
    return ch;
  }
  ch.degrees = {1, 2, 3, 4};
  ch.origin.assign(4, 0.0);
  if (const auto* c = std::get_if<ConstantTrial>(&v)) {
    ch.c = c->c;
  } else if (const auto* pt = std::get_if<PerturbedTrial>(&v)) {
    if (pt->has_base) throw DomainError("ascend: perturbed bubbles are not supported");
    ch.c = pt->c;
    ch.axis = pt->axis;
    for (const auto& z : pt->terms) {
      auto it = std::find(ch.degrees.begin(), ch.degrees.end(), z.degree);
      if (it == ch.degrees.end()) {
        ch.degrees.push_back(z.degree);
        ch.origin.push_back(z.eps);
      } else {
        ch.origin[it - ch.degrees.begin()] += z.eps;
      }
    }
  } else {
    throw DomainError("ascend: start must be a constant, perturbed constant or bubble");
  }
  return ch;
}

}  // namespace

AscentResult ascend(const ParamTriple& P, double p, double s, const TrialFunction& start,
                    int steps, double step_size, int level) {
  if (!(step_size > 0.0)) throw DomainError("ascend needs a positive step");
  const Chart ch = make_chart(P, start);
  AscentResult R;
  std::vector<double> x = ch.origin;
  if (!ch.build(x, R.best)) throw DomainError("ascend: start trial is not positive");
  R.best_quotient = rayleigh_quotient(R.best, P, p, s, level);
  ++R.evaluations;
  R.trace.push_back(R.best_quotient);
  // improvements below this are quadrature noise
  const double tol = 1e-9 * R.best_quotient;
  constexpr int kMaxRetries = 20;
  const double h_min = step_size / 64.0;
  double h = step_size;
  for (int it = 0; it < steps && h >= h_min; ++it) {
    double best_q = R.best_quotient;
    std::vector<double> best_x;
    TrialFunction best_f;
    for (std::size_t k = 0; k < x.size(); ++k) {
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> y = x;
        TrialFunction f;
        double off = h;
        int tries = 0;
        for (; tries <= kMaxRetries; ++tries, off *= 0.5) {
          y[k] = x[k] + sgn * off;
          if (ch.build(y, f)) break;
          ++R.halvings;
        }
        if (tries > kMaxRetries) continue;
        double q = rayleigh_quotient(f, P, p, s, level);
        ++R.evaluations;
        if (q > best_q + tol) {
          best_q = q;
          best_x = y;
          best_f = f;
        }
      }
    }
    if (!best_x.empty()) {
      x = best_x;
      R.best = best_f;
      R.best_quotient = best_q;
    } else {
      h *= 0.5;
    }
    R.trace.push_back(R.best_quotient);
  }
  return R;
}

}  // namespace confext
