#pragma once

// Inner kernels shared by operators, constants and extremals. They run
// serially; callers parallelize over evaluation points.

#include <cmath>
#include <type_traits>
#include <variant>
#include <vector>

#include "confext/operators.hpp"

namespace confext::detail {

struct Frame {
  Vec axis;
  std::vector<Vec> ring;        // Q (eta_j, 0), orthogonal to axis
  std::vector<double> ring_w;
};

inline Frame make_frame(const Vec& axis, const QuadratureRule& ring) {
  Frame F;
  F.axis = axis;
  Rotation Q = frame_with_last_axis(axis);
  F.ring.reserve(ring.size());
  for (std::size_t j = 0; j < ring.size(); ++j) {
    F.ring.push_back(Q.apply(lift(ring.nodes[j].x, 0.0)));
    F.ring_w.push_back(ring.weights[j]);
  }
  return F;
}

// Sum over the cap rule graded at 1 - |xi| = gap; node(sp, cp, j) is the
// integrand at sin/cos of the polar angle about xi and ring node j.
template <class Node_>
double cap_sum(const ParamTriple& P, const CapRule& cap, std::size_t ring_size, double gap,
               double q, Node_&& node) {
  const int n = P.n;
  const double r = 1.0 - gap;
  const double half_expo = 0.5 * q * (P.alpha - n);
  double sum = 0.0;
  for (std::size_t i = 0; i < cap.polar.size(); ++i) {
    double phi = cap.polar.x[i];
    double sp = std::sin(phi), cp = std::cos(phi), sh = std::sin(0.5 * phi);
    double d2 = gap * gap + 4.0 * r * sh * sh;
    double inner = 0.0;
    for (std::size_t j = 0; j < ring_size; ++j) inner += node(sp, cp, j);
    sum += cap.polar.w[i] * std::pow(d2, half_expo) * inner;
  }
  if (P.beta != 0.0) sum *= std::pow(0.5 * gap * (2.0 - gap), q * P.beta);
  return sum;
}

// int_{dB} H(xi, zeta)^q f(zeta) dS_zeta on the cap rule graded at 1 - |xi| = gap.
template <class F>
double extend_ball_impl(F& f, const ParamTriple& P, const Vec& xi, double gap, int level,
                        double q = 1.0) {
  const int n = xi.n;
  double xn = norm(xi);
  Vec axis = xn > 0.0 ? (1.0 / xn) * xi : Vec::en(n);
  CapRule cap = cap_rule(n, gap, level);
  Frame fr = make_frame(axis, *cap.ring);
  const std::size_t m = fr.ring.size();
  if constexpr (std::is_same_v<std::remove_const_t<F>, TrialFunction>) {
    // zonal trials only need zeta . a = sin(phi) (eta_j . a) + cos(phi) (axis . a)
    const auto* pt = std::get_if<PerturbedTrial>(&f.variant());
    if (pt && !pt->has_base) {
      std::vector<double> ra(m), wc(m);
      for (std::size_t j = 0; j < m; ++j) {
        ra[j] = dot(fr.ring[j], pt->axis);
        wc[j] = fr.ring_w[j] * pt->c;
      }
      const double aa = dot(axis, pt->axis);
      return cap_sum(P, cap, m, gap, q, [&](double sp, double cp, std::size_t j) {
        return wc[j] * zonal_factor(pt->terms, n, sp * ra[j] + cp * aa);
      });
    }
  }
  return cap_sum(P, cap, m, gap, q, [&](double sp, double cp, std::size_t j) {
    Vec z = sp * fr.ring[j];
    z += cp * axis;
    return fr.ring_w[j] * f(z);
  });
}

// int_B H(xi, zeta)^q g(xi) dxi in polar coordinates about zeta: xi = zeta + rho omega,
// omega = -cos(psi) zeta + sin(psi) eta, rho = 2 cos(psi) s.
// Nodes with 1 - |xi| below gap_floor are dropped; pass 0 when H^q is
// singular enough that the shell near the sphere carries visible mass.
template <class G>
double restrict_ball_impl(G& g, const ParamTriple& P, const Vec& zeta, int level,
                          double q = 1.0, double gap_floor = kGapFloor) {
  const int n = zeta.n;
  const double h = tanh_sinh_step(level);
  static thread_local int cached_level = -1;
  static thread_local Rule1D S, Psi;
  if (cached_level != level) {
    S = tanh_sinh(h, 0.0, 1.0, 1e-300);
    Psi = tanh_sinh(h, 0.0, 0.5 * kPi, 1e-15);
    cached_level = level;
  }
  auto ring = n - 1 >= 2 ? sphere_rule(n - 1, level) : cap_rule(n, 1.0, 1).ring;
  Frame fr = make_frame(zeta, *ring);
  const double rho_expo = n - 1.0 + q * (P.alpha - n);
  double sum = 0.0;
  for (std::size_t a = 0; a < Psi.size(); ++a) {
    double cpsi = std::sin(Psi.hi[a]);  // cos(psi), accurate near pi/2
    double spsi = std::sin(Psi.x[a]);
    double ell = 2.0 * cpsi;
    double wa = Psi.w[a] * std::pow(spsi, n - 2) * ell;
    for (std::size_t b = 0; b < S.size(); ++b) {
      double rho = ell * S.lo[b];
      double omr2 = rho * ell * S.hi[b];  // 1 - |xi|^2
      double gap = omr2 / (1.0 + std::sqrt(std::max(0.0, 1.0 - omr2)));
      if (!(gap > gap_floor)) continue;
      double wk = wa * S.w[b] * std::pow(rho, rho_expo);
      if (P.beta != 0.0) wk *= std::pow(0.5 * omr2, q * P.beta);
      double inner = 0.0;
      for (std::size_t j = 0; j < fr.ring.size(); ++j) {
        Vec xi = zeta;
        xi += (rho * spsi) * fr.ring[j];
        xi += (-rho * cpsi) * zeta;
        inner += fr.ring_w[j] * g(Node{xi, gap});
      }
      sum += wk * inner;
    }
  }
  return sum;
}

}  // namespace confext::detail
