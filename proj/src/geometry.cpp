#include "confext/geometry.hpp"

#include <cmath>

#include <fmt/format.h>

#include "confext/errors.hpp"

namespace confext {

const char* region_name(Region r) {
  switch (r) {
    case Region::BallInterior: return "ball-interior";
    case Region::BallBoundary: return "ball-boundary";
    case Region::HalfspaceInterior: return "halfspace-interior";
    case Region::HalfspaceBoundary: return "halfspace-boundary";
    case Region::Infinity: return "infinity";
  }
  return "?";
}

bool is_ball(Region r) {
  return r == Region::BallInterior || r == Region::BallBoundary;
}
bool is_halfspace(Region r) {
  return r == Region::HalfspaceInterior || r == Region::HalfspaceBoundary ||
         r == Region::Infinity;
}

Point make_point(const Vec& x, Region region) {
  auto bad = [&](const char* why) {
    throw DomainError(fmt::format("{} is not a valid {} point: {}", to_string(x),
                                  region_name(region), why));
  };
  switch (region) {
    case Region::BallInterior:
      if (!(norm2(x) < 1.0)) bad("|x| >= 1");
      break;
    case Region::BallBoundary:
      if (std::abs(norm(x) - 1.0) > kSphereTol) bad("||x| - 1| > 1e-12");
      break;
    case Region::HalfspaceInterior:
      if (!(x.last() > 0.0)) bad("last coordinate <= 0");
      break;
    case Region::HalfspaceBoundary:
      if (x.last() != 0.0) bad("last coordinate != 0");
      break;
    case Region::Infinity:
      break;
  }
  return Point{x, region};
}

Point ball_interior(const Vec& x) { return make_point(x, Region::BallInterior); }
Point ball_boundary(const Vec& x) { return make_point(x, Region::BallBoundary); }
Point halfspace_interior(const Vec& x) {
  return make_point(x, Region::HalfspaceInterior);
}
Point halfspace_boundary(const Vec& x) {
  Vec y = x;
  if (std::abs(y.last()) > kSphereTol)
    throw DomainError(fmt::format("{} is not on the boundary hyperplane", to_string(x)));
  y.last() = 0.0;
  return Point{y, Region::HalfspaceBoundary};
}
Point infinity_point(int n) { return Point{Vec(n), Region::Infinity}; }

Vec T_raw(const Vec& xi) {
  Vec q = xi;
  q.last() += 1.0;
  double q2 = norm2(q);
  Vec x = (4.0 / q2) * q;
  // x_n = 2(1 - |xi|^2)/|xi + e_n|^2, written without cancellation
  x.last() = 2.0 * (1.0 - norm2(xi)) / q2;
  return x;
}

Vec T_inv_raw(const Vec& x) {
  Vec q = x;
  q.last() += 2.0;
  double q2 = norm2(q);
  Vec xi = (4.0 / q2) * q;
  xi.last() -= 1.0;
  return xi;
}

double w_raw(const Vec& x) {
  Vec q = x;
  q.last() += 2.0;
  return 2.0 / norm(q);
}

double T_inv_gap(const Vec& x) {
  double w = w_raw(x);
  double one_minus_r2 = 2.0 * w * w * x.last();
  double r = std::sqrt(std::max(0.0, 1.0 - one_minus_r2));
  return one_minus_r2 / (1.0 + r);
}

Point map_T(const Point& xi) {
  if (!is_ball(xi.region))
    throw DomainError(fmt::format("map_T expects a ball point, got {}", region_name(xi.region)));
  const int n = xi.x.n;
  if (xi.region == Region::BallBoundary) {
    Vec q = xi.x;
    q.last() += 1.0;
    if (norm2(q) <= 4.0 * kSphereTol * kSphereTol) return infinity_point(n);
    Vec y = T_raw(xi.x);
    y.last() = 0.0;
    return Point{y, Region::HalfspaceBoundary};
  }
  return Point{T_raw(xi.x), Region::HalfspaceInterior};
}

Point map_T_inv(const Point& x) {
  const int n = x.x.n;
  switch (x.region) {
    case Region::Infinity: return Point{-Vec::en(n), Region::BallBoundary};
    case Region::HalfspaceBoundary: {
      Vec xi = T_inv_raw(x.x);
      return Point{(1.0 / norm(xi)) * xi, Region::BallBoundary};
    }
    case Region::HalfspaceInterior: return Point{T_inv_raw(x.x), Region::BallInterior};
    default:
      throw DomainError(fmt::format("map_T_inv expects a half-space point, got {}",
                                    region_name(x.region)));
  }
}

double weight_w(const Point& x) {
  if (x.region != Region::HalfspaceInterior && x.region != Region::HalfspaceBoundary)
    throw DomainError("weight_w expects a finite half-space point");
  return w_raw(x.x);
}

InversionSpec make_inversion(const Vec& z, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("inversion radius must be positive");
  if (z.last() != 0.0)
    throw DomainError(fmt::format("inversion center {} is not on the boundary", to_string(z)));
  return InversionSpec{z, lambda};
}

Vec invert_raw(const Vec& x, const Vec& z, double lambda) {
  Vec d = x - z;
  return z + (lambda * lambda / norm2(d)) * d;
}

Point invert_point(const Point& x, const InversionSpec& spec) {
  if (x.region == Region::Infinity) return Point{spec.z, Region::HalfspaceBoundary};
  if (!is_halfspace(x.region)) throw DomainError("inversion acts on half-space points");
  if (dist2(x.x, spec.z) == 0.0)
    throw DomainError(fmt::format("inversion pole: x = z = {}", to_string(x.x)));
  Vec y = invert_raw(x.x, spec.z, spec.lambda);
  if (x.region == Region::HalfspaceBoundary) y.last() = 0.0;
  return Point{y, x.region};
}

namespace {
Field kelvin(Field f, const InversionSpec& spec, double expo) {
  return [f = std::move(f), spec, expo](const Vec& y) {
    double r = dist(y, spec.z);
    if (r == 0.0) throw DomainError("Kelvin transform evaluated at its center");
    return std::pow(spec.lambda / r, expo) * f(invert_raw(y, spec.z, spec.lambda));
  };
}
}  // namespace

Field kelvin_boundary(Field u, const InversionSpec& spec, const ParamTriple& P) {
  return kelvin(std::move(u), spec, P.n - P.alpha);
}

Field kelvin_interior(Field v, const InversionSpec& spec, const ParamTriple& P) {
  return kelvin(std::move(v), spec, P.n - P.alpha - 2.0 * P.beta);
}

Vec reflect_raw(const Vec& x, const Vec& e, double mu) {
  return x + (2.0 * (mu - dot(x, e))) * e;
}

Point reflect(const Point& x, const Vec& e, double mu) {
  if (std::abs(norm(e) - 1.0) > 1e-12 || std::abs(e.last()) > 1e-12)
    throw DomainError("reflection direction must be a unit vector orthogonal to e_n");
  if (x.region == Region::Infinity) return x;
  Vec y = reflect_raw(x.x, e, mu);
  y.last() = x.x.last();
  return Point{y, x.region};
}

Vec reflect_first(const Vec& x, double lambda) {
  Vec y = x;
  y[0] = 2.0 * lambda - x[0];
  return y;
}

Vec Rotation::apply(const Vec& x) const {
  Vec y(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += m[i * kMaxDim + j] * x[j];
    y[i] = s;
  }
  return y;
}

Vec Rotation::apply_transpose(const Vec& x) const {
  Vec y(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += m[j * kMaxDim + i] * x[j];
    y[i] = s;
  }
  return y;
}

Rotation identity_rotation(int n) {
  Rotation R;
  R.n = n;
  for (int i = 0; i < n; ++i) R.m[i * kMaxDim + i] = 1.0;
  return R;
}

Rotation frame_with_last_axis(const Vec& a) {
  const int n = a.n;
  // Q = sign * (I - 2 v v^T / |v|^2) with v = a -/+ e_n, chosen to avoid
  // cancellation; either way Q e_n = a.
  Vec v = a;
  double sign = 1.0;
  if (a.last() <= 0.0) {
    v.last() -= 1.0;
  } else {
    v.last() += 1.0;
    sign = -1.0;
  }
  double v2 = norm2(v);
  Rotation R;
  R.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      R.m[i * kMaxDim + j] = sign * ((i == j ? 1.0 : 0.0) - 2.0 * v[i] * v[j] / v2);
  return R;
}

}  // namespace confext
