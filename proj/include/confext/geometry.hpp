#pragma once

#include <functional>

#include "confext/params.hpp"
#include "confext/vec.hpp"

namespace confext {

enum class Region {
  BallInterior,
  BallBoundary,
  HalfspaceInterior,
  HalfspaceBoundary,
  Infinity
};

const char* region_name(Region r);

inline constexpr double kSphereTol = 1e-12;

// A point tagged with the region it lives in. The infinity tag keeps the
// ambient dimension in x.n; its coordinates are unused.
struct Point {
  Vec x;
  Region region = Region::BallInterior;
};

// Checked constructors; throw DomainError if the coordinates disagree with the tag.
Point make_point(const Vec& x, Region region);
Point ball_interior(const Vec& x);
Point ball_boundary(const Vec& x);
Point halfspace_interior(const Vec& x);
Point halfspace_boundary(const Vec& x);  // last coordinate forced to 0
Point infinity_point(int n);

bool is_ball(Region r);
bool is_halfspace(Region r);

// Unchecked kernels on raw coordinates.
Vec T_raw(const Vec& xi);      // xi != -e_n
Vec T_inv_raw(const Vec& x);   // x_n > -2
double w_raw(const Vec& x);    // 2/|x + 2e_n|
// 1 - |T^{-1}(x)|, computed without cancellation
double T_inv_gap(const Vec& x);

Point map_T(const Point& xi);
Point map_T_inv(const Point& x);
double weight_w(const Point& x);

struct InversionSpec {
  Vec z;  // boundary point of the half-space (last coordinate 0)
  double lambda = 1.0;
};
InversionSpec make_inversion(const Vec& z, double lambda);

// x^{z,lambda} = z + lambda^2 (x - z)/|x - z|^2; raw version does not check x != z.
Vec invert_raw(const Vec& x, const Vec& z, double lambda);
Point invert_point(const Point& x, const InversionSpec& spec);

using Field = std::function<double(const Vec&)>;

// u_{z,lambda}(y) = (lambda/|y-z|)^{n-alpha} u(y^{z,lambda})
Field kelvin_boundary(Field u, const InversionSpec& spec, const ParamTriple& P);
// v_{z,lambda}(x) = (lambda/|x-z|)^{n-alpha-2beta} v(x^{z,lambda})
Field kelvin_interior(Field v, const InversionSpec& spec, const ParamTriple& P);

// R_{e,mu}(x) = x + 2(mu - x.e) e, e a unit vector orthogonal to e_n.
Vec reflect_raw(const Vec& x, const Vec& e, double mu);
Point reflect(const Point& x, const Vec& e, double mu);
// x^lambda: reflection of the first coordinate about x_1 = lambda
Vec reflect_first(const Vec& x, double lambda);

// Rotation of R^n applied as an orthogonal matrix (row-major n x n).
struct Rotation {
  int n = 0;
  std::array<double, kMaxDim * kMaxDim> m{};
  Vec apply(const Vec& x) const;
  Vec apply_transpose(const Vec& x) const;
};
Rotation identity_rotation(int n);
// m is indexed m[i * kMaxDim + j].
// Orthogonal frame whose last column is the unit vector a (Householder).
Rotation frame_with_last_axis(const Vec& a);

}  // namespace confext
