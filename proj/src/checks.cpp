#include "confext/checks.hpp"

#include <algorithm>
#include <cmath>

#include "confext/operators.hpp"

namespace confext {

Rotation random_rotation(int n, Rng& rng) {
  // Gram-Schmidt on Gaussian columns
  Rotation R;
  R.n = n;
  std::vector<Vec> cols;
  while (static_cast<int>(cols.size()) < n) {
    Vec v = rng.gaussian_vector(n);
    for (const auto& c : cols) v -= dot(v, c) * c;
    double nv = norm(v);
    if (nv < 1e-8) continue;
    cols.push_back((1.0 / nv) * v);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R.m[i * kMaxDim + j] = cols[j][i];
  return R;
}

namespace {

double rel(double a, double b) {
  double d = std::abs(a - b);
  double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? d / s : d;
}

void record(IdentityCheck& c, double residual) {
  ++c.samples;
  if (!(residual <= c.tolerance)) ++c.violations;
  if (std::isnan(residual) || residual > c.max_residual) c.max_residual = residual;
}

void record_ineq(IdentityCheck& c, bool ok) {
  ++c.samples;
  if (!ok) ++c.violations;
}

// Random point of the closed half-space in a box, on the boundary with
// probability 1/10.
Vec halfspace_point(int n, Rng& rng, double xn_lo) {
  Vec x(n);
  for (int k = 0; k < n - 1; ++k) x[k] = rng.uniform(-4.0, 4.0);
  x.last() = rng.uniform() < 0.1 ? 0.0 : rng.uniform(xn_lo, 4.0);
  return x;
}

Vec boundary_point(int n, Rng& rng, double scale = 4.0) {
  Vec y(n);
  for (int k = 0; k < n - 1; ++k) y[k] = rng.uniform(-scale, scale);
  return y;
}

// Unit direction in the upper half-space (tangent when boundary is set)
Vec upper_direction(int n, Rng& rng, bool boundary) {
  for (;;) {
    Vec d = rng.unit_vector(n);
    if (boundary) {
      d.last() = 0.0;
      double nd = norm(d);
      if (nd < 1e-6) continue;
      return (1.0 / nd) * d;
    }
    d.last() = std::abs(d.last());
    if (d.last() > 1e-6) return d;
  }
}

}  // namespace

std::vector<IdentityCheck> conformal_identity_suite(int n, int samples, std::uint64_t seed,
                                                    double tolerance) {
  Rng rng(seed);
  std::vector<IdentityCheck> out(5);
  const char* names[] = {"preimage_distance", "preimage_boundary_distance",
                         "inverted_distance", "inversion_similar_triangles",
                         "inversion_last_coordinate"};
  for (int k = 0; k < 5; ++k) {
    out[k].name = names[k];
    out[k].tolerance = tolerance;
  }
  for (int s = 0; s < samples; ++s) {
    Vec x = halfspace_point(n, rng, 0.0);
    Vec y = halfspace_point(n, rng, 0.0);
    record(out[0], rel(dist(T_inv_raw(x), T_inv_raw(y)), w_raw(x) * w_raw(y) * dist(x, y)));

    // keep 1 - |T^-1 x|^2 away from cancellation so the plain formula is
    // an independent evaluation
    Vec xi_pt = halfspace_point(n, rng, 0.05);
    xi_pt.last() = std::max(xi_pt.last(), 0.05);
    Vec xi = T_inv_raw(xi_pt);
    double w = w_raw(xi_pt);
    record(out[1], rel(1.0 - norm2(xi), 2.0 * w * w * xi_pt.last()));

    Vec z = boundary_point(n, rng);
    double lam = rng.log_uniform(0.1, 10.0);
    Vec xa = halfspace_point(n, rng, 1e-3);
    xa.last() = std::max(xa.last(), 1e-3);
    Vec yb = boundary_point(n, rng);
    if (dist(xa, z) < 1e-3 || dist(yb, z) < 1e-3) {
      --s;
      continue;
    }
    Vec xz = invert_raw(xa, z, lam), yz = invert_raw(yb, z, lam);
    double rx = dist(xa, z), ry = dist(yb, z);
    record(out[2], rel(dist(xz, yz), (lam / rx) * (lam / ry) * dist(xa, yb)));
    record(out[3], rel(ry * dist(xa, yz), rx * dist(xz, yb)));
    record(out[4], rel(xz.last(), (lam / rx) * (lam / rx) * xa.last()));
  }
  return out;
}

std::vector<IdentityCheck> kernel_identity_suite(const ParamTriple& P, int samples,
                                                 std::uint64_t seed, double tolerance) {
  Rng rng(seed);
  const int n = P.n;
  IdentityCheck transform{"kernel_transformation", 0, 0.0, 0, tolerance};
  IdentityCheck rotation{"kernel_rotation_invariance", 0, 0.0, 0, tolerance};
  for (int s = 0; s < samples; ++s) {
    Vec x = halfspace_point(n, rng, 1e-3);
    x.last() = std::max(x.last(), 1e-3);
    Vec y = boundary_point(n, rng);
    Vec xi = T_inv_raw(x);
    Vec zeta = T_inv_raw(y);
    zeta *= 1.0 / norm(zeta);
    double H = kernel_ball_raw(P, xi, T_inv_gap(x), zeta);
    double K = kernel_halfspace_raw(P, x, y) * std::pow(w_raw(x), P.alpha + 2.0 * P.beta - n) *
               std::pow(w_raw(y), P.alpha - n);
    record(transform, rel(H, K));

    Rotation R = random_rotation(n, rng);
    double Hr = kernel_ball_raw(P, R.apply(xi), T_inv_gap(x), R.apply(zeta));
    record(rotation, rel(H, Hr));
  }
  return {transform, rotation};
}

std::vector<IdentityCheck> kernel_inequality_suite(const ParamTriple& P, int samples,
                                                   std::uint64_t seed) {
  Rng rng(seed);
  const int n = P.n;
  IdentityCheck upper{"kernel_upper_bound", 0, 0.0, 0, 0.0};
  IdentityCheck diff{"kernel_difference_inequality", 0, 0.0, 0, 0.0};
  IdentityCheck hform{"h_lambda_positive", 0, 0.0, 0, 0.0};
  IdentityCheck equiv{"h_lambda_equivalence", 0, 0.0, 0, 0.0};
  IdentityCheck plane{"lambda_nonpositive_plane", 0, 0.0, 0, 0.0};
  IdentityCheck strict{"lambda_negative_strict", 0, 0.0, 0, 0.0};
  IdentityCheck hzero{"h_lambda_at_lambda", 0, 0.0, 0, 0.0};
  for (int s = 0; s < samples; ++s) {
    // H(xi, zeta) <= |xi - zeta|^{alpha+beta-n}
    Vec zeta = rng.unit_vector(n);
    Vec xi = rng.unit_vector(n);
    double r = std::pow(rng.uniform(), 1.0 / n);
    xi *= r;
    if (dist2(xi, zeta) > 0.0) {
      double gap = 1.0 - r;
      double H = kernel_ball_raw(P, xi, gap, zeta);
      double bound = std::pow(dist(xi, zeta), P.alpha + P.beta - n);
      record_ineq(upper, H <= bound * (1.0 + 1e-14));
    }

    // kernel difference inequality outside B_lambda(z)
    Vec z = boundary_point(n, rng);
    double lam = rng.log_uniform(0.1, 10.0);
    double a = lam * (1.0 + rng.log_uniform(1e-3, 1e2));
    double b = lam * (1.0 + rng.log_uniform(1e-3, 1e2));
    Vec x = z + a * upper_direction(n, rng, false);
    Vec y = z + b * upper_direction(n, rng, true);
    y.last() = 0.0;
    if (!(x.last() > 0.0)) {
      --s;
      continue;
    }
    double ax = dist(x, z), by = dist(y, z);
    double lhs = std::pow(dist(x, y), P.alpha - n);
    double rhs = std::pow(lam / ax, n - P.alpha) * std::pow(dist(invert_raw(x, z, lam), y), P.alpha - n);
    bool direct = lhs > rhs;
    double h = h_lambda(lam, ax, by);
    record_ineq(diff, direct);
    record_ineq(hform, h > 0.0);
    record_ineq(equiv, direct == (h > 0.0));
    double hl = h_lambda(lam, lam, lam);
    record_ineq(hzero, hl == 0.0);

    // lambda <= 0 plane inequalities, x in Sigma_{lambda,n}, y in Sigma_{lambda,n-1}
    double L = rng.uniform() < 0.1 ? 0.0 : -rng.log_uniform(1e-2, 5.0);
    Vec xs = halfspace_point(n, rng, 1e-3);
    xs.last() = std::max(xs.last(), 1e-3);
    Vec ys = boundary_point(n, rng);
    xs[0] = L - rng.log_uniform(1e-3, 5.0);
    ys[0] = L - rng.log_uniform(1e-3, 5.0);
    Vec e2 = 2.0 * Vec::en(n);
    double y_a = norm(reflect_first(ys, L) + e2), y_b = norm(ys + e2);
    double d_a = dist(reflect_first(xs, L), ys), d_b = dist(xs, ys);
    double x_a = norm(reflect_first(xs, L) + e2), x_b = norm(xs + e2);
    record_ineq(plane, y_a <= y_b && d_a >= d_b && x_a <= x_b);
    if (L < 0.0) record_ineq(strict, y_a < y_b && d_a > d_b && x_a < x_b);
  }
  return {upper, diff, hform, equiv, hzero, plane, strict};
}

}  // namespace confext
