#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <string>

namespace confext {

inline constexpr int kMaxDim = 8;

// Fixed-capacity real vector; dimension is a runtime value in [1, kMaxDim].
struct Vec {
  int n = 0;
  std::array<double, kMaxDim> c{};

  Vec() = default;
  explicit Vec(int dim) : n(dim) { assert(dim >= 0 && dim <= kMaxDim); }
  Vec(std::initializer_list<double> xs) : n(static_cast<int>(xs.size())) {
    assert(n <= kMaxDim);
    int i = 0;
    for (double x : xs) c[i++] = x;
  }

  static Vec zero(int dim) { return Vec(dim); }
  static Vec unit(int dim, int k) {
    Vec v(dim);
    v.c[k] = 1.0;
    return v;
  }
  // e_n, the last coordinate direction
  static Vec en(int dim) { return unit(dim, dim - 1); }

  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }
  double last() const { return c[n - 1]; }
  double& last() { return c[n - 1]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < n; ++i) c[i] += o.c[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < n; ++i) c[i] -= o.c[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < n; ++i) c[i] *= s;
    return *this;
  }
};

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(double s, Vec a) { return a *= s; }
inline Vec operator*(Vec a, double s) { return a *= s; }
inline Vec operator-(Vec a) { return a *= -1.0; }

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < a.n; ++i) s += a.c[i] * b.c[i];
  return s;
}
inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }
inline double dist2(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < a.n; ++i) {
    double d = a.c[i] - b.c[i];
    s += d * d;
  }
  return s;
}
inline double dist(const Vec& a, const Vec& b) { return std::sqrt(dist2(a, b)); }

// Drop the last coordinate: x -> x'
inline Vec head(const Vec& x) {
  Vec h(x.n - 1);
  for (int i = 0; i < x.n - 1; ++i) h.c[i] = x.c[i];
  return h;
}
// (x', t) in one dimension higher
inline Vec lift(const Vec& xp, double t) {
  Vec x(xp.n + 1);
  for (int i = 0; i < xp.n; ++i) x.c[i] = xp.c[i];
  x.c[xp.n] = t;
  return x;
}

std::string to_string(const Vec& v);

}  // namespace confext
