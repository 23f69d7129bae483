#include "confext/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include <fmt/format.h>

namespace confext {

double unit_ball_volume(int n) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

const char* domain_name(Domain d) {
  switch (d) {
    case Domain::Sphere: return "sphere";
    case Domain::Ball: return "ball";
    case Domain::BoundaryHalfspace: return "boundary-halfspace";
    case Domain::Halfspace: return "halfspace";
  }
  return "?";
}

namespace {

// Nodes z_i (increasing) and weights on [-1, 1]
struct GaussRef {
  std::vector<double> z, w;
};

GaussRef compute_gauss(int m) {
  GaussRef g;
  g.z.resize(m);
  g.w.resize(m);
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (z * p1 - p0) / (z * z - 1.0);
      double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= m; ++k) {
      double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = m * (z * p1 - p0) / (z * z - 1.0);
    g.z[i] = -z;
    g.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return g;
}

const GaussRef& gauss_ref(int m) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRef>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<GaussRef>(compute_gauss(m));
  return *slot;
}

}  // namespace

Rule1D gauss_legendre(int m, double a, double b) {
  if (m < 1) throw DomainError("Gauss-Legendre needs at least one point");
  Rule1D r;
  if (m == 1) {
    r.x = {0.5 * (a + b)};
    r.w = {b - a};
    r.lo = {0.5 * (b - a)};
    r.hi = {0.5 * (b - a)};
    return r;
  }
  const GaussRef& g = gauss_ref(m);
  const double half = 0.5 * (b - a);
  r.x.resize(m);
  r.w.resize(m);
  r.lo.resize(m);
  r.hi.resize(m);
  for (int j = 0; j < m; ++j) {
    r.lo[j] = half * (1.0 + g.z[j]);
    r.hi[j] = half * (1.0 - g.z[j]);
    r.x[j] = a + r.lo[j];
    r.w[j] = half * g.w[j];
  }
  return r;
}

double tanh_sinh_step(int level) { return 2.0 / std::max(level, 1); }

Rule1D tanh_sinh(double h, double a, double b, double floor) {
  const double len = b - a;
  struct Item {
    double t, lo, hi, w;
  };
  std::vector<Item> items;
  for (int side = 0; side < 2; ++side) {
    for (int k = (side == 0 ? 0 : 1);; ++k) {
      double t = (side == 0 ? 1.0 : -1.0) * k * h;
      double u = 0.5 * kPi * std::sinh(t);
      double e = std::exp(-2.0 * std::abs(u));  // in (0, 1]
      double small = e / (1.0 + e);              // distance to the near end
      double big = 1.0 / (1.0 + e);
      double lo = u >= 0 ? big : small;
      double hi = u >= 0 ? small : big;
      double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
      double w = h * 0.5 * sech2 * 0.5 * kPi * std::cosh(t);
      if (std::min(lo, hi) < floor || !(w > 0.0) || std::min(lo, hi) == 0.0) break;
      items.push_back({t, lo * len, hi * len, w * len});
      if (k > 100000) break;
    }
  }
  std::sort(items.begin(), items.end(), [](const Item& p, const Item& q) { return p.t < q.t; });
  Rule1D r;
  for (const auto& it : items) {
    r.x.push_back(it.lo <= it.hi ? a + it.lo : b - it.hi);
    r.lo.push_back(it.lo);
    r.hi.push_back(it.hi);
    r.w.push_back(it.w);
  }
  return r;
}

Rule1D graded_polar(double gap, int m, int max_depth) {
  int depth = 0;
  if (gap < 1.0) depth = static_cast<int>(std::ceil(std::log2(1.0 / gap)));
  depth = std::clamp(depth, 0, max_depth);
  std::vector<double> edges{0.0};
  for (int j = depth + 2; j >= 1; --j) edges.push_back(std::ldexp(kPi, -j));
  edges.push_back(kPi);
  Rule1D r;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    Rule1D g = gauss_legendre(m, edges[p], edges[p + 1]);
    for (std::size_t i = 0; i < g.size(); ++i) {
      r.x.push_back(g.x[i]);
      r.lo.push_back(edges[p] + g.lo[i]);
      r.hi.push_back(kPi - g.x[i]);
      r.w.push_back(g.w[i]);
    }
  }
  return r;
}

Rule1D radial_rule(int level, double grading, double gap_floor) {
  if (!(grading >= 0.0 && grading < 1.0))
    throw DomainError(fmt::format("grading must lie in [0, 1), got {}", grading));
  if (grading == 0.0) return gauss_legendre(2 * level, 0.0, 1.0);
  const double q = 1.0 / (1.0 - grading);
  double sfloor = gap_floor > 0.0 ? std::pow(gap_floor, 1.0 - grading) : 1e-300;
  Rule1D s = tanh_sinh(tanh_sinh_step(level), 0.0, 1.0, std::max(sfloor, 1e-300));
  Rule1D r;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double one_minus_s = s.hi[i];
    double gap = std::pow(one_minus_s, q);
    double rad = -std::expm1(q * std::log1p(-s.lo[i]));
    if (s.lo[i] > 0.5) rad = 1.0 - gap;
    if (!(gap > 0.0) || !(rad > 0.0)) continue;
    r.x.push_back(rad);
    r.lo.push_back(rad);
    r.hi.push_back(gap);
    r.w.push_back(s.w[i] * q * std::pow(one_minus_s, q - 1.0));
  }
  return r;
}

QuadratureRule build_sphere_rule(int n, int level) {
  if (n < 1 || n > kMaxDim) throw DomainError(fmt::format("unsupported dimension {}", n));
  if (level < 1) throw DomainError("quadrature level must be >= 1");
  QuadratureRule R;
  R.domain = Domain::Sphere;
  R.dim = n;
  R.level = level;
  R.est_error_budget = std::pow(10.0, -level);
  if (n == 1) {
    R.nodes = {Node{Vec{-1.0}, 0.0}, Node{Vec{1.0}, 0.0}};
    R.weights = {1.0, 1.0};
    return R;
  }
  if (n == 2) {
    const int m = 4 * level;
    for (int k = 0; k < m; ++k) {
      double th = 2.0 * kPi * (k + 0.5) / m;
      R.nodes.push_back(Node{Vec{std::cos(th), std::sin(th)}, 0.0});
      R.weights.push_back(2.0 * kPi / m);
    }
    return R;
  }
  QuadratureRule sub = build_sphere_rule(n - 1, level);
  Rule1D phi = gauss_legendre(2 * level, 0.0, kPi);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    double sp = std::sin(phi.x[i]), cp = std::cos(phi.x[i]);
    double wphi = phi.w[i] * std::pow(sp, n - 2);
    for (std::size_t j = 0; j < sub.size(); ++j) {
      Vec z = lift(sp * sub.nodes[j].x, cp);
      R.nodes.push_back(Node{z, 0.0});
      R.weights.push_back(wphi * sub.weights[j]);
    }
  }
  return R;
}

QuadratureRule build_ball_rule(int n, int level, double grading, double gap_floor) {
  QuadratureRule S = build_sphere_rule(n, level);
  Rule1D rad = radial_rule(level, grading, gap_floor);
  QuadratureRule R;
  R.domain = Domain::Ball;
  R.dim = n;
  R.level = level;
  R.est_error_budget = S.est_error_budget;
  R.nodes.reserve(rad.size() * S.size());
  for (std::size_t i = 0; i < rad.size(); ++i) {
    double wr = rad.w[i] * std::pow(rad.x[i], n - 1);
    for (std::size_t j = 0; j < S.size(); ++j) {
      R.nodes.push_back(Node{rad.x[i] * S.nodes[j].x, rad.hi[i]});
      R.weights.push_back(wr * S.weights[j]);
    }
  }
  return R;
}

namespace {

using Key = std::tuple<int, int, int, double>;
std::mutex g_cache_mutex;
std::map<Key, std::shared_ptr<const QuadratureRule>> g_cache;

template <class Build>
std::shared_ptr<const QuadratureRule> cached(Key key, Build&& build) {
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(build());
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  return g_cache.emplace(key, rule).first->second;
}

void check_dim(int n) {
  if (n < 2 || n > kMaxDim)
    throw DomainError(fmt::format("unsupported dimension n = {} (need 2 <= n <= 8)", n));
}

constexpr double kBallGapFloor = 1e-12;

QuadratureRule pullback(const QuadratureRule& src, bool interior) {
  const int n = src.dim;
  QuadratureRule R;
  R.domain = interior ? Domain::Halfspace : Domain::BoundaryHalfspace;
  R.dim = n;
  R.level = src.level;
  R.est_error_budget = src.est_error_budget;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Vec& xi = src.nodes[i].x;
    Vec q = xi;
    q.last() += 1.0;
    double w = 0.5 * norm(q);  // w(T xi) = |xi + e_n|/2
    Vec x = T_raw(xi);
    if (!interior) x.last() = 0.0;
    double jac = std::pow(w, -2.0 * (interior ? n : n - 1));
    R.nodes.push_back(Node{x, interior ? x.last() : 0.0});
    R.weights.push_back(src.weights[i] * jac);
  }
  return R;
}

}  // namespace

std::shared_ptr<const QuadratureRule> sphere_rule(int n, int level) {
  check_dim(n);
  return cached(Key{0, n, level, 0.0}, [&] {
    QuadratureRule R = build_sphere_rule(n, level);
    if (level > 1)
      R.coarse = std::make_shared<const QuadratureRule>(build_sphere_rule(n, level - 1));
    return R;
  });
}

std::shared_ptr<const QuadratureRule> ball_rule(int n, int level, double grading) {
  check_dim(n);
  return cached(Key{1, n, level, grading}, [&] {
    QuadratureRule R = build_ball_rule(n, level, grading, kBallGapFloor);
    if (level > 1)
      R.coarse = std::make_shared<const QuadratureRule>(
          build_ball_rule(n, level - 1, grading, kBallGapFloor));
    return R;
  });
}

std::shared_ptr<const QuadratureRule> halfspace_rule_via_pullback(int n, int level,
                                                                  bool interior) {
  check_dim(n);
  return cached(Key{interior ? 3 : 2, n, level, 0.0}, [&] {
    auto src = interior ? ball_rule(n, level, 0.5) : sphere_rule(n, level);
    QuadratureRule R = pullback(*src, interior);
    if (src->coarse) R.coarse = std::make_shared<const QuadratureRule>(pullback(*src->coarse, interior));
    return R;
  });
}

CapRule cap_rule(int n, double gap, int level, int max_depth) {
  CapRule C;
  C.polar = graded_polar(gap, level, max_depth);
  for (std::size_t i = 0; i < C.polar.size(); ++i)
    C.polar.w[i] *= std::pow(std::sin(C.polar.x[i]), n - 2);
  if (n - 1 >= 2) {
    C.ring = sphere_rule(n - 1, level);
  } else {
    C.ring = cached(Key{0, 1, 1, 0.0}, [] { return build_sphere_rule(1, 1); });
  }
  return C;
}

}  // namespace confext
