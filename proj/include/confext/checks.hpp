#pragma once

// Sampled checks of the exact geometric identities and kernel inequalities.

#include <cstdint>
#include <string>
#include <vector>

#include "confext/geometry.hpp"
#include "confext/params.hpp"
#include "confext/rng.hpp"

namespace confext {

struct IdentityCheck {
  std::string name;
  int samples = 0;
  double max_residual = 0.0;  // relative, for identities
  int violations = 0;         // residual above tolerance, or inequality failed
  double tolerance = 0.0;
  bool pass() const { return violations == 0; }
};

Rotation random_rotation(int n, Rng& rng);

// |T^-1 x - T^-1 y| = w(x) w(y) |x - y|, 1 - |T^-1 x|^2 = 2 w^2 x_n and the
// three sphere-inversion identities, each on `samples` seeded draws.
std::vector<IdentityCheck> conformal_identity_suite(int n, int samples, std::uint64_t seed,
                                                    double tolerance = 1e-10);

// H(T^-1 x, T^-1 y) = K(x - y) w(x)^{alpha+2beta-n} w(y)^{alpha-n} and
// rotation invariance of H.
std::vector<IdentityCheck> kernel_identity_suite(const ParamTriple& P, int samples,
                                                 std::uint64_t seed, double tolerance = 1e-10);

inline double h_lambda(double lambda, double a, double b) {
  // grouped so that h(lambda, lambda) evaluates to exactly 0
  const double l2 = lambda * lambda, a2 = a * a, b2 = b * b;
  return l2 * l2 + a2 * b2 - l2 * (a2 + b2);
}

// Kernel upper bound H <= |xi - zeta|^{alpha+beta-n}, the kernel difference
// inequality with its h_lambda form, and the lambda <= 0 plane inequalities.
std::vector<IdentityCheck> kernel_inequality_suite(const ParamTriple& P, int samples,
                                                   std::uint64_t seed);

}  // namespace confext
