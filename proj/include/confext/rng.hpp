#pragma once

#include <cstdint>

#include "confext/vec.hpp"

namespace confext {

// xorshift64*: x ^= x >> 12; x ^= x << 25; x ^= x >> 27; out = x * 0x2545F4914F6CDD1D.
// The state is initialized from the seed by one splitmix64 step, so seed 0 is valid.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t next();
  double uniform();                    // [0, 1), 53 random bits
  double uniform(double a, double b);
  double normal();                     // Box-Muller, one value per call
  double log_uniform(double a, double b);
  Vec unit_vector(int n);              // uniform on S^{n-1}
  Vec gaussian_vector(int n);

 private:
  std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t& x);

}  // namespace confext
