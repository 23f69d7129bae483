#include "confext/rng.hpp"

#include <cmath>
#include <numbers>

namespace confext {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t s = seed;
  state_ = splitmix64(s);
  if (state_ == 0) state_ = 0x9E3779B97F4A7C15ull;
}

std::uint64_t Rng::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1Dull;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::normal() {
  double u1 = 1.0 - uniform();  // (0, 1]
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::log_uniform(double a, double b) {
  return std::exp(uniform(std::log(a), std::log(b)));
}

Vec Rng::gaussian_vector(int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Vec Rng::unit_vector(int n) {
  for (;;) {
    Vec v = gaussian_vector(n);
    double r = norm(v);
    if (r > 1e-12) return (1.0 / r) * v;
  }
}

}  // namespace confext
