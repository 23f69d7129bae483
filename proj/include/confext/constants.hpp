#pragma once

#include <utility>

#include "confext/params.hpp"

namespace confext {

struct ConstantResult {
  double value = 0.0;
  std::pair<int, int> levels_used{0, 0};
  double two_level_delta = 0.0;
  ParamTriple params;
};

// |S^{n-2}| with |S^0| = 2
double equator_area(int n);

// Psi(r) = ((1-r^2)/2)^beta Phi_alpha(r e_n)
double psi_profile(const ParamTriple& P, double r, int level);
// Same, parametrized by the gap 1 - r so points very near the sphere keep
// their accuracy.
double psi_at_gap(const ParamTriple& P, double gap, int level);
// Phi_alpha(r e_n) = int_{dB} |r e_n - zeta|^{alpha-n} dS_zeta
double phi_at_gap(const ParamTriple& P, double gap, int level);

// n omega_n int_0^1 r^{n-1} Psi(r)^q dr over gaps >= gap_floor
double psi_power_integral(const ParamTriple& P, double q, int level, double gap_floor);

ConstantResult sharp_constant_Ce(const ParamTriple& P, int level);
ConstantResult subcritical_constant(const ParamTriple& P, double p, double t, int level);
ConstantResult c_n_alpha(const ParamTriple& P, int level);
ConstantResult sphere_kernel_constant(const ParamTriple& P, int level);

struct BlowupFit {
  double exponent_fit = 0.0;  // slope of log Psi against log(1-r)
  bool log_flag = false;      // a + b log|log(1-r)| fits better than the power law
  bool bounded = false;       // power law with nonnegative slope
  double fit_residual = 0.0;  // rms residual of the selected model
  double power_residual = 0.0, log_residual = 0.0, log_slope = 0.0;
};
inline constexpr std::pair<double, double> kDefaultBlowupWindow{0.99, 1.0 - 1e-5};
BlowupFit blowup_rate(const ParamTriple& P, std::pair<double, double> window, int level);

}  // namespace confext
