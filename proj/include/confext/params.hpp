#pragma once

#include <string>
#include <utility>
#include <vector>

namespace confext {

inline constexpr double kParamTol = 1e-12;

// Dimension and kernel exponents. Constructed through make_params (records
// validity) or validate_params (throws on an inadmissible triple).
struct ParamTriple {
  int n = 3;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<std::string> failed;  // names of violated conditions

  bool valid() const { return failed.empty(); }
};

struct ExponentSet {
  double p = 0, t = 0;
  double p_conj = 0, t_conj = 0;
  double s = 0;
  double theta = 0, kappa = 0;
  double sigma = 0, tau = 0;
};

// Condition names as reported in errors.
inline constexpr const char* kCondBeta = "beta >= 0";
inline constexpr const char* kCondPositive = "0 < alpha+beta";
inline constexpr const char* kCondUpper = "alpha+beta < n-beta";
inline constexpr const char* kCondSubAffine =
    "(n-alpha-2beta)/(2n) + (n-alpha)/(2(n-1)) < 1";

ParamTriple make_params(int n, double alpha, double beta);
ParamTriple validate_params(int n, double alpha, double beta);
void require_valid(const ParamTriple& P);

double conj(double p);
ExponentSet exponents(const ParamTriple& P, double p, double t);
ExponentSet conformal_exponents(const ParamTriple& P);

// 1/t + (n-1)/(np) - 1 - (alpha+beta-1)/n; zero on the critical hyperbola.
double hyperbola_defect(double p, double t, const ParamTriple& P);
bool on_critical_hyperbola(double p, double t, const ParamTriple& P);
bool strictly_subcritical(double p, double t, const ParamTriple& P);

std::pair<double, double> subcritical_weights(const ParamTriple& P, double p,
                                              double t);

struct SplitExponent {
  double a = 0.5;
  double lo = 0, hi = 1;
  bool bounded_kernel = false;
};
SplitExponent select_split_exponent(const ParamTriple& P, double p, double t);

// Hypotheses for the subcritical inequality on the ball: p, t > 1,
// 1/p + 1/t > 1 and (p, t) subcritical or, when allow_critical, on the
// hyperbola. Throws HypothesisError naming the failed condition.
void require_ball_hypotheses(const ParamTriple& P, double p, double t,
                             bool allow_critical);

std::string to_string(const ParamTriple& P);

}  // namespace confext
