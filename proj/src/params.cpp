#include "confext/params.hpp"

#include <cmath>

#include <fmt/format.h>

#include "confext/errors.hpp"
#include "confext/vec.hpp"

namespace confext {

ParamTriple make_params(int n, double alpha, double beta) {
  if (n < 2 || n > kMaxDim)
    throw ParamError({"2 <= n <= 8"}, fmt::format("unsupported dimension n = {}", n));
  ParamTriple P{n, alpha, beta, {}};
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    P.failed.push_back("finite exponents");
  // Open conditions: a margin below kParamTol counts as a violation.
  if (beta < 0.0) P.failed.push_back(kCondBeta);
  if (alpha + beta <= kParamTol) P.failed.push_back(kCondPositive);
  if ((n - beta) - (alpha + beta) <= kParamTol) P.failed.push_back(kCondUpper);
  double lhs = (n - alpha - 2 * beta) / (2.0 * n) + (n - alpha) / (2.0 * (n - 1));
  if (1.0 - lhs <= kParamTol) P.failed.push_back(kCondSubAffine);
  return P;
}

ParamTriple validate_params(int n, double alpha, double beta) {
  ParamTriple P = make_params(n, alpha, beta);
  require_valid(P);
  return P;
}

void require_valid(const ParamTriple& P) {
  if (!P.valid())
    throw ParamError(P.failed, "inadmissible parameters " + to_string(P));
}

double conj(double p) { return p / (p - 1.0); }

ExponentSet exponents(const ParamTriple& P, double p, double t) {
  if (!(p > 1.0) || !(t > 1.0))
    throw HypothesisError(fmt::format("exponents must exceed 1 (p = {}, t = {})", p, t));
  ExponentSet E;
  E.p = p;
  E.t = t;
  E.p_conj = conj(p);
  E.t_conj = conj(t);
  E.s = E.t_conj;
  E.theta = E.p_conj - 1.0;
  E.kappa = E.t_conj - 1.0;
  auto [sigma, tau] = subcritical_weights(P, p, t);
  E.sigma = sigma;
  E.tau = tau;
  return E;
}

ExponentSet conformal_exponents(const ParamTriple& P) {
  const int n = P.n;
  double dp = n + P.alpha - 2.0;
  double dt = n + P.alpha + 2.0 * P.beta;
  if (!(dp > 0.0) || !(P.alpha < n) || !(n - P.alpha - 2 * P.beta > 0.0))
    throw ParamError({kCondUpper}, "conformal exponents undefined for " + to_string(P));
  ExponentSet E = exponents(P, 2.0 * (n - 1) / dp, 2.0 * n / dt);
  // Closed forms avoid the round trip through the conjugates.
  E.theta = dp / (n - P.alpha);
  E.kappa = dt / (n - P.alpha - 2 * P.beta);
  E.p_conj = E.theta + 1.0;
  E.t_conj = E.kappa + 1.0;
  E.s = E.t_conj;
  E.sigma = 0.0;
  E.tau = 0.0;
  return E;
}

double hyperbola_defect(double p, double t, const ParamTriple& P) {
  const int n = P.n;
  return 1.0 / t + (n - 1.0) / (n * p) - 1.0 - (P.alpha + P.beta - 1.0) / n;
}

bool on_critical_hyperbola(double p, double t, const ParamTriple& P) {
  return std::abs(hyperbola_defect(p, t, P)) <= kParamTol;
}

bool strictly_subcritical(double p, double t, const ParamTriple& P) {
  return hyperbola_defect(p, t, P) < -kParamTol;
}

std::pair<double, double> subcritical_weights(const ParamTriple& P, double p,
                                              double t) {
  const int n = P.n;
  double sigma = n + P.alpha - 2.0 - 2.0 * (n - 1) / p;
  double tau = n + P.alpha + 2.0 * P.beta - 2.0 * n / t;
  return {sigma, tau};
}

SplitExponent select_split_exponent(const ParamTriple& P, double p, double t) {
  const int n = P.n;
  SplitExponent out;
  if (P.alpha + P.beta >= n) {
    out.bounded_kernel = true;
    return out;
  }
  if (!(p > 1.0) || !(t > 1.0))
    throw HypothesisError("select_split_exponent: need p, t > 1");
  if (!(1.0 / p + 1.0 / t > 1.0))
    throw HypothesisError("select_split_exponent: need 1/p + 1/t > 1");
  if (!strictly_subcritical(p, t, P))
    throw HypothesisError(fmt::format(
        "select_split_exponent: (p, t) = ({}, {}) is not subcritical, interval "
        "empty",
        p, t));
  double m = n - P.alpha - P.beta;
  out.lo = 1.0 - (n - 1.0) / (m * conj(p));
  out.hi = n / (m * conj(t));
  out.lo = std::max(out.lo, 0.0);
  out.hi = std::min(out.hi, 1.0);
  if (!(out.hi - out.lo > kParamTol))
    throw HypothesisError(fmt::format(
        "select_split_exponent: empty interval ({}, {})", out.lo, out.hi));
  out.a = 0.5 * (out.lo + out.hi);
  return out;
}

void require_ball_hypotheses(const ParamTriple& P, double p, double t,
                             bool allow_critical) {
  require_valid(P);
  if (!(p > 1.0) || !(t > 1.0))
    throw HypothesisError(fmt::format("need p, t > 1 (p = {}, t = {})", p, t));
  if (!(1.0 / p + 1.0 / t > 1.0 + kParamTol))
    throw HypothesisError(fmt::format("need 1/p + 1/t > 1 (p = {}, t = {})", p, t));
  double d = hyperbola_defect(p, t, P);
  bool ok = d < -kParamTol || (allow_critical && std::abs(d) <= kParamTol);
  if (!ok)
    throw HypothesisError(fmt::format(
        "(p, t) = ({}, {}) violates 1/t + (n-1)/(np) < 1 + (alpha+beta-1)/n "
        "(defect {:.3g})",
        p, t, d));
}

std::string to_string(const ParamTriple& P) {
  return fmt::format("(n={}, alpha={}, beta={})", P.n, P.alpha, P.beta);
}

}  // namespace confext
