#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "confext/vec.hpp"

namespace confext {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter triple or exponent pair outside the admissible region.
class ParamError : public Error {
 public:
  ParamError(std::vector<std::string> failed, const std::string& what);
  const std::vector<std::string>& failed() const { return failed_; }

 private:
  std::vector<std::string> failed_;
};

// Hypotheses on (p, t) not met, or an empty admissible interval.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a map or operator (pole, wrong region, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation point too close to the sphere for the graded cap rule.
class NearBoundaryError : public Error {
 public:
  NearBoundaryError(double gap, double floor);
  double gap() const { return gap_; }

 private:
  double gap_;
};

// Non-finite integrand at a quadrature node.
class QuadratureError : public Error {
 public:
  QuadratureError(const Vec& node, double value);
  const Vec& node() const { return node_; }

 private:
  Vec node_;
};

}  // namespace confext
