#include "confext/errors.hpp"

#include <fmt/format.h>

namespace confext {

namespace {
std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += "; ";
    out += x;
  }
  return out;
}
}  // namespace

ParamError::ParamError(std::vector<std::string> failed, const std::string& what)
    : Error(what + ": failed condition(s): " + join(failed)),
      failed_(std::move(failed)) {}

NearBoundaryError::NearBoundaryError(double gap, double floor)
    : Error(fmt::format("evaluation point too close to the boundary "
                        "(1-|xi| = {:.3g} < {:.3g})",
                        gap, floor)),
      gap_(gap) {}

QuadratureError::QuadratureError(const Vec& node, double value)
    : Error(fmt::format("non-finite integrand ({}) at node {}", value,
                        to_string(node))),
      node_(node) {}

std::string to_string(const Vec& v) {
  std::string s = "(";
  for (int i = 0; i < v.n; ++i) {
    if (i) s += ", ";
    s += fmt::format("{:.17g}", v[i]);
  }
  return s + ")";
}

}  // namespace confext
