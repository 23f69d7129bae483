#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "confext/report.hpp"

namespace cli {

struct Options {
  std::string command;
  std::string action;  // first positional of params/constants
  int n = 3;
  double alpha = 0.0, beta = 1.0;
  std::optional<double> p, t;
  int level = 8;
  std::uint64_t seed = 0;
  int samples = 0;  // 0: per-command default
  std::optional<double> tol;
  std::optional<double> r;
  double r_lo = 0.99, r_hi = 1.0 - 1e-5;
  double c = 1.0, d = 1.0;
  std::vector<double> y0;     // boundary coordinates of the bubble center
  std::vector<double> x;      // boundary point for limit scans
  std::vector<int> degrees{1, 2, 3, 4};
  std::vector<double> amplitudes{-0.3, -0.2, -0.1, 0.0, 0.1, 0.2, 0.3};
  std::vector<double> d_grid{0.5, 1.0, 2.0};
  int ascend_steps = 0;
  double ascend_step = 0.1;
  bool system = false;
};

// Runs one command and fills the report. Throws confext::Error on failures
// that prevent a report.
confext::RunReport run_command(const Options& o);

}  // namespace cli
