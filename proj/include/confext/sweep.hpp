#pragma once

#include <vector>

#include "confext/params.hpp"
#include "confext/trial.hpp"

namespace confext {

// ||E_B f||_{L^s(B)} / ||f||_{L^p(dB)}. Half-space trials are carried to
// the sphere first.
double rayleigh_quotient(const TrialFunction& f, const ParamTriple& P, double p, double s,
                         int level);

struct SweepConfig {
  TrialFunction base = TrialFunction::constant(1.0);
  std::vector<int> degrees{1, 2, 3, 4};
  std::vector<double> amplitudes{-0.3, -0.2, -0.1, 0.0, 0.1, 0.2, 0.3};
  int level = 8;
  Vec axis = Vec::unit(3, 0);  // zonal axis; resized to n when needed
};
void validate_sweep_config(const SweepConfig& cfg);

struct SweepRow {
  int degree = 0;
  double amplitude = 0.0;
  double quotient = 0.0;  // NaN when flagged
  bool flagged = false;   // trial not positive
};

// Rows sorted by (degree, amplitude).
std::vector<SweepRow> perturbation_sweep(const SweepConfig& cfg, const ParamTriple& P, double p,
                                         double s);

struct BubbleScanRow {
  double d = 0.0;
  Vec y0;
  double quotient = 0.0;
};
struct BubbleScan {
  std::vector<BubbleScanRow> rows;
  double spread = 0.0;  // (max - min) / max
  double max_quotient = 0.0;
};
// Conformal exponents only.
BubbleScan bubble_family_scan(const ParamTriple& P, const std::vector<double>& d_grid,
                              const std::vector<Vec>& y0_grid, int level);

struct AscentResult {
  TrialFunction best;
  double best_quotient = 0.0;
  std::vector<double> trace;  // best quotient after each accepted or rejected sweep
  int evaluations = 0;
  int halvings = 0;
};
// Compass search over perturbation amplitudes (constant or perturbed start)
// and bubble parameters log d, y0 (bubble start). A move to a non-positive
// trial is retried at half the offset, up to 20 times. The step halves when
// no move improves and the search stops below step_size/64.
AscentResult ascend(const ParamTriple& P, double p, double s, const TrialFunction& start,
                    int steps, double step_size, int level);

}  // namespace confext
