#pragma once

#include <vector>

#include "liars/model.hpp"

namespace liars {

struct ControlCurve {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> residuals;  // |g| at each point, 0 where truth was chosen by default
  double scaled_penalty = 0.0;
  double goal = 0.0;
};

// Stationarity residual of the kinetic lie y for a listener at x.
double curve_residual(double y, double x, double scaled_penalty, double goal, const Kernel& k);

ControlCurve control_curve(const SmoothedBounded& k, double scaled_penalty, double goal, int cells = 501,
                           int refine = 7, double tol = 1e-8);

}  // namespace liars
