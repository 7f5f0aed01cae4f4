#pragma once

#include <utility>
#include <vector>

namespace zpd {

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  std::vector<std::pair<double, double>> points;  // (log X, log |D|) actually used
  int dropped = 0;                                 // points with |D| == 0
};

/// Least-squares line through (log X, log |D|). Points with |D| = 0 are
/// dropped and counted; fewer than 3 usable points is an input error.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& x_and_abs);

}  // namespace zpd
