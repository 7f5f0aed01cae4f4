#include "zpd/fit.hpp"

#include <cmath>

#include "zpd/error.hpp"

namespace zpd {

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& x_and_abs) {
  ExponentFit fit;
  for (const auto& [x, d] : x_and_abs) {
    if (!(x > 0.0)) throw Error(ErrorKind::input, "fit_exponent: abscissae must be positive");
    const double m = std::abs(d);
    if (m == 0.0) {
      ++fit.dropped;
      continue;
    }
    fit.points.emplace_back(std::log(x), std::log(m));
  }
  const auto n = static_cast<double>(fit.points.size());
  if (fit.points.size() < 3) throw Error(ErrorKind::input, "fit_exponent: fewer than 3 usable points");
  double sx = 0, sy = 0;
  for (const auto& [x, y] : fit.points) {
    sx += x;
    sy += y;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : fit.points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::input, "fit_exponent: abscissae must not all coincide");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0;
  for (const auto& [x, y] : fit.points) {
    const double r = y - (fit.intercept + fit.slope * x);
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / n);
  return fit;
}

}  // namespace zpd
