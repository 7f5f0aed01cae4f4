#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

namespace zpd {

using cplx = std::complex<double>;

static_assert(std::numeric_limits<long double>::digits >= 64,
              "phase accumulation needs an extended long double");

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr long double kPiL = std::numbers::pi_v<long double>;
inline constexpr long double kTwoPiL = 2.0L * std::numbers::pi_v<long double>;

// e(x) = exp(2 pi i x). The integer part of x is dropped before the
// trigonometric evaluation.
inline cplx unit_phase(double cycles) {
  const double frac = cycles - std::nearbyint(cycles);
  return std::polar(1.0, kTwoPi * frac);
}

inline cplx unit_phase(long double cycles) {
  const long double frac = cycles - std::nearbyintl(cycles);
  return std::polar(1.0, static_cast<double>(kTwoPiL * frac));
}

// e(num/den) with the fraction reduced exactly in integers.
inline cplx unit_root(std::int64_t num, std::int64_t den) {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  if (2 * r > den) r -= den;
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(den));
}

// exp(i * angle) for angles that may be large; reduction happens in long double.
inline cplx expi(long double angle) {
  const long double turns = angle / kTwoPiL;
  return unit_phase(turns);
}

// Neumaier-compensated accumulator. Summation order is the call order.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_same_v<T, cplx>) {
      double re = sum_.real(), im = sum_.imag();
      double cre = comp_.real(), cim = comp_.imag();
      step(re, cre, x.real());
      step(im, cim, x.imag());
      sum_ = {re, im};
      comp_ = {cre, cim};
    } else {
      step(sum_, comp_, x);
    }
  }
  T value() const { return sum_ + comp_; }

 private:
  static void step(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }

  T sum_{};
  T comp_{};
};

}  // namespace zpd
