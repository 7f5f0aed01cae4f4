#include <array>
#include <cmath>
#include <complex>
#include <mutex>

#include "zpd/error.hpp"
#include "zpd/zeta.hpp"

namespace zpd {

namespace {

using cplxl = std::complex<long double>;

// B_{2k} / (2k (2k-1)), k = 1..10.
constexpr std::array<long double, 10> kStirling = {
    1.0L / 12.0L,
    -1.0L / 360.0L,
    1.0L / 1260.0L,
    -1.0L / 1680.0L,
    1.0L / 1188.0L,
    -691.0L / 360360.0L,
    1.0L / 156.0L,
    -3617.0L / 122400.0L,
    43867.0L / 244188.0L,
    -174611.0L / 125400.0L,
};

// log Gamma(z) for Re z > 0 on the branch continuous from the positive axis.
cplxl log_gamma(cplxl z) {
  cplxl shift_sum = 0.0L;
  while (std::abs(z) < 20.0L) {
    shift_sum += std::log(z);
    z += 1.0L;
  }
  const cplxl inv = 1.0L / z;
  const cplxl inv2 = inv * inv;
  cplxl series = 0.0L;
  cplxl power = inv;
  for (long double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  const long double half_log_two_pi = 0.5L * std::log(kTwoPiL);
  return (z - 0.5L) * std::log(z) - z + half_log_two_pi + series - shift_sum;
}

// digamma(z) for Re z > 0.
std::complex<double> digamma(std::complex<double> z) {
  std::complex<double> shift = 0.0;
  while (std::abs(z) < 20.0) {
    shift += 1.0 / z;
    z += 1.0;
  }
  // psi(z) ~ log z - 1/(2z) - sum B_{2k} / (2k z^{2k})
  constexpr std::array<double, 7> b = {1.0 / 12.0,   -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
                                       1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
  const std::complex<double> inv2 = 1.0 / (z * z);
  std::complex<double> power = inv2;
  std::complex<double> series = 0.0;
  for (double c : b) {
    series += c * power;
    power *= inv2;
  }
  return std::log(z) - 0.5 / z - series - shift;
}

// b_k = B_{2k} / (2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}.
constexpr int kMaxEulerMaclaurinTerms = 60;

const std::array<double, kMaxEulerMaclaurinTerms + 1>& bernoulli_over_factorial() {
  static const auto table = [] {
    std::array<double, kMaxEulerMaclaurinTerms + 1> out{};
    for (int k = 1; k <= kMaxEulerMaclaurinTerms; ++k) {
      long double zeta2k;
      if (k == 1) {
        zeta2k = kPiL * kPiL / 6.0L;
      } else {
        zeta2k = 0.0L;
        for (int n = 200; n >= 1; --n) zeta2k += std::pow(static_cast<long double>(n), -2.0L * k);
        // tail beyond 200
        zeta2k += std::pow(200.0L, 1.0L - 2.0L * k) / (2.0L * k - 1.0L) - 0.5L * std::pow(200.0L, -2.0L * k);
      }
      const long double mag = 2.0L * zeta2k / std::pow(kTwoPiL, 2.0L * k);
      out[k] = static_cast<double>((k % 2 == 1) ? mag : -mag);
    }
    return out;
  }();
  return table;
}

}  // namespace

long double riemann_siegel_theta_ld(long double t) {
  if (!(t > 0.0L)) throw Error(ErrorKind::domain, "riemann_siegel_theta: t must be positive");
  const cplxl z(0.25L, 0.5L * t);
  return log_gamma(z).imag() - 0.5L * t * std::log(kPiL);
}

double riemann_siegel_theta(double t) {
  return static_cast<double>(riemann_siegel_theta_ld(static_cast<long double>(t)));
}

double riemann_siegel_theta_prime(double t) {
  const auto psi = digamma({0.25, 0.5 * t});
  return 0.5 * psi.real() - 0.5 * std::log(kPi);
}

double gram_point(long n) {
  if (n < -1) throw Error(ErrorKind::domain, "gram_point: index must be >= -1");
  const long double target = static_cast<long double>(n) * kPiL;
  // theta is increasing beyond its minimum near t = 6.29.
  double lo = 6.3;
  double hi = 20.0;
  while (riemann_siegel_theta_ld(hi) < target) hi *= 2.0;
  lo = std::max(lo, 0.5 * hi);
  if (n == -1) lo = 6.3;
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const long double f = riemann_siegel_theta_ld(t) - target;
    if (f > 0) hi = t; else lo = t;
    double step = static_cast<double>(f) / riemann_siegel_theta_prime(t);
    double next = t - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-15 * t) {
      t = next;
      break;
    }
    t = next;
  }
  return t;
}

cplx zeta_euler_maclaurin(cplx s) {
  const double t = std::abs(s.imag());
  const long n_terms = static_cast<long>(std::ceil(t / kPi)) + 12;
  const auto& b = bernoulli_over_factorial();

  // Head: sum_{n < N} n^{-s}, small n last so the largest terms are added last.
  CompensatedSum<cplx> head;
  for (long n = n_terms - 1; n >= 1; --n) {
    const double ln = std::log(static_cast<double>(n));
    head.add(std::polar(std::exp(-s.real() * ln), -s.imag() * ln));
  }
  const double lnN = std::log(static_cast<double>(n_terms));
  const cplx n_pow = std::polar(std::exp(-s.real() * lnN), -s.imag() * lnN);  // N^{-s}
  const double N = static_cast<double>(n_terms);
  cplx sum = head.value() + n_pow * N / (s - 1.0) + 0.5 * n_pow;

  // Tail: T_k = b_k s(s+1)...(s+2k-2) N^{-s-2k+1}
  cplx term = b[1] * s * n_pow / N;
  sum += term;
  for (int k = 1; k < kMaxEulerMaclaurinTerms; ++k) {
    const cplx next = term * (b[k + 1] / b[k]) * (s + (2.0 * k - 1.0)) * (s + 2.0 * k) / (N * N);
    if (std::abs(next) > std::abs(term)) break;  // asymptotic series turning
    sum += next;
    term = next;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

namespace {

// Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p), an entire function.
std::complex<double> rs_psi(std::complex<double> p) {
  return std::cos(kTwoPi * (p * p - p - 0.0625)) / std::cos(kTwoPi * p);
}

// Psi^{(n)}(p) for n = 0..12 via Cauchy's formula on a circle of radius r,
// nodes offset by half a step so none lies on the real axis.
std::array<double, 13> rs_psi_derivatives(double p) {
  constexpr int kNodes = 160;
  constexpr double r = 0.5;
  std::array<std::complex<double>, 13> acc{};
  for (int m = 0; m < kNodes; ++m) {
    const double ang = kTwoPi * (m + 0.5) / kNodes;
    const std::complex<double> w = std::polar(r, ang);
    const std::complex<double> f = rs_psi(p + w);
    std::complex<double> winv = 1.0 / w;
    std::complex<double> pw = 1.0;
    for (int n = 0; n <= 12; ++n) {
      acc[n] += f * pw;
      pw *= winv;
    }
  }
  std::array<double, 13> out{};
  double fact = 1.0;
  for (int n = 0; n <= 12; ++n) {
    if (n > 0) fact *= n;
    out[n] = fact * acc[n].real() / kNodes;
  }
  return out;
}

std::array<double, 5> rs_coefficients_direct(double p) {
  const auto d = rs_psi_derivatives(p);
  const double pi2 = kPi * kPi, pi4 = pi2 * pi2, pi6 = pi4 * pi2, pi8 = pi4 * pi4;
  return {
      d[0],
      -d[3] / (96.0 * pi2),
      d[2] / (64.0 * pi2) + d[6] / (18432.0 * pi4),
      -d[1] / (64.0 * pi2) - d[5] / (3840.0 * pi4) - d[9] / (5308416.0 * pi6),
      d[0] / (128.0 * pi2) + 19.0 * d[4] / (24576.0 * pi4) + 11.0 * d[8] / (5898240.0 * pi6) +
          d[12] / (2038431744.0 * pi8),
  };
}

constexpr int kChebDegree = 56;

struct ChebyshevTables {
  std::array<std::array<double, kChebDegree>, 5> coeff{};
};

const ChebyshevTables& rs_tables() {
  static const ChebyshevTables tables = [] {
    ChebyshevTables out;
    std::array<std::array<double, 5>, kChebDegree> values{};
    for (int j = 0; j < kChebDegree; ++j) {
      const double x = std::cos(kPi * (j + 0.5) / kChebDegree);
      values[j] = rs_coefficients_direct(0.5 * (x + 1.0));
    }
    for (int k = 0; k < 5; ++k) {
      for (int m = 0; m < kChebDegree; ++m) {
        double s = 0.0;
        for (int j = 0; j < kChebDegree; ++j) s += values[j][k] * std::cos(kPi * m * (j + 0.5) / kChebDegree);
        out.coeff[k][m] = 2.0 * s / kChebDegree;
      }
      out.coeff[k][0] *= 0.5;
    }
    return out;
  }();
  return tables;
}

double clenshaw(const std::array<double, kChebDegree>& c, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (int m = kChebDegree - 1; m >= 1; --m) {
    const double b0 = 2.0 * x * b1 - b2 + c[m];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

}  // namespace

double riemann_siegel_coefficient(int k, double p) {
  if (k < 0 || k > 4) throw Error(ErrorKind::domain, "riemann_siegel_coefficient: k must be in [0, 4]");
  return clenshaw(rs_tables().coeff[k], 2.0 * p - 1.0);
}

double hardy_z_riemann_siegel(double t) {
  t = std::abs(t);
  if (t < kTwoPi) throw Error(ErrorKind::domain, "Riemann-Siegel evaluation needs t >= 2 pi");
  const long double theta = riemann_siegel_theta_ld(t);
  const double a = std::sqrt(t / kTwoPi);
  const long n_max = static_cast<long>(std::floor(a));
  const double p = a - static_cast<double>(n_max);

  CompensatedSum<double> main;
  for (long n = n_max; n >= 1; --n) {
    const long double arg = theta - static_cast<long double>(t) * std::log(static_cast<long double>(n));
    const long double reduced = arg - kTwoPiL * std::nearbyintl(arg / kTwoPiL);
    main.add(std::cos(static_cast<double>(reduced)) / std::sqrt(static_cast<double>(n)));
  }

  const auto& tab = rs_tables();
  const double x = 2.0 * p - 1.0;
  const double inv_a = 1.0 / a;
  double corr = 0.0;
  double pw = 1.0;
  for (int k = 0; k < 5; ++k) {
    corr += clenshaw(tab.coeff[k], x) * pw;
    pw *= inv_a;
  }
  const double sign = (n_max % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
  return 2.0 * main.value() + sign * corr / std::sqrt(a);
}

double hardy_z(double t) {
  const double at = std::abs(t);
  if (at < 1.0) throw Error(ErrorKind::domain, "hardy_z: |t| must be >= 1");
  if (at < kRiemannSiegelCrossover) {
    const auto theta = riemann_siegel_theta_ld(at);
    const cplx z = expi(theta) * zeta_euler_maclaurin({0.5, at});
    return z.real();
  }
  return hardy_z_riemann_siegel(at);
}

HardyZValue hardy_z_checked(double t, double ceiling) {
  return {hardy_z(t), std::abs(t) > ceiling};
}

double s_by_argument(double T) {
  if (!(T > 0.0)) throw Error(ErrorKind::domain, "s_by_argument: T must be positive");
  const auto zeta_at = [T](double sigma) { return zeta_euler_maclaurin({sigma, T}); };

  // Re zeta > 0 on sigma = 2, so the principal argument there is the
  // continuous one reached from the real axis.
  double sigma = 2.0;
  cplx z = zeta_at(sigma);
  double arg = std::arg(z);

  constexpr int kSteps = 48;
  const double step0 = (2.0 - 0.5) / kSteps;
  // Recursive refinement: accept a step when the direct increment agrees with
  // the sum over its two halves and stays below pi/4.
  const auto increment = [&](auto&& self, double s0, cplx z0, double s1, cplx z1, int depth) -> double {
    const double direct = std::arg(z1 / z0);
    const double mid = 0.5 * (s0 + s1);
    const cplx zm = zeta_at(mid);
    const double halves = std::arg(zm / z0) + std::arg(z1 / zm);
    if ((std::abs(direct) < kPi / 4 && std::abs(direct - halves) < 1e-9) || depth > 40) return halves;
    return self(self, s0, z0, mid, zm, depth + 1) + self(self, mid, zm, s1, z1, depth + 1);
  };
  for (int i = 1; i <= kSteps; ++i) {
    const double next_sigma = (i == kSteps) ? 0.5 : 2.0 - i * step0;
    const cplx next = zeta_at(next_sigma);
    arg += increment(increment, sigma, z, next_sigma, next, 0);
    sigma = next_sigma;
    z = next;
  }
  return arg / kPi;
}

}  // namespace zpd
