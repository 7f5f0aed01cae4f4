#include "zpd/oscillatory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "zpd/error.hpp"
#include "zpd/operator_calculus.hpp"

namespace zpd {

namespace {

constexpr int kCC = 32;  // 33 nodes; the even-indexed 17 form the embedded rule

struct CCRule {
  std::array<double, kCC + 1> x{};
  std::vector<double> w33;
  std::vector<double> w17;
};

std::vector<double> cc_weights(int n) {
  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 1; j <= n / 2; ++j) {
      const double bj = (2 * j == n) ? 1.0 : 2.0;
      s += bj / (4.0 * j * j - 1.0) * std::cos(2.0 * j * k * kPi / n);
    }
    const double ck = (k == 0 || k == n) ? 1.0 : 2.0;
    w[static_cast<std::size_t>(k)] = ck / n * (1.0 - s);
  }
  return w;
}

const CCRule& cc_rule() {
  static const CCRule rule = [] {
    CCRule r;
    for (int k = 0; k <= kCC; ++k) r.x[static_cast<std::size_t>(k)] = std::cos(k * kPi / kCC);
    r.w33 = cc_weights(kCC);
    r.w17 = cc_weights(kCC / 2);
    return r;
  }();
  return rule;
}

struct Panel {
  double lo, hi;
  cplx q;
  double err;
};

Panel eval_panel(const std::function<cplx(double)>& f, double lo, double hi) {
  const CCRule& r = cc_rule();
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  std::array<cplx, kCC + 1> fx;
  for (int k = 0; k <= kCC; ++k) {
    // endpoints are taken exactly so adjacent panels share nodes
    const double u = (k == 0) ? hi : (k == kCC) ? lo : mid + half * r.x[static_cast<std::size_t>(k)];
    fx[static_cast<std::size_t>(k)] = f(u);
  }
  cplx q33 = 0.0, q17 = 0.0;
  for (int k = 0; k <= kCC; ++k) q33 += r.w33[static_cast<std::size_t>(k)] * fx[static_cast<std::size_t>(k)];
  for (int k = 0; k <= kCC / 2; ++k) q17 += r.w17[static_cast<std::size_t>(k)] * fx[static_cast<std::size_t>(2 * k)];
  q33 *= half;
  q17 *= half;
  return {lo, hi, q33, std::abs(q33 - q17)};
}

[[noreturn]] void budget_failure(const char* what, const QuadResult& partial) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << ": tolerance not reached within panel budget (estimate " << partial.value.real() << " + "
      << partial.value.imag() << "i, error estimate " << partial.abs_error_estimate << ", panels "
      << partial.panels << ")";
  throw Error(ErrorKind::numeric_budget, msg.str());
}

QuadResult finish(std::vector<Panel>& panels) {
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  CompensatedSum<cplx> s;
  double err = 0.0;
  for (const auto& p : panels) {
    s.add(p.q);
    err += p.err;
  }
  return {s.value(), err, static_cast<long>(panels.size())};
}

double local_quarter_period(double dphi, double ddphi) {
  double period = std::numeric_limits<double>::infinity();
  if (dphi != 0.0) period = kTwoPi / std::abs(dphi);
  if (ddphi != 0.0) period = std::min(period, std::sqrt(kTwoPi / std::abs(ddphi)));
  return 0.25 * period;
}

std::vector<std::vector<OperatorTerm>> dl_terms(int kmax) {
  std::vector<std::vector<OperatorTerm>> out(static_cast<std::size_t>(kmax) + 1);
  for (int k = 0; k <= kmax; ++k) out[static_cast<std::size_t>(k)] = dl_power(k, 0.0).terms;
  return out;
}

// Neville extrapolation of (h_j, y_j) to h = 0.
cplx neville_at_zero(const std::vector<double>& h, std::vector<cplx> y) {
  const std::size_t n = h.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i) y[i] = (h[i + m] * y[i] - h[i] * y[i + 1]) / (h[i + m] - h[i]);
  return y[0];
}

}  // namespace

QuadResult integrate_panels(const std::function<cplx(double)>& f, double lo, double hi,
                            const std::function<double(double)>& width, double tol, long max_panels) {
  std::vector<Panel> panels;
  if (!(hi > lo)) return {};
  for (double u = lo; u < hi;) {
    double w = width(u);
    w = std::min(w, width(std::min(u + w, hi)));
    if (!(w > 0.0)) throw Error(ErrorKind::numeric_budget, "integrate_panels: non-positive panel width");
    const double next = (hi - u <= w * (1.0 + 1e-12)) ? hi : u + w;
    panels.push_back(eval_panel(f, u, next));
    if (static_cast<long>(panels.size()) > max_panels) {
      QuadResult partial = finish(panels);
      budget_failure("integrate_panels", partial);
    }
    u = next;
  }

  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item> worst;
  cplx total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    worst.push({panels[i].err, i});
    total += panels[i].q;
    total_err += panels[i].err;
  }
  while (total_err > tol * (1.0 + std::abs(total))) {
    const std::size_t i = worst.top().second;
    worst.pop();
    const Panel p = panels[i];
    const double mid = 0.5 * (p.lo + p.hi);
    if (!(mid > p.lo && mid < p.hi) || static_cast<long>(panels.size()) >= max_panels) {
      QuadResult partial = finish(panels);
      budget_failure("integrate_panels", partial);
    }
    const Panel left = eval_panel(f, p.lo, mid), right = eval_panel(f, mid, p.hi);
    total += left.q + right.q - p.q;
    total_err += left.err + right.err - p.err;
    panels[i] = left;
    panels.push_back(right);
    worst.push({left.err, i});
    worst.push({right.err, panels.size() - 1});
  }
  return finish(panels);
}

StationaryBand star_params(double a, double b, double gamma, double xi, double X) {
  StationaryBand s;
  s.a_star = 0.5 * (1.0 + 2.0 * a - std::sqrt(1.0 + 4.0 * a));
  s.b_star = 0.5 * (1.0 + 2.0 * b + std::sqrt(1.0 + 4.0 * b));
  s.gamma_star = gamma / (kTwoPi * xi * X);
  return s;
}

namespace {

void check_spec(const OscIntegralSpec& spec) {
  if (!(spec.xi > 0.0)) throw Error(ErrorKind::input, "oscillatory integral: xi must be positive");
  if (!(spec.X > support_constant(spec.bump)))
    throw Error(ErrorKind::precondition, "oscillatory integral: X must exceed the support constant");
}

}  // namespace

QuadResult quad_I(const OscIntegralSpec& spec, double tol, long max_panels) {
  check_spec(spec);
  if (spec.gamma == 0.0) throw Error(ErrorKind::domain, "quad_I: gamma must be nonzero");
  if (!(tol >= 1e-13)) throw Error(ErrorKind::precondition, "quad_I: tolerance below 1e-13");
  const BumpFunction& B = spec.bump;
  const long double two_pi_xi = kTwoPiL * static_cast<long double>(spec.xi);
  const long double g = spec.gamma;
  const double X = spec.X;
  const auto f = [&](double u) -> cplx {
    const double b = B(u / X);
    if (b == 0.0) return 0.0;
    const long double phase = -two_pi_xi * u + g * std::log(static_cast<long double>(u));
    return (b / std::sqrt(u)) * expi(phase);
  };
  const double cap = X * (B.b() - B.a()) / 32.0;
  const double two_pi_xi_d = kTwoPi * spec.xi;
  const auto width = [&](double u) {
    return std::min(cap, local_quarter_period(-two_pi_xi_d + spec.gamma / u, -spec.gamma / (u * u)));
  };
  try {
    return integrate_panels(f, X * B.a(), X * B.b(), width, tol, max_panels);
  } catch (const Error& e) {
    std::ostringstream msg;
    msg << "quad_I(gamma = " << spec.gamma << "): " << e.what();
    throw Error(e.kind(), msg.str());
  }
}

cplx stationary_phase_factor(double gamma) {
  const long double g = gamma;
  const long double cycles = g / kTwoPiL * (std::log(g) - std::log(kTwoPiL) - 1.0L) + 0.875L;
  return unit_phase(cycles);
}

namespace {

cplx sp_main(const OscIntegralSpec& spec, long double offset) {
  check_spec(spec);
  if (!(spec.gamma > 0.0)) throw Error(ErrorKind::domain, "sp_I: gamma must be positive");
  const auto band = star_params(spec.bump.a(), spec.bump.b(), spec.gamma, spec.xi, spec.X);
  if (!band.in_band()) return 0.0;
  const long double g = spec.gamma;
  const long double cycles = g / kTwoPiL * (std::log(g) - std::log(kTwoPiL) - 1.0L) + offset;
  const cplx xi_pow = std::pow(spec.xi, -0.5) * expi(-g * std::log(static_cast<long double>(spec.xi)));
  return xi_pow * unit_phase(cycles) * spec.bump(band.gamma_star);
}

}  // namespace

cplx sp_I(const OscIntegralSpec& spec) { return sp_main(spec, 0.875L); }

cplx sp_I_minus_eighth(const OscIntegralSpec& spec) { return sp_main(spec, -0.125L); }

OutsideBandBound::OutsideBandBound(const BumpFunction& bump, int kmax) : bump_(bump), kmax_(kmax) {
  if (kmax < 2 || kmax > BumpFunction::kMaxOrder)
    throw Error(ErrorKind::input, "OutsideBandBound: kmax must lie in [2, 8]");
  const auto K = static_cast<std::size_t>(kmax);
  moments_.assign(K + 1, std::vector<double>(K + 1, 0.0));
  // Composite Simpson on [a, b]; the integrands vanish to all orders at the ends.
  const int n = 20000;
  const double a = bump.a(), b = bump.b(), h = (b - a) / n;
  for (int s = 1; s < n; ++s) {
    const double u = a + s * h;
    const double wgt = (s % 2 ? 4.0 : 2.0) * h / 3.0;
    const auto gd = g_derivs(bump, u, kmax);
    double up = 1.0;
    for (std::size_t hh = 0; hh <= K; ++hh, up *= u)
      for (std::size_t i = 0; i <= K; ++i) moments_[hh][i] += wgt * up * std::abs(gd[i]);
  }
  // margin for the quadrature of |g^{(i)}|
  for (auto& row : moments_)
    for (double& m : row) m *= 1.001;
}

double OutsideBandBound::operator()(double xi, double X, double gamma) const {
  static const auto terms = dl_terms(BumpFunction::kMaxOrder);
  const double scale = kTwoPi * xi * X;
  const double gs = gamma / scale;
  const double a = bump_.a(), b = bump_.b();
  if (gs >= a && gs <= b) return std::numeric_limits<double>::infinity();
  const double dist = gs < a ? a - gs : gs - b;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= kmax_; ++k) {
    double s = 0.0;
    for (const auto& t : terms[static_cast<std::size_t>(k)])
      s += std::abs(t.coeff) * moments_[static_cast<std::size_t>(t.h)][static_cast<std::size_t>(t.i)] *
           std::pow(dist, -t.j);
    best = std::min(best, std::sqrt(X) * std::pow(scale, -k) * s);
  }
  return best;
}

double taylor_remainder_budget(double X) { return std::pow(X, -0.6); }

OscDiagnostic diagnose(const OscIntegralSpec& spec, double tol) {
  OscDiagnostic d;
  d.gamma = spec.gamma;
  const auto band = star_params(spec.bump.a(), spec.bump.b(), spec.gamma, spec.xi, spec.X);
  d.gamma_star = band.gamma_star;
  d.regime = band.in_band() ? "in-band" : "outside";
  const auto q = quad_I(spec, tol);
  d.quad = q.value;
  d.error_estimate = q.abs_error_estimate;
  d.stationary = spec.gamma > 0.0 ? sp_I(spec) : cplx{};
  return d;
}

FresnelTail fresnel_tail(double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::domain, "fresnel_tail: lambda must be positive");
  const int levels = 9;
  const double n0 = std::ceil(lambda * lambda / kTwoPi) + 8.0;
  const auto width = [](double u) { return std::min(0.25, kPi / (4.0 * std::abs(u))); };
  const auto f1 = [](double u) { return expi(-static_cast<long double>(u) * u); };
  const auto f2 = [](double u) { return expi(-static_cast<long double>(u) * u) / (u * u); };
  constexpr double tol = 1e-12;

  std::vector<double> h;
  std::vector<cplx> y1, y2;
  double from = lambda;
  CompensatedSum<cplx> s1, s2;
  for (int j = 0; j < levels; ++j) {
    const double U = std::sqrt(kTwoPi * n0 * std::ldexp(1.0, j));
    s1.add(integrate_panels(f1, from, U, width, tol).value);
    s2.add(integrate_panels(f2, from, U, width, tol).value);
    from = U;
    h.push_back(1.0 / U);
    y1.push_back(s1.value());
    y2.push_back(s2.value());
  }
  const cplx half_direct = neville_at_zero(h, y1);
  const cplx half_inv = neville_at_zero(h, y2);
  const cplx I(0.0, 1.0);
  const cplx boundary = std::polar(1.0, -lambda * lambda) / (I * lambda);
  FresnelTail out;
  out.direct = 2.0 * half_direct;
  out.inverse_square = 2.0 * half_inv;
  out.closed = boundary + I * out.inverse_square;
  out.closed_half = boundary + 0.5 * I * out.inverse_square;
  return out;
}

QuadResult mandalorian_integral(double xi, const BumpFunction& bump, double X, double tol) {
  if (!(xi > 0.0)) throw Error(ErrorKind::input, "mandalorian_integral: xi must be positive");
  if (!(X > support_constant(bump)))
    throw Error(ErrorKind::precondition, "mandalorian_integral: X must exceed the support constant");
  const long double two_pi_xi = kTwoPiL * static_cast<long double>(xi);
  const auto f = [&](double u) -> cplx {
    const double b = bump(u / X);
    if (b == 0.0) return 0.0;
    return (1.0 - 1.0 / (u * u * u - u)) * b * expi(-two_pi_xi * u);
  };
  const double cap = std::min(0.25 / xi, X * (bump.b() - bump.a()) / 32.0);
  return integrate_panels(f, X * bump.a(), X * bump.b(), [cap](double) { return cap; }, tol);
}

}  // namespace zpd
