#include "zpd/duality.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>

#include "zpd/error.hpp"
#include "zpd/oscillatory.hpp"
#include "zpd/parallel.hpp"

namespace zpd {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Lambda(0..n), shared and grown on demand.
std::shared_ptr<const std::vector<double>> lambda_upto(std::size_t n) {
  static std::mutex mu;
  static std::shared_ptr<const std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache || cache->size() <= n) {
    const std::size_t size = std::max<std::size_t>(n, cache ? 2 * cache->size() : 1 << 16);
    cache = std::make_shared<const std::vector<double>>(von_mangoldt_table(size));
  }
  return cache;
}

struct Range {
  long lo, hi;  // n with a < n/X < b
};

Range support_range(const BumpFunction& bump, double X) {
  if (!(X > 0.0)) throw Error(ErrorKind::input, "X must be positive");
  return {std::max(1L, static_cast<long>(std::floor(X * bump.a())) + 1),
          static_cast<long>(std::ceil(X * bump.b())) - 1};
}

template <typename Weight>
SumResult lambda_sum(const BumpFunction& bump, double X, Weight weight) {
  const Range r = support_range(bump, X);
  SumResult out;
  if (r.hi < r.lo) return out;
  const auto lam = lambda_upto(static_cast<std::size_t>(r.hi));
  CompensatedSum<cplx> s;
  double mass = 0.0;
  for (long n = r.lo; n <= r.hi; ++n) {
    const double l = (*lam)[static_cast<std::size_t>(n)];
    if (l == 0.0) continue;
    const double b = bump(static_cast<double>(n) / X);
    if (b == 0.0) continue;
    const cplx t = l * b * weight(n);
    s.add(t);
    mass += std::abs(t);
    ++out.n_terms;
  }
  out.value = s.value();
  out.error_budget = 4.0 * kEps * mass;
  return out;
}

void require_height(const ZeroTable& table, double needed, const char* what) {
  if (table.height_max < needed) {
    std::ostringstream msg;
    msg.precision(10);
    msg << what << ": needs zeros to height " << needed << " but the table is certified only to "
        << table.height_max;
    throw Error(ErrorKind::incomplete_table, msg.str());
  }
}

long double log_xi(const Twist& t) {
  if (t.exact) return std::log(static_cast<long double>(t.exact->m)) - std::log(static_cast<long double>(t.exact->q));
  return std::log(static_cast<long double>(t.xi));
}

double s_bound(double t) {
  const double lt = std::log(std::max(t, 3.0));
  return 0.112 * lt + 0.278 * std::log(lt) + 2.510;
}

double tail_with(const OutsideBandBound& bound, double xi, const BumpFunction& bump, double X, double H) {
  const double scale = kTwoPi * xi * X;
  if (!(H / scale > bump.b())) return std::numeric_limits<double>::infinity();
  double total = 0.0;
  double T = H;
  for (int it = 0; it < 200000; ++it) {
    const double per = bound(xi, X, T) + bound(xi, X, -T);
    // Beyond T: per(t) <= per(T) (T/t)^2 against the zero density.
    const double remainder = per * (T * (std::log(T) + 1.0) / kTwoPi + 2.0 * s_bound(T));
    if (per == 0.0 || remainder <= 1e-3 * total) return total + remainder;
    const double step = std::max(1.0, 0.02 * T);
    const double T2 = T + step;
    const double count =
        static_cast<double>((riemann_siegel_theta_ld(T2) - riemann_siegel_theta_ld(T)) / kPiL) + s_bound(T) +
        s_bound(T2);
    total += count * per;
    T = T2;
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace

Twist::Twist(double x) : xi(x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorKind::input, "twist xi must be a positive real");
}

Twist::Twist(const ModularTwist& t) : xi(t.value()), exact(t) {}

Twist Twist::parse(const std::string& text) {
  if (text.find('/') != std::string::npos) return Twist(ModularTwist::parse(text));
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(ErrorKind::input, "bad twist '" + text + "'");
  return Twist(x);
}

std::string Twist::str() const {
  if (exact) return exact->str();
  std::ostringstream os;
  os.precision(17);
  os << xi;
  return os.str();
}

SumResult prime_side(const Twist& xi, const BumpFunction& bump, double X) {
  if (xi.exact) {
    const i64 m = xi.exact->m, q = xi.exact->q;
    return lambda_sum(bump, X, [m, q](long n) { return unit_root(-(static_cast<i64>(n) % q) * m, q); });
  }
  const long double x = xi.xi;
  return lambda_sum(bump, X, [x](long n) { return unit_phase(-static_cast<long double>(n) * x); });
}

SumResult untwisted_sum(const BumpFunction& bump, double X) {
  return lambda_sum(bump, X, [](long) { return cplx{1.0, 0.0}; });
}

SumResult zero_side(const Twist& xi, const BumpFunction& bump, double X, const ZeroTable& table) {
  const double scale = kTwoPi * xi.xi * X;
  require_height(table, scale * bump.b(), "zero_side");
  const long double lx = log_xi(xi);
  const double amp = 1.0 / std::sqrt(xi.xi);
  SumResult out;
  CompensatedSum<cplx> s;
  double mass = 0.0;
  for (const auto& e : table.entries) {
    const double gs = e.gamma / scale;
    if (gs <= bump.a()) continue;
    if (gs >= bump.b()) break;
    const double b = bump(gs);
    if (b == 0.0) continue;
    const cplx t = static_cast<double>(e.multiplicity) * amp * b * expi(-static_cast<long double>(e.gamma) * lx) * e.phase;
    s.add(t);
    mass += std::abs(t);
    ++out.n_terms;
  }
  out.value = s.value();
  out.error_budget = 4.0 * kEps * mass;
  return out;
}

double zero_tail_bound(double xi, const BumpFunction& bump, double X, double H) {
  const OutsideBandBound bound(bump);
  return tail_with(bound, xi, bump, X, H);
}

double explicit_formula_height(double xi, const BumpFunction& bump, double X, double tol, double* tail) {
  if (!(tol > 0.0)) throw Error(ErrorKind::input, "explicit formula: tolerance must be positive");
  const OutsideBandBound bound(bump);
  double H = std::max(kTwoPi * xi * X * bump.b() * 1.05, 15.0);
  double t = tail_with(bound, xi, bump, X, H);
  for (int it = 0; it < 400 && t > 0.5 * tol; ++it) {
    H *= 1.05;
    t = tail_with(bound, xi, bump, X, H);
  }
  if (!(t <= 0.5 * tol)) throw Error(ErrorKind::numeric_budget, "explicit formula: tail bound does not reach tolerance");
  if (tail) *tail = t;
  return H;
}

ExplicitFormulaResult explicit_formula_residual(double xi, const BumpFunction& bump, double X,
                                                const ZeroTable& table, double tol, unsigned workers) {
  if (!(tol > 0.0)) throw Error(ErrorKind::input, "explicit formula: tolerance must be positive");
  ExplicitFormulaResult r;
  const auto quad_integral = mandalorian_integral(xi, bump, X, 1e-12);
  r.integral = quad_integral.value;
  r.prime_sum = prime_side(Twist(xi), bump, X).value;

  const double H = explicit_formula_height(xi, bump, X, tol, &r.tail_bound);
  require_height(table, H, "explicit formula");
  r.height = H;

  std::vector<const ZeroEntry*> zeros;
  for (const auto& e : table.entries) {
    if (e.gamma > H) break;
    zeros.push_back(&e);
  }
  r.zeros_used = static_cast<long>(zeros.size());
  const double qtol = std::max(1e-13, 0.05 * tol / std::max<double>(1.0, 2.0 * static_cast<double>(zeros.size())));
  struct Pair {
    cplx value;
    double err;
  };
  const auto pairs = parallel_map(zeros.size(), workers, [&](std::size_t k) {
    OscIntegralSpec spec{xi, bump, X, zeros[k]->gamma};
    const auto plus = quad_I(spec, qtol);
    spec.gamma = -zeros[k]->gamma;
    const auto minus = quad_I(spec, qtol);
    const double m = zeros[k]->multiplicity;
    return Pair{m * (plus.value + minus.value), m * (plus.abs_error_estimate + minus.abs_error_estimate)};
  });
  CompensatedSum<cplx> zs;
  for (const auto& p : pairs) {
    zs.add(p.value);
    r.quad_budget += p.err;
  }
  r.quad_budget += quad_integral.abs_error_estimate;
  r.zero_sum = zs.value();
  r.residual = r.prime_sum - (r.integral - r.zero_sum);
  return r;
}

DefectRun theorem41_defect(const Twist& xi, const BumpFunction& bump, const std::vector<double>& X_grid,
                           const ZeroTable& table, unsigned workers) {
  for (std::size_t i = 1; i < X_grid.size(); ++i)
    if (!(X_grid[i] > X_grid[i - 1])) throw Error(ErrorKind::input, "X grid must be ascending");
  DefectRun run;
  run.points = parallel_map(X_grid.size(), workers, [&](std::size_t i) {
    DefectPoint p;
    p.X = X_grid[i];
    p.prime = prime_side(xi, bump, p.X).value;
    p.zero = zero_side(xi, bump, p.X, table).value;
    p.defect = p.prime + p.zero;
    return p;
  });
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : run.points) pts.emplace_back(p.X, std::abs(p.defect));
  run.fit = fit_exponent(pts);
  return run;
}

SuperboundResult superbound_functional(const ModularTwist& twist, const BumpFunction& bump, double X,
                                       const ZeroTable& table) {
  const double scale = kTwoPi * X;
  require_height(table, scale * bump.b(), "superbound");
  const long double lx = log_xi(Twist(twist));
  SuperboundResult r;
  CompensatedSum<cplx> s;
  for (const auto& e : table.entries) {
    const double gs = e.gamma / scale;
    if (gs <= bump.a()) continue;
    if (gs >= bump.b()) break;
    const double b = bump(gs);
    if (b == 0.0) continue;
    s.add(static_cast<double>(e.multiplicity) * b * expi(-static_cast<long double>(e.gamma) * lx) * e.phase);
    ++r.n_zeros;
  }
  r.zero_part = s.value();
  const int mu = mobius(twist.q);
  if (mu != 0)
    r.prime_part = static_cast<double>(mu) / static_cast<double>(euler_phi(twist.q)) * untwisted_sum(bump, X).value;
  r.value = r.zero_part + r.prime_part;
  return r;
}

SumResult character_sum(const DirichletCharacter& chi, const BumpFunction& bump, double X) {
  return lambda_sum(bump, X, [&chi](long n) { return chi(n); });
}

SumResult character_sum_via_gauss(const DirichletCharacter& chi, const BumpFunction& bump, double X,
                                   ParityFactor parity) {
  const i64 q = chi.modulus();
  if (q <= 1 || !chi.is_primitive())
    throw Error(ErrorKind::precondition, "character_sum_via_gauss: character must be primitive with q > 1");
  SumResult out;
  CompensatedSum<cplx> s;
  double budget = 0.0;
  for (i64 m = 1; m < q; ++m) {
    if (gcd(m, q) != 1) continue;
    const auto ps = prime_side(Twist(ModularTwist(m, q)), bump, X);
    s.add(std::conj(chi(m)) * ps.value);
    budget += ps.error_budget;
    out.n_terms += ps.n_terms;
  }
  const double sign = parity == ParityFactor::as_printed ? static_cast<double>(chi.parity()) : 1.0;
  const cplx factor = sign * gauss_sum(chi) / static_cast<double>(q);
  out.value = factor * s.value();
  out.error_budget = std::abs(factor) * budget;
  return out;
}

cplx aloevera_defect(const ModularTwist& twist, const BumpFunction& bump, double X) {
  const cplx p = prime_side(Twist(twist), bump, X).value;
  const int mu = mobius(twist.q);
  if (mu == 0) return p;
  return p - static_cast<double>(mu) / static_cast<double>(euler_phi(twist.q)) * untwisted_sum(bump, X).value;
}

DyadicResult dyadic_assemble(const DirichletCharacter& chi, const BumpFunction& plateau, double X) {
  if (plateau.kind() != BumpKind::plateau || plateau.c() > 0.5 || plateau.d() < 1.0)
    throw Error(ErrorKind::precondition, "dyadic_assemble: needs a plateau bump equal to 1 on [1/2, 1]");
  if (!(X >= 1.0)) throw Error(ErrorKind::input, "dyadic_assemble: X must be at least 1");
  DyadicResult r;
  const auto top = static_cast<long>(std::floor(X));
  const auto lam = lambda_upto(static_cast<std::size_t>(std::ceil(X * plateau.b())) + 1);
  CompensatedSum<cplx> direct;
  for (long n = 2; n <= top; ++n) {
    const double l = (*lam)[static_cast<std::size_t>(n)];
    if (l != 0.0) direct.add(l * chi(n));
  }
  r.direct = direct.value();
  CompensatedSum<cplx> assembly;
  double mags = 0.0;
  for (double s = X;; s *= 0.5) {
    DyadicPiece p;
    p.scale = s;
    CompensatedSum<cplx> exact;
    for (long n = static_cast<long>(std::floor(0.5 * s)) + 1; n <= static_cast<long>(std::floor(s)); ++n) {
      const double l = (*lam)[static_cast<std::size_t>(n)];
      if (l != 0.0) exact.add(l * chi(n));
    }
    p.exact = exact.value();
    p.smoothed = character_sum(chi, plateau, s).value;
    assembly.add(p.smoothed);
    mags += std::abs(p.smoothed);
    r.pieces.push_back(p);
    if (0.5 * s < 2.0) break;
  }
  r.assembly = assembly.value();
  r.majorization_gap = mags - std::abs(r.direct);
  return r;
}

}  // namespace zpd
