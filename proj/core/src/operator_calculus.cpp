#include "zpd/operator_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "zpd/error.hpp"

namespace zpd {

namespace {

using Key = std::tuple<int, int, int>;

OperatorExpansion collect(const std::map<Key, cplx>& acc, double u0, OperatorClass cls) {
  OperatorExpansion out;
  out.u0 = u0;
  out.cls = cls;
  for (const auto& [key, c] : acc) {
    if (c == cplx{}) continue;
    out.terms.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
  }
  return out;
}

}  // namespace

OperatorExpansion base_expansion(double u0) {
  OperatorExpansion e;
  e.u0 = u0;
  e.terms.push_back({0, 0, 0, 1.0});
  e.cls = {0, 0, 1.0};
  return e;
}

OperatorExpansion apply_L(const OperatorExpansion& expr) {
  std::map<Key, cplx> acc;
  for (const auto& t : expr.terms) acc[{t.h + 1, t.i, t.j + 1}] += t.coeff;
  return collect(acc, expr.u0, {expr.cls.A + 1, expr.cls.B, expr.cls.C});
}

OperatorExpansion apply_D(const OperatorExpansion& expr) {
  std::map<Key, cplx> acc;
  for (const auto& t : expr.terms) {
    if (t.h > 0) acc[{t.h - 1, t.i, t.j}] += static_cast<double>(t.h) * t.coeff;  // G1
    acc[{t.h, t.i + 1, t.j}] += t.coeff;                                         // G2
    if (t.j > 0) acc[{t.h, t.i, t.j + 1}] += static_cast<double>(t.j) * t.coeff;  // G3
  }
  const auto& c = expr.cls;
  return collect(acc, expr.u0, {c.A, c.B + 1, (2.0 * c.A + c.B + 1.0) * c.C});
}

OperatorExpansion dl_power(int k, double u0) {
  if (k < 0) throw Error(ErrorKind::input, "dl_power: k must be non-negative");
  OperatorExpansion e = base_expansion(u0);
  for (int s = 0; s < k; ++s) e = apply_D(apply_L(e));
  return e;
}

OperatorExpansion l_dl_power(int k, double u0) { return apply_L(dl_power(k, u0)); }

bool satisfies_class(const OperatorExpansion& expr) {
  const auto& c = expr.cls;
  return std::all_of(expr.terms.begin(), expr.terms.end(), [&](const OperatorTerm& t) {
    return t.h >= 0 && t.i >= 0 && t.j >= 0 && t.h <= c.A && c.A <= t.j && t.i + t.j == t.h + c.B &&
           std::abs(t.coeff) <= c.C;
  });
}

double max_abs_coefficient(const OperatorExpansion& expr) {
  double m = 0.0;
  for (const auto& t : expr.terms) m = std::max(m, std::abs(t.coeff));
  return m;
}

cplx eval_expansion(const OperatorExpansion& expr, const BumpFunction& bump, double u, bool use_g) {
  if (u == expr.u0) {
    std::ostringstream msg;
    msg << "eval_expansion: pole at u = u0 = " << u;
    throw Error(ErrorKind::domain, msg.str());
  }
  int max_i = 0;
  for (const auto& t : expr.terms) max_i = std::max(max_i, t.i);
  const auto F = use_g ? g_derivs(bump, u, max_i) : bump.derivs(u, max_i);
  const double w = 1.0 / (expr.u0 - u);
  cplx s = 0.0;
  for (const auto& t : expr.terms) {
    const double f = F[static_cast<std::size_t>(t.i)];
    if (f == 0.0) continue;
    s += t.coeff * std::pow(u, t.h) * f * std::pow(w, t.j);
  }
  return s;
}

EnvelopeRatio envelope_ratio(const OperatorExpansion& expr, const BumpFunction& bump, int lo, int hi, int n) {
  EnvelopeRatio r;
  const double a = bump.a(), b = bump.b();
  for (int s = 1; s <= n; ++s) {
    const double u = a + (b - a) * s / (n + 1.0);
    const double dist = std::abs(u - expr.u0);
    if (dist < 1e-12) continue;
    const double env = std::max(std::pow(dist, -lo), std::pow(dist, -hi));
    const double ratio = std::abs(eval_expansion(expr, bump, u)) / env;
    ++r.samples;
    if (ratio > r.sup) {
      r.sup = ratio;
      r.at = u;
    }
  }
  return r;
}

}  // namespace zpd
