#include "zpd/bump.hpp"

#include <cmath>
#include <sstream>

#include "zpd/error.hpp"
#include "zpd/jet.hpp"

namespace zpd {

namespace {

using Poly = std::vector<double>;

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = static_cast<double>(i) * p[i];
  return out;
}

Poly poly_mul(const Poly& p, const Poly& q) {
  Poly out(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

Poly poly_add(Poly p, const Poly& q, double s = 1.0) {
  if (p.size() < q.size()) p.resize(q.size(), 0.0);
  for (std::size_t i = 0; i < q.size(); ++i) p[i] += s * q[i];
  return p;
}

double poly_eval(const Poly& p, double x) {
  double r = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

// Smooth step s(x) = sigma(x) / (sigma(x) + sigma(1-x)), sigma(x) = exp(-1/x),
// as a jet in u where x = (u - origin) / width.
constexpr double kStepCutoff = 1.0 / 700.0;

Jet smooth_step(double u, double origin, double width, std::size_t order) {
  const double x0 = (u - origin) / width;
  Jet out(order, 0.0);
  if (x0 <= kStepCutoff) return out;
  if (x0 >= 1.0 - kStepCutoff) {
    out[0] = 1.0;
    return out;
  }
  Jet x(order, x0);
  if (order >= 1) x[1] = 1.0 / width;
  Jet one_minus = Jet(order, 1.0) - x;
  const Jet s1 = exp(-1.0 * reciprocal(x));
  const Jet s2 = exp(-1.0 * reciprocal(one_minus));
  return s1 / (s1 + s2);
}

void check_order(int k) {
  if (k < 0) throw Error(ErrorKind::input, "bump derivative order must be non-negative");
  if (k > BumpFunction::kMaxOrder)
    throw Error(ErrorKind::precondition,
                "bump derivative order " + std::to_string(k) + " unsupported (max " +
                    std::to_string(BumpFunction::kMaxOrder) + ")");
}

}  // namespace

BumpFunction::BumpFunction(BumpKind kind, double a, double b, double c, double d)
    : kind_(kind), a_(a), b_(b), c_(c), d_(d) {
  if (!(a > 0.0) || !(b > a) || !std::isfinite(b))
    throw Error(ErrorKind::input, "bump support must satisfy 0 < a < b");
  if (kind == BumpKind::plateau && !(a < c && c <= d && d < b))
    throw Error(ErrorKind::input, "plateau bump needs a < c <= d < b");
  if (kind == BumpKind::canonical) {
    const double h = 0.5 * (b - a);
    const Poly Q = {h * h, 0.0, -1.0};
    const Poly dQ = {0.0, -2.0};
    const Poly Q2 = poly_mul(Q, Q);
    poly_.push_back({1.0});
    for (int k = 0; k < kMaxOrder; ++k) {
      const Poly& P = poly_.back();
      Poly next = poly_mul(poly_derivative(P), Q2);
      next = poly_add(next, poly_mul(poly_mul(Q, dQ), P), -2.0 * k);
      next = poly_add(next, poly_mul(dQ, P));
      poly_.push_back(std::move(next));
    }
  }
}

BumpFunction BumpFunction::canonical(double a, double b) { return BumpFunction(BumpKind::canonical, a, b, a, b); }

BumpFunction BumpFunction::plateau(double a, double c, double d, double b) {
  return BumpFunction(BumpKind::plateau, a, b, c, d);
}

BumpFunction BumpFunction::vanishing(double a, double b) { return BumpFunction(BumpKind::vanishing, a, b, a, b); }

BumpFunction BumpFunction::parse(const std::string& text) {
  if (text == "zero" || text == "0") return vanishing();
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(ErrorKind::input, "bad bump specification '" + text + "'");
    v.push_back(x);
  }
  if (v.size() == 2) return canonical(v[0], v[1]);
  if (v.size() == 4) return plateau(v[0], v[2], v[3], v[1]);
  throw Error(ErrorKind::input, "bump specification needs a,b or a,b,c,d: '" + text + "'");
}

double BumpFunction::operator()(double u) const { return deriv(u, 0); }

double BumpFunction::deriv(double u, int k) const {
  check_order(k);
  if (kind_ == BumpKind::canonical) {
    if (!(u > a_ && u < b_)) return 0.0;
    const double Q = (u - a_) * (b_ - u);
    const double x = u - 0.5 * (a_ + b_);
    const double p = poly_eval(poly_[static_cast<std::size_t>(k)], x);
    if (p == 0.0) return 0.0;
    return p * std::exp(-1.0 / Q - 2.0 * k * std::log(Q));
  }
  return derivs(u, k)[static_cast<std::size_t>(k)];
}

std::vector<double> BumpFunction::derivs(double u, int k) const {
  check_order(k);
  std::vector<double> out(static_cast<std::size_t>(k) + 1, 0.0);
  if (!(u > a_ && u < b_)) return out;
  switch (kind_) {
    case BumpKind::vanishing:
      return out;
    case BumpKind::canonical:
      for (int i = 0; i <= k; ++i) out[static_cast<std::size_t>(i)] = deriv(u, i);
      return out;
    case BumpKind::plateau: {
      const auto order = static_cast<std::size_t>(k);
      Jet j(order, 1.0);
      if (u < c_)
        j = smooth_step(u, a_, c_ - a_, order);
      else if (u > d_)
        j = Jet(order, 1.0) - smooth_step(u, d_, b_ - d_, order);
      for (std::size_t i = 0; i <= order; ++i) out[i] = j.derivative(i);
      return out;
    }
  }
  return out;
}

std::string BumpFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case BumpKind::canonical:
      os << "canonical[" << a_ << "," << b_ << "]";
      break;
    case BumpKind::plateau:
      os << "plateau[" << a_ << "," << c_ << "," << d_ << "," << b_ << "]";
      break;
    case BumpKind::vanishing:
      os << "zero";
      break;
  }
  return os.str();
}

double eval(const BumpFunction& bump, double u) { return bump(u); }
double deriv(const BumpFunction& bump, double u, int k) { return bump.deriv(u, k); }

double support_constant(const BumpFunction& bump) { return std::max(10.0, 2.0 / bump.a()); }

std::vector<double> g_derivs(const BumpFunction& bump, double u, int k) {
  const auto B = bump.derivs(u, k);
  std::vector<double> out(B.size(), 0.0);
  if (!(u > 0.0)) return out;
  // w_m = (u^{-1/2})^{(m)}
  std::vector<double> w(B.size());
  w[0] = 1.0 / std::sqrt(u);
  for (std::size_t m = 1; m < w.size(); ++m) w[m] = w[m - 1] * (-0.5 - static_cast<double>(m - 1)) / u;
  for (std::size_t n = 0; n < out.size(); ++n) {
    double binom = 1.0, s = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      s += binom * B[j] * w[n - j];
      binom = binom * static_cast<double>(n - j) / static_cast<double>(j + 1);
    }
    out[n] = s;
  }
  return out;
}

}  // namespace zpd
