#include "zpd/jet.hpp"

#include <algorithm>
#include <stdexcept>

namespace zpd {

double Jet::derivative(std::size_t k) const {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return c_.at(k) * f;
}

Jet& Jet::operator+=(const Jet& o) {
  const std::size_t n = std::min(c_.size(), o.c_.size());
  c_.resize(n);
  for (std::size_t k = 0; k < n; ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  const std::size_t n = std::min(c_.size(), o.c_.size());
  c_.resize(n);
  for (std::size_t k = 0; k < n; ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  const std::size_t n = std::min(a.order(), b.order());
  Jet r(n);
  for (std::size_t k = 0; k <= n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
    r.c_[k] = s;
  }
  return r;
}

Jet reciprocal(const Jet& a) {
  if (a.c_[0] == 0.0) throw std::domain_error("Jet reciprocal of a series with zero constant term");
  const std::size_t n = a.order();
  Jet r(n);
  r.c_[0] = 1.0 / a.c_[0];
  for (std::size_t k = 1; k <= n; ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i <= k; ++i) s += a.c_[i] * r.c_[k - i];
    r.c_[k] = -s / a.c_[0];
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

Jet exp(const Jet& a) {
  const std::size_t n = a.order();
  Jet r(n);
  r.c_[0] = std::exp(a.c_[0]);
  // r' = a' r  =>  k r_k = sum_{i=1}^{k} i a_i r_{k-i}
  for (std::size_t k = 1; k <= n; ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i <= k; ++i) s += static_cast<double>(i) * a.c_[i] * r.c_[k - i];
    r.c_[k] = s / static_cast<double>(k);
  }
  return r;
}

Jet pow(const Jet& a, double p) {
  if (a.c_[0] <= 0.0) throw std::domain_error("Jet pow needs a positive constant term");
  const std::size_t n = a.order();
  Jet r(n);
  r.c_[0] = std::pow(a.c_[0], p);
  // a r' = p a' r
  for (std::size_t k = 1; k <= n; ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i <= k; ++i)
      s += (p * static_cast<double>(i) - static_cast<double>(k - i)) * a.c_[i] * r.c_[k - i];
    r.c_[k] = s / (static_cast<double>(k) * a.c_[0]);
  }
  return r;
}

}  // namespace zpd
