#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace zpd {

/// Truncated Taylor series c[0] + c[1] h + ... + c[n] h^n about a point.
/// Arithmetic propagates exact derivative information; c[k] = f^{(k)}/k!.
class Jet {
 public:
  explicit Jet(std::size_t order, double value = 0.0) : c_(order + 1, 0.0) { c_[0] = value; }

  static Jet variable(std::size_t order, double at) {
    Jet j(order, at);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  std::size_t order() const { return c_.size() - 1; }
  double operator[](std::size_t k) const { return c_[k]; }
  double& operator[](std::size_t k) { return c_[k]; }

  double derivative(std::size_t k) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  friend Jet exp(const Jet& a);
  friend Jet reciprocal(const Jet& a);
  friend Jet pow(const Jet& a, double p);

 private:
  std::vector<double> c_;
};

}  // namespace zpd
