#pragma once

#include <string>
#include <vector>

namespace zpd {

enum class BumpKind { canonical, plateau, vanishing };

/// Smooth test function supported in [a, b].
///  canonical: exp(-1/((u-a)(b-u))) on (a, b)
///  plateau:   smooth ramp up on [a, c], 1 on [c, d], ramp down on [d, b]
///  vanishing: identically zero (nominal support [a, b])
class BumpFunction {
 public:
  static BumpFunction canonical(double a, double b);
  static BumpFunction plateau(double a = 0.25, double c = 0.5, double d = 1.0, double b = 1.25);
  static BumpFunction vanishing(double a = 1.0, double b = 2.0);

  /// "a,b" -> canonical, "a,b,c,d" -> plateau with flat part [c, d], "zero" -> vanishing.
  static BumpFunction parse(const std::string& text);

  BumpKind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }

  double operator()(double u) const;

  /// B^{(k)}(u), k <= kMaxOrder.
  double deriv(double u, int k) const;

  /// B(u), B'(u), ..., B^{(k)}(u) in one pass.
  std::vector<double> derivs(double u, int k) const;

  std::string describe() const;

  static constexpr int kMaxOrder = 8;

 private:
  BumpFunction(BumpKind kind, double a, double b, double c, double d);

  BumpKind kind_;
  double a_, b_, c_, d_;
  // canonical: P_k in x = u - (a+b)/2, B^{(k)} = P_k(x) Q^{-2k} B with Q = h^2 - x^2
  std::vector<std::vector<double>> poly_;
};

double eval(const BumpFunction& bump, double u);
double deriv(const BumpFunction& bump, double u, int k);

/// X_B = max(10, 2/a): for X > X_B the dilated support X [a, b] excludes 1.
double support_constant(const BumpFunction& bump);

/// Derivatives 0..k of g(u) = B(u) / sqrt(u).
std::vector<double> g_derivs(const BumpFunction& bump, double u, int k);

}  // namespace zpd
