#pragma once

#include <vector>

#include "zpd/bump.hpp"
#include "zpd/numeric.hpp"

namespace zpd {

/// One term c * u^h F^{(i)}(u) / (u0 - u)^j.
struct OperatorTerm {
  int h = 0;
  int i = 0;
  int j = 0;
  cplx coeff{1.0, 0.0};
};

/// Bookkeeping class V(A, B, C): h <= A <= j, i + j = h + B, |c| <= C.
struct OperatorClass {
  int A = 0;
  int B = 0;
  double C = 1.0;
};

struct OperatorExpansion {
  std::vector<OperatorTerm> terms;  // sorted by (h, i, j), no duplicates
  double u0 = 0.0;
  OperatorClass cls;
};

/// F itself: the single term (0, 0, 0, 1) in V(0, 0, 1).
OperatorExpansion base_expansion(double u0);

/// L F(u) = u F(u) / (u0 - u).
OperatorExpansion apply_L(const OperatorExpansion& expr);

/// D F(u) = F'(u), split as G1 + G2 + G3 (differentiate u^h, F^{(i)}, (u0-u)^{-j}).
OperatorExpansion apply_D(const OperatorExpansion& expr);

/// [DL]^k F and L [DL]^k F.
OperatorExpansion dl_power(int k, double u0);
OperatorExpansion l_dl_power(int k, double u0);

/// Whether every term satisfies the index constraints and coefficient bound of expr.cls.
bool satisfies_class(const OperatorExpansion& expr);

double max_abs_coefficient(const OperatorExpansion& expr);

/// Sum of c u^h F^{(i)}(u) / (u0 - u)^j with F = B / sqrt(u) (use_g) or F = B.
/// Domain error at u = u0.
cplx eval_expansion(const OperatorExpansion& expr, const BumpFunction& bump, double u, bool use_g = true);

/// sup over n equally spaced interior points of supp(B) of
/// |expr(u)| / max(|u - u0|^{-lo}, |u - u0|^{-hi}).
struct EnvelopeRatio {
  double sup = 0.0;
  double at = 0.0;
  int samples = 0;
};

EnvelopeRatio envelope_ratio(const OperatorExpansion& expr, const BumpFunction& bump, int lo, int hi, int n);

}  // namespace zpd
