#pragma once

#include <optional>
#include <vector>

#include "zpd/arithmetic.hpp"
#include "zpd/bump.hpp"
#include "zpd/fit.hpp"
#include "zpd/numeric.hpp"
#include "zpd/zeta.hpp"

namespace zpd {

struct SumResult {
  cplx value{};
  long n_terms = 0;
  bool truncation_certificate = true;  // every omitted term is annihilated by the support of B
  double error_budget = 0.0;           // accumulated rounding bound
};

/// A twist given either exactly (m/q) or as a positive real.
struct Twist {
  double xi = 1.0 / 3.0;
  std::optional<ModularTwist> exact;

  Twist(double x);
  Twist(const ModularTwist& t);
  /// "m/q" or a decimal.
  static Twist parse(const std::string& text);
  std::string str() const;
};

/// sum Lambda(n) e(-n xi) B(n/X) over n in [Xa, Xb], ascending, compensated.
SumResult prime_side(const Twist& xi, const BumpFunction& bump, double X);

/// sum Lambda(n) B(n/X).
SumResult untwisted_sum(const BumpFunction& bump, double X);

/// sum over zeros of xi^{-1/2 - i gamma} Z(rho) B(gamma / (2 pi xi X)), multiplicity weighted.
/// Incomplete-table error if the table stops short of 2 pi xi X b.
SumResult zero_side(const Twist& xi, const BumpFunction& bump, double X, const ZeroTable& table);

struct ExplicitFormulaResult {
  cplx residual{};
  cplx prime_sum{};
  cplx integral{};
  cplx zero_sum{};      // sum over 0 < gamma <= H of I(gamma) + I(-gamma)
  double height = 0.0;  // H
  long zeros_used = 0;
  double tail_bound = 0.0;    // certified bound on the omitted zeros
  double quad_budget = 0.0;   // summed quadrature error estimates
  double budget() const { return tail_bound + quad_budget; }
};

/// Sum Lambda phi - [int (1 - 1/(u^3 - u)) phi - sum_rho phi^(rho)] with phi(u) = e(-u xi) B(u/X).
/// H is the smallest height on a geometric grid whose certified tail is <= tol / 2;
/// incomplete-table error naming H when the table is shorter.
ExplicitFormulaResult explicit_formula_residual(double xi, const BumpFunction& bump, double X,
                                                const ZeroTable& table, double tol, unsigned workers = 1);

/// The height H used by explicit_formula_residual; tail receives its bound.
double explicit_formula_height(double xi, const BumpFunction& bump, double X, double tol, double* tail = nullptr);

/// Certified bound on sum_{gamma > H} |I(gamma)| + |I(-gamma)|; zero counts per
/// interval from theta and the bound |S(T)| <= 0.112 log T + 0.278 log log T + 2.51.
double zero_tail_bound(double xi, const BumpFunction& bump, double X, double H);

struct DefectPoint {
  double X = 0.0;
  cplx prime{};
  cplx zero{};
  cplx defect{};  // prime + zero
};

struct DefectRun {
  std::vector<DefectPoint> points;
  ExponentFit fit;
};

/// D(X) = prime_side + zero_side over an ascending grid, with a log-log fit.
DefectRun theorem41_defect(const Twist& xi, const BumpFunction& bump, const std::vector<double>& X_grid,
                           const ZeroTable& table, unsigned workers = 1);

struct SuperboundResult {
  cplx value{};
  cplx zero_part{};   // sum xi^{-i gamma} Z(rho) B(gamma / (2 pi X))
  cplx prime_part{};  // mu(q)/phi(q) * untwisted_sum
  long n_zeros = 0;
};

/// The functional with B(gamma/(2 pi X)) and xi^{-i gamma}, as written. Needs the table to 2 pi X b.
SuperboundResult superbound_functional(const ModularTwist& twist, const BumpFunction& bump, double X,
                                       const ZeroTable& table);

/// sum Lambda(n) chi(n) B(n/X).
SumResult character_sum(const DirichletCharacter& chi, const BumpFunction& bump, double X);

/// (chi(-1) tau(chi) / q) sum_{(m,q)=1} conj chi(m) prime_side(m/q). chi primitive, q > 1.
SumResult character_sum_via_gauss(const DirichletCharacter& chi, const BumpFunction& bump, double X,
                                   ParityFactor parity = ParityFactor::as_printed);

/// prime_side(m/q) - mu(q)/phi(q) untwisted_sum.
cplx aloevera_defect(const ModularTwist& twist, const BumpFunction& bump, double X);

struct DyadicPiece {
  double scale = 0.0;   // X / 2^k
  cplx exact{};         // sum over scale/2 < n <= scale
  cplx smoothed{};      // sum Lambda chi B(n/scale)
};

struct DyadicResult {
  cplx assembly{};  // sum of the smoothed sums
  cplx direct{};    // sum_{n <= X} Lambda(n) chi(n)
  std::vector<DyadicPiece> pieces;
  double majorization_gap = 0.0;  // sum |smoothed| - |direct|
};

/// Dyadic decomposition of sum_{n <= X} Lambda chi with a plateau bump flat on [1/2, 1].
DyadicResult dyadic_assemble(const DirichletCharacter& chi, const BumpFunction& plateau, double X);

}  // namespace zpd
