#pragma once

#include <functional>
#include <string>

#include "zpd/bump.hpp"
#include "zpd/numeric.hpp"

namespace zpd {

struct StationaryBand {
  double a_star = 0.0;
  double b_star = 0.0;
  double gamma_star = 0.0;

  bool in_band() const { return gamma_star >= a_star && gamma_star <= b_star; }
};

/// a* = (1 + 2a - sqrt(1 + 4a)) / 2, b* = (1 + 2b + sqrt(1 + 4b)) / 2, gamma* = gamma / (2 pi xi X).
StationaryBand star_params(double a, double b, double gamma, double xi, double X);

/// I(gamma) = int e(-u xi) B(u/X) u^{-1/2 + i gamma} du over X supp(B).
struct OscIntegralSpec {
  double xi = 1.0 / 3.0;
  BumpFunction bump = BumpFunction::canonical(1.0, 2.0);
  double X = 20.0;
  double gamma = 1.0;
};

struct QuadResult {
  cplx value{};
  double abs_error_estimate = 0.0;
  long panels = 0;
};

inline constexpr long kDefaultPanelBudget = 4'000'000;

/// Adaptive quadrature of f over [lo, hi]. Initial panels are no wider than
/// width(u); each panel uses the 33-point Clenshaw-Curtis rule with the
/// embedded 17-point rule as error estimate, and the worst panel is bisected
/// until the summed estimate is below tol (1 + |value|). Panels are summed in
/// ascending order. Throws numeric_budget (message carries the estimate) when
/// the panel budget runs out.
QuadResult integrate_panels(const std::function<cplx(double)>& f, double lo, double hi,
                            const std::function<double(double)>& width, double tol,
                            long max_panels = kDefaultPanelBudget);

/// Oscillation-aware quadrature of I(gamma); panels span at most a quarter of
/// the local period of -2 pi xi u + gamma log u. Precondition tol >= 1e-13.
QuadResult quad_I(const OscIntegralSpec& spec, double tol, long max_panels = kDefaultPanelBudget);

/// Stationary-phase main term xi^{-1/2 - i gamma} e(gamma/(2 pi) log(gamma/(2 pi e)) + 7/8) B(gamma*)
/// inside the band, 0 outside. Domain error for gamma <= 0.
cplx sp_I(const OscIntegralSpec& spec);

/// The same main term written with -1/8 in place of +7/8.
cplx sp_I_minus_eighth(const OscIntegralSpec& spec);

/// e(gamma/(2 pi) log(gamma/(2 pi e)) + 7/8), evaluated in long double.
cplx stationary_phase_factor(double gamma);

/// Certified bound on |I(gamma)| when gamma* lies outside [a, b], from k-fold
/// integration by parts with the L/D calculus:
///   |I| <= X^{1/2} (2 pi xi X)^{-k} sum |c_hij| M_hi dist^{-j},
/// M_hi = int_a^b u^h |g^{(i)}(u)| du, minimized over 2 <= k <= kmax.
/// Returns +inf when gamma* is inside [a, b].
class OutsideBandBound {
 public:
  OutsideBandBound(const BumpFunction& bump, int kmax = 6);
  double operator()(double xi, double X, double gamma) const;
  int kmax() const { return kmax_; }

 private:
  BumpFunction bump_;
  int kmax_;
  std::vector<std::vector<double>> moments_;  // [h][i]
};

/// Remainder budget X Delta^4 = X^{-3/5} of the Taylor step with Delta = X^{-2/5}.
double taylor_remainder_budget(double X);

/// Diagnostic record for one ordinate.
struct OscDiagnostic {
  double gamma = 0.0;
  double gamma_star = 0.0;
  std::string regime;  // "in-band" or "outside"
  cplx quad{};
  cplx stationary{};
  double error_estimate = 0.0;
};

OscDiagnostic diagnose(const OscIntegralSpec& spec, double tol);

/// Tail integrals over |u| > lambda.
struct FresnelTail {
  cplx closed{};         // e^{-i lambda^2} / (i lambda) + i int_{|u|>lambda} e^{-iu^2} u^{-2} du
  cplx direct{};         // int_{|u|>lambda} e^{-iu^2} du
  cplx closed_half{};    // e^{-i lambda^2} / (i lambda) + (i/2) int_{|u|>lambda} e^{-iu^2} u^{-2} du
  cplx inverse_square{};  // int_{|u|>lambda} e^{-iu^2} u^{-2} du
};

/// Panels capped at a quarter period up to phase-aligned cutoffs U_j with
/// U_j^2 = 2 pi n_j, then Neville extrapolation in 1/U_j.
FresnelTail fresnel_tail(double lambda);

/// int (1 - 1/(u^3 - u)) e(-u xi) B(u/X) du. Precondition X > X_B.
QuadResult mandalorian_integral(double xi, const BumpFunction& bump, double X, double tol = 1e-12);

}  // namespace zpd
