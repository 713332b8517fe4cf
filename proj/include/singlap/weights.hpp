#pragma once

#include <limits>
#include <optional>
#include <string>

#include "singlap/exponents.hpp"
#include "singlap/grid.hpp"

namespace singlap {

enum class WeightFamily { gaussian, bump, powerdecay };

/// Radial coefficient profile a(r). Families:
///   gaussian    A exp(-lambda r^2)
///   bump        A (1 - (r/rho0)^2)_+^k          (compact support [0, rho0], k >= 1)
///   powerdecay  A (1 + r)^{-sigma}              (needs sigma > N for integrability)
struct WeightSpec {
  WeightFamily family = WeightFamily::gaussian;
  double amplitude = 1.0;
  double lambda = 1.0;  // gaussian decay rate
  double rho0 = 1.0;    // bump support radius
  double k = 2.0;       // bump smoothness exponent
  double sigma = 4.0;   // powerdecay rate

  double eval(double r) const;
  std::string family_name() const;
};

RadialField sample(const WeightSpec& w, const GridPtr& g);

/// L^q norm over all of R^N in closed form; nullopt when the integral diverges.
std::optional<double> analytic_lq_norm(const WeightSpec& w, int N, double q);

/// Upper bound on the q-th power tail  omega_{N-1} int_{r_from}^inf a(r)^q r^{N-1} dr.
/// +inf when divergent.
double tail_power_bound(const WeightSpec& w, int N, double q, double r_from);

/// Weight norms at the exponents the a priori machinery consumes, measured by
/// quadrature on the grid, with truncation-tail bounds and closed-form cross-checks.
struct WeightNorms {
  double q_zeta = 0, q_gamma = 0, q_delta = 0, q_xi = 0, q_conj = 0;
  double l1 = 0, l_zeta = 0, l_gamma = 0, l_delta = 0, l_xi = 0, l_conj = 0;
  double tail_l1 = 0, tail_zeta = 0;  // bounds on the q-th power mass beyond r_max
  std::optional<double> analytic_l1, analytic_zeta;
};

/// side selects which zeta/gamma/delta/bootstrap exponents apply (1 for a1, 2 for a2).
/// xi must lie in the side's bootstrap window; pass NaN for the window midpoint.
WeightNorms weight_norms(const WeightSpec& w, const ExponentConfig& cfg,
                         const DerivedExponents& dex, int side, const GridPtr& g,
                         double xi = std::numeric_limits<double>::quiet_NaN());

struct HaReport {
  ValidationReport report;
  WeightNorms norms;
};

/// Integrability and positivity checks for one weight: a in L^1 and L^{zeta_side},
/// nonnegative, not identically zero, positive on its support. Zero-weight regions
/// inside the grid are flagged as a note, not a failure. Throws on a weight that is
/// negative somewhere or vanishes identically (a broken spec, not a borderline one).
HaReport check_Ha(const WeightSpec& w, const ExponentConfig& cfg, int side, const GridPtr& g,
                  double xi = std::numeric_limits<double>::quiet_NaN());

struct InterpolationCheck {
  double lhs = 0, rhs = 0;
  bool holds = false;
};

/// Checks ||w||_q^q <= ||w||_1 + ||w||_p^p for 1 < q < p on the field's grid.
InterpolationCheck interpolation_check(const RadialField& w, double p, double q,
                                       double tol = 1e-8);

}  // namespace singlap
