#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "singlap/bounds.hpp"
#include "singlap/exponents.hpp"
#include "singlap/grid.hpp"
#include "singlap/plap.hpp"
#include "singlap/weights.hpp"

namespace singlap {

/// The concrete reaction pair realizing the growth hypotheses with unit envelope
/// constants:  f(s,t) = s^{alpha1} (1 + t^{beta1}),  g(s,t) = (1 + s^{alpha2}) t^{beta2}.
/// f blows up as s -> 0+ and is undefined at s <= 0 (hard error); same for g in t.
struct Nonlinearity {
  double alpha1, beta1, alpha2, beta2;

  explicit Nonlinearity(const ExponentConfig& cfg)
      : alpha1(cfg.alpha1), beta1(cfg.beta1), alpha2(cfg.alpha2), beta2(cfg.beta2) {}

  double f(double s, double t) const;
  double g(double s, double t) const;
};

RadialField truncate(const RadialField& z, double cap);

/// Scalar prefactors of the invariant box: lower barriers carry no eps, the upper
/// ones inflate like eps^{alpha1/(p1-1)} as eps decreases. Requires 0 < eps <= 1.
struct EnvelopeFactors {
  double u_lo = 0, u_hi = 0, v_lo = 0, v_hi = 0;
};
EnvelopeFactors envelope_factors(const ExponentConfig& cfg, double R, double eps);

struct EnvelopeSet {
  double eps = 0;
  EnvelopeFactors factors;
  RadialField u_lo, u_hi, v_lo, v_hi;
};

struct SetupParams {
  double xi1 = std::numeric_limits<double>::quiet_NaN();  // NaN: window midpoint
  double xi2 = std::numeric_limits<double>::quiet_NaN();
  double kappa0 = 0.0;
  double ladder_tol = 1e-8;
  std::size_t n_test_functions = 20;
};

/// Immutable context shared by every stage of a run: validated exponents, sampled
/// weights, the weight membrane responses scaling into the barriers, the a priori
/// bounds, and the residual test functions.
struct ProblemSetup {
  ExponentConfig cfg;
  DerivedExponents dex;
  WeightSpec a1_spec, a2_spec;
  GridPtr grid;
  RadialField a1, a2;
  RadialField w1, w2;  // solutions of -div(|grad w|^{p_i - 2} grad w) = a_i
  WeightNorms norms1, norms2;
  BoundsReport bounds;
  TestFunctionSet tests;
  Nonlinearity model;
  SetupParams params;
};

ProblemSetup make_setup(const ExponentConfig& cfg, const WeightSpec& a1, const WeightSpec& a2,
                        const GridPtr& grid, const SetupParams& params = {});

EnvelopeSet envelopes(const ProblemSetup& ctx, double eps);

/// Largest box violation max(lo - z, z - hi, 0) over all nodes.
double bracketing_violation(const RadialField& z, const RadialField& lo, const RadialField& hi);

/// One frozen-coefficient step: caps the inputs at R_inf, shifts by eps inside the
/// singular slots, and solves the two decoupled problems exactly. Inputs must lie
/// in the eps-box (small slack tolerated); the frozen right-hand sides are checked
/// nodewise against their barrier bounds before solving.
struct MapResult {
  RadialField u, v;
};
MapResult schauder_map(const RadialField& z1, const RadialField& z2, double eps,
                       const ProblemSetup& ctx);

struct PicardResult {
  RadialField u, v;
  std::size_t iters = 0;
  bool converged = false;
  double distance = 0;     // last successive-iterate distance (max of the two L^{p_i*} gaps)
  double theta_final = 0;  // damping after any oscillation-triggered halving
  double max_clamp = 0;    // largest box re-projection applied to an iterate
  std::vector<double> distances;
};

/// Damped iteration z <- (1-theta) z + theta T(z) from the lower barriers, or from
/// `warm` when given. theta in (0, 1]; iterates are re-projected into the box.
/// Two consecutive distance increases halve theta.
PicardResult picard_solve(double eps, double theta, double tol, std::size_t max_iter,
                          const ProblemSetup& ctx,
                          const std::optional<std::pair<RadialField, RadialField>>& warm =
                              std::nullopt);

struct StageReport {
  double eps = 0;
  std::size_t iters = 0;
  bool converged = false;
  double distance = 0;
  double theta_final = 0;
  double max_clamp = 0;
  double moved_u = 0, moved_v = 0;  // gradient-seminorm move across the stage
  double bracket_violation = 0;
  double residual_max_u = 0, residual_max_v = 0;
  double max_u = 0, max_v = 0;
  double lq_u = 0, lq_v = 0;  // L^{p_i*} norms
};

struct Certification {
  double bracket_violation = 0;
  double max_u = 0, max_v = 0;
  double lq_u = 0, lq_v = 0;
  double residual_max_u = 0, residual_max_v = 0;
  double rho = 0, R_inf = 0, residual_tol = 0;
  bool bracketing_ok = false, linf_ok = false, lpstar_ok = false, residual_ok = false;
  bool overall = false;
};

struct ContinuationResult {
  std::vector<StageReport> stages;
  RadialField u, v;  // final-stage iterate
  Certification cert;
  bool converged_all = false;
};

std::vector<double> default_eps_schedule();

/// Runs the eps-continuation: cold start at the first eps, warm starts after, and
/// certifies the final pair against the a priori bounds and weak-form residuals.
/// Aborts with the partial stage history when a stage fails to converge.
ContinuationResult continuation(const std::vector<double>& eps_schedule, double theta, double tol,
                                std::size_t max_iter, const ProblemSetup& ctx,
                                double residual_tol = 1e-6);

/// Superlevel energy inequality on {u > 1}: for every nonnegative test function,
///   int_{u>1} |u'|^{p1-2} u' phi' <= M1 int_{u>1} a1 (1 + v^{beta1}) phi,
/// with cells crossing the level split at the interpolated crossing radius.
/// Mirror statement on {v > 1}. Trivially true when the superlevel set is empty.
struct TruncatedIneq {
  double lhs = 0, rhs = 0;
  bool holds = false;
};

struct TruncatedIneqReport {
  std::vector<TruncatedIneq> u_side, v_side;
  bool all_hold = false;
};

TruncatedIneqReport truncated_inequality_check(const RadialField& u, const RadialField& v,
                                               const ExponentConfig& cfg, const RadialField& a1,
                                               const RadialField& a2,
                                               const TestFunctionSet& tests, double tol = 1e-6);

}  // namespace singlap
