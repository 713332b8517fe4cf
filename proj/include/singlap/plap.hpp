#pragma once

#include <vector>

#include "singlap/grid.hpp"
#include "singlap/weights.hpp"

namespace singlap {

/// phi_p(s) = |s|^{p-2} s with phi_p(0) = 0, and its inverse |t|^{1/(p-1)} sign(t).
double phi_p(double s, double p);
double phi_p_inv(double t, double p);

/// Far-field closure at r_max.
///   zero     u(r_max) = 0 (classical truncation)
///   matched  u(r_max) = the exact decay integral of the p-harmonic continuation
///            carrying the accumulated flux Q(r_max) to infinity (needs p < N)
enum class Tail { zero, matched };

struct PLapSolution {
  RadialField u;
  std::vector<double> Q;  // accumulated flux  int_0^{r_i} tau^{N-1} h dtau
  double c_tail = 0.0;    // boundary value u(r_max)
};

/// Solves -div(|grad u|^{p-2} grad u) = h on the ball of radius r_max, radially:
///   u(r) = int_r^{r_max} phi_p^{-1}(s^{1-N} Q(s)) ds + u(r_max),  Q(s) = int_0^s tau^{N-1} h.
/// Both integrals use exact power-weighted moments of the piecewise-linear data,
/// so constant h is reproduced to roundoff for every p and the s^{1/(p-1)} kink of
/// the flux at the origin costs no accuracy. Requires h >= 0 nodewise and p > 1.
PLapSolution solve_plap(double p, const RadialField& rhs, Tail tail = Tail::matched);

/// Membrane response of a weight profile: solve_plap against the sampled weight.
PLapSolution torsion(const WeightSpec& w, double p, const GridPtr& g,
                     Tail tail = Tail::matched);

/// Polynomial bump test functions (r/R)^{2k} (1 - (r/R)^2)^m, sup-normalized.
/// Every member is nonnegative with phi'(0) = phi(R) = phi'(R) = phi''(R) = 0, so
/// residual pairings carry no boundary quadrature terms. Members are available both
/// as analytic evaluators and as sampled node/midpoint tables.
struct TestFunctionSet {
  struct Member {
    double m = 0, k = 0, sup = 1;
  };
  GridPtr grid;
  std::vector<Member> members;
  std::vector<std::vector<double>> phi_nodes;  // [test][node]
  std::vector<std::vector<double>> dphi_mid;   // [test][cell midpoint]

  std::size_t size() const { return members.size(); }
  double phi(std::size_t j, double r) const;
  double dphi(std::size_t j, double r) const;
};

TestFunctionSet polynomial_bumps(const GridPtr& g, std::size_t count = 20);

/// Signed weak-form defects  int |u'|^{p-2} u' phi' r^{N-1} - int h phi r^{N-1}
/// (times the sphere area), one per test function. The gradient factor is read
/// from u through the same moment weights the solver integrates with (boundary
/// flux seeded from h), so the defect measures the genuine weak-form gap of the
/// pair rather than finite-difference noise; integrals use per-cell Gauss rules.
std::vector<double> weak_residual(const RadialField& u, const RadialField& rhs, double p,
                                  const TestFunctionSet& tests);

}  // namespace singlap
