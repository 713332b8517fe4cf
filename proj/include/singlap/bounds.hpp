#pragma once

#include <array>
#include <string>
#include <vector>

#include "singlap/exponents.hpp"
#include "singlap/weights.hpp"

namespace singlap {

/// Best constant of the embedding D^{1,p}(R^N) -> L^{p*}(R^N):
///   ||w||_{p*} <= C(N,p) ||grad w||_p.
double talenti_constant(int N, double p);

/// Monotonicity constant of the odd power map: with c_p below,
///   p >= 2:     (phi_p(a) - phi_p(b))(a - b) >= c_p |a-b|^p,        c_p = 2^{2-p}
///   1 < p < 2:  (phi_p(a) - phi_p(b))(a - b) >= c_p |a-b|^2 / (|a|+|b|)^{2-p},  c_p = p-1.
double simon_constant(double p);

struct SimonCheck {
  double lhs = 0, rhs = 0;
  bool holds = false;
};
SimonCheck simon_check(double a, double b, double p);

/// Vector form: phi_p acts as |a|^{p-2} a on R^d and the products become dot
/// products, with |.| the Euclidean norm. Dimensions must agree.
SimonCheck simon_check(const std::vector<double>& a, const std::vector<double>& b, double p);

/// sup_{t >= 0} [ (t+1) / (t p + 1)^{1/p} ]^{1/sqrt(t+1)}; cached per p.
double moser_c4(double p);

/// Norm-inflation ladder for one component: exponents kappa_n solving
/// (kappa_n p + 1) xi' = (kappa_{n-1} + 1) p*, their summed reciprocals, and the
/// constants they compose into the L^inf bound.
struct MoserTrace {
  double xi = 0;
  double kappa0 = 0;
  std::vector<double> kappa;  // kappa_1 .. kappa_n
  double ratio_limit = 0;     // p* / (p xi'), the asymptotic growth factor (> 1)
  double eta_sum = 0;         // sum 1/((kappa_i+1) p)
  double eta_tail = 0;        // bound on the dropped remainder of eta_sum
  double sqrt_sum = 0;        // sum 1/sqrt(kappa_i+1)
  double sqrt_tail = 0;
  double C3 = 0, C4 = 0, C5 = 0;
  std::size_t n_terms = 0;
};

/// Builds the ladder only (C3/C4/C5 left zero). side is 1 for u, 2 for v.
/// Throws domain_error when xi falls outside its admissible window or the
/// per-step test-exponent condition fails.
MoserTrace kappa_sequence(const ExponentConfig& cfg, const DerivedExponents& dex, int side,
                          double xi, double kappa0 = 0.0, double tol = 1e-8);

/// Full trace for one side: ladder plus C3 = M S^p (||a||_xi + ||a||_zeta),
/// C4 = moser_c4(p), and C5 composed with the partner-norm factor (1 + rho^cross).
/// Exponent sums are padded with their tail bounds whenever that enlarges the result,
/// so C5 stays a genuine upper bound after truncating the ladder.
MoserTrace moser_bound(const ExponentConfig& cfg, const DerivedExponents& dex, int side,
                       const WeightNorms& norms, double rho, double kappa0 = 0.0,
                       double tol = 1e-8);

/// Gradient-norm a priori bound from the coupled energy inequalities. The three
/// formulas per component cover the four sign cases of the coupled estimate; the
/// max over them bounds every case. S1/S2 are embedding constants; A, B are the
/// delta- and gamma-norms of the first weight, D, E those of the second.
struct LpStarBound {
  double C1 = 0, C2 = 0;
  std::array<double, 3> u_cases{}, v_cases{};
  double u_grad = 0, v_grad = 0;
  double rho = 0;
  std::string case_taken;
};

LpStarBound lpstar_apriori(const ExponentConfig& cfg, double S1, double S2, double A, double B,
                           double D, double E);

struct BoundsReport {
  double S1 = 0, S2 = 0;
  LpStarBound lp;
  MoserTrace moser_u, moser_v;
  double rho = 0;
  double R_inf = 0;
};

/// rho and R_inf for a configuration with measured weight norms.
BoundsReport compute_bounds(const ExponentConfig& cfg, const WeightNorms& norms1,
                            const WeightNorms& norms2, double kappa0 = 0.0,
                            double ladder_tol = 1e-8);

}  // namespace singlap
