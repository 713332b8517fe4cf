#pragma once

#include <string>
#include <vector>

namespace singlap {

/// Structural data of the singular system
///   -Delta_{p1} u = a1(|x|) f(u, v),   -Delta_{p2} v = a2(|x|) g(u, v)
/// with f ~ s^{alpha1} (1 + t^{beta1}) and g ~ (1 + s^{alpha2}) t^{beta2} between the
/// envelope constants m_i, M_i. The singular exponents alpha1, beta2 lie in (-1, 0);
/// the coupling exponents alpha2, beta1 are positive. zeta_i are the integrability
/// exponents required of the weights a_i.
struct ExponentConfig {
  int N = 3;
  double p1 = 2.0, p2 = 2.0;
  double alpha1 = -0.5, alpha2 = 0.5;
  double beta1 = 0.5, beta2 = -0.5;
  double m1 = 1.0, M1 = 1.0;
  double m2 = 1.0, M2 = 1.0;
  double zeta1 = 4.0, zeta2 = 4.0;
};

struct Interval {
  double lo = 0.0, hi = 0.0;  // open interval ]lo, hi[
  bool empty() const { return !(lo < hi); }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo < x && x < hi; }
};

/// Exponents derived from the config: critical Sobolev exponents p_i^*, the Hoelder
/// bookkeeping exponents t_i, s_i with gamma_i = 1/(1-t_i), delta_i = 1/(1-s_i), the
/// admissible window for the bootstrap exponents xi_i, and the smallest weight
/// integrability exponent zeta_i compatible with the structure.
struct DerivedExponents {
  double p1_star = 0.0, p2_star = 0.0;
  double t1 = 0.0, t2 = 0.0;
  double s1 = 0.0, s2 = 0.0;
  double gamma1 = 0.0, gamma2 = 0.0;
  double delta1 = 0.0, delta2 = 0.0;
  Interval xi1_range, xi2_range;
  double zeta1_min = 0.0, zeta2_min = 0.0;  // +inf when no finite exponent works
};

struct Check {
  std::string name;
  bool satisfied = false;
  double margin = 0.0;  // distance to the constraint boundary; >= 0 iff satisfied (non-strict)
};

struct ValidationReport {
  std::vector<Check> checks;
  std::vector<std::string> notes;  // informational flags that do not affect admissibility
  bool overall = false;            // conjunction of all checks

  const Check* find(const std::string& name) const;
};

/// Derived exponents are pure arithmetic; requires 1 < p_i < N (else p_i^* is meaningless).
DerivedExponents derive_exponents(const ExponentConfig& cfg);

/// Full admissibility report. Every structural inequality appears as one named check
/// with its margin. The integrability checks on zeta_i are non-strict (margin >= 0
/// passes); all others are strict. Checks that need p_i^* are emitted only when both
/// p_i lie in (1, N); a report is produced for every input.
ValidationReport validate(const ExponentConfig& cfg);

}  // namespace singlap
