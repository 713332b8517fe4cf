#include "singlap/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace singlap {

const Check* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

DerivedExponents derive_exponents(const ExponentConfig& cfg) {
  if (!(cfg.p1 > 1.0 && cfg.p1 < cfg.N) || !(cfg.p2 > 1.0 && cfg.p2 < cfg.N))
    throw std::domain_error("derive_exponents: requires 1 < p_i < N");

  DerivedExponents d;
  const double N = cfg.N;
  d.p1_star = N * cfg.p1 / (N - cfg.p1);
  d.p2_star = N * cfg.p2 / (N - cfg.p2);

  d.t1 = (cfg.alpha1 + 1.0) / d.p1_star + cfg.beta1 / d.p2_star;
  d.t2 = cfg.alpha2 / d.p1_star + (cfg.beta2 + 1.0) / d.p2_star;
  d.s1 = (cfg.alpha1 + 1.0) / d.p1_star;
  d.s2 = (cfg.beta2 + 1.0) / d.p2_star;

  d.gamma1 = 1.0 / (1.0 - d.t1);
  d.gamma2 = 1.0 / (1.0 - d.t2);
  d.delta1 = 1.0 / (1.0 - d.s1);
  d.delta2 = 1.0 / (1.0 - d.s2);

  d.xi1_range = {d.p1_star / (d.p1_star - cfg.p1), cfg.zeta1};
  d.xi2_range = {d.p2_star / (d.p2_star - cfg.p2), cfg.zeta2};

  const double inf = std::numeric_limits<double>::infinity();
  const double cap1 = 1.0 - cfg.p1 / d.p1_star - cfg.beta1 / d.p2_star;
  const double cap2 = 1.0 - cfg.p2 / d.p2_star - cfg.alpha2 / d.p1_star;
  d.zeta1_min = cap1 > 0.0 ? 1.0 / cap1 : inf;
  d.zeta2_min = cap2 > 0.0 ? 1.0 / cap2 : inf;
  return d;
}

ValidationReport validate(const ExponentConfig& cfg) {
  ValidationReport rep;
  auto strict = [&](std::string name, double margin) {
    rep.checks.push_back({std::move(name), margin > 0.0, margin});
  };
  auto lax = [&](std::string name, double margin) {
    rep.checks.push_back({std::move(name), margin >= 0.0, margin});
  };

  lax("dimension_at_least_3", static_cast<double>(cfg.N - 3));

  strict("p1_above_1", cfg.p1 - 1.0);
  strict("p1_below_N", cfg.N - cfg.p1);
  strict("p2_above_1", cfg.p2 - 1.0);
  strict("p2_below_N", cfg.N - cfg.p2);

  strict("alpha1_above_minus1", cfg.alpha1 + 1.0);
  strict("alpha1_negative", -cfg.alpha1);
  strict("beta2_above_minus1", cfg.beta2 + 1.0);
  strict("beta2_negative", -cfg.beta2);
  strict("alpha2_positive", cfg.alpha2);
  strict("beta1_positive", cfg.beta1);

  strict("m1_positive", cfg.m1);
  strict("m2_positive", cfg.m2);
  lax("M1_at_least_m1", cfg.M1 - cfg.m1);
  lax("M2_at_least_m2", cfg.M2 - cfg.m2);
  strict("zeta1_above_1", cfg.zeta1 - 1.0);
  strict("zeta2_above_1", cfg.zeta2 - 1.0);

  strict("growth_sum_u", (cfg.p1 - 1.0) - (cfg.alpha1 + cfg.alpha2));
  strict("growth_sum_v", (cfg.p2 - 1.0) - (cfg.beta1 + cfg.beta2));

  const bool p_ok = cfg.N >= 3 && cfg.p1 > 1.0 && cfg.p1 < cfg.N && cfg.p2 > 1.0 && cfg.p2 < cfg.N;
  if (p_ok) {
    const double N = cfg.N;
    const double p1s = N * cfg.p1 / (N - cfg.p1);
    const double p2s = N * cfg.p2 / (N - cfg.p2);
    strict("beta1_cross_cap",
           (p2s / p1s) * std::min(cfg.p1 - 1.0, p1s - cfg.p1) - cfg.beta1);
    strict("alpha2_cross_cap",
           (p1s / p2s) * std::min(cfg.p2 - 1.0, p2s - cfg.p2) - cfg.alpha2);
    lax("zeta1_integrability", (1.0 - cfg.p1 / p1s - cfg.beta1 / p2s) - 1.0 / cfg.zeta1);
    lax("zeta2_integrability", (1.0 - cfg.p2 / p2s - cfg.alpha2 / p1s) - 1.0 / cfg.zeta2);
  } else {
    rep.notes.push_back("critical-exponent checks skipped: p_i outside (1, N)");
  }

  rep.overall = std::all_of(rep.checks.begin(), rep.checks.end(),
                            [](const Check& c) { return c.satisfied; });
  return rep;
}

}  // namespace singlap
