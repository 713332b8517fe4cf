#include "singlap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "singlap/plap.hpp"

namespace singlap {

double talenti_constant(int N, double p) {
  if (!(1.0 < p && p < N)) throw std::domain_error("talenti_constant: need 1 < p < N");
  double n = N;
  double lg = std::lgamma(1.0 + 0.5 * n) + std::lgamma(n) - std::lgamma(n / p) -
              std::lgamma(1.0 + n - n / p);
  return std::pow(M_PI, -0.5) * std::pow(n, -1.0 / p) *
         std::pow((p - 1.0) / (n - p), 1.0 - 1.0 / p) * std::exp(lg / n);
}

double simon_constant(double p) {
  if (!(p > 1.0)) throw std::domain_error("simon_constant: need p > 1");
  return p >= 2.0 ? std::pow(2.0, 2.0 - p) : p - 1.0;
}

SimonCheck simon_check(double a, double b, double p) {
  double c = simon_constant(p);
  SimonCheck out;
  out.lhs = (phi_p(a, p) - phi_p(b, p)) * (a - b);
  if (p >= 2.0) {
    out.rhs = c * std::pow(std::abs(a - b), p);
  } else {
    double den = std::abs(a) + std::abs(b);
    out.rhs = (a == b || den == 0.0) ? 0.0 : c * (a - b) * (a - b) / std::pow(den, 2.0 - p);
  }
  double tol = 1e-12 * std::max({1.0, std::abs(out.lhs), std::abs(out.rhs)});
  out.holds = out.lhs >= out.rhs - tol;
  return out;
}

SimonCheck simon_check(const std::vector<double>& a, const std::vector<double>& b, double p) {
  if (a.size() != b.size()) throw std::invalid_argument("simon_check: dimension mismatch");
  double c = simon_constant(p);
  double na = 0, nb = 0, nd = 0, dot = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += a[i] * a[i];
    nb += b[i] * b[i];
    double d = a[i] - b[i];
    nd += d * d;
  }
  na = std::sqrt(na), nb = std::sqrt(nb), nd = std::sqrt(nd);
  double fa = na > 0 ? std::pow(na, p - 2.0) : 0.0;
  double fb = nb > 0 ? std::pow(nb, p - 2.0) : 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += (fa * a[i] - fb * b[i]) * (a[i] - b[i]);
  SimonCheck out;
  out.lhs = dot;
  if (p >= 2.0) {
    out.rhs = c * std::pow(nd, p);
  } else {
    double den = na + nb;
    out.rhs = (nd == 0.0 || den == 0.0) ? 0.0 : c * nd * nd / std::pow(den, 2.0 - p);
  }
  double tol = 1e-12 * std::max({1.0, std::abs(out.lhs), std::abs(out.rhs)});
  out.holds = out.lhs >= out.rhs - tol;
  return out;
}

namespace {

double c4_objective(double t, double p) {
  return std::exp((std::log(t + 1.0) - std::log(t * p + 1.0) / p) / std::sqrt(t + 1.0));
}

}  // namespace

double moser_c4(double p) {
  if (!(p > 1.0)) throw std::domain_error("moser_c4: need p > 1");
  static std::map<double, double> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;

  // coarse log scan, then golden-section refinement around the best sample
  double best_t = 0.0, best = 1.0;
  for (int i = 0; i <= 2000; ++i) {
    double t = std::expm1(-6.0 + 20.0 * i / 2000.0);  // t in [e^-6 - 1, e^14 - 1], so from ~0
    if (t < 0.0) t = 0.0;
    double v = c4_objective(t, p);
    if (v > best) best = v, best_t = t;
  }
  double lo = best_t / 2.0, hi = best_t * 2.0 + 1.0;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = c4_objective(x1, p), f2 = c4_objective(x2, p);
  for (int k = 0; k < 200 && hi - lo > 1e-12 * (1.0 + hi); ++k) {
    if (f1 < f2) {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + gr * (hi - lo), f2 = c4_objective(x2, p);
    } else {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - gr * (hi - lo), f1 = c4_objective(x1, p);
    }
  }
  double val = std::max(best, std::max(f1, f2));
  cache.emplace(p, val);
  return val;
}

MoserTrace kappa_sequence(const ExponentConfig& cfg, const DerivedExponents& dex, int side,
                          double xi, double kappa0, double tol) {
  if (side != 1 && side != 2) throw std::invalid_argument("kappa_sequence: side must be 1 or 2");
  if (kappa0 < 0.0) throw std::invalid_argument("kappa_sequence: kappa0 must be >= 0");
  double p = side == 1 ? cfg.p1 : cfg.p2;
  double ps = side == 1 ? dex.p1_star : dex.p2_star;
  const Interval& win = side == 1 ? dex.xi1_range : dex.xi2_range;
  if (!win.contains(xi))
    throw std::domain_error("kappa_sequence: bootstrap exponent outside its admissible window");

  MoserTrace t;
  t.xi = xi;
  t.kappa0 = kappa0;
  double xi_conj = xi / (xi - 1.0);
  double q = ps / (p * xi_conj);
  t.ratio_limit = q;
  if (!(q > 1.0))
    throw std::domain_error("kappa_sequence: ladder ratio not above 1, iteration cannot grow");

  auto step_margin = [&](double kappa) {
    return 1.0 - 1.0 / xi - (kappa * p + 1.0) / ((kappa + 1.0) * ps);
  };
  if (step_margin(kappa0) <= 0.0)
    throw std::domain_error("kappa_sequence: test-exponent condition fails at the seed");

  double kap = kappa0;
  for (std::size_t n = 0; n < 4000; ++n) {
    double next = q * (kap + 1.0) + (p - 1.0) / p - 1.0;
    if (step_margin(next) <= 0.0)
      throw std::domain_error("kappa_sequence: test-exponent condition fails along the ladder");
    t.kappa.push_back(next);
    t.eta_sum += 1.0 / ((next + 1.0) * p);
    t.sqrt_sum += 1.0 / std::sqrt(next + 1.0);
    kap = next;
    t.eta_tail = 1.0 / ((kap + 1.0) * (q - 1.0) * p);
    t.sqrt_tail = 1.0 / (std::sqrt(kap + 1.0) * (std::sqrt(q) - 1.0));
    if (t.eta_tail < tol && t.sqrt_tail < tol) break;
  }
  t.n_terms = t.kappa.size();
  return t;
}

MoserTrace moser_bound(const ExponentConfig& cfg, const DerivedExponents& dex, int side,
                       const WeightNorms& norms, double rho, double kappa0, double tol) {
  MoserTrace t = kappa_sequence(cfg, dex, side, norms.q_xi, kappa0, tol);
  double p = side == 1 ? cfg.p1 : cfg.p2;
  double M = side == 1 ? cfg.M1 : cfg.M2;
  double S = talenti_constant(cfg.N, p);
  double cross = side == 1 ? cfg.beta1 : cfg.alpha2;
  t.C3 = M * std::pow(S, p) * (norms.l_xi + norms.l_zeta);
  t.C4 = moser_c4(p);
  // pad each exponent with its tail bound only when that cannot shrink the factor
  double e3 = t.eta_sum + (t.C3 >= 1.0 ? t.eta_tail : 0.0);
  double e4 = t.sqrt_sum + t.sqrt_tail;
  double ec = t.eta_sum + t.eta_tail;
  t.C5 = std::pow(t.C3, e3) * std::pow(t.C4, e4) * std::pow(1.0 + std::pow(rho, cross), ec);
  return t;
}

LpStarBound lpstar_apriori(const ExponentConfig& cfg, double S1, double S2, double A, double B,
                           double D, double E) {
  double den_u = cfg.p1 - 1.0 - cfg.alpha1 - cfg.alpha2;
  double den_v = cfg.p2 - 1.0 - cfg.beta1 - cfg.beta2;
  if (den_u <= 0.0 || den_v <= 0.0)
    throw std::domain_error("lpstar_apriori: coupled growth exponents reach the energy power");

  LpStarBound out;
  out.C1 = cfg.M1 * std::pow(S1, cfg.alpha1 + 1.0) * std::max(1.0, std::pow(S2, cfg.beta1));
  out.C2 = cfg.M2 * std::pow(S2, cfg.beta2 + 1.0) * std::max(1.0, std::pow(S1, cfg.alpha2));
  double c2e = out.C2 * E, c1b = out.C1 * B;

  // component bound below / partner below or above its threshold; then the
  // coupled case; then component above with partner below, via the partner chain
  out.u_cases[0] = std::pow(c2e, 1.0 / den_u);
  out.u_cases[1] =
      std::pow((out.C1 * A + out.C2 * D) / std::pow(c2e, cfg.alpha2 / den_u) + c2e, 1.0 / den_u);
  out.u_cases[2] = std::pow(out.C1 * (A + B * std::pow(c1b, cfg.beta1 / den_v)),
                            1.0 / (cfg.p1 - 1.0 - cfg.alpha1));
  out.v_cases[0] = std::pow(c1b, 1.0 / den_v);
  out.v_cases[1] =
      std::pow((out.C2 * D + out.C1 * A) / std::pow(c1b, cfg.beta1 / den_v) + c1b, 1.0 / den_v);
  out.v_cases[2] = std::pow(out.C2 * (D + E * std::pow(c2e, cfg.alpha2 / den_u)),
                            1.0 / (cfg.p2 - 1.0 - cfg.beta2));

  out.u_grad = *std::max_element(out.u_cases.begin(), out.u_cases.end());
  out.v_grad = *std::max_element(out.v_cases.begin(), out.v_cases.end());
  out.rho = std::max(S1 * out.u_grad, S2 * out.v_grad);
  out.case_taken = "max over cases";
  return out;
}

BoundsReport compute_bounds(const ExponentConfig& cfg, const WeightNorms& norms1,
                            const WeightNorms& norms2, double kappa0, double ladder_tol) {
  DerivedExponents dex = derive_exponents(cfg);
  BoundsReport out;
  out.S1 = talenti_constant(cfg.N, cfg.p1);
  out.S2 = talenti_constant(cfg.N, cfg.p2);
  out.lp = lpstar_apriori(cfg, out.S1, out.S2, norms1.l_delta, norms1.l_gamma, norms2.l_delta,
                          norms2.l_gamma);
  out.rho = out.lp.rho;
  out.moser_u = moser_bound(cfg, dex, 1, norms1, out.rho, kappa0, ladder_tol);
  out.moser_v = moser_bound(cfg, dex, 2, norms2, out.rho, kappa0, ladder_tol);
  out.R_inf = std::max({1.0, out.moser_u.C5, out.moser_v.C5});
  return out;
}

}  // namespace singlap
