#include "singlap/weights.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace singlap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double unit_sphere_area(int N) { return 2.0 * std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N); }

// B(x, y) via lgamma; both args > 0.
double beta_fn(double x, double y) {
  return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

// Upper incomplete Gamma(N, x) for integer N >= 1:
//   Gamma(N, x) = (N-1)! e^{-x} sum_{j<N} x^j / j!
double upper_gamma_int(int N, double x) {
  double term = 1.0, sum = 1.0;
  for (int j = 1; j < N; ++j) {
    term *= x / j;
    sum += term;
  }
  double fact = 1.0;
  for (int j = 2; j < N; ++j) fact *= j;
  return fact * std::exp(-x) * sum;
}

}  // namespace

double WeightSpec::eval(double r) const {
  switch (family) {
    case WeightFamily::gaussian:
      return amplitude * std::exp(-lambda * r * r);
    case WeightFamily::bump: {
      double t = 1.0 - (r / rho0) * (r / rho0);
      return t > 0 ? amplitude * std::pow(t, k) : 0.0;
    }
    case WeightFamily::powerdecay:
      return amplitude * std::pow(1.0 + r, -sigma);
  }
  return 0.0;
}

std::string WeightSpec::family_name() const {
  switch (family) {
    case WeightFamily::gaussian: return "gaussian";
    case WeightFamily::bump: return "bump";
    case WeightFamily::powerdecay: return "powerdecay";
  }
  return "?";
}

RadialField sample(const WeightSpec& w, const GridPtr& g) {
  return sample_field(g, [&w](double r) { return w.eval(r); });
}

std::optional<double> analytic_lq_norm(const WeightSpec& w, int N, double q) {
  if (q < 1) throw std::invalid_argument("analytic_lq_norm: q must be >= 1");
  double A = w.amplitude, omega = unit_sphere_area(N);
  switch (w.family) {
    case WeightFamily::gaussian:
      // int_{R^N} (A e^{-l r^2})^q = A^q (pi/(q l))^{N/2}
      return A * std::pow(M_PI / (q * w.lambda), 0.5 * N / q);
    case WeightFamily::bump:
      // int = A^q omega rho0^N (1/2) B(N/2, qk+1), substituting s = (r/rho0)^2
      return A * std::pow(omega * std::pow(w.rho0, N) * 0.5 * beta_fn(0.5 * N, q * w.k + 1.0),
                          1.0 / q);
    case WeightFamily::powerdecay: {
      // int = A^q omega B(N, q sigma - N), substituting t = r/(1+r); finite iff q sigma > N
      double c = q * w.sigma - N;
      if (c <= 0) return std::nullopt;
      return A * std::pow(omega * beta_fn(static_cast<double>(N), c), 1.0 / q);
    }
  }
  return std::nullopt;
}

double tail_power_bound(const WeightSpec& w, int N, double q, double r_from) {
  double A = w.amplitude, omega = unit_sphere_area(N);
  switch (w.family) {
    case WeightFamily::gaussian: {
      // omega A^q int_R^inf e^{-q l r^2} r^{N-1} dr <= omega A^q Gamma(N, q l R^2) / (2 (q l)^{N/2})
      // Using r^{N-1} dr = s^{N/2-1} ds / (2 (ql)^{N/2}) with s = q l r^2 and
      // s^{N/2-1} <= s^{N-1} for s >= 1 gives the integer-order form below.
      double x = q * w.lambda * r_from * r_from;
      return omega * std::pow(A, q) * upper_gamma_int(N, x) /
             (2.0 * std::pow(q * w.lambda, 0.5 * N));
    }
    case WeightFamily::bump: {
      if (r_from >= w.rho0) return 0.0;
      // a is decreasing, so int_R^rho0 a^q r^{N-1} <= a(R)^q (rho0^N - R^N)/N
      double aq = std::pow(w.eval(r_from), q);
      return omega * aq * (std::pow(w.rho0, N) - std::pow(r_from, N)) / N;
    }
    case WeightFamily::powerdecay: {
      double c = q * w.sigma - N;
      if (c <= 0) return kInf;
      // r^{N-1} <= (1+r)^{N-1}: tail <= omega A^q (1+R)^{-c} / c
      return omega * std::pow(A, q) * std::pow(1.0 + r_from, -c) / c;
    }
  }
  return kInf;
}

WeightNorms weight_norms(const WeightSpec& w, const ExponentConfig& cfg,
                         const DerivedExponents& dex, int side, const GridPtr& g, double xi) {
  if (side != 1 && side != 2) throw std::invalid_argument("weight_norms: side must be 1 or 2");
  WeightNorms out;
  double zeta = side == 1 ? cfg.zeta1 : cfg.zeta2;
  double gamma = side == 1 ? dex.gamma1 : dex.gamma2;
  double delta = side == 1 ? dex.delta1 : dex.delta2;
  double ps = side == 1 ? dex.p1_star : dex.p2_star;
  const Interval& xi_range = side == 1 ? dex.xi1_range : dex.xi2_range;
  if (std::isnan(xi)) xi = xi_range.midpoint();

  out.q_zeta = zeta;
  out.q_gamma = gamma;
  out.q_delta = delta;
  out.q_xi = xi;
  out.q_conj = ps / (ps - 1.0);

  RadialField f = sample(w, g);
  out.l1 = lq_norm(f, 1.0);
  out.l_zeta = lq_norm(f, zeta);
  out.l_gamma = lq_norm(f, gamma);
  out.l_delta = lq_norm(f, delta);
  out.l_xi = lq_norm(f, xi);
  out.l_conj = lq_norm(f, out.q_conj);

  out.tail_l1 = tail_power_bound(w, g->N, 1.0, g->r_max);
  out.tail_zeta = tail_power_bound(w, g->N, zeta, g->r_max);
  out.analytic_l1 = analytic_lq_norm(w, g->N, 1.0);
  out.analytic_zeta = analytic_lq_norm(w, g->N, zeta);
  return out;
}

HaReport check_Ha(const WeightSpec& w, const ExponentConfig& cfg, int side, const GridPtr& g,
                  double xi) {
  DerivedExponents dex = derive_exponents(cfg);
  HaReport out;
  out.norms = weight_norms(w, cfg, dex, side, g, xi);

  RadialField f = sample(w, g);
  double min_v = kInf, max_v = -kInf;
  std::size_t zeros = 0;
  for (double v : f.values) {
    min_v = std::min(min_v, v);
    max_v = std::max(max_v, v);
    if (v == 0.0) ++zeros;
  }
  if (min_v < 0.0) throw std::domain_error("check_Ha: weight is negative on the grid");
  if (max_v <= 0.0) throw std::domain_error("check_Ha: weight vanishes identically on the grid");

  auto& checks = out.report.checks;
  auto add = [&checks](const std::string& name, bool ok, double margin) {
    checks.push_back({name, ok, margin});
  };

  // Finite on the grid is automatic; finiteness on R^N needs the tail under control.
  double l1_total_q = std::pow(out.norms.l1, 1.0) + out.norms.tail_l1;
  add("l1_finite", std::isfinite(l1_total_q), std::isfinite(l1_total_q) ? 1.0 : -1.0);
  double lz_total_q = std::pow(out.norms.l_zeta, out.norms.q_zeta) + out.norms.tail_zeta;
  add("l_zeta_finite", std::isfinite(lz_total_q), std::isfinite(lz_total_q) ? 1.0 : -1.0);
  add("nonnegative", min_v >= 0.0, min_v);
  add("not_identically_zero", max_v > 0.0, max_v);

  bool pos = zeros == 0 || (w.family == WeightFamily::bump && g->r_max > w.rho0);
  add("positive_on_support", pos, pos ? min_v : 0.0);
  if (zeros > 0) {
    out.report.notes.push_back("weight vanishes on " + std::to_string(zeros) +
                               " grid nodes (compact support inside the domain)");
  }
  if (out.norms.tail_zeta == 0.0 && out.norms.tail_l1 == 0.0) {
    out.report.notes.push_back("weight has no mass beyond r_max");
  }

  out.report.overall = true;
  for (const Check& c : checks) out.report.overall = out.report.overall && c.satisfied;
  return out;
}

InterpolationCheck interpolation_check(const RadialField& w, double p, double q, double tol) {
  if (!(1.0 < q && q < p)) throw std::invalid_argument("interpolation_check: need 1 < q < p");
  InterpolationCheck out;
  out.lhs = std::pow(lq_norm(w, q), q);
  out.rhs = std::pow(lq_norm(w, 1.0), 1.0) + std::pow(lq_norm(w, p), p);
  out.holds = out.lhs <= out.rhs + tol;
  return out;
}

}  // namespace singlap
