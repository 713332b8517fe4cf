#include "singlap/fixedpoint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace singlap {

double Nonlinearity::f(double s, double t) const {
  if (!(s > 0.0)) throw std::domain_error("f: first argument must be positive");
  if (t < 0.0) throw std::domain_error("f: second argument must be nonnegative");
  return std::pow(s, alpha1) * (1.0 + std::pow(t, beta1));
}

double Nonlinearity::g(double s, double t) const {
  if (!(t > 0.0)) throw std::domain_error("g: second argument must be positive");
  if (s < 0.0) throw std::domain_error("g: first argument must be nonnegative");
  return (1.0 + std::pow(s, alpha2)) * std::pow(t, beta2);
}

RadialField truncate(const RadialField& z, double cap) {
  RadialField out = z;
  for (double& v : out.values) v = std::min(v, cap);
  return out;
}

EnvelopeFactors envelope_factors(const ExponentConfig& cfg, double R, double eps) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("envelope_factors: eps must lie in (0, 1]");
  if (!(R > 0.0)) throw std::invalid_argument("envelope_factors: R must be positive");
  EnvelopeFactors e;
  e.u_lo = std::pow(cfg.m1 * std::pow(R + 1.0, cfg.alpha1), 1.0 / (cfg.p1 - 1.0));
  e.v_lo = std::pow(cfg.m2 * std::pow(R + 1.0, cfg.beta2), 1.0 / (cfg.p2 - 1.0));
  e.u_hi = std::pow(cfg.M1 * std::pow(eps, cfg.alpha1) * (1.0 + std::pow(R, cfg.beta1)),
                    1.0 / (cfg.p1 - 1.0));
  e.v_hi = std::pow(cfg.M2 * std::pow(eps, cfg.beta2) * (1.0 + std::pow(R, cfg.alpha2)),
                    1.0 / (cfg.p2 - 1.0));
  return e;
}

namespace {

RadialField scaled(const RadialField& w, double c) {
  RadialField out = w;
  for (double& v : out.values) v *= c;
  return out;
}

RadialField difference(const RadialField& a, const RadialField& b) {
  RadialField out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

// projects z into [lo, hi] nodewise, returning the largest correction applied
double clamp_into(RadialField& z, const RadialField& lo, const RadialField& hi) {
  double worst = 0.0;
  for (std::size_t i = 0; i < z.values.size(); ++i) {
    double c = std::clamp(z.values[i], lo.values[i], hi.values[i]);
    worst = std::max(worst, std::abs(c - z.values[i]));
    z.values[i] = c;
  }
  return worst;
}

}  // namespace

ProblemSetup make_setup(const ExponentConfig& cfg, const WeightSpec& a1, const WeightSpec& a2,
                        const GridPtr& grid, const SetupParams& params) {
  ValidationReport vr = validate(cfg);
  if (!vr.overall) throw std::domain_error("make_setup: configuration fails admissibility checks");
  if (!(cfg.m1 <= 1.0 && 1.0 <= cfg.M1 && cfg.m2 <= 1.0 && 1.0 <= cfg.M2))
    throw std::domain_error(
        "make_setup: the built-in reaction pair has unit envelope constants; "
        "m_i <= 1 <= M_i is required");

  ProblemSetup ctx{cfg,
                   derive_exponents(cfg),
                   a1,
                   a2,
                   grid,
                   sample(a1, grid),
                   sample(a2, grid),
                   {},
                   {},
                   {},
                   {},
                   {},
                   {},
                   Nonlinearity(cfg),
                   params};
  ctx.norms1 = weight_norms(a1, cfg, ctx.dex, 1, grid, params.xi1);
  ctx.norms2 = weight_norms(a2, cfg, ctx.dex, 2, grid, params.xi2);
  ctx.w1 = solve_plap(cfg.p1, ctx.a1, Tail::matched).u;
  ctx.w2 = solve_plap(cfg.p2, ctx.a2, Tail::matched).u;
  ctx.bounds = compute_bounds(cfg, ctx.norms1, ctx.norms2, params.kappa0, params.ladder_tol);
  ctx.tests = polynomial_bumps(grid, params.n_test_functions);
  return ctx;
}

EnvelopeSet envelopes(const ProblemSetup& ctx, double eps) {
  EnvelopeSet e;
  e.eps = eps;
  e.factors = envelope_factors(ctx.cfg, ctx.bounds.R_inf, eps);
  e.u_lo = scaled(ctx.w1, e.factors.u_lo);
  e.u_hi = scaled(ctx.w1, e.factors.u_hi);
  e.v_lo = scaled(ctx.w2, e.factors.v_lo);
  e.v_hi = scaled(ctx.w2, e.factors.v_hi);
  return e;
}

double bracketing_violation(const RadialField& z, const RadialField& lo, const RadialField& hi) {
  double worst = 0.0;
  for (std::size_t i = 0; i < z.values.size(); ++i) {
    worst = std::max({worst, lo.values[i] - z.values[i], z.values[i] - hi.values[i]});
  }
  return std::max(worst, 0.0);
}

MapResult schauder_map(const RadialField& z1, const RadialField& z2, double eps,
                       const ProblemSetup& ctx) {
  EnvelopeSet env = envelopes(ctx, eps);
  double box_slack = 1e-9 * std::max(1.0, env.factors.u_hi + env.factors.v_hi);
  if (bracketing_violation(z1, env.u_lo, env.u_hi) > box_slack ||
      bracketing_violation(z2, env.v_lo, env.v_hi) > box_slack)
    throw std::invalid_argument("schauder_map: input lies outside the admissible box");

  const double R = ctx.bounds.R_inf;
  const ExponentConfig& cfg = ctx.cfg;
  double f_lo = cfg.m1 * std::pow(R + 1.0, cfg.alpha1);
  double f_hi = cfg.M1 * std::pow(eps, cfg.alpha1) * (1.0 + std::pow(R, cfg.beta1));
  double g_lo = cfg.m2 * std::pow(R + 1.0, cfg.beta2);
  double g_hi = cfg.M2 * std::pow(eps, cfg.beta2) * (1.0 + std::pow(R, cfg.alpha2));

  const std::size_t n = ctx.grid->size();
  RadialField rhs1{ctx.grid, std::vector<double>(n)}, rhs2{ctx.grid, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    double t1 = std::min(z1.values[i], R), t2 = std::min(z2.values[i], R);
    double fv = ctx.model.f(t1 + eps, t2);
    double gv = ctx.model.g(t1, t2 + eps);
    if (fv < f_lo * (1.0 - 1e-12) || fv > f_hi * (1.0 + 1e-12) || gv < g_lo * (1.0 - 1e-12) ||
        gv > g_hi * (1.0 + 1e-12))
      throw std::logic_error("schauder_map: frozen right-hand side escapes its barrier bounds");
    rhs1.values[i] = ctx.a1.values[i] * fv;
    rhs2.values[i] = ctx.a2.values[i] * gv;
  }

  MapResult out;
  out.u = solve_plap(cfg.p1, rhs1, Tail::matched).u;
  out.v = solve_plap(cfg.p2, rhs2, Tail::matched).u;
  return out;
}

PicardResult picard_solve(double eps, double theta, double tol, std::size_t max_iter,
                          const ProblemSetup& ctx,
                          const std::optional<std::pair<RadialField, RadialField>>& warm) {
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("picard_solve: theta must lie in (0, 1]");
  EnvelopeSet env = envelopes(ctx, eps);

  PicardResult res;
  RadialField z1 = warm ? warm->first : env.u_lo;
  RadialField z2 = warm ? warm->second : env.v_lo;
  res.max_clamp = std::max(clamp_into(z1, env.u_lo, env.u_hi), clamp_into(z2, env.v_lo, env.v_hi));

  double prev_dist = std::numeric_limits<double>::infinity();
  int rising = 0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    MapResult t = schauder_map(z1, z2, eps, ctx);
    RadialField n1 = z1, n2 = z2;
    for (std::size_t i = 0; i < n1.values.size(); ++i) {
      n1.values[i] = (1.0 - theta) * z1.values[i] + theta * t.u.values[i];
      n2.values[i] = (1.0 - theta) * z2.values[i] + theta * t.v.values[i];
    }
    res.max_clamp = std::max(res.max_clamp, clamp_into(n1, env.u_lo, env.u_hi));
    res.max_clamp = std::max(res.max_clamp, clamp_into(n2, env.v_lo, env.v_hi));

    double d = std::max(lq_norm(difference(n1, z1), ctx.dex.p1_star),
                        lq_norm(difference(n2, z2), ctx.dex.p2_star));
    res.distances.push_back(d);
    z1 = std::move(n1);
    z2 = std::move(n2);
    res.iters = it;
    res.distance = d;
    if (d < tol) {
      res.converged = true;
      break;
    }
    if (d > prev_dist) {
      if (++rising >= 2) {
        theta *= 0.5;
        rising = 0;
        if (theta < 1e-6) break;  // damping exhausted
      }
    } else {
      rising = 0;
    }
    prev_dist = d;
  }
  res.theta_final = theta;
  res.u = std::move(z1);
  res.v = std::move(z2);
  return res;
}

std::vector<double> default_eps_schedule() {
  std::vector<double> s;
  for (int k = 0; k < 6; ++k) s.push_back(1.0 / (4.0 * std::pow(2.0, k)));
  return s;
}

ContinuationResult continuation(const std::vector<double>& eps_schedule, double theta, double tol,
                                std::size_t max_iter, const ProblemSetup& ctx,
                                double residual_tol) {
  if (eps_schedule.empty()) throw std::invalid_argument("continuation: empty eps schedule");
  for (double e : eps_schedule)
    if (!(e > 0.0 && e < 1.0))
      throw std::invalid_argument("continuation: every eps must lie in (0, 1)");

  ContinuationResult out;
  std::optional<std::pair<RadialField, RadialField>> warm;
  for (double eps : eps_schedule) {
    RadialField start_u = warm ? warm->first : envelopes(ctx, eps).u_lo;
    RadialField start_v = warm ? warm->second : envelopes(ctx, eps).v_lo;
    PicardResult pr = picard_solve(eps, theta, tol, max_iter, ctx, warm);

    StageReport st;
    st.eps = eps;
    st.iters = pr.iters;
    st.converged = pr.converged;
    st.distance = pr.distance;
    st.theta_final = pr.theta_final;
    st.max_clamp = pr.max_clamp;
    st.moved_u = grad_seminorm(difference(pr.u, start_u), ctx.cfg.p1);
    st.moved_v = grad_seminorm(difference(pr.v, start_v), ctx.cfg.p2);
    EnvelopeSet env = envelopes(ctx, eps);
    st.bracket_violation = std::max(bracketing_violation(pr.u, env.u_lo, env.u_hi),
                                    bracketing_violation(pr.v, env.v_lo, env.v_hi));
    st.max_u = *std::max_element(pr.u.values.begin(), pr.u.values.end());
    st.max_v = *std::max_element(pr.v.values.begin(), pr.v.values.end());
    st.lq_u = lq_norm(pr.u, ctx.dex.p1_star);
    st.lq_v = lq_norm(pr.v, ctx.dex.p2_star);

    // weak-form defect of the stage iterate against its own frozen data
    const double R = ctx.bounds.R_inf;
    const std::size_t n = ctx.grid->size();
    RadialField rhs1{ctx.grid, std::vector<double>(n)}, rhs2{ctx.grid, std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
      double t1 = std::min(pr.u.values[i], R), t2 = std::min(pr.v.values[i], R);
      rhs1.values[i] = ctx.a1.values[i] * ctx.model.f(t1 + eps, t2);
      rhs2.values[i] = ctx.a2.values[i] * ctx.model.g(t1, t2 + eps);
    }
    for (double r : weak_residual(pr.u, rhs1, ctx.cfg.p1, ctx.tests))
      st.residual_max_u = std::max(st.residual_max_u, std::abs(r));
    for (double r : weak_residual(pr.v, rhs2, ctx.cfg.p2, ctx.tests))
      st.residual_max_v = std::max(st.residual_max_v, std::abs(r));

    out.stages.push_back(st);
    out.u = pr.u;
    out.v = pr.v;
    if (!pr.converged) {
      out.converged_all = false;
      return out;  // partial history for diagnosis
    }
    warm = std::make_pair(pr.u, pr.v);
  }
  out.converged_all = true;

  const StageReport& last = out.stages.back();
  Certification& c = out.cert;
  c.bracket_violation = last.bracket_violation;
  c.max_u = last.max_u;
  c.max_v = last.max_v;
  c.lq_u = last.lq_u;
  c.lq_v = last.lq_v;
  c.residual_max_u = last.residual_max_u;
  c.residual_max_v = last.residual_max_v;
  c.rho = ctx.bounds.rho;
  c.R_inf = ctx.bounds.R_inf;
  c.residual_tol = residual_tol;
  c.bracketing_ok = c.bracket_violation <= 1e-12;
  c.linf_ok = c.max_u <= c.R_inf && c.max_v <= c.R_inf;
  c.lpstar_ok = c.lq_u <= c.rho && c.lq_v <= c.rho;
  c.residual_ok = c.residual_max_u <= residual_tol && c.residual_max_v <= residual_tol;
  c.overall = c.bracketing_ok && c.linf_ok && c.lpstar_ok && c.residual_ok;
  return out;
}

namespace {

// integrates callback-supplied quantities over the part of each cell where the
// nodewise-linear level function exceeds 1
struct SuperlevelSlice {
  double a = 0, b = 0;  // subcell bounds
  std::size_t cell = 0;
  double frac_a = 0, frac_b = 0;  // barycentric positions of a and b inside the cell
};

std::vector<SuperlevelSlice> superlevel_slices(const RadialField& w) {
  std::vector<SuperlevelSlice> out;
  const GridPtr& g = w.grid;
  for (std::size_t i = 0; i + 1 < g->size(); ++i) {
    double a = g->nodes[i], b = g->nodes[i + 1];
    double wa = w.values[i], wb = w.values[i + 1];
    bool ina = wa > 1.0, inb = wb > 1.0;
    if (!ina && !inb) continue;
    SuperlevelSlice s;
    s.cell = i;
    if (ina && inb) {
      s.a = a;
      s.b = b;
      s.frac_a = 0.0;
      s.frac_b = 1.0;
    } else {
      double t = (1.0 - wa) / (wb - wa);  // crossing position in [0, 1]
      double rc = a + t * (b - a);
      if (ina) {
        s.a = a;
        s.b = rc;
        s.frac_a = 0.0;
        s.frac_b = t;
      } else {
        s.a = rc;
        s.b = b;
        s.frac_a = t;
        s.frac_b = 1.0;
      }
    }
    if (s.b > s.a) out.push_back(s);
  }
  return out;
}

double lerp_at(const RadialField& w, std::size_t cell, double frac) {
  return w.values[cell] * (1.0 - frac) + w.values[cell + 1] * frac;
}

}  // namespace

TruncatedIneqReport truncated_inequality_check(const RadialField& u, const RadialField& v,
                                               const ExponentConfig& cfg, const RadialField& a1,
                                               const RadialField& a2,
                                               const TestFunctionSet& tests, double tol) {
  const GridPtr& g = u.grid;
  if (!g || v.grid != g || a1.grid != g || a2.grid != g || tests.grid != g)
    throw std::invalid_argument("truncated_inequality_check: grid mismatch");

  const double omega = g->sphere_area();
  TruncatedIneqReport rep;
  rep.all_hold = true;

  auto run_side = [&](const RadialField& lead, const RadialField& partner,
                      const RadialField& weight, double p, double Mconst, double cross,
                      std::vector<TruncatedIneq>& sink) {
    std::vector<SuperlevelSlice> slices = superlevel_slices(lead);
    for (std::size_t j = 0; j < tests.phi_nodes.size(); ++j) {
      TruncatedIneq t;
      for (const SuperlevelSlice& s : slices) {
        double h = g->nodes[s.cell + 1] - g->nodes[s.cell];
        double du = (lead.values[s.cell + 1] - lead.values[s.cell]) / h;
        double len = s.b - s.a, mid = 0.5 * (s.a + s.b);
        t.lhs += phi_p(du, p) * tests.dphi_mid[j][s.cell] * std::pow(mid, g->N - 1) * len;

        auto integrand = [&](double frac, double r) {
          double av = lerp_at(weight, s.cell, frac);
          double pv = lerp_at(partner, s.cell, frac);
          double phiv = tests.phi_nodes[j][s.cell] * (1.0 - frac) +
                        tests.phi_nodes[j][s.cell + 1] * frac;
          return av * (1.0 + std::pow(std::max(pv, 0.0), cross)) * phiv *
                 std::pow(r, g->N - 1);
        };
        t.rhs += 0.5 * (integrand(s.frac_a, s.a) + integrand(s.frac_b, s.b)) * len;
      }
      t.lhs *= omega;
      t.rhs *= omega * Mconst;
      t.holds = t.lhs <= t.rhs + tol;
      rep.all_hold = rep.all_hold && t.holds;
      sink.push_back(t);
    }
  };

  run_side(u, v, a1, cfg.p1, cfg.M1, cfg.beta1, rep.u_side);
  run_side(v, u, a2, cfg.p2, cfg.M2, cfg.alpha2, rep.v_side);
  return rep;
}

}  // namespace singlap
