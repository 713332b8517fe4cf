#include "singlap/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace singlap {

ordered_json jnum(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

ordered_json norms_json(const WeightNorms& n) {
  ordered_json j;
  j["l1"] = jnum(n.l1);
  j["l_zeta"] = jnum(n.l_zeta);
  j["l_gamma"] = jnum(n.l_gamma);
  j["l_delta"] = jnum(n.l_delta);
  j["l_xi"] = jnum(n.l_xi);
  j["l_conj"] = jnum(n.l_conj);
  j["q_zeta"] = jnum(n.q_zeta);
  j["q_gamma"] = jnum(n.q_gamma);
  j["q_delta"] = jnum(n.q_delta);
  j["q_xi"] = jnum(n.q_xi);
  j["q_conj"] = jnum(n.q_conj);
  j["tail_l1"] = jnum(n.tail_l1);
  j["tail_zeta"] = jnum(n.tail_zeta);
  j["analytic_l1"] = n.analytic_l1 ? jnum(*n.analytic_l1) : ordered_json(nullptr);
  j["analytic_zeta"] = n.analytic_zeta ? jnum(*n.analytic_zeta) : ordered_json(nullptr);
  return j;
}

ordered_json moser_json(const MoserTrace& m) {
  ordered_json j;
  j["xi"] = jnum(m.xi);
  j["kappa0"] = jnum(m.kappa0);
  j["n_terms"] = m.n_terms;
  j["ratio_limit"] = jnum(m.ratio_limit);
  j["eta_sum"] = jnum(m.eta_sum);
  j["eta_tail"] = jnum(m.eta_tail);
  j["sqrt_sum"] = jnum(m.sqrt_sum);
  j["sqrt_tail"] = jnum(m.sqrt_tail);
  j["C3"] = jnum(m.C3);
  j["C4"] = jnum(m.C4);
  j["C5"] = jnum(m.C5);
  ordered_json ks = ordered_json::array();
  std::size_t keep = std::min<std::size_t>(m.kappa.size(), 24);
  for (std::size_t i = 0; i < keep; ++i) ks.push_back(jnum(m.kappa[i]));
  j["kappa_head"] = std::move(ks);
  return j;
}

ordered_json weight_json(const WeightSpec& w) {
  ordered_json j;
  j["family"] = w.family_name();
  j["amplitude"] = jnum(w.amplitude);
  switch (w.family) {
    case WeightFamily::gaussian:
      j["lambda"] = jnum(w.lambda);
      break;
    case WeightFamily::bump:
      j["rho0"] = jnum(w.rho0);
      j["k"] = jnum(w.k);
      break;
    case WeightFamily::powerdecay:
      j["sigma"] = jnum(w.sigma);
      break;
  }
  return j;
}

ordered_json header_json(const RunConfig& rc) {
  ordered_json j;
  j["config_hash"] = rc.config_hash;
  ordered_json e;
  const ExponentConfig& c = rc.exponents;
  e["N"] = c.N;
  e["p1"] = jnum(c.p1);
  e["p2"] = jnum(c.p2);
  e["alpha1"] = jnum(c.alpha1);
  e["alpha2"] = jnum(c.alpha2);
  e["beta1"] = jnum(c.beta1);
  e["beta2"] = jnum(c.beta2);
  e["m1"] = jnum(c.m1);
  e["M1"] = jnum(c.M1);
  e["m2"] = jnum(c.m2);
  e["M2"] = jnum(c.M2);
  e["zeta1"] = jnum(c.zeta1);
  e["zeta2"] = jnum(c.zeta2);
  j["exponents"] = std::move(e);
  ordered_json g;
  g["r_max"] = jnum(rc.r_max);
  g["nodes"] = rc.nodes;
  g["grading"] = rc.grading == Grading::uniform ? "uniform" : "geometric";
  j["grid"] = std::move(g);
  j["weight_a1"] = weight_json(rc.a1);
  j["weight_a2"] = weight_json(rc.a2);
  return j;
}

}  // namespace

ordered_json constants_ledger(const BoundsReport& b) {
  ordered_json j;
  j["S1"] = jnum(b.S1);
  j["S2"] = jnum(b.S2);
  j["C1"] = jnum(b.lp.C1);
  j["C2"] = jnum(b.lp.C2);
  j["C3_u"] = jnum(b.moser_u.C3);
  j["C3_v"] = jnum(b.moser_v.C3);
  j["C4_u"] = jnum(b.moser_u.C4);
  j["C4_v"] = jnum(b.moser_v.C4);
  j["C5_u"] = jnum(b.moser_u.C5);
  j["C5_v"] = jnum(b.moser_v.C5);
  j["rho"] = jnum(b.rho);
  j["R_inf"] = jnum(b.R_inf);
  return j;
}

ordered_json validation_json(const ValidationReport& vr) {
  ordered_json j;
  j["overall"] = vr.overall;
  ordered_json checks = ordered_json::array();
  for (const Check& c : vr.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["satisfied"] = c.satisfied;
    cj["margin"] = jnum(c.margin);
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["notes"] = vr.notes;
  return j;
}

ordered_json check_report(const RunConfig& rc, const ValidationReport& vr, const HaReport& ha1,
                          const HaReport& ha2) {
  ordered_json j = header_json(rc);
  j["kind"] = "check";
  j["structure"] = validation_json(vr);
  ordered_json w1;
  w1["report"] = validation_json(ha1.report);
  w1["norms"] = norms_json(ha1.norms);
  j["weight_a1_check"] = std::move(w1);
  ordered_json w2;
  w2["report"] = validation_json(ha2.report);
  w2["norms"] = norms_json(ha2.norms);
  j["weight_a2_check"] = std::move(w2);
  j["admissible"] = vr.overall && ha1.report.overall && ha2.report.overall;
  return j;
}

ordered_json bounds_report(const RunConfig& rc, const BoundsReport& b, const WeightNorms& n1,
                           const WeightNorms& n2) {
  ordered_json j = header_json(rc);
  j["kind"] = "bounds";
  j["norms_a1"] = norms_json(n1);
  j["norms_a2"] = norms_json(n2);
  ordered_json lp;
  lp["C1"] = jnum(b.lp.C1);
  lp["C2"] = jnum(b.lp.C2);
  lp["u_cases"] = {jnum(b.lp.u_cases[0]), jnum(b.lp.u_cases[1]), jnum(b.lp.u_cases[2])};
  lp["v_cases"] = {jnum(b.lp.v_cases[0]), jnum(b.lp.v_cases[1]), jnum(b.lp.v_cases[2])};
  lp["u_grad"] = jnum(b.lp.u_grad);
  lp["v_grad"] = jnum(b.lp.v_grad);
  lp["rho"] = jnum(b.lp.rho);
  lp["case_taken"] = b.lp.case_taken;
  j["lpstar"] = std::move(lp);
  j["moser_u"] = moser_json(b.moser_u);
  j["moser_v"] = moser_json(b.moser_v);
  j["constants"] = constants_ledger(b);
  return j;
}

ordered_json solve_report(const RunConfig& rc, const ProblemSetup& ctx,
                          const ContinuationResult& res, const TruncatedIneqReport& trunc) {
  ordered_json j = header_json(rc);
  j["kind"] = "solve";
  j["converged"] = res.converged_all;
  ordered_json stages = ordered_json::array();
  for (const StageReport& s : res.stages) {
    ordered_json sj;
    sj["eps"] = jnum(s.eps);
    sj["iters"] = s.iters;
    sj["converged"] = s.converged;
    sj["distance"] = jnum(s.distance);
    sj["theta_final"] = jnum(s.theta_final);
    sj["max_clamp"] = jnum(s.max_clamp);
    sj["moved_u"] = jnum(s.moved_u);
    sj["moved_v"] = jnum(s.moved_v);
    sj["bracket_violation"] = jnum(s.bracket_violation);
    sj["residual_max_u"] = jnum(s.residual_max_u);
    sj["residual_max_v"] = jnum(s.residual_max_v);
    sj["max_u"] = jnum(s.max_u);
    sj["max_v"] = jnum(s.max_v);
    sj["lq_u"] = jnum(s.lq_u);
    sj["lq_v"] = jnum(s.lq_v);
    stages.push_back(std::move(sj));
  }
  j["stages"] = std::move(stages);
  const Certification& c = res.cert;
  ordered_json cert;
  cert["bracket_violation"] = jnum(c.bracket_violation);
  cert["max_u"] = jnum(c.max_u);
  cert["max_v"] = jnum(c.max_v);
  cert["lq_u"] = jnum(c.lq_u);
  cert["lq_v"] = jnum(c.lq_v);
  cert["residual_max_u"] = jnum(c.residual_max_u);
  cert["residual_max_v"] = jnum(c.residual_max_v);
  cert["rho"] = jnum(c.rho);
  cert["R_inf"] = jnum(c.R_inf);
  cert["residual_tol"] = jnum(c.residual_tol);
  cert["bracketing_ok"] = c.bracketing_ok;
  cert["linf_ok"] = c.linf_ok;
  cert["lpstar_ok"] = c.lpstar_ok;
  cert["residual_ok"] = c.residual_ok;
  cert["overall"] = c.overall;
  j["certification"] = std::move(cert);
  if (!res.u.values.empty()) {
    j["u0"] = jnum(res.u.values.front());
    j["v0"] = jnum(res.v.values.front());
  }
  ordered_json tj;
  tj["all_hold"] = trunc.all_hold;
  double worst_u = 0, worst_v = 0;
  for (const TruncatedIneq& t : trunc.u_side) worst_u = std::max(worst_u, t.lhs - t.rhs);
  for (const TruncatedIneq& t : trunc.v_side) worst_v = std::max(worst_v, t.lhs - t.rhs);
  tj["worst_gap_u"] = jnum(worst_u);
  tj["worst_gap_v"] = jnum(worst_v);
  tj["tests_u"] = trunc.u_side.size();
  tj["tests_v"] = trunc.v_side.size();
  j["truncated_inequalities"] = std::move(tj);
  j["constants"] = constants_ledger(ctx.bounds);
  return j;
}

std::string profiles_csv(const RadialField& u, const RadialField& v, const EnvelopeSet& env) {
  const auto& r = u.grid->nodes;
  std::string out = "r,u,v,u_lo,u_hi,v_lo,v_hi\n";
  for (std::size_t i = 0; i < r.size(); ++i) {
    out += fmt_full(r[i]);
    out += ',';
    out += fmt_full(u.values[i]);
    out += ',';
    out += fmt_full(v.values[i]);
    out += ',';
    out += fmt_full(env.u_lo.values[i]);
    out += ',';
    out += fmt_full(env.u_hi.values[i]);
    out += ',';
    out += fmt_full(env.v_lo.values[i]);
    out += ',';
    out += fmt_full(env.v_hi.values[i]);
    out += '\n';
  }
  return out;
}

std::string solution_svg(const RadialField& u, const RadialField& v) {
  const double W = 800, H = 500, L = 60, R = 20, T = 20, B = 40;
  const auto& r = u.grid->nodes;
  double rmax = r.back();
  double ymax = 0;
  for (double y : u.values) ymax = std::max(ymax, y);
  for (double y : v.values) ymax = std::max(ymax, y);
  if (ymax <= 0) ymax = 1;
  auto px = [&](double rr) { return L + (W - L - R) * rr / rmax; };
  auto py = [&](double yy) { return H - B - (H - T - B) * yy / ymax; };
  auto polyline = [&](const std::vector<double>& ys, const char* color) {
    std::string s = "  <polyline fill=\"none\" stroke=\"";
    s += color;
    s += "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < ys.size(); ++i) {
      if (i) s += ' ';
      s += fmt6(px(r[i]));
      s += ',';
      s += fmt6(py(ys[i]));
    }
    s += "\"/>\n";
    return s;
  };
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\">\n";
  svg += "  <rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
  svg += "  <line x1=\"" + fmt6(L) + "\" y1=\"" + fmt6(H - B) + "\" x2=\"" + fmt6(W - R) +
         "\" y2=\"" + fmt6(H - B) + "\" stroke=\"black\"/>\n";
  svg += "  <line x1=\"" + fmt6(L) + "\" y1=\"" + fmt6(T) + "\" x2=\"" + fmt6(L) + "\" y2=\"" +
         fmt6(H - B) + "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    double rr = rmax * k / 4.0, yy = ymax * k / 4.0;
    svg += "  <text x=\"" + fmt6(px(rr)) + "\" y=\"" + fmt6(H - B + 18) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + fmt6(rr) + "</text>\n";
    svg += "  <text x=\"" + fmt6(L - 6) + "\" y=\"" + fmt6(py(yy) + 4) +
           "\" font-size=\"12\" text-anchor=\"end\">" + fmt6(yy) + "</text>\n";
  }
  svg += polyline(u.values, "#1f77b4");
  svg += polyline(v.values, "#d62728");
  svg += "  <text x=\"" + fmt6(W - R - 60) + "\" y=\"" + fmt6(T + 16) +
         "\" font-size=\"13\" fill=\"#1f77b4\">u</text>\n";
  svg += "  <text x=\"" + fmt6(W - R - 30) + "\" y=\"" + fmt6(T + 16) +
         "\" font-size=\"13\" fill=\"#d62728\">v</text>\n";
  svg += "  <text x=\"" + fmt6(0.5 * (L + W - R)) + "\" y=\"" + fmt6(H - 6) +
         "\" font-size=\"13\" text-anchor=\"middle\">r</text>\n";
  svg += "</svg>\n";
  return svg;
}

std::string sweep_csv(const std::string& param, const std::vector<std::string>& rows) {
  std::string out = param +
                    ",u0,max_u,max_v,lq_u,lq_v,residual_max,total_iters,converged,rho,R_inf\n";
  for (const std::string& row : rows) {
    out += row;
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failure: " + path);
}

}  // namespace singlap
