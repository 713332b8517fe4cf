#include "singlap/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <thread>

#include "singlap/reports.hpp"

namespace singlap {

namespace {

struct Resolved {
  RunConfig rc;
  std::string out_dir;
  std::vector<std::string> formats;
};

Resolved resolve(const CliOptions& opts) {
  Resolved r;
  r.rc = load_config(opts.config_path);
  r.out_dir = opts.out_dir.empty() ? r.rc.output.dir : opts.out_dir;
  r.formats = opts.formats.empty() ? r.rc.output.formats : opts.formats;
  for (const std::string& f : r.formats)
    if (f != "json" && f != "csv" && f != "svg") throw ParseError("unknown format '" + f + "'");
  std::filesystem::create_directories(r.out_dir);
  return r;
}

bool wants(const Resolved& r, const char* fmt) {
  return std::find(r.formats.begin(), r.formats.end(), fmt) != r.formats.end();
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void write_json(const Resolved& r, const std::string& name, const ordered_json& j) {
  write_text_file(join(r.out_dir, name), j.dump(2) + "\n");
}

GridPtr make_grid(const RunConfig& rc) {
  return build_grid(rc.grid_N, rc.r_max, rc.nodes, rc.grading, rc.ratio);
}

SetupParams setup_params(const RunConfig& rc) {
  SetupParams p;
  p.xi1 = rc.bounds.xi1;
  p.xi2 = rc.bounds.xi2;
  p.kappa0 = rc.bounds.kappa0;
  p.ladder_tol = rc.bounds.tail_tol;
  return p;
}

std::vector<double> solve_schedule(const RunConfig& rc) {
  return rc.solver.eps_schedule.empty() ? default_eps_schedule() : rc.solver.eps_schedule;
}

struct SolveArtifacts {
  ProblemSetup ctx;
  ContinuationResult res;
  TruncatedIneqReport trunc;
  EnvelopeSet env;  // at the final stage eps
};

SolveArtifacts run_solve(const RunConfig& rc) {
  GridPtr g = make_grid(rc);
  SolveArtifacts out{make_setup(rc.exponents, rc.a1, rc.a2, g, setup_params(rc)), {}, {}, {}};
  std::vector<double> schedule = solve_schedule(rc);
  out.res = continuation(schedule, rc.solver.theta, rc.solver.tol, rc.solver.max_iter, out.ctx,
                         rc.solver.residual_tol);
  double eps_final = out.res.stages.empty() ? schedule.front() : out.res.stages.back().eps;
  out.env = envelopes(out.ctx, eps_final);
  out.trunc = truncated_inequality_check(out.res.u, out.res.v, rc.exponents, out.ctx.a1,
                                         out.ctx.a2, out.ctx.tests);
  return out;
}

void write_solve_outputs(const Resolved& r, const RunConfig& rc, const SolveArtifacts& art,
                         const std::string& stem) {
  if (wants(r, "json"))
    write_json(r, stem + ".json", solve_report(rc, art.ctx, art.res, art.trunc));
  if (wants(r, "csv"))
    write_text_file(join(r.out_dir, stem + ".csv"), profiles_csv(art.res.u, art.res.v, art.env));
  if (wants(r, "svg"))
    write_text_file(join(r.out_dir, stem + ".svg"), solution_svg(art.res.u, art.res.v));
}

int solve_exit_code(const ContinuationResult& res) {
  if (!res.converged_all) return 3;
  return res.cert.overall ? 0 : 1;
}

int guard(const char* what, int (*body)(const CliOptions&), const CliOptions& opts) {
  try {
    return body(opts);
  } catch (const ParseError& e) {
    std::cerr << what << ": " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << what << ": inadmissible data: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << what << ": inadmissible data: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << what << ": certification failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << what << ": " << e.what() << "\n";
    return 2;
  }
}

int check_body(const CliOptions& opts) {
  Resolved r = resolve(opts);
  ValidationReport vr = validate(r.rc.exponents);
  HaReport ha1, ha2;
  bool weights_ok = false;
  if (vr.overall) {
    GridPtr g = make_grid(r.rc);
    auto run_side = [&](const WeightSpec& w, int side, double xi) {
      try {
        return check_Ha(w, r.rc.exponents, side, g, xi);
      } catch (const std::exception& e) {
        HaReport bad;
        bad.report.overall = false;
        bad.report.checks.push_back({std::string("well_formed: ") + e.what(), false, -1.0});
        return bad;
      }
    };
    ha1 = run_side(r.rc.a1, 1, r.rc.bounds.xi1);
    ha2 = run_side(r.rc.a2, 2, r.rc.bounds.xi2);
    weights_ok = ha1.report.overall && ha2.report.overall;
  } else {
    ha1.report.notes.push_back("skipped: structural admissibility failed");
    ha2.report.notes.push_back("skipped: structural admissibility failed");
  }
  write_json(r, "check.json", check_report(r.rc, vr, ha1, ha2));
  return (vr.overall && weights_ok) ? 0 : 1;
}

int bounds_body(const CliOptions& opts) {
  Resolved r = resolve(opts);
  ValidationReport vr = validate(r.rc.exponents);
  if (!vr.overall) {
    std::cerr << "bounds: configuration fails admissibility; run `check` for details\n";
    return 1;
  }
  GridPtr g = make_grid(r.rc);
  DerivedExponents dex = derive_exponents(r.rc.exponents);
  WeightNorms n1 = weight_norms(r.rc.a1, r.rc.exponents, dex, 1, g, r.rc.bounds.xi1);
  WeightNorms n2 = weight_norms(r.rc.a2, r.rc.exponents, dex, 2, g, r.rc.bounds.xi2);
  BoundsReport b =
      compute_bounds(r.rc.exponents, n1, n2, r.rc.bounds.kappa0, r.rc.bounds.tail_tol);
  write_json(r, "bounds.json", bounds_report(r.rc, b, n1, n2));
  return 0;
}

int solve_body(const CliOptions& opts) {
  Resolved r = resolve(opts);
  SolveArtifacts art = run_solve(r.rc);
  write_solve_outputs(r, r.rc, art, "solve");
  return solve_exit_code(art.res);
}

std::string value_stem(const std::string& param, const std::string& value) {
  std::string clean = value;
  for (char& c : clean)
    if (c == '/' || c == '.') c = '_';
  return param + "_" + clean;
}

void apply_sweep_value(RunConfig& rc, const std::string& param, double v) {
  if (param == "r_max") {
    rc.r_max = v;
  } else if (param == "nodes") {
    rc.nodes = static_cast<std::size_t>(v);
  } else if (param == "eps_floor") {
    std::vector<double> sched;
    for (double eps = 0.25; eps >= v - 1e-15; eps *= 0.5) sched.push_back(eps);
    if (sched.empty()) sched.push_back(v);
    rc.solver.eps_schedule = std::move(sched);
  } else if (param == "xi1") {
    rc.bounds.xi1 = v;
  } else {
    throw ParseError("unknown sweep parameter '" + param + "'");
  }
}

int sweep_body(const CliOptions& opts) {
  Resolved r = resolve(opts);
  if (opts.sweep_values.empty()) throw ParseError("sweep: no values given");
  if (opts.sweep_param != "r_max" && opts.sweep_param != "nodes" &&
      opts.sweep_param != "eps_floor" && opts.sweep_param != "xi1")
    throw ParseError("unknown sweep parameter '" + opts.sweep_param + "'");
  std::vector<double> values;
  for (const std::string& s : opts.sweep_values) {
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      values.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("sweep: bad value '" + s + "'");
    }
  }

  std::vector<std::string> rows(values.size());
  std::vector<int> codes(values.size(), 0);
  std::vector<std::string> errors(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= values.size()) return;
      RunConfig rc = r.rc;
      std::string row = fmt_full(values[i]);
      try {
        apply_sweep_value(rc, opts.sweep_param, values[i]);
        SolveArtifacts art = run_solve(rc);
        write_solve_outputs(r, rc, art, value_stem(opts.sweep_param, opts.sweep_values[i]));
        const Certification& c = art.res.cert;
        std::size_t total_iters = 0;
        for (const StageReport& s : art.res.stages) total_iters += s.iters;
        row += ',' + fmt_full(art.res.u.values.empty() ? 0.0 : art.res.u.values.front());
        row += ',' + fmt_full(c.max_u) + ',' + fmt_full(c.max_v);
        row += ',' + fmt_full(c.lq_u) + ',' + fmt_full(c.lq_v);
        row += ',' + fmt_full(std::max(c.residual_max_u, c.residual_max_v));
        row += ',' + std::to_string(total_iters);
        row += art.res.converged_all ? ",1" : ",0";
        row += ',' + fmt_full(art.ctx.bounds.rho) + ',' + fmt_full(art.ctx.bounds.R_inf);
        codes[i] = solve_exit_code(art.res);
      } catch (const std::exception& e) {
        row += ",,,,,,,0,0,,";
        codes[i] = 1;
        errors[i] = e.what();
      }
      rows[i] = row;
    }
  };
  unsigned jobs = std::max(1u, opts.jobs);
  if (jobs <= 1 || values.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, values.size()); ++t)
      pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  write_text_file(join(r.out_dir, "sweep.csv"), sweep_csv(opts.sweep_param, rows));
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty())
      std::cerr << "sweep value " << opts.sweep_values[i] << ": " << errors[i] << "\n";
  return *std::max_element(codes.begin(), codes.end());
}

}  // namespace

int cmd_check(const CliOptions& opts) { return guard("check", check_body, opts); }
int cmd_bounds(const CliOptions& opts) { return guard("bounds", bounds_body, opts); }
int cmd_solve(const CliOptions& opts) { return guard("solve", solve_body, opts); }
int cmd_sweep(const CliOptions& opts) { return guard("sweep", sweep_body, opts); }

}  // namespace singlap
