#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "singlap/fixedpoint.hpp"

using namespace singlap;

namespace {

ProblemSetup reference_setup(std::size_t nodes, double r_max = 8.0, double amplitude = 1.0) {
  ExponentConfig cfg;
  WeightSpec w;
  w.amplitude = amplitude;
  return make_setup(cfg, w, w, build_grid(3, r_max, nodes));
}

double sup_diff(const RadialField& a, const RadialField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

}  // namespace

TEST_CASE("truncate caps nodewise") {
  GridPtr g = build_grid(3, 1.0, 17);
  RadialField z = sample_field(g, [](double r) { return r; });
  RadialField t = truncate(z, 0.5);
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    CHECK(t.values[i] == std::min(z.values[i], 0.5));
  }
}

TEST_CASE("envelope factors: hand values at R = 1") {
  ExponentConfig cfg;
  EnvelopeFactors e = envelope_factors(cfg, 1.0, 0.25);
  CHECK(e.u_lo == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(e.u_hi == doctest::Approx(4.0).epsilon(1e-14));
  // the reference configuration is symmetric under swapping the components
  CHECK(e.v_lo == doctest::Approx(e.u_lo).epsilon(1e-14));
  CHECK(e.v_hi == doctest::Approx(e.u_hi).epsilon(1e-14));

  // upper barrier inflates as eps decreases, lower barrier never moves
  EnvelopeFactors e2 = envelope_factors(cfg, 1.0, 1.0 / 16.0);
  CHECK(e2.u_hi == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(e2.u_lo == doctest::Approx(e.u_lo).epsilon(1e-14));

  CHECK_THROWS_AS(envelope_factors(cfg, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(envelope_factors(cfg, 1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(envelope_factors(cfg, -1.0, 0.5), std::invalid_argument);
}

TEST_CASE("reaction pair values and singular-slot guards") {
  ExponentConfig cfg;
  Nonlinearity fg(cfg);
  CHECK(fg.f(1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fg.g(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fg.f(4.0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(fg.f(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(fg.f(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(fg.g(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(fg.f(1.0, -1.0), std::domain_error);
}

TEST_CASE("make_setup populates the shared context") {
  ProblemSetup ctx = reference_setup(513);
  CHECK(ctx.a1.values.size() == 513);
  CHECK(ctx.w1.values.size() == 513);
  CHECK(ctx.tests.size() == 20);
  CHECK(ctx.bounds.R_inf >= 1.0);
  CHECK(ctx.norms1.l1 > 0.0);
  // identical weight specs produce identical membrane responses
  CHECK(sup_diff(ctx.w1, ctx.w2) == 0.0);
  // membrane response is positive and decreasing
  for (std::size_t i = 1; i < ctx.w1.values.size(); ++i) {
    CHECK(ctx.w1.values[i] > 0.0);
    CHECK(ctx.w1.values[i] <= ctx.w1.values[i - 1] + 1e-15);
  }
}

TEST_CASE("make_setup rejects inadmissible or non-unit-envelope data") {
  GridPtr g = build_grid(3, 4.0, 65);
  WeightSpec w;
  ExponentConfig bad;
  bad.alpha1 = -1.0;
  CHECK_THROWS_AS(make_setup(bad, w, w, g), std::domain_error);

  ExponentConfig scaled;
  scaled.m1 = 1.2;  // admissible, but incompatible with the unit-envelope model
  scaled.M1 = 1.3;
  CHECK_THROWS_AS(make_setup(scaled, w, w, g), std::domain_error);
}

TEST_CASE("schauder map stays inside the invariant box") {
  ProblemSetup ctx = reference_setup(513);
  EnvelopeSet env = envelopes(ctx, 0.25);
  CHECK(bracketing_violation(env.u_lo, env.u_lo, env.u_hi) == 0.0);

  MapResult lo_img = schauder_map(env.u_lo, env.v_lo, 0.25, ctx);
  CHECK(bracketing_violation(lo_img.u, env.u_lo, env.u_hi) <= 1e-8);
  CHECK(bracketing_violation(lo_img.v, env.v_lo, env.v_hi) <= 1e-8);

  MapResult hi_img = schauder_map(env.u_hi, env.v_hi, 0.25, ctx);
  CHECK(bracketing_violation(hi_img.u, env.u_lo, env.u_hi) <= 1e-8);
  CHECK(bracketing_violation(hi_img.v, env.v_lo, env.v_hi) <= 1e-8);

  RadialField outside = env.u_hi;
  for (double& x : outside.values) x *= 10.0;
  CHECK_THROWS_AS(schauder_map(outside, env.v_lo, 0.25, ctx), std::invalid_argument);
}

TEST_CASE("picard iteration converges and respects theta validation") {
  ProblemSetup ctx = reference_setup(513);
  CHECK_THROWS_AS(picard_solve(0.25, 0.0, 1e-8, 50, ctx), std::invalid_argument);
  CHECK_THROWS_AS(picard_solve(0.25, 1.5, 1e-8, 50, ctx), std::invalid_argument);

  PicardResult r = picard_solve(0.25, 1.0, 1e-9, 200, ctx);
  CHECK(r.converged);
  CHECK(r.distance <= 1e-9);
  CHECK(r.iters <= 200);
  CHECK(r.distances.size() == r.iters);
  EnvelopeSet env = envelopes(ctx, 0.25);
  CHECK(bracketing_violation(r.u, env.u_lo, env.u_hi) <= 1e-12);

  // warm start from the opposite corner of the box lands on the same pair
  PicardResult w = picard_solve(0.25, 1.0, 1e-9, 200, ctx,
                                std::make_pair(env.u_hi, env.v_hi));
  CHECK(w.converged);
  CHECK(sup_diff(r.u, w.u) <= 1e-6);
  CHECK(sup_diff(r.v, w.v) <= 1e-6);
}

TEST_CASE("eps continuation converges stagewise and certifies") {
  ProblemSetup ctx = reference_setup(1025);
  std::vector<double> sched = default_eps_schedule();
  REQUIRE(!sched.empty());
  CHECK(sched.front() == doctest::Approx(0.25));
  for (std::size_t i = 1; i < sched.size(); ++i) CHECK(sched[i] < sched[i - 1]);

  ContinuationResult res = continuation(sched, 1.0, 1e-8, 200, ctx, 1e-5);
  CHECK(res.converged_all);
  CHECK(res.stages.size() == sched.size());
  for (const StageReport& s : res.stages) {
    CHECK(s.converged);
    CHECK(s.iters <= 200);
    CHECK(s.bracket_violation <= 1e-12);
  }
  CHECK(res.cert.overall);
  CHECK(res.cert.bracketing_ok);
  CHECK(res.cert.linf_ok);
  CHECK(res.cert.lpstar_ok);
  CHECK(res.cert.residual_ok);
  CHECK(res.cert.max_u <= res.cert.R_inf);
  CHECK(res.cert.lq_u <= res.cert.rho);
  CHECK(res.u.values[0] > 0.0);
}

TEST_CASE("continuation aborts with partial history when a stage stalls") {
  ProblemSetup ctx = reference_setup(257, 4.0);
  ContinuationResult res = continuation({0.25, 0.125}, 1.0, 1e-30, 3, ctx, 1e-5);
  CHECK(!res.converged_all);
  CHECK(!res.cert.overall);
  CHECK(res.stages.size() >= 1);
  CHECK(!res.stages.front().converged);

  CHECK_THROWS_AS(continuation({}, 1.0, 1e-8, 10, ctx), std::invalid_argument);
  CHECK_THROWS_AS(continuation({1.5}, 1.0, 1e-8, 10, ctx), std::invalid_argument);
  CHECK_THROWS_AS(continuation({0.25}, 2.0, 1e-8, 10, ctx), std::invalid_argument);
}

TEST_CASE("superlevel inequality: amplified run exceeds the threshold and passes") {
  ExponentConfig cfg;
  WeightSpec w;
  w.amplitude = 3.0;
  ProblemSetup ctx = make_setup(cfg, w, w, build_grid(3, 8.0, 513));
  ContinuationResult res = continuation(default_eps_schedule(), 1.0, 1e-8, 200, ctx, 1e-3);
  REQUIRE(res.converged_all);
  double max_u = *std::max_element(res.u.values.begin(), res.u.values.end());
  CHECK(max_u > 1.0);
  TruncatedIneqReport rep =
      truncated_inequality_check(res.u, res.v, cfg, ctx.a1, ctx.a2, ctx.tests);
  CHECK(rep.all_hold);
  CHECK(rep.u_side.size() == ctx.tests.size());
}

TEST_CASE("superlevel inequality: empty superlevel set holds trivially") {
  ProblemSetup ctx = reference_setup(257, 4.0);
  RadialField u = constant_field(ctx.grid, 0.5);
  RadialField v = constant_field(ctx.grid, 0.25);
  TruncatedIneqReport rep = truncated_inequality_check(u, v, ctx.cfg, ctx.a1, ctx.a2, ctx.tests);
  CHECK(rep.all_hold);
  for (const TruncatedIneq& t : rep.u_side) {
    CHECK(t.lhs == 0.0);
    CHECK(t.holds);
  }
}
