#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "singlap/plap.hpp"

using namespace singlap;

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double sup_diff(const RadialField& a, const RadialField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("phi_p round trip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-10.0, 10.0);
  for (double p : {1.5, 2.0, 3.0}) {
    CHECK(phi_p(0.0, p) == 0.0);
    CHECK(phi_p_inv(0.0, p) == 0.0);
    for (int i = 0; i < 3000; ++i) {
      double s = unif(rng);
      double back = phi_p_inv(phi_p(s, p), p);
      CHECK(std::abs(back - s) <= 1e-12 * std::max(1.0, std::abs(s)));
    }
  }
}

TEST_CASE("constant rhs closed forms, exact for every p") {
  // -div(|u'|^{p-2} u') = 1 on B_1, u(1) = 0: u' = -(r/3)^{1/(p-1)}
  struct Case {
    double p;
    double (*u)(double);
  };
  const Case cases[] = {
      {1.5, [](double r) { return (1.0 - r * r * r) / 27.0; }},
      {2.0, [](double r) { return (1.0 - r * r) / 6.0; }},
      {3.0, [](double r) { return 2.0 / (3.0 * std::sqrt(3.0)) * (1.0 - std::pow(r, 1.5)); }},
  };
  GridPtr g = build_grid(3, 1.0, 1025);
  RadialField h = constant_field(g, 1.0);
  for (const Case& c : cases) {
    PLapSolution sol = solve_plap(c.p, h, Tail::zero);
    double worst = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i)
      worst = std::max(worst, std::abs(sol.u[i] - c.u(g->nodes[i])));
    CAPTURE(c.p);
    CHECK(worst < 1e-13);
    CHECK(sol.Q.back() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }
}

TEST_CASE("zero rhs gives the zero solution") {
  GridPtr g = build_grid(3, 2.0, 129);
  PLapSolution sol = solve_plap(2.5, constant_field(g, 0.0), Tail::zero);
  CHECK(max_abs(sol.u.values) == 0.0);
  CHECK(sol.c_tail == 0.0);
}

TEST_CASE("matched tail equals the exterior decay of a compactly supported rhs") {
  // h = (1 - (2r)^2)_+^2: total flux Q_tot = 1/105; for r past the support the
  // p = 2 solution with matched closure is exactly Q_tot / r
  GridPtr g = build_grid(3, 1.0, 4097);
  RadialField h = sample_field(g, [](double r) {
    double t = 1.0 - 4.0 * r * r;
    return t > 0.0 ? t * t : 0.0;
  });
  PLapSolution sol = solve_plap(2.0, h, Tail::matched);
  CHECK(sol.Q.back() == doctest::Approx(1.0 / 105.0).epsilon(1e-7));
  CHECK(sol.c_tail == doctest::Approx(1.0 / 105.0).epsilon(1e-7));
  // broken-line moment integration of the 1/s^3 flux profile leaves a small
  // curvature defect per cell, so exterior agreement is to ~1e-6 at this grid
  for (std::size_t i = 0; i < g->size(); ++i) {
    double r = g->nodes[i];
    if (r < 0.6) continue;
    CHECK(sol.u[i] == doctest::Approx(sol.Q.back() / r).epsilon(2e-6));
  }
}

TEST_CASE("matched tail is a constant shift of the zero tail") {
  GridPtr g = build_grid(3, 8.0, 513);
  RadialField h = sample_field(g, [](double r) { return std::exp(-r * r); });
  PLapSolution a = solve_plap(2.0, h, Tail::matched);
  PLapSolution b = solve_plap(2.0, h, Tail::zero);
  CHECK(a.c_tail > 0.0);
  for (std::size_t i = 0; i < g->size(); ++i)
    CHECK(a.u[i] - b.u[i] == doctest::Approx(a.c_tail).epsilon(1e-13));
}

TEST_CASE("matched tail requires p < N") {
  GridPtr g = build_grid(3, 1.0, 65);
  RadialField h = constant_field(g, 1.0);
  CHECK_THROWS_AS(solve_plap(3.5, h, Tail::matched), std::domain_error);
  CHECK_NOTHROW(solve_plap(3.5, h, Tail::zero));
}

TEST_CASE("solver input guards") {
  GridPtr g = build_grid(3, 1.0, 65);
  RadialField h = constant_field(g, 1.0);
  CHECK_THROWS_AS(solve_plap(1.0, h), std::invalid_argument);
  h.values[3] = -0.1;
  CHECK_THROWS_AS(solve_plap(2.0, h), std::domain_error);
  h.values[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(solve_plap(2.0, h), std::domain_error);
}

TEST_CASE("homogeneity: solve(lambda h) = lambda^{1/(p-1)} solve(h)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  GridPtr g = build_grid(3, 2.0, 257);
  for (int trial = 0; trial < 100; ++trial) {
    RadialField h{g, {}};
    for (std::size_t i = 0; i < g->size(); ++i) h.values.push_back(0.1 + 2.0 * unif(rng));
    double lambda = std::pow(10.0, -2.0 + 4.0 * unif(rng));
    double p = 1.3 + 1.9 * unif(rng);
    RadialField hl = h;
    for (double& v : hl.values) v *= lambda;
    // zero tail: random p can reach past N where the matched closure is undefined
    PLapSolution base = solve_plap(p, h, Tail::zero);
    PLapSolution scaled = solve_plap(p, hl, Tail::zero);
    double factor = std::pow(lambda, 1.0 / (p - 1.0));
    double scale = factor * max_abs(base.u.values);
    for (std::size_t i = 0; i < g->size(); ++i)
      CHECK(std::abs(scaled.u[i] - factor * base.u[i]) <= 1e-12 * scale);
  }
}

TEST_CASE("comparison: larger rhs gives larger solution") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  GridPtr g = build_grid(3, 2.0, 257);
  for (int trial = 0; trial < 100; ++trial) {
    RadialField h1{g, {}}, h2{g, {}};
    for (std::size_t i = 0; i < g->size(); ++i) {
      h1.values.push_back(unif(rng));
      h2.values.push_back(h1.values.back() + unif(rng));
    }
    double p = 1.3 + 1.9 * unif(rng);
    PLapSolution u1 = solve_plap(p, h1, Tail::zero);
    PLapSolution u2 = solve_plap(p, h2, Tail::zero);
    double scale = std::max(1.0, max_abs(u2.u.values));
    for (std::size_t i = 0; i < g->size(); ++i) CHECK(u1.u[i] <= u2.u[i] + 1e-12 * scale);
  }
}

TEST_CASE("second-order convergence on a smooth rhs") {
  auto rhs = [](double r) { return std::exp(-r * r); };
  const double p = 2.5;
  GridPtr fine = build_grid(3, 1.0, 16385);
  PLapSolution ref = solve_plap(p, sample_field(fine, rhs), Tail::zero);
  double prev_err = 0.0;
  for (std::size_t nodes : {513u, 1025u, 2049u}) {
    GridPtr g = build_grid(3, 1.0, nodes);
    PLapSolution sol = solve_plap(p, sample_field(g, rhs), Tail::zero);
    std::size_t stride = (fine->size() - 1) / (nodes - 1);
    double err = 0.0;
    for (std::size_t i = 0; i < nodes; ++i)
      err = std::max(err, std::abs(sol.u[i] - ref.u[i * stride]));
    if (prev_err > 0.0) {
      CAPTURE(nodes);
      CHECK(prev_err / err >= 3.5);
    }
    prev_err = err;
  }
}

TEST_CASE("torsion wraps solve_plap on the sampled weight") {
  GridPtr g = build_grid(3, 4.0, 257);
  WeightSpec w;
  w.lambda = 0.5;
  PLapSolution direct = solve_plap(2.0, sample(w, g));
  PLapSolution wrapped = torsion(w, 2.0, g);
  CHECK(sup_diff(direct.u, wrapped.u) == 0.0);
}

TEST_CASE("polynomial bump test functions: shape properties") {
  GridPtr g = build_grid(3, 2.0, 257);
  TestFunctionSet tests = polynomial_bumps(g);
  REQUIRE(tests.size() == 20);
  for (std::size_t j = 0; j < tests.size(); ++j) {
    CAPTURE(j);
    CHECK(tests.phi(j, 2.0) == 0.0);
    CHECK(std::abs(tests.dphi(j, 2.0)) < 1e-14);
    CHECK(std::abs(tests.dphi(j, 0.0)) < 1e-14);
    double sup = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      double r = 2.0 * i / 2000.0;
      double v = tests.phi(j, r);
      CHECK(v >= 0.0);
      sup = std::max(sup, v);
    }
    CHECK(sup == doctest::Approx(1.0).epsilon(1e-4));
    // sampled tables agree with the analytic evaluators
    for (std::size_t i = 0; i < g->size(); ++i)
      CHECK(tests.phi_nodes[j][i] == tests.phi(j, g->nodes[i]));
  }
}

TEST_CASE("weak residual vanishes on closed-form pairs") {
  GridPtr g = build_grid(3, 1.0, 1025);
  TestFunctionSet tests = polynomial_bumps(g);
  RadialField h = constant_field(g, 1.0);
  for (double p : {1.5, 2.0, 3.0}) {
    PLapSolution sol = solve_plap(p, h, Tail::zero);
    std::vector<double> res = weak_residual(sol.u, h, p, tests);
    CAPTURE(p);
    CHECK(max_abs(res) < 1e-10);
  }
}

TEST_CASE("weak residual is zero for the zero pair") {
  GridPtr g = build_grid(3, 1.0, 129);
  TestFunctionSet tests = polynomial_bumps(g);
  RadialField z = constant_field(g, 0.0);
  std::vector<double> res = weak_residual(z, z, 2.0, tests);
  CHECK(max_abs(res) == 0.0);
}

TEST_CASE("weak residual of a solve stays below 1e-6 at production resolution") {
  GridPtr g = build_grid(3, 8.0, 4097);
  TestFunctionSet tests = polynomial_bumps(g);
  RadialField h = sample_field(g, [](double r) { return std::exp(-r * r); });
  for (double p : {1.8, 2.0, 2.4}) {
    PLapSolution sol = solve_plap(p, h);
    std::vector<double> res = weak_residual(sol.u, h, p, tests);
    CAPTURE(p);
    CHECK(max_abs(res) < 1e-6);
  }
}

TEST_CASE("weak residual detects a corrupted solution") {
  GridPtr g = build_grid(3, 8.0, 1025);
  TestFunctionSet tests = polynomial_bumps(g);
  RadialField h = sample_field(g, [](double r) { return std::exp(-r * r); });
  PLapSolution sol = solve_plap(2.0, h);
  double clean = max_abs(weak_residual(sol.u, h, 2.0, tests));
  RadialField bad = sol.u;
  for (std::size_t i = 0; i < bad.size(); ++i)
    bad.values[i] += 1e-3 * std::sin(10.0 * g->nodes[i]);
  double dirty = max_abs(weak_residual(bad, h, 2.0, tests));
  CHECK(dirty > 1e-4);
  CHECK(dirty > 100.0 * clean);
}

TEST_CASE("weak residual decreases at second order under refinement") {
  auto rhs = [](double r) { return std::exp(-0.5 * r * r); };
  double coarse = 0.0;
  for (std::size_t nodes : {1025u, 2049u}) {
    GridPtr g = build_grid(3, 8.0, nodes);
    TestFunctionSet tests = polynomial_bumps(g);
    PLapSolution sol = solve_plap(2.2, sample_field(g, rhs));
    double r = max_abs(weak_residual(sol.u, sample_field(g, rhs), 2.2, tests));
    if (coarse > 0.0) CHECK(coarse / r >= 2.5);
    coarse = r;
  }
}

TEST_CASE("solver runtime stays comfortably interactive") {
  GridPtr g = build_grid(3, 1.0, 4097);
  RadialField h = constant_field(g, 1.0);
  auto t0 = std::chrono::steady_clock::now();
  for (double p : {1.5, 2.0, 3.0}) solve_plap(p, h, Tail::zero);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 1.0);
}
