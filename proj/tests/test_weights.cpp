#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "singlap/weights.hpp"

using namespace singlap;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("gaussian closed-form norms") {
  WeightSpec w;  // defaults: gaussian, A = 1, lambda = 1
  auto n1 = analytic_lq_norm(w, 3, 1.0);
  REQUIRE(n1.has_value());
  CHECK(*n1 == doctest::Approx(std::pow(kPi, 1.5)).epsilon(1e-13));
  auto n2 = analytic_lq_norm(w, 3, 2.0);
  REQUIRE(n2.has_value());
  CHECK(*n2 == doctest::Approx(std::pow(kPi / 2.0, 0.75)).epsilon(1e-13));

  w.amplitude = 2.5;
  w.lambda = 3.0;
  auto n3 = analytic_lq_norm(w, 4, 2.5);
  REQUIRE(n3.has_value());
  CHECK(*n3 == doctest::Approx(2.5 * std::pow(kPi / 7.5, 4.0 / 5.0)).epsilon(1e-13));
}

TEST_CASE("bump closed-form norm: hand case") {
  // A = 1, rho0 = 1, k = 1, q = 1, N = 3: 4 pi (1/3 - 1/5) = 8 pi / 15
  WeightSpec w;
  w.family = WeightFamily::bump;
  w.rho0 = 1.0;
  w.k = 1.0;
  auto n = analytic_lq_norm(w, 3, 1.0);
  REQUIRE(n.has_value());
  CHECK(*n == doctest::Approx(8.0 * kPi / 15.0).epsilon(1e-13));
}

TEST_CASE("powerdecay closed-form norm and divergence") {
  WeightSpec w;
  w.family = WeightFamily::powerdecay;
  w.sigma = 4.0;
  // q = 1, N = 3: 4 pi B(3, 1) = 4 pi / 3
  auto n = analytic_lq_norm(w, 3, 1.0);
  REQUIRE(n.has_value());
  CHECK(*n == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-12));

  w.sigma = 2.5;  // q sigma = 2.5 < N: not integrable
  CHECK_FALSE(analytic_lq_norm(w, 3, 1.0).has_value());
  CHECK(tail_power_bound(w, 3, 1.0, 8.0) == std::numeric_limits<double>::infinity());
}

TEST_CASE("closed forms agree with grid quadrature") {
  struct Case {
    WeightSpec w;
    double q;
    double r_max;
  };
  WeightSpec gauss;
  WeightSpec bump;
  bump.family = WeightFamily::bump;
  bump.amplitude = 1.5;
  bump.rho0 = 2.0;
  bump.k = 2.0;
  WeightSpec pd;
  pd.family = WeightFamily::powerdecay;
  pd.sigma = 6.0;
  for (const Case& c : {Case{gauss, 2.0, 8.0}, Case{bump, 3.0, 4.0}, Case{pd, 2.0, 60.0}}) {
    GridPtr g = build_grid(3, c.r_max, 8193);
    double measured = lq_norm(sample(c.w, g), c.q);
    auto exact = analytic_lq_norm(c.w, 3, c.q);
    REQUIRE(exact.has_value());
    CHECK(measured == doctest::Approx(*exact).epsilon(1e-5));
  }
}

TEST_CASE("tail bounds dominate the truncated mass") {
  WeightSpec w;  // gaussian
  GridPtr g = build_grid(3, 4.0, 2049);
  double inside = std::pow(lq_norm(sample(w, g), 2.0), 2.0);
  auto total = analytic_lq_norm(w, 3, 2.0);
  REQUIRE(total.has_value());
  double outside = std::pow(*total, 2.0) - inside;
  double bound = tail_power_bound(w, 3, 2.0, 4.0);
  CHECK(outside <= bound * (1.0 + 1e-6) + 1e-12);
  CHECK(bound < 1e-4);  // and the bound is itself small at this radius
}

TEST_CASE("weight_norms wires the derived exponents") {
  ExponentConfig cfg;
  DerivedExponents dex = derive_exponents(cfg);
  GridPtr g = build_grid(3, 8.0, 1025);
  WeightSpec w;
  WeightNorms n = weight_norms(w, cfg, dex, 1, g);
  CHECK(n.q_zeta == doctest::Approx(4.0));
  CHECK(n.q_gamma == doctest::Approx(6.0 / 5.0));
  CHECK(n.q_delta == doctest::Approx(12.0 / 11.0));
  CHECK(n.q_xi == doctest::Approx(2.75));  // window ]1.5, 4[ midpoint
  CHECK(n.q_conj == doctest::Approx(1.2));
  REQUIRE(n.analytic_zeta.has_value());
  CHECK(n.l_zeta == doctest::Approx(*n.analytic_zeta).epsilon(1e-4));

  WeightNorms n2 = weight_norms(w, cfg, dex, 1, g, 2.0);
  CHECK(n2.q_xi == doctest::Approx(2.0));
  CHECK_THROWS_AS(weight_norms(w, cfg, dex, 3, g), std::invalid_argument);
}

TEST_CASE("check_Ha accepts the reference gaussian") {
  ExponentConfig cfg;
  GridPtr g = build_grid(3, 8.0, 1025);
  WeightSpec w;
  HaReport rep = check_Ha(w, cfg, 1, g);
  CHECK(rep.report.overall);
  for (const Check& c : rep.report.checks) {
    CAPTURE(c.name);
    CHECK(c.satisfied);
  }
}

TEST_CASE("check_Ha accepts a compact bump with exterior zeros") {
  ExponentConfig cfg;
  GridPtr g = build_grid(3, 4.0, 1025);
  WeightSpec w;
  w.family = WeightFamily::bump;
  w.rho0 = 2.0;
  HaReport rep = check_Ha(w, cfg, 1, g);
  CHECK(rep.report.overall);
}

TEST_CASE("check_Ha rejects broken weights") {
  ExponentConfig cfg;
  GridPtr g = build_grid(3, 4.0, 513);
  WeightSpec w;
  w.amplitude = -1.0;
  CHECK_THROWS_AS(check_Ha(w, cfg, 1, g), std::domain_error);
  w.amplitude = 0.0;
  CHECK_THROWS_AS(check_Ha(w, cfg, 1, g), std::domain_error);
}

TEST_CASE("check_Ha fails a weight outside L^1") {
  ExponentConfig cfg;
  GridPtr g = build_grid(3, 8.0, 513);
  WeightSpec w;
  w.family = WeightFamily::powerdecay;
  w.sigma = 2.5;  // decays too slowly for L^1(R^3); L^zeta still fine
  HaReport rep = check_Ha(w, cfg, 1, g);
  CHECK_FALSE(rep.report.overall);
  const Check* c = rep.report.find("l1_finite");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->satisfied);
}

TEST_CASE("interpolation inequality over the exponent lattice") {
  const double lattice[10][2] = {{1.5, 2.0}, {1.5, 3.0}, {2.0, 3.0}, {2.0, 4.0}, {2.5, 4.0},
                                 {3.0, 5.0}, {1.2, 6.0}, {2.0, 6.0}, {4.0, 6.0}, {5.0, 6.0}};
  GridPtr g = build_grid(3, 8.0, 2049);
  WeightSpec gauss;
  WeightSpec bump;
  bump.family = WeightFamily::bump;
  bump.rho0 = 2.0;
  bump.k = 2.0;
  WeightSpec pd;
  pd.family = WeightFamily::powerdecay;
  pd.sigma = 4.0;
  for (const WeightSpec& w : {gauss, bump, pd}) {
    RadialField f = sample(w, g);
    for (const auto& qp : lattice) {
      InterpolationCheck chk = interpolation_check(f, qp[1], qp[0]);
      CAPTURE(qp[0]);
      CAPTURE(qp[1]);
      CHECK(chk.holds);
      CHECK(chk.lhs <= chk.rhs + 1e-8);
    }
  }
  RadialField f = sample(gauss, g);
  CHECK_THROWS_AS(interpolation_check(f, 2.0, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(interpolation_check(f, 2.0, 1.0), std::invalid_argument);
}
