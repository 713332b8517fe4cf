#include "singlap/plap.hpp"

#include <cmath>
#include <stdexcept>

namespace singlap {

double phi_p(double s, double p) {
  if (s == 0.0) return 0.0;
  return std::pow(std::abs(s), p - 2.0) * s;
}

double phi_p_inv(double t, double p) {
  if (t == 0.0) return 0.0;
  double m = std::pow(std::abs(t), 1.0 / (p - 1.0));
  return t > 0 ? m : -m;
}

namespace {

// int_a^b s^mu * linear(s) ds with linear(a) = fa, linear(b) = fb, exact in the
// power moments; the two hat-function weights are nonnegative for mu > -1.
inline void power_weights(double a, double b, double mu, double& wa, double& wb) {
  double h = b - a;
  double j0 = (std::pow(b, mu + 1.0) - std::pow(a, mu + 1.0)) / (mu + 1.0);
  double j1 = (std::pow(b, mu + 2.0) - std::pow(a, mu + 2.0)) / (mu + 2.0);
  wa = (b * j0 - j1) / h;
  wb = (j1 - a * j0) / h;
}

std::vector<double> accumulate_flux(const RadialField& rhs) {
  const GridPtr& g = rhs.grid;
  std::vector<double> Q(g->size(), 0.0);
  for (std::size_t i = 0; i + 1 < g->size(); ++i) {
    double wa, wb;
    power_weights(g->nodes[i], g->nodes[i + 1], static_cast<double>(g->N - 1), wa, wb);
    Q[i + 1] = Q[i] + wa * rhs.values[i] + wb * rhs.values[i + 1];
  }
  return Q;
}

// 4-point Gauss-Legendre on [-1, 1]
constexpr double kGx[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                           0.8611363115940526};
constexpr double kGw[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                           0.3478548451374538};

}  // namespace

PLapSolution solve_plap(double p, const RadialField& rhs, Tail tail) {
  if (!(p > 1.0)) throw std::invalid_argument("solve_plap: p must exceed 1");
  const GridPtr& g = rhs.grid;
  if (!g) throw std::invalid_argument("solve_plap: rhs has no grid");
  const std::size_t n = g->size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rhs.values[i] < 0.0) throw std::domain_error("solve_plap: rhs negative at a node");
    if (!std::isfinite(rhs.values[i])) throw std::domain_error("solve_plap: rhs not finite");
  }

  PLapSolution out;
  out.Q = accumulate_flux(rhs);

  // Flux integrand split as s^mu * W(s): W is smooth through the origin while the
  // s^mu factor carries the kink, absorbed exactly by the moment weights below.
  const double mu = 1.0 / (p - 1.0);
  std::vector<double> W(n);
  W[0] = phi_p_inv(rhs.values[0] / g->N, p);
  for (std::size_t i = 1; i < n; ++i) {
    double s = g->nodes[i];
    W[i] = phi_p_inv(out.Q[i] / std::pow(s, g->N), p);
  }

  if (tail == Tail::matched) {
    if (!(p < g->N)) throw std::domain_error("solve_plap: matched tail needs p < N");
    double R = g->r_max;
    out.c_tail = R * std::pow(R, mu) * W[n - 1] * (p - 1.0) / (g->N - p);
  }

  out.u.grid = g;
  out.u.values.assign(n, 0.0);
  out.u.values[n - 1] = out.c_tail;
  for (std::size_t i = n - 1; i-- > 0;) {
    double wa, wb;
    power_weights(g->nodes[i], g->nodes[i + 1], mu, wa, wb);
    out.u.values[i] = out.u.values[i + 1] + wa * W[i] + wb * W[i + 1];
  }
  return out;
}

PLapSolution torsion(const WeightSpec& w, double p, const GridPtr& g, Tail tail) {
  return solve_plap(p, sample(w, g), tail);
}

double TestFunctionSet::phi(std::size_t j, double r) const {
  const Member& mb = members[j];
  double x = r / grid->r_max;
  double one = 1.0 - x * x;
  if (one <= 0.0) return 0.0;
  return std::pow(x, 2.0 * mb.k) * std::pow(one, mb.m) / mb.sup;
}

double TestFunctionSet::dphi(std::size_t j, double r) const {
  const Member& mb = members[j];
  double R = grid->r_max;
  double x = r / R;
  double one = 1.0 - x * x;
  if (one <= 0.0) return 0.0;
  double d = -2.0 * mb.m * std::pow(x, 2.0 * mb.k + 1.0) * std::pow(one, mb.m - 1.0);
  if (mb.k > 0.0) d += 2.0 * mb.k * std::pow(x, 2.0 * mb.k - 1.0) * std::pow(one, mb.m);
  return d / (R * mb.sup);
}

TestFunctionSet polynomial_bumps(const GridPtr& g, std::size_t count) {
  TestFunctionSet out;
  out.grid = g;
  const std::size_t n = g->size();
  for (std::size_t j = 0; j < count; ++j) {
    TestFunctionSet::Member mb;
    mb.m = 3.0 + static_cast<double>(j % 10);
    mb.k = static_cast<double>(j / 10);
    // sup of x^{2k}(1-x^2)^m on [0,1] sits at x^2 = k/(k+m)
    double xm2 = mb.k / (mb.k + mb.m);
    mb.sup = std::pow(xm2, mb.k) * std::pow(1.0 - xm2, mb.m);
    out.members.push_back(mb);

    std::size_t idx = out.members.size() - 1;
    std::vector<double> phi(n), dphi(n - 1);
    for (std::size_t i = 0; i < n; ++i) phi[i] = out.phi(idx, g->nodes[i]);
    for (std::size_t i = 0; i + 1 < n; ++i)
      dphi[i] = out.dphi(idx, 0.5 * (g->nodes[i] + g->nodes[i + 1]));
    out.phi_nodes.push_back(std::move(phi));
    out.dphi_mid.push_back(std::move(dphi));
  }
  return out;
}

std::vector<double> weak_residual(const RadialField& u, const RadialField& rhs, double p,
                                  const TestFunctionSet& tests) {
  const GridPtr& g = u.grid;
  if (!g || rhs.grid != g || tests.grid != g)
    throw std::invalid_argument("weak_residual: grid mismatch");
  if (!(p > 1.0)) throw std::invalid_argument("weak_residual: p must exceed 1");
  const std::size_t n = g->size();
  const double mu = 1.0 / (p - 1.0);

  // Read the flux profile W off the nodal solution: the outermost value comes
  // from the accumulated right-hand side, the rest from inverting the moment
  // quadrature of the cell increments u_i - u_{i+1} = int_cell s^mu W.
  std::vector<double> Q = accumulate_flux(rhs);
  std::vector<double> W(n);
  W[n - 1] = phi_p_inv(Q[n - 1] / std::pow(g->r_max, g->N), p);
  for (std::size_t i = n - 1; i-- > 0;) {
    double wa, wb;
    power_weights(g->nodes[i], g->nodes[i + 1], mu, wa, wb);
    W[i] = (u.values[i] - u.values[i + 1] - wb * W[i + 1]) / wa;
  }

  // The pairing integrates the flux G(r) = r^{N-1} phi_p(u') against phi'.
  // G is known at the nodes through W (so it genuinely depends on u), and the
  // equation itself supplies its slope there, G' = -r^{N-1} h; a cubic Hermite
  // between nodes keeps the quadrature defect at fourth order instead of the
  // second order a broken-line flux would give.
  std::vector<double> G(n), dG(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = g->nodes[i];
    G[i] = -std::pow(r, g->N) * phi_p(W[i], p);
    dG[i] = -std::pow(r, g->N - 1) * rhs.values[i];
  }

  std::vector<double> res(tests.size(), 0.0);
  const double omega = g->sphere_area();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double a = g->nodes[i], b = g->nodes[i + 1];
    double mid = 0.5 * (a + b), half = 0.5 * (b - a), dr = b - a;
    for (int q = 0; q < 4; ++q) {
      double r = mid + half * kGx[q];
      double wq = kGw[q] * half;
      double t = (r - a) / dr;
      double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
      double h10 = t * (1.0 - t) * (1.0 - t);
      double h01 = t * t * (3.0 - 2.0 * t);
      double h11 = t * t * (t - 1.0);
      double Gr = h00 * G[i] + h10 * dr * dG[i] + h01 * G[i + 1] + h11 * dr * dG[i + 1];
      double hr = rhs.values[i] * (1.0 - t) + rhs.values[i + 1] * t;
      double rn1 = std::pow(r, g->N - 1);
      for (std::size_t j = 0; j < tests.size(); ++j) {
        res[j] += wq * (Gr * tests.dphi(j, r) - hr * tests.phi(j, r) * rn1);
      }
    }
  }
  for (double& v : res) v *= omega;
  return res;
}

}  // namespace singlap
