#include "singlap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace singlap {

double RadialGrid::sphere_area() const {
  return 2.0 * std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N);
}

namespace {

GridPtr make_grid(int N, double r_max, std::size_t n_nodes, Grading grading, double ratio) {
  if (N < 3) throw std::invalid_argument("grid: dimension N must be >= 3");
  if (!(r_max > 0.0)) throw std::invalid_argument("grid: r_max must be positive");
  if (n_nodes < 2) throw std::invalid_argument("grid: need at least 2 nodes");
  if (!(ratio > 0.0)) throw std::invalid_argument("grid: grading ratio must be positive");

  auto g = std::make_shared<RadialGrid>();
  g->N = N;
  g->r_max = r_max;
  g->grading = grading;
  g->ratio = (grading == Grading::uniform) ? 1.0 : ratio;
  g->nodes.resize(n_nodes);

  const std::size_t m = n_nodes - 1;  // cell count
  if (grading == Grading::uniform || ratio == 1.0) {
    for (std::size_t i = 0; i < n_nodes; ++i)
      g->nodes[i] = r_max * static_cast<double>(i) / static_cast<double>(m);
  } else {
    // cell widths h_0 * ratio^i, scaled so they sum to r_max
    const double h0 = r_max * (ratio - 1.0) / (std::pow(ratio, static_cast<double>(m)) - 1.0);
    double r = 0.0, h = h0;
    g->nodes[0] = 0.0;
    for (std::size_t i = 1; i < n_nodes; ++i) {
      r += h;
      h *= ratio;
      g->nodes[i] = r;
    }
  }
  g->nodes.front() = 0.0;
  g->nodes.back() = r_max;
  return g;
}

}  // namespace

GridPtr build_grid(int N, double r_max, std::size_t n_nodes, Grading grading, double ratio) {
  if (n_nodes < 16) throw std::invalid_argument("grid: fewer than 16 nodes");
  return make_grid(N, r_max, n_nodes, grading, ratio);
}

namespace detail {
GridPtr build_grid_unchecked(int N, double r_max, std::size_t n_nodes, Grading grading,
                             double ratio) {
  return make_grid(N, r_max, n_nodes, grading, ratio);
}
}  // namespace detail

GridPtr grid_from_nodes(int N, std::vector<double> nodes) {
  if (N < 3) throw std::invalid_argument("grid: dimension N must be >= 3");
  if (nodes.size() < 2) throw std::invalid_argument("grid: need at least 2 nodes");
  if (nodes.front() != 0.0) throw std::invalid_argument("grid: first node must be 0");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1]))
      throw std::invalid_argument("grid: nodes must strictly increase");

  auto g = std::make_shared<RadialGrid>();
  g->N = N;
  g->r_max = nodes.back();
  g->grading = Grading::uniform;
  g->ratio = 1.0;
  g->nodes = std::move(nodes);
  return g;
}

RadialField sample_field(const GridPtr& g, const std::function<double(double)>& f) {
  RadialField out;
  out.grid = g;
  out.values.resize(g->size());
  for (std::size_t i = 0; i < g->size(); ++i) out.values[i] = f(g->nodes[i]);
  return out;
}

RadialField constant_field(const GridPtr& g, double c) {
  RadialField out;
  out.grid = g;
  out.values.assign(g->size(), c);
  return out;
}

double integrate(const RadialField& f) {
  const RadialGrid& g = *f.grid;
  const int nm1 = g.N - 1;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double a = g.nodes[i], b = g.nodes[i + 1];
    const double ga = f.values[i] * std::pow(a, nm1);
    const double gb = f.values[i + 1] * std::pow(b, nm1);
    acc += 0.5 * (b - a) * (ga + gb);
  }
  return g.sphere_area() * acc;
}

double lq_norm(const RadialField& f, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("lq_norm: q must be >= 1");
  RadialField powed;
  powed.grid = f.grid;
  powed.values.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) powed.values[i] = std::pow(std::abs(f.values[i]), q);
  return std::pow(integrate(powed), 1.0 / q);
}

double grad_seminorm(const RadialField& f, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("grad_seminorm: p must be > 1");
  const RadialGrid& g = *f.grid;
  const int nm1 = g.N - 1;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double a = g.nodes[i], b = g.nodes[i + 1];
    const double h = b - a;
    const double df = (f.values[i + 1] - f.values[i]) / h;
    const double c = 0.5 * (a + b);
    acc += std::pow(std::abs(df), p) * std::pow(c, nm1) * h;
  }
  return std::pow(g.sphere_area() * acc, 1.0 / p);
}

double superlevel_measure(const RadialField& f, double k) {
  const RadialGrid& g = *f.grid;
  const double coeff = g.sphere_area() / g.N;  // measure of shell [a,b] = coeff*(b^N - a^N)
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double a = g.nodes[i], b = g.nodes[i + 1];
    const double fa = f.values[i], fb = f.values[i + 1];
    const bool above_a = fa > k, above_b = fb > k;
    double lo, hi;
    if (above_a && above_b) {
      lo = a;
      hi = b;
    } else if (!above_a && !above_b) {
      continue;
    } else {
      const double t = (k - fa) / (fb - fa);  // crossing in (0,1) since one side is above
      const double rc = a + t * (b - a);
      lo = above_a ? a : rc;
      hi = above_a ? rc : b;
    }
    acc += std::pow(hi, g.N) - std::pow(lo, g.N);
  }
  return coeff * acc;
}

}  // namespace singlap
