#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace singlap {

enum class Grading { uniform, geometric };

/// Radial mesh on [0, r_max] for dimension N: nodes r_0 = 0 < r_1 < ... < r_{n-1} = r_max.
/// Geometric grading grows the cell width by `ratio` per cell away from the origin, so
/// ratio > 1 clusters nodes where the singular nonlinearities act.
struct RadialGrid {
  int N = 3;
  double r_max = 1.0;
  std::vector<double> nodes;
  Grading grading = Grading::uniform;
  double ratio = 1.0;

  std::size_t size() const { return nodes.size(); }
  std::size_t cells() const { return nodes.size() - 1; }

  /// Surface area of the unit (N-1)-sphere: 2 pi^{N/2} / Gamma(N/2).
  double sphere_area() const;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Grid factory. Guards: N >= 3, r_max > 0, at least 16 nodes, ratio > 0.
GridPtr build_grid(int N, double r_max, std::size_t n_nodes,
                   Grading grading = Grading::uniform, double ratio = 1.0);

/// Factory from an explicit node vector (must start at 0, strictly increase).
/// No minimum node count: intended for unit tests and special layouts.
GridPtr grid_from_nodes(int N, std::vector<double> nodes);

namespace detail {
/// build_grid with the minimum-node guard disabled (test helper).
GridPtr build_grid_unchecked(int N, double r_max, std::size_t n_nodes,
                             Grading grading = Grading::uniform, double ratio = 1.0);
}  // namespace detail

/// Nodal samples of a radial function on a shared grid. Fields are immutable by
/// convention: operations return new fields instead of mutating in place.
struct RadialField {
  GridPtr grid;
  std::vector<double> values;

  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }
};

RadialField sample_field(const GridPtr& g, const std::function<double(double)>& f);
RadialField constant_field(const GridPtr& g, double c);

/// omega_{N-1} * int_0^{r_max} f(r) r^{N-1} dr, composite trapezoid on the grid nodes.
double integrate(const RadialField& f);

/// ( integrate(|f|^q) )^{1/q}, q >= 1.
double lq_norm(const RadialField& f, double q);

/// Gradient seminorm ( omega_{N-1} * sum_cells |df|^p c^{N-1} dc )^{1/p} with midpoint
/// difference quotients df at cell centers c; requires p > 1.
double grad_seminorm(const RadialField& f, double p);

/// Lebesgue measure of the superlevel set { x in R^N : f(|x|) > k }. Level crossings
/// inside a cell are located by linear interpolation between the two nodal values.
double superlevel_measure(const RadialField& f, double k);

}  // namespace singlap
