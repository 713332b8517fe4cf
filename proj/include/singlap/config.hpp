#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "singlap/exponents.hpp"
#include "singlap/grid.hpp"
#include "singlap/weights.hpp"

namespace singlap {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  double theta = 1.0;
  double tol = 1e-8;
  std::size_t max_iter = 200;
  std::vector<double> eps_schedule;  // empty: halving ladder 1/4 .. 1/128
  double residual_tol = 1e-6;
};

struct BoundsOptions {
  double xi1 = std::numeric_limits<double>::quiet_NaN();  // NaN: window midpoint
  double xi2 = std::numeric_limits<double>::quiet_NaN();
  double kappa0 = 0.0;
  double tail_tol = 1e-8;
};

struct OutputOptions {
  std::string dir = ".";
  std::vector<std::string> formats = {"json", "csv", "svg"};
};

struct RunConfig {
  ExponentConfig exponents;
  WeightSpec a1, a2;
  int grid_N = 0;  // resolved: [grid] N when present, else [exponents] N
  double r_max = 0;
  std::size_t nodes = 0;
  Grading grading = Grading::uniform;
  double ratio = 1.0;
  SolverOptions solver;
  BoundsOptions bounds;
  OutputOptions output;
  std::string config_hash;  // of the raw config bytes
};

/// Sectioned key = value text: [exponents] [grid] [weight.a1] [weight.a2] are
/// required, [solver] [bounds] [output] optional. '#' or ';' start comments.
/// Numeric values accept fraction literals like -1/2. Unknown sections or keys
/// are rejected. Throws ParseError with a line reference on any defect.
RunConfig parse_config(const std::string& text);

/// parse_config on the file's bytes; I/O failures surface as ParseError too.
RunConfig load_config(const std::string& path);

/// 64-bit FNV-1a of a byte string, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace singlap
