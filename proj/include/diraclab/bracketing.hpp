#pragma once

// Dirichlet bracketing on one-dimensional reductions: cutting [0, t] into
// pieces and imposing Dirichlet conditions at the cuts can only raise the
// eigenvalues, and dropping pieces raises them further.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "diraclab/ode_spectrum.hpp"

namespace diraclab {

struct BracketRow {
  int j = 0;
  double lambda = 0.0;     // full problem
  double mu = 0.0;         // merged piece spectrum
  double margin = 0.0;     // mu - lambda
  double tolerance = 0.0;  // combined error estimates
  int piece = 0;           // piece that supplied mu
};

struct BracketReport {
  double t = 0.0;
  std::vector<double> cuts;
  std::vector<int> subset;
  int J = 0;
  int mesh = 0;
  std::optional<std::uint64_t> seed;
  std::vector<BracketRow> rows;
  bool pass = true;
};

// Pieces are [0,c1], [c1,c2], ..., [ck,t], indexed from 0. Each piece is
// solved on max(64, N * length / t) interior points (rounded up to even).
BracketReport bracketing_check(const TransformedProblem& tp, const std::vector<double>& cuts,
                               const std::vector<int>& subset, int J, int mesh = kDefaultTransformedMesh);

// a0 + sum_k cos_k cos(2 pi k u / period) + sin_k sin(2 pi k u / period).
struct TrigPotential {
  double a0 = 0.0;
  std::vector<double> cos;
  std::vector<double> sin;
  double period = 1.0;

  double operator()(double u) const;
};

struct BracketCase {
  TrigPotential potential;
  double t = 1.0;
  std::vector<double> cuts;
  std::vector<int> subset;
};

// t in [1, 4], three harmonics with coefficients in [-2, 2], one to three
// cuts at least 0.05 t apart, and a random nonempty subset of pieces.
BracketCase random_bracket_case(std::mt19937_64& rng);

std::vector<BracketReport> random_bracketing_suite(std::uint64_t seed, int cases, int J,
                                                   int mesh = kDefaultTransformedMesh);

}  // namespace diraclab
