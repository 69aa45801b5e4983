#pragma once

// One-dimensional Dirichlet eigenproblems on [0, t] produced by a single
// transverse branch of a warped cylinder:
//
//   direct form       -a'' + p a' + q a = lambda a
//     p = (m-1) H,  q = mu^2 - mu' + (m-1)/2 H' - (m-1)^2/4 H^2
//   transformed form  -b'' + V b = lambda b,   V = mu^2 - mu'
//
// related by a = rho^{-(m-1)/2} b. Both are discretized with second-order
// central differences and improved by one Richardson step.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "diraclab/warp_geometry.hpp"

namespace diraclab {

using RealFunction = std::function<double(double)>;

// Branch generated by a transverse eigenvalue mu0 = mu(0) on a warped profile.
struct BranchSource {
  WarpingProfile profile;
  double mu0 = 0.0;
};

struct BranchProblem {
  double t = 1.0;
  int m = 2;
  RealFunction p;
  RealFunction q;
  int branch_id = 0;
  std::optional<BranchSource> source;
};

struct TransformedProblem {
  double t = 1.0;
  RealFunction V;
  // b = weight * a; absent when the problem was not produced by a transform.
  RealFunction weight;
  int branch_id = 0;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;      // ascending, Richardson-extrapolated
  std::vector<double> error_estimates;  // Richardson correction per eigenvalue
  int mesh_size = 0;                    // interior points of the fine grid
};

inline constexpr int kDefaultTransformedMesh = 4096;
inline constexpr int kDefaultDirectMesh = 384;
inline constexpr double kBisectionTolerance = 1e-10;

// mu(u) = mu0 rho(0)/rho(u) and mu'(u) = mu(u) H(u).
double branch_mu(const WarpingProfile& profile, double mu0, double u);
double branch_mu_prime(const WarpingProfile& profile, double mu0, double u);

BranchProblem make_branch_problem(const WarpingProfile& profile, double mu0, int m, double t, int branch_id = 0);
TransformedProblem make_transformed_problem(const WarpingProfile& profile, double mu0, double t, int branch_id = 0);

TransformedProblem liouville_transform(const BranchProblem& bp);

// Lowest K eigenvalues of -b'' + V b on N interior points (h = t/(N+1)) and
// on N/2 interior points for the Richardson step.
SpectrumResult solve_transformed(const TransformedProblem& tp, int K, int N = kDefaultTransformedMesh);

// Lowest K eigenvalues of the non-symmetric direct form by dense eigensolve.
// Intended as an independent check on solve_transformed, so keep N modest.
SpectrumResult solve_direct(const BranchProblem& bp, int K, int N = kDefaultDirectMesh);

// Symmetric tridiagonal matrix with Sturm-sequence bisection.
class SymmetricTridiagonal {
 public:
  SymmetricTridiagonal(std::vector<double> diag, std::vector<double> off);

  int size() const { return static_cast<int>(diag_.size()); }
  // Number of eigenvalues strictly below x.
  int count_below(double x) const;
  // k-th smallest eigenvalue (0-based).
  double eigenvalue(int k, double tol = kBisectionTolerance) const;
  std::vector<double> lowest(int K, double tol = kBisectionTolerance) const;

 private:
  std::vector<double> diag_;
  std::vector<double> off_;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

// Second-order Dirichlet discretization of -d^2/du^2 + V on [0, t].
SymmetricTridiagonal discretize_transformed(const RealFunction& V, double t, int interior_points);

}  // namespace diraclab
