#pragma once

#include <string>
#include <vector>

#include "diraclab/ode_spectrum.hpp"
#include "diraclab/transverse_spectrum.hpp"

namespace diraclab {

// One eigenvalue of the cylinder spectrum with the branch it came from.
struct EigenRecord {
  double value = 0.0;
  double error_estimate = 0.0;
  int branch_id = 0;   // index of the transverse entry
  double mu0 = 0.0;    // transverse eigenvalue of that entry at u = 0
  int index = 0;       // position within the branch spectrum
  int copy = 0;        // 0 .. multiplicity-1
  int cluster = 0;     // records within 1e-9 of each other share a cluster
};

struct AssembledSpectrum {
  // Lowest K eigenvalues counted with transverse multiplicity, ascending;
  // ties by branch_id, index, copy.
  std::vector<EigenRecord> records;
  int mesh_size = 0;
  int branches_solved = 0;
  int branches_discarded = 0;
  // Lower bound on eigenvalues of branches missing from a truncated input,
  // minus the K-th value; +inf when the input is complete.
  double truncation_margin = 0.0;
  std::vector<std::string> warnings;

  SpectrumResult as_result() const;
};

inline constexpr double kClusterTolerance = 1e-9;

// Dirichlet spectrum of the Dirac Laplacian on the warped cylinder [0,t] x N
// as the union of branch spectra, one branch per transverse entry with
// potential V = mu(u)^2 - mu'(u). A branch is skipped once K values are
// merged and min V exceeds the current K-th value. Throws
// TruncationRiskError when eigenvalues absent from a truncated transverse
// spectrum could reach the K-th value.
AssembledSpectrum assemble_spectrum(const WarpingProfile& profile, const TransverseSpectrum& spec, double t, int m,
                                    int K, int mesh = kDefaultTransformedMesh);

// pi^2 / t^2: first Dirichlet eigenvalue of the harmonic branch.
double lowest_eigenvalue_bound(const TransverseSpectrum& spec, double t);

}  // namespace diraclab
