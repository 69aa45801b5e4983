#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diraclab/warp_geometry.hpp"

namespace diraclab {

struct SpectrumEntry {
  double mu = 0.0;
  int multiplicity = 1;
};

// Cross-section Dirac eigenvalues mu_j(0) with multiplicities.
//
// `gap` describes truncation: every eigenvalue missing from `entries` has
// |mu| >= gap. An absent gap means the list is complete.
class TransverseSpectrum {
 public:
  // Sorts and merges equal values. A declared-symmetric spectrum must pair
  // every mu != 0 with -mu at equal multiplicity.
  TransverseSpectrum(std::vector<SpectrumEntry> entries, bool symmetric, std::optional<double> gap = {});

  const std::vector<SpectrumEntry>& entries() const { return entries_; }
  bool symmetric() const { return symmetric_; }
  bool has_harmonic() const;
  std::optional<double> gap() const { return gap_; }
  double max_abs_mu() const;
  int total_multiplicity() const;
  // Non-fatal findings, e.g. an asymmetric spectrum.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<SpectrumEntry> entries_;
  bool symmetric_;
  std::optional<double> gap_;
  std::vector<std::string> warnings_;
};

// Dirac spectrum of a circle of length L with spin twist delta in {0, 1/2}:
// all 2*pi*(n + delta)/L with |n + delta| <= J + delta, each simple.
TransverseSpectrum circle_spectrum(double L, double delta, int J);

// Eigenvalues of the central-difference discretization of i d/ds on an
// N-point circle of circumference L with boundary twist exp(2*pi*i*delta),
// ascending. Dense Hermitian eigensolve; N >= 16 and even.
std::vector<double> discrete_circle_oracle(double L, double delta, int N);

// Spectrum of the slice N_u: every mu multiplied by rho(0)/rho(u).
TransverseSpectrum scale_to_slice(const TransverseSpectrum& spec, const WarpingProfile& profile, double u);

}  // namespace diraclab
