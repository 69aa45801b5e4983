#pragma once

// Neck-stretching sweep: Dirichlet upper bound pi^2/t^2 against the
// assembled cylinder spectrum, volumes of the rescaled family h^t, and the
// Sobolev norms that must stay bounded as t grows.

#include <string>
#include <vector>

#include "diraclab/cylinder_assembler.hpp"
#include "diraclab/warp_geometry.hpp"

namespace diraclab {

inline constexpr double kStretchLambdaTolerance = 1e-6;
inline constexpr double kHkVariationLimit = 1.5;
inline constexpr double kNormalizedVolumeTolerance = 1e-12;

struct StretchOptions {
  NeckParameters params;  // params.m is the manifold dimension
  int K = 1;
  int mesh = kDefaultTransformedMesh;
  int panels = kDefaultSimpsonPanels;
  std::vector<int> sobolev_orders{0, 1, 2};
  // Largest allowed max/min of each H^k norm over the sweep. The norms
  // settle as t grows, so sweeps reaching down to t ~ 1 need a looser limit.
  double hk_variation_limit = kHkVariationLimit;
};

struct StretchRow {
  double t = 0.0;
  double bound = 0.0;         // pi^2 / t^2
  double lambda0 = 0.0;       // assembled cylinder
  double lambda0_error = 0.0;
  double margin = 0.0;        // bound - lambda0
  bool harmonic_lowest = false;
  double vol_U1 = 0.0;        // pieces of h^t
  double vol_Z = 0.0;
  double vol_U2 = 0.0;
  double vol_total = 0.0;     // h^t including blocks
  double vol_normalized = 0.0;
  std::vector<double> hk_norm_sq;  // h^t, one per sobolev order
};

struct StretchTable {
  std::vector<StretchRow> rows;
  std::vector<int> sobolev_orders;
  double volume_lower = 0.0;  // constants bounding vol(h^t)
  double volume_upper = 0.0;
  std::vector<double> hk_variation;  // max/min over the sweep, per order
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

StretchTable run_stretch_sweep(const WarpingProfile& profile, const TransverseSpectrum& spec,
                               const std::vector<double>& t_values, const StretchOptions& options = {});

struct GrowthFit {
  int k = 0;
  std::vector<double> t_values;
  std::vector<double> norms_sq;
  double slope = 0.0;
  double intercept = 0.0;
  double limit = 0.0;  // max(4, 2k) + 0.2
  bool pass = false;
};

// Least-squares slope of log |pullback_cylinder(profile, t)|^2_{H^k} against
// log t. Needs at least four t-values spanning a factor of 8.
GrowthFit sobolev_growth_fit(const WarpingProfile& profile, int m, int k, const std::vector<double>& t_values,
                             double cross_section_volume = 1.0, int panels = kDefaultSimpsonPanels);

}  // namespace diraclab
