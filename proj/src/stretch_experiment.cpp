#include "diraclab/stretch_experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "diraclab/error.hpp"
#include "diraclab/numerics.hpp"

namespace diraclab {

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

}  // namespace

StretchTable run_stretch_sweep(const WarpingProfile& profile, const TransverseSpectrum& spec,
                               const std::vector<double>& t_values, const StretchOptions& options) {
  if (!spec.has_harmonic())
    throw PreconditionError("stretch sweep needs a harmonic (mu = 0) transverse entry");
  if (t_values.empty()) throw InputError("stretch sweep needs at least one t value");
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    if (!(t_values[i] > 0.0)) throw InputError("t values must be positive");
    if (i > 0 && !(t_values[i] > t_values[i - 1])) throw InputError("t values must be strictly ascending");
  }
  const auto& P = options.params;
  const int m = P.m;

  StretchTable table;
  table.sobolev_orders = options.sobolev_orders;
  table.rows = parallel_map<StretchRow>(t_values.size(), [&](std::size_t i) {
    const double t = t_values[i];
    const auto prof = profile.with_domain_length(t);
    StretchRow row;
    row.t = t;
    row.bound = lowest_eigenvalue_bound(spec, t);
    const auto asm_ = assemble_spectrum(prof, spec, t, m, options.K, options.mesh);
    row.lambda0 = asm_.records.front().value;
    row.lambda0_error = asm_.records.front().error_estimate;
    row.margin = row.bound - row.lambda0;
    row.harmonic_lowest = asm_.records.front().mu0 == 0.0;

    const auto fam = build_neck_family(prof, t, CutoffSet(t), P).h;
    const double cv = fam.cross_section_volume;
    row.vol_U1 = piece_volume(fam.cylinder("U1"), m, cv, options.panels).value;
    row.vol_Z = piece_volume(fam.cylinder("Z"), m, cv, options.panels).value;
    row.vol_U2 = piece_volume(fam.cylinder("U2"), m, cv, options.panels).value;
    row.vol_total = family_volume(fam, options.panels).value;
    row.vol_normalized = family_volume(normalized(fam, options.panels), options.panels).value;
    for (int k : options.sobolev_orders) row.hk_norm_sq.push_back(sobolev_hk_norm_sq(fam, k, true, options.panels).value);
    return row;
  });

  // Volume of h^t is at least the complement block and at most the blocks
  // plus cross-section volume times R^{m-1} per collar (conformal factor
  // <= 1) plus the neck, whose volume is at most sup_t t e^{-t/2} = 2/e times
  // that (for rho <= R).
  double R = 1.0;
  const double tmax = t_values.back();
  for (int i = 0; i <= 1024; ++i) R = std::max(R, profile.rho((tmax + 1.0) * i / 1024.0));
  const double core_scale = P.core_scale_h.value_or(std::pow(profile.rho(2.0), 2));
  table.volume_lower = P.complement_volume;
  table.volume_upper = P.complement_volume + P.core_volume * std::pow(core_scale, 0.5 * m) +
                       P.cross_section_volume * std::pow(R, m - 1) * (2.0 + 2.0 / std::exp(1.0));

  auto fail = [&](std::string msg) { table.failures.push_back(std::move(msg)); };
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    if (r.lambda0 > r.bound + kStretchLambdaTolerance)
      fail("t=" + fmt(r.t) + ": assembled lambda0 " + fmt(r.lambda0) + " exceeds bound " + fmt(r.bound));
    if (r.harmonic_lowest && std::abs(r.margin) > kStretchLambdaTolerance)
      fail("t=" + fmt(r.t) + ": harmonic branch lambda0 differs from pi^2/t^2 by " + fmt(r.margin));
    if (std::abs(r.vol_normalized - 1.0) > kNormalizedVolumeTolerance)
      fail("t=" + fmt(r.t) + ": normalized volume " + fmt(r.vol_normalized));
    if (r.vol_total < table.volume_lower || r.vol_total > table.volume_upper)
      fail("t=" + fmt(r.t) + ": volume " + fmt(r.vol_total) + " outside [" + fmt(table.volume_lower) + ", " +
           fmt(table.volume_upper) + "]");
    for (std::size_t j = 0; j < i; ++j) {
      const auto& q = table.rows[j];
      if (std::abs(r.t - 2.0 * q.t) <= 1e-12 * r.t && std::abs(r.bound * 4.0 - q.bound) > 1e-14 * q.bound)
        fail("t=" + fmt(r.t) + ": bound does not quarter when t doubles");
    }
    if (i > 0) {
      const auto& p = table.rows[i - 1];
      if (!(r.bound < p.bound)) fail("t=" + fmt(r.t) + ": bound not strictly decreasing");
      if (!(r.vol_Z < p.vol_Z)) fail("t=" + fmt(r.t) + ": neck volume not strictly decreasing");
    }
  }
  for (std::size_t k = 0; k < options.sobolev_orders.size(); ++k) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& r : table.rows) {
      lo = std::min(lo, r.hk_norm_sq[k]);
      hi = std::max(hi, r.hk_norm_sq[k]);
    }
    table.hk_variation.push_back(hi / lo);
    if (hi / lo > options.hk_variation_limit)
      fail("H^" + std::to_string(options.sobolev_orders[k]) + " norm of h^t varies by factor " + fmt(hi / lo));
  }
  return table;
}

GrowthFit sobolev_growth_fit(const WarpingProfile& profile, int m, int k, const std::vector<double>& t_values,
                             double cross_section_volume, int panels) {
  if (t_values.size() < 4) throw InputError("growth fit needs at least 4 t values");
  const auto [lo, hi] = std::minmax_element(t_values.begin(), t_values.end());
  if (!(*lo > 0.0)) throw InputError("t values must be positive");
  if (*hi / *lo < 8.0) throw InputError("t values must span a factor of at least 8");

  GrowthFit fit;
  fit.k = k;
  fit.t_values = t_values;
  fit.limit = std::max(4, 2 * k) + 0.2;
  fit.norms_sq = parallel_map<double>(t_values.size(), [&](std::size_t i) {
    return sobolev_hk_norm_sq(pullback_cylinder(profile, t_values[i]), m, cross_section_volume, k, panels).value;
  });

  const double n = static_cast<double>(t_values.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    const double x = std::log(t_values[i]);
    const double y = std::log(fit.norms_sq[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.pass = fit.slope <= fit.limit;
  return fit;
}

}  // namespace diraclab
