#include "diraclab/cylinder_assembler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "diraclab/error.hpp"

namespace diraclab {

SpectrumResult AssembledSpectrum::as_result() const {
  SpectrumResult r;
  r.mesh_size = mesh_size;
  for (const auto& rec : records) {
    r.eigenvalues.push_back(rec.value);
    r.error_estimates.push_back(rec.error_estimate);
  }
  return r;
}

namespace {

struct Branch {
  int id;
  double mu0;
  int multiplicity;
  double min_v;
};

// Nodes of the solver's fine grid plus both endpoints.
template <typename F>
double grid_min(F&& f, double t, int N) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= N + 1; ++i) m = std::min(m, f(t * i / (N + 1)));
  return m;
}

}  // namespace

AssembledSpectrum assemble_spectrum(const WarpingProfile& profile, const TransverseSpectrum& spec, double t, int m,
                                    int K, int mesh) {
  if (!(t > 0.0)) throw InputError("cylinder length t must be positive");
  if (t > profile.domain_length() * (1.0 + 1e-12))
    throw DomainError("cylinder length exceeds the profile's domain");
  if (m < 2) throw InputError("dimension m must be >= 2");
  if (K < 1) throw InputError("eigenvalue count K must be >= 1");
  if (spec.entries().empty()) throw InputError("transverse spectrum is empty");

  AssembledSpectrum out;
  out.mesh_size = mesh;
  out.warnings = spec.warnings();

  const MeanCurvature hc(profile);
  const double rho0 = profile.rho(0.0);

  std::vector<Branch> branches;
  for (std::size_t i = 0; i < spec.entries().size(); ++i) {
    const auto& e = spec.entries()[i];
    const auto tp = make_transformed_problem(profile, e.mu, t, static_cast<int>(i));
    branches.push_back({static_cast<int>(i), e.mu, e.multiplicity, grid_min(tp.V, t, mesh)});
  }
  std::sort(branches.begin(), branches.end(), [](const Branch& a, const Branch& b) {
    return a.min_v < b.min_v || (a.min_v == b.min_v && a.id < b.id);
  });

  auto order = [](const EigenRecord& a, const EigenRecord& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.branch_id != b.branch_id) return a.branch_id < b.branch_id;
    if (a.index != b.index) return a.index < b.index;
    return a.copy < b.copy;
  };

  std::vector<EigenRecord> merged;
  for (const auto& br : branches) {
    if (static_cast<int>(merged.size()) >= K && br.min_v > merged[static_cast<std::size_t>(K - 1)].value) {
      ++out.branches_discarded;
      continue;
    }
    const auto res = solve_transformed(make_transformed_problem(profile, br.mu0, t, br.id), K, mesh);
    ++out.branches_solved;
    for (std::size_t j = 0; j < res.eigenvalues.size(); ++j)
      for (int c = 0; c < br.multiplicity; ++c)
        merged.push_back({res.eigenvalues[j], res.error_estimates[j], br.id, br.mu0, static_cast<int>(j), c, 0});
    std::sort(merged.begin(), merged.end(), order);
    if (static_cast<int>(merged.size()) > K) merged.resize(static_cast<std::size_t>(K));
  }

  int cluster = 0;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (i > 0 && std::abs(merged[i].value - merged[i - 1].value) >
                     kClusterTolerance * std::max(1.0, std::abs(merged[i].value)))
      ++cluster;
    merged[i].cluster = cluster;
  }
  out.records = std::move(merged);

  const double kth = out.records.back().value;
  if (const auto gap = spec.gap()) {
    // Any missing entry has |mu0| = a >= gap, so its potential is at least
    // a^2 r^2 - a r |H| with r = rho(0)/rho(u), minimized over a >= gap.
    const double a = *gap;
    auto bound = [&](double u) {
      const double r = rho0 / profile.rho(u);
      const double H = std::abs(hc.H(u));
      return a * r >= 0.5 * H ? a * a * r * r - a * r * H : -0.25 * H * H;
    };
    const double lower = grid_min(bound, t, mesh) + std::numbers::pi * std::numbers::pi / (t * t);
    out.truncation_margin = lower - kth;
    if (out.truncation_margin <= 0.0) {
      std::ostringstream msg;
      msg << "transverse spectrum truncated at |mu| >= " << a << " may hide eigenvalues below the K-th value "
          << kth << " (lower bound " << lower << "); supply more transverse entries";
      throw TruncationRiskError(msg.str());
    }
  } else {
    out.truncation_margin = std::numeric_limits<double>::infinity();
  }
  if (static_cast<int>(out.records.size()) < K)
    throw ResolutionError("fewer than K eigenvalues available from the transverse entries");
  return out;
}

double lowest_eigenvalue_bound(const TransverseSpectrum& spec, double t) {
  if (!spec.has_harmonic())
    throw PreconditionError("the pi^2/t^2 bound needs a harmonic (mu = 0) transverse entry");
  if (!(t > 0.0)) throw InputError("cylinder length t must be positive");
  return std::numbers::pi * std::numbers::pi / (t * t);
}

}  // namespace diraclab
