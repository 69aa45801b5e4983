#include "diraclab/transverse_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "diraclab/error.hpp"

namespace diraclab {

namespace {

bool is_valid_twist(double delta) { return delta == 0.0 || delta == 0.5; }

}  // namespace

TransverseSpectrum::TransverseSpectrum(std::vector<SpectrumEntry> entries, bool symmetric,
                                       std::optional<double> gap)
    : symmetric_(symmetric), gap_(gap) {
  for (const auto& e : entries) {
    if (!std::isfinite(e.mu)) throw InputError("transverse eigenvalue is not finite");
    if (e.multiplicity < 1) throw InputError("transverse multiplicity must be >= 1");
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.mu < b.mu; });
  for (const auto& e : entries) {
    if (!entries_.empty() && entries_.back().mu == e.mu)
      entries_.back().multiplicity += e.multiplicity;
    else
      entries_.push_back(e);
  }
  if (gap_ && !(*gap_ > 0.0)) throw InputError("spectral gap must be positive");
  if (gap_ && *gap_ < max_abs_mu())
    throw InputError("spectral gap is smaller than a listed |mu|");

  auto paired = [&](const SpectrumEntry& e) {
    const double tol = 1e-12 * std::max(1.0, std::abs(e.mu));
    return std::any_of(entries_.begin(), entries_.end(), [&](const SpectrumEntry& o) {
      return std::abs(o.mu + e.mu) <= tol && o.multiplicity == e.multiplicity;
    });
  };
  const bool is_paired = std::all_of(entries_.begin(), entries_.end(), [&](const auto& e) {
    return e.mu == 0.0 || paired(e);
  });
  if (symmetric_ && !is_paired)
    throw InputError("spectrum declared symmetric but some mu has no partner -mu of equal multiplicity");
  if (!is_paired)
    warnings_.push_back("asymmetric cross-section spectrum: the +mu/-mu branch pairing does not hold");
}

bool TransverseSpectrum::has_harmonic() const {
  return std::any_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.mu == 0.0; });
}

double TransverseSpectrum::max_abs_mu() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e.mu));
  return m;
}

int TransverseSpectrum::total_multiplicity() const {
  int n = 0;
  for (const auto& e : entries_) n += e.multiplicity;
  return n;
}

TransverseSpectrum circle_spectrum(double L, double delta, int J) {
  if (!(L > 0.0)) throw InputError("circle length must be positive");
  if (!is_valid_twist(delta)) throw InputError("spin twist delta must be 0 or 1/2");
  if (J < 0) throw InputError("truncation J must be >= 0");
  const double k = 2.0 * std::numbers::pi / L;
  std::vector<SpectrumEntry> entries;
  const int lo = delta == 0.0 ? -J : -J - 1;
  for (int n = lo; n <= J; ++n) entries.push_back({k * (n + delta), 1});
  return TransverseSpectrum(std::move(entries), true, k * (J + 1 + delta));
}

std::vector<double> discrete_circle_oracle(double L, double delta, int N) {
  if (!(L > 0.0)) throw InputError("circle length must be positive");
  if (!is_valid_twist(delta)) throw InputError("spin twist delta must be 0 or 1/2");
  if (N < 16 || N % 2 != 0) throw InputError("oracle grid size must be even and >= 16");

  using cd = std::complex<double>;
  const double h = L / N;
  const cd i(0.0, 1.0);
  const cd twist = std::polar(1.0, 2.0 * std::numbers::pi * delta);
  // i * D with (D psi)_k = (psi_{k+1} - psi_{k-1}) / 2h and psi_N = twist * psi_0.
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
  for (int k = 0; k < N; ++k) {
    const int up = (k + 1) % N;
    const int down = (k + N - 1) % N;
    const cd fwd = (k == N - 1) ? twist : cd(1.0);
    const cd back = (k == 0) ? std::conj(twist) : cd(1.0);
    A(k, up) += i * fwd / (2.0 * h);
    A(k, down) -= i * back / (2.0 * h);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(A, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw DiscretizationError("circle oracle eigensolve failed");
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + N);
  std::sort(out.begin(), out.end());
  return out;
}

TransverseSpectrum scale_to_slice(const TransverseSpectrum& spec, const WarpingProfile& profile, double u) {
  if (u < 0.0 || u > profile.domain_length())
    throw DomainError("slice position u must lie in [0, t]");
  const double factor = profile.rho(0.0) / profile.rho(u);
  std::vector<SpectrumEntry> scaled = spec.entries();
  for (auto& e : scaled) e.mu *= factor;
  std::optional<double> gap = spec.gap();
  if (gap) *gap *= factor;
  return TransverseSpectrum(std::move(scaled), spec.symmetric(), gap);
}

}  // namespace diraclab
