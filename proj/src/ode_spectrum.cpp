#include "diraclab/ode_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "diraclab/error.hpp"

namespace diraclab {

namespace {

void check_request(int K, int N) {
  if (K < 1) throw InputError("eigenvalue count K must be >= 1");
  if (N < 64) throw InputError("mesh must have at least 64 interior points");
  if (K > N / 2 - 2)
    throw ResolutionError("K = " + std::to_string(K) + " exceeds what the Richardson coarse grid of N = " +
                          std::to_string(N) + " can resolve");
}

double mesh_width(double t, int interior) { return t / (interior + 1); }

SpectrumResult richardson(const std::vector<double>& fine, const std::vector<double>& coarse, double t, int N) {
  const double hf = mesh_width(t, N);
  const double hc = mesh_width(t, N / 2);
  const double w = hf * hf / (hc * hc - hf * hf);
  SpectrumResult r;
  r.mesh_size = N;
  for (std::size_t j = 0; j < fine.size(); ++j) {
    const double corr = (fine[j] - coarse[j]) * w;
    r.eigenvalues.push_back(fine[j] + corr);
    r.error_estimates.push_back(std::abs(corr));
  }
  return r;
}

}  // namespace

SymmetricTridiagonal::SymmetricTridiagonal(std::vector<double> diag, std::vector<double> off)
    : diag_(std::move(diag)), off_(std::move(off)) {
  if (diag_.empty() || off_.size() + 1 != diag_.size())
    throw InputError("tridiagonal matrix needs n diagonal and n-1 off-diagonal entries");
  lo_ = std::numeric_limits<double>::infinity();
  hi_ = -lo_;
  const std::size_t n = diag_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double rad = (i > 0 ? std::abs(off_[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off_[i]) : 0.0);
    lo_ = std::min(lo_, diag_[i] - rad);
    hi_ = std::max(hi_, diag_[i] + rad);
  }
}

int SymmetricTridiagonal::count_below(double x) const {
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, hi_ - lo_);
  int count = 0;
  double d = diag_[0] - x;
  for (std::size_t i = 0;; ++i) {
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
    if (i + 1 == diag_.size()) break;
    d = (diag_[i + 1] - x) - off_[i] * off_[i] / d;
  }
  return count;
}

double SymmetricTridiagonal::eigenvalue(int k, double tol) const {
  if (k < 0 || k >= size()) throw InputError("eigenvalue index out of range");
  double lo = lo_;
  double hi = hi_;
  for (int it = 0; it < 300; ++it) {
    const double width = std::max(tol, 4.0 * std::numeric_limits<double>::epsilon() *
                                           std::max(std::abs(lo), std::abs(hi)));
    if (hi - lo <= width) break;
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> SymmetricTridiagonal::lowest(int K, double tol) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) out.push_back(eigenvalue(k, tol));
  return out;
}

SymmetricTridiagonal discretize_transformed(const RealFunction& V, double t, int interior_points) {
  const double h = mesh_width(t, interior_points);
  const double inv = 1.0 / (h * h);
  std::vector<double> diag(static_cast<std::size_t>(interior_points));
  for (int i = 0; i < interior_points; ++i) diag[i] = 2.0 * inv + V((i + 1) * h);
  std::vector<double> off(static_cast<std::size_t>(interior_points - 1), -inv);
  return SymmetricTridiagonal(std::move(diag), std::move(off));
}

double branch_mu(const WarpingProfile& profile, double mu0, double u) {
  return mu0 * profile.rho(0.0) / profile.rho(u);
}

double branch_mu_prime(const WarpingProfile& profile, double mu0, double u) {
  return branch_mu(profile, mu0, u) * MeanCurvature(profile).H(u);
}

BranchProblem make_branch_problem(const WarpingProfile& profile, double mu0, int m, double t, int branch_id) {
  if (m < 2) throw InputError("dimension m must be >= 2");
  if (!(t > 0.0)) throw InputError("cylinder length t must be positive");
  auto hc = std::make_shared<const MeanCurvature>(profile);
  const double rho0 = profile.rho(0.0);
  const double k = m - 1;
  BranchProblem bp;
  bp.t = t;
  bp.m = m;
  bp.branch_id = branch_id;
  bp.p = [hc, k](double u) { return k * hc->H(u); };
  bp.q = [hc, k, mu0, rho0](double u) {
    const double H = hc->H(u);
    const double mu = mu0 * rho0 / hc->profile().rho(u);
    return mu * mu - mu * H + 0.5 * k * hc->Hprime(u) - 0.25 * k * k * H * H;
  };
  bp.source = BranchSource{profile, mu0};
  return bp;
}

TransformedProblem make_transformed_problem(const WarpingProfile& profile, double mu0, double t, int branch_id) {
  if (!(t > 0.0)) throw InputError("cylinder length t must be positive");
  auto hc = std::make_shared<const MeanCurvature>(profile);
  const double rho0 = profile.rho(0.0);
  TransformedProblem tp;
  tp.t = t;
  tp.branch_id = branch_id;
  tp.V = [hc, mu0, rho0](double u) {
    const double mu = mu0 * rho0 / hc->profile().rho(u);
    return mu * mu - mu * hc->H(u);
  };
  return tp;
}

TransformedProblem liouville_transform(const BranchProblem& bp) {
  if (!bp.source)
    throw PreconditionError("Liouville transform needs the warping profile that generated the branch");
  TransformedProblem tp = make_transformed_problem(bp.source->profile, bp.source->mu0, bp.t, bp.branch_id);
  auto profile = std::make_shared<const WarpingProfile>(bp.source->profile);
  const double rho0 = profile->rho(0.0);
  const double power = 0.5 * (bp.m - 1);
  tp.weight = [profile, rho0, power](double u) { return std::pow(profile->rho(u) / rho0, power); };
  return tp;
}

SpectrumResult solve_transformed(const TransformedProblem& tp, int K, int N) {
  check_request(K, N);
  if (!(tp.t > 0.0)) throw InputError("interval length must be positive");
  const auto fine = discretize_transformed(tp.V, tp.t, N).lowest(K);
  const auto coarse = discretize_transformed(tp.V, tp.t, N / 2).lowest(K);
  return richardson(fine, coarse, tp.t, N);
}

namespace {

std::vector<double> direct_lowest(const BranchProblem& bp, int K, int n) {
  const double h = mesh_width(bp.t, n);
  const double inv = 1.0 / (h * h);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double u = (i + 1) * h;
    const double p = bp.p(u);
    A(i, i) = 2.0 * inv + bp.q(u);
    if (i > 0) A(i, i - 1) = -inv - p / (2.0 * h);
    if (i + 1 < n) A(i, i + 1) = -inv + p / (2.0 * h);
  }
  const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(A, false);
  if (solver.info() != Eigen::Success) throw DiscretizationError("dense eigensolve did not converge");
  std::vector<std::complex<double>> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) { return a.real() < b.real(); });
  std::vector<double> out;
  for (int k = 0; k < K; ++k) {
    const auto z = ev[static_cast<std::size_t>(k)];
    if (std::abs(z.imag()) > 1e-8 * std::max(1.0, std::abs(z.real())) + 1e-12 * norm)
      throw DiscretizationError("direct discretization produced a non-real eigenvalue " +
                                std::to_string(z.real()) + " + " + std::to_string(z.imag()) + "i");
    out.push_back(z.real());
  }
  return out;
}

}  // namespace

SpectrumResult solve_direct(const BranchProblem& bp, int K, int N) {
  check_request(K, N);
  if (!(bp.t > 0.0)) throw InputError("interval length must be positive");
  if (!bp.p || !bp.q) throw InputError("branch problem coefficients are not set");
  const auto fine = direct_lowest(bp, K, N);
  const auto coarse = direct_lowest(bp, K, N / 2);
  return richardson(fine, coarse, bp.t, N);
}

}  // namespace diraclab
