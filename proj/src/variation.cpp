#include "diraclab/variation.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "diraclab/error.hpp"
#include "diraclab/transverse_spectrum.hpp"

namespace diraclab {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW planning is not thread-safe; execution on a private plan is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

// sign = FFTW_FORWARD: X_k = sum_j x_j e^{-2 pi i jk/N}; FFTW_BACKWARD: unnormalized inverse.
std::vector<cd> dft(std::vector<cd> x, int sign) {
  const int n = static_cast<int>(x.size());
  std::vector<cd> y(x.size());
  auto* in = reinterpret_cast<fftw_complex*>(x.data());
  auto* out = reinterpret_cast<fftw_complex*>(y.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
  return y;
}

int wavenumber(int k, int n) { return k <= n / 2 ? k : k - n; }

bool valid_twist(double delta) { return delta == 0.0 || delta == 0.5; }

double trapezoid(const std::vector<double>& y) {
  double s = 0.0;
  for (double v : y) s += v;
  return s * kTwoPi / static_cast<double>(y.size());
}

Section derivative(const CircleDiracModel& model, const Section& psi, DerivativeScheme scheme) {
  const int n = model.size();
  const double h = model.step();
  Section d(psi.size());
  if (scheme == DerivativeScheme::central) {
    const cd twist = std::polar(1.0, kTwoPi * model.delta());
    for (int i = 0; i < n; ++i) {
      const cd up = i + 1 < n ? psi[i + 1] : twist * psi[0];
      const cd down = i > 0 ? psi[i - 1] : std::conj(twist) * psi[n - 1];
      d[i] = (up - down) / (2.0 * h);
    }
    return d;
  }
  // phi = psi e^{-i delta theta} is periodic; psi' = e^{i delta theta} (phi' + i delta phi).
  Section phi(psi.size());
  for (int i = 0; i < n; ++i) phi[i] = psi[i] * std::polar(1.0, -model.delta() * model.theta(i));
  auto c = dft(phi, FFTW_FORWARD);
  for (int k = 0; k < n; ++k) {
    const int w = wavenumber(k, n);
    c[k] *= (2 * k == n) ? cd(0.0) : cd(0.0, w) / static_cast<double>(n);
  }
  const auto dphi = dft(c, FFTW_BACKWARD);
  for (int i = 0; i < n; ++i)
    d[i] = std::polar(1.0, model.delta() * model.theta(i)) * (dphi[i] + cd(0.0, model.delta()) * phi[i]);
  return d;
}

}  // namespace

CircleDiracModel::CircleDiracModel(std::vector<double> f, double delta) : f_(std::move(f)), delta_(delta) {
  if (!valid_twist(delta_)) throw InputError("spin twist delta must be 0 or 1/2");
  const int n = size();
  if (n < 8 || n % 2 != 0) throw InputError("circle grid size must be even and >= 8");
  for (double v : f_)
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("circle density f must be positive and finite");
  length_ = trapezoid(f_);

  // s(theta) = c0 theta + sum_{k != 0} c_k (e^{ik theta} - 1) / (ik); the
  // Nyquist term vanishes on the grid and is dropped.
  std::vector<cd> x(f_.begin(), f_.end());
  auto c = dft(x, FFTW_FORWARD);
  const double c0 = c[0].real() / n;
  std::vector<cd> g(c.size());
  for (int k = 1; k < n; ++k) {
    if (2 * k == n) continue;
    g[k] = c[k] / (static_cast<double>(n) * cd(0.0, wavenumber(k, n)));
  }
  const auto G = dft(g, FFTW_BACKWARD);
  s_.resize(f_.size());
  for (int i = 0; i < n; ++i) s_[i] = c0 * theta(i) + (G[i] - G[0]).real();
}

CircleDiracModel CircleDiracModel::uniform(double c, double delta, int N) {
  return CircleDiracModel(std::vector<double>(static_cast<std::size_t>(std::max(N, 0)), c), delta);
}

CircleDiracModel CircleDiracModel::from_function(const std::function<double(double)>& f, double delta, int N) {
  if (N < 8) throw InputError("circle grid size must be even and >= 8");
  std::vector<double> v(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) v[i] = f(kTwoPi * i / N);
  return CircleDiracModel(std::move(v), delta);
}

double CircleDiracModel::theta(int i) const { return kTwoPi * i / size(); }
double CircleDiracModel::step() const { return kTwoPi / size(); }

int mode_number(int j, double delta) {
  if (j < 0) throw InputError("mode index must be >= 0");
  if (!valid_twist(delta)) throw InputError("spin twist delta must be 0 or 1/2");
  if (delta == 0.0) return j % 2 ? (j + 1) / 2 : -j / 2;
  return j % 2 ? -(j + 1) / 2 : j / 2;
}

double circle_eigenvalue(const CircleDiracModel& model, int j) {
  return kTwoPi * (mode_number(j, model.delta()) + model.delta()) / model.length();
}

double section_norm_sq(const CircleDiracModel& model, const Section& psi) {
  std::vector<double> y(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) y[i] = std::norm(psi[i]) * model.f()[i];
  return trapezoid(y);
}

std::vector<CircleEigenpair> circle_eigenpairs(const CircleDiracModel& model, int J) {
  if (model.size() < 64) throw InputError("circle eigenpairs need N >= 64");
  if (J < 1) throw InputError("mode count J must be >= 1");
  const double norm = 1.0 / std::sqrt(model.length());
  std::vector<CircleEigenpair> out;
  for (int j = 0; j < J; ++j) {
    CircleEigenpair p;
    p.j = j;
    p.n = mode_number(j, model.delta());
    p.lambda = circle_eigenvalue(model, j);
    p.psi.resize(model.f().size());
    for (int i = 0; i < model.size(); ++i) p.psi[i] = norm * std::polar(1.0, p.lambda * model.arclength()[i]);
    out.push_back(std::move(p));
  }
  return out;
}

OracleComparison circle_oracle_check(const CircleDiracModel& model, int J) {
  if (J < 1) throw InputError("mode count J must be >= 1");
  OracleComparison r;
  const auto disc = discrete_circle_oracle(model.length(), model.delta(), model.size());
  for (int j = 0; j < J; ++j) {
    const double exact = circle_eigenvalue(model, j);
    const double nearest = *std::min_element(disc.begin(), disc.end(), [&](double a, double b) {
      return std::abs(a - exact) < std::abs(b - exact);
    });
    r.closed_form.push_back(exact);
    r.oracle.push_back(nearest);
    r.max_deviation = std::max(r.max_deviation, std::abs(nearest - exact));
  }
  return r;
}

EnergyMomentum energy_momentum(const CircleDiracModel& model, const Section& psi, DerivativeScheme scheme) {
  if (static_cast<int>(psi.size()) != model.size()) throw InputError("section size does not match the model grid");
  const auto d = derivative(model, psi, scheme);
  EnergyMomentum w;
  w.W.resize(psi.size());
  for (int i = 0; i < model.size(); ++i)
    w.W[i] = (cd(0.0, -model.f()[i]) * d[i] * std::conj(psi[i])).real();
  return w;
}

std::vector<double> trace_g(const CircleDiracModel& model, const EnergyMomentum& w) {
  std::vector<double> tr(w.W.size());
  for (std::size_t i = 0; i < tr.size(); ++i) tr[i] = w.W[i] / (model.f()[i] * model.f()[i]);
  return tr;
}

double trace_identity_check(const CircleDiracModel& model, int j, DerivativeScheme scheme) {
  const auto pairs = circle_eigenpairs(model, j + 1);
  const auto& p = pairs.back();
  const auto tr = trace_g(model, energy_momentum(model, p.psi, scheme));
  double defect = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i)
    defect = std::max(defect, std::abs(tr[i] - p.lambda * std::norm(p.psi[i])));
  return defect;
}

BGVariation bg_first_variation(const CircleDiracModel& model, const std::vector<double>& kappa, int j, double h) {
  if (static_cast<int>(kappa.size()) != model.size()) throw InputError("perturbation size does not match the model grid");
  if (!(h > 0.0)) throw InputError("finite-difference step must be positive");
  std::vector<double> fp(kappa.size()), fm(kappa.size());
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    const double g = model.f()[i] * model.f()[i];
    if (!(g + h * kappa[i] > 0.0) || !(g - h * kappa[i] > 0.0))
      throw InputError("perturbed metric g + t k is not positive within the finite-difference step");
    fp[i] = std::sqrt(g + h * kappa[i]);
    fm[i] = std::sqrt(g - h * kappa[i]);
  }
  const auto pairs = circle_eigenpairs(model, j + 1);
  const auto& p = pairs.back();
  const auto w = energy_momentum(model, p.psi, DerivativeScheme::spectral);

  // Tr_g(k W) dvol_g = kappa W / f^4 * f dtheta.
  std::vector<double> integrand(kappa.size());
  for (std::size_t i = 0; i < kappa.size(); ++i) integrand[i] = kappa[i] * w.W[i] / std::pow(model.f()[i], 3);

  BGVariation r;
  r.lambda = p.lambda;
  r.formula = -0.5 * trapezoid(integrand);
  r.fd = (circle_eigenvalue(model.with_density(fp), j) - circle_eigenvalue(model.with_density(fm), j)) / (2.0 * h);
  return r;
}

std::vector<double> random_trig_samples(std::mt19937_64& rng, int N) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const double a0 = coef(rng);
  double a[3], b[3];
  for (int k = 0; k < 3; ++k) {
    a[k] = coef(rng);
    b[k] = coef(rng);
  }
  std::vector<double> v(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double th = kTwoPi * i / N;
    v[i] = a0;
    for (int k = 0; k < 3; ++k) v[i] += a[k] * std::cos((k + 1) * th) + b[k] * std::sin((k + 1) * th);
  }
  return v;
}

std::vector<BGCase> bg_variation_suite(const CircleDiracModel& model, int modes, int perturbations,
                                       std::uint64_t seed) {
  if (modes < 1 || perturbations < 1) throw InputError("variation suite needs at least one mode and perturbation");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> kappas;
  for (int p = 0; p < perturbations; ++p) kappas.push_back(random_trig_samples(rng, model.size()));
  std::vector<BGCase> out;
  for (int j = 0; j < modes; ++j) {
    for (int p = 0; p < perturbations; ++p) {
      BGCase c;
      c.mode = j;
      c.perturbation = p;
      c.v = bg_first_variation(model, kappas[static_cast<std::size_t>(p)], j);
      c.rel_diff = std::abs(c.v.formula - c.v.fd) / (1.0 + std::abs(c.v.formula));
      c.pass = c.rel_diff <= kBGRelTolerance;
      out.push_back(c);
    }
  }
  return out;
}

TraceOrder trace_identity_order(const std::function<double(double)>& f, double delta, int j, int n_coarse,
                                int n_fine) {
  if (!(n_fine > n_coarse)) throw InputError("fine grid must be larger than the coarse grid");
  TraceOrder r;
  r.n_coarse = n_coarse;
  r.n_fine = n_fine;
  r.defect_coarse = trace_identity_check(CircleDiracModel::from_function(f, delta, n_coarse), j);
  r.defect_fine = trace_identity_check(CircleDiracModel::from_function(f, delta, n_fine), j);
  r.order = std::log(r.defect_coarse / r.defect_fine) / std::log(static_cast<double>(n_fine) / n_coarse);
  return r;
}

ScalingReport scaling_check(const CircleDiracModel& model, double c, int J) {
  if (!(c > 0.0)) throw InputError("scaling factor c must be positive");
  if (J < 1) throw InputError("mode count J must be >= 1");
  std::vector<double> f = model.f();
  for (double& v : f) v *= std::sqrt(c);
  const auto scaled = model.with_density(std::move(f));

  ScalingReport r;
  r.c = c;
  for (int j = 0; j < J; ++j) {
    ScalingRow row;
    row.j = j;
    row.lambda = circle_eigenvalue(model, j);
    row.lambda_scaled = circle_eigenvalue(scaled, j);
    row.verified_defect = row.lambda_scaled * std::sqrt(c) - row.lambda;
    row.printed_claim = std::sqrt(c) * row.lambda;
    r.max_defect = std::max(r.max_defect, std::abs(row.verified_defect));
    if (std::abs(row.printed_claim - row.lambda_scaled) > 1e-10 * std::max(1.0, std::abs(row.lambda_scaled)))
      r.printed_law_holds = false;
    r.rows.push_back(row);
  }
  r.verified = r.max_defect <= 1e-10;
  r.note = r.printed_law_holds
               ? "lambda_j(c g) = lambda_j(g) / sqrt(c) verified; sqrt(c) lambda_j(g) agrees for this c"
               : "lambda_j(c g) = lambda_j(g) / sqrt(c) verified; the form lambda_j(c g) = sqrt(c) lambda_j(g) "
                 "fails: the scaling runs in the opposite direction";
  return r;
}

FlowTrace annihilation_flow(const CircleDiracModel& model, int max_steps, double epsilon) {
  if (max_steps < 0) throw InputError("max_steps must be >= 0");
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  FlowTrace trace;
  CircleDiracModel cur = model;
  for (int step = 0;; ++step) {
    const auto pairs = circle_eigenpairs(cur, 1);
    const auto& p = pairs.front();
    FlowStep row;
    row.step = step;
    row.lambda0 = p.lambda;
    row.length = cur.length();
    if (!trace.steps.empty() && !(row.lambda0 < trace.steps.back().lambda0)) trace.strictly_decreasing = false;
    if (std::abs(p.lambda) < epsilon) {
      trace.steps.push_back(row);
      trace.stop_reason = "epsilon";
      break;
    }
    if (step == max_steps) {
      trace.steps.push_back(row);
      trace.stop_reason = "max_steps";
      break;
    }
    const auto w = energy_momentum(cur, p.psi, DerivativeScheme::spectral);
    std::vector<double> l2(w.W.size());
    double sup = 0.0;
    for (int i = 0; i < cur.size(); ++i) {
      const double f = cur.f()[i];
      l2[i] = w.W[i] * w.W[i] / (f * f * f);
      sup = std::max(sup, std::abs(w.W[i]) / (f * f));
    }
    const double norm_sq = trapezoid(l2);
    if (!(sup > 0.0) || !(norm_sq > 0.0)) throw FlowStuckError("energy-momentum tensor vanishes; flow cannot proceed");
    row.C = norm_sq / sup;
    row.t0 = 2.0 * p.lambda / row.C;
    std::vector<double> f(cur.f().size());
    for (int i = 0; i < cur.size(); ++i) {
      const double kappa = row.C * w.W[i] / norm_sq;
      const double g = cur.f()[i] * cur.f()[i] + row.t0 * kappa;
      if (!(g > 0.0)) throw FlowStuckError("flow step produced a non-positive metric");
      f[i] = std::sqrt(g);
    }
    trace.steps.push_back(row);
    cur = cur.with_density(std::move(f));
  }
  return trace;
}

}  // namespace diraclab
