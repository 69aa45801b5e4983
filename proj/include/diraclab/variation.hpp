#pragma once

// Dirac operator on a circle with metric f(theta)^2 dtheta^2. In arclength
// s the operator is Q = -i d/ds with boundary twist exp(2 pi i delta), so
// the spectrum is 2 pi (n + delta) / L with eigensections exp(i lambda s)/sqrt(L).
// The model is used for first-variation, scaling and flow experiments.

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace diraclab {

using Section = std::vector<std::complex<double>>;

enum class DerivativeScheme {
  central,   // second-order differences with twisted wrap
  spectral,  // Fourier differentiation of the untwisted section
};

class CircleDiracModel {
 public:
  // f sampled at theta_i = 2 pi i / N; delta in {0, 1/2}; N even, >= 8.
  CircleDiracModel(std::vector<double> f, double delta);
  static CircleDiracModel uniform(double c, double delta, int N);
  static CircleDiracModel from_function(const std::function<double(double)>& f, double delta, int N);

  int size() const { return static_cast<int>(f_.size()); }
  double delta() const { return delta_; }
  const std::vector<double>& f() const { return f_; }
  double theta(int i) const;
  double step() const;
  // Periodic trapezoid rule, exact for trigonometric polynomials of degree < N.
  double length() const { return length_; }
  // s(theta_i), with s(0) = 0, by spectral integration of f.
  const std::vector<double>& arclength() const { return s_; }

  CircleDiracModel with_density(std::vector<double> f) const { return CircleDiracModel(std::move(f), delta_); }

 private:
  std::vector<double> f_;
  double delta_;
  double length_ = 0.0;
  std::vector<double> s_;
};

// Mode ordering: by |n + delta|, positive before negative on ties.
// delta = 0: n = 0, 1, -1, 2, -2, ...; delta = 1/2: n + delta = 1/2, -1/2, 3/2, ...
int mode_number(int j, double delta);
double circle_eigenvalue(const CircleDiracModel& model, int j);

struct CircleEigenpair {
  int j = 0;
  int n = 0;
  double lambda = 0.0;
  Section psi;  // unit L^2(f dtheta) norm
};

std::vector<CircleEigenpair> circle_eigenpairs(const CircleDiracModel& model, int J);

// int |psi|^2 f dtheta by the trapezoid rule.
double section_norm_sq(const CircleDiracModel& model, const Section& psi);

// Closed-form eigenvalues against the finite-difference circle operator of
// the same length, both ordered as mode_number.
struct OracleComparison {
  std::vector<double> closed_form;
  std::vector<double> oracle;
  double max_deviation = 0.0;
};
OracleComparison circle_oracle_check(const CircleDiracModel& model, int J);

// W(d_theta, d_theta) = Re <gamma(d_theta) nabla_{d_theta} psi, psi>, with
// gamma(d_theta) = -i f.
struct EnergyMomentum {
  std::vector<double> W;
};
EnergyMomentum energy_momentum(const CircleDiracModel& model, const Section& psi,
                               DerivativeScheme scheme = DerivativeScheme::spectral);
// Tr_g W = W / f^2.
std::vector<double> trace_g(const CircleDiracModel& model, const EnergyMomentum& w);

// max_i |Tr_g W - lambda |psi|^2| for mode j.
double trace_identity_check(const CircleDiracModel& model, int j, DerivativeScheme scheme = DerivativeScheme::central);

inline constexpr double kFdStep = 1e-4;

struct BGVariation {
  double lambda = 0.0;
  double formula = 0.0;  // -1/2 int Tr(k W) dvol_g
  double fd = 0.0;       // central difference of lambda_j(g + h k)
};
// kappa sampled on the model grid: k = kappa dtheta^2.
BGVariation bg_first_variation(const CircleDiracModel& model, const std::vector<double>& kappa, int j,
                               double h = kFdStep);

// Smooth random perturbation a0 + sum_{k<=3} a_k cos k theta + b_k sin k theta,
// coefficients uniform in [-1, 1].
std::vector<double> random_trig_samples(std::mt19937_64& rng, int N);

inline constexpr double kBGRelTolerance = 1e-4;

struct BGCase {
  int mode = 0;
  int perturbation = 0;
  BGVariation v;
  double rel_diff = 0.0;  // |formula - fd| / (1 + |formula|)
  bool pass = false;
};
// Modes 0..modes-1 against `perturbations` seeded random kappa each.
std::vector<BGCase> bg_variation_suite(const CircleDiracModel& model, int modes, int perturbations,
                                       std::uint64_t seed);

struct TraceOrder {
  int n_coarse = 0;
  int n_fine = 0;
  double defect_coarse = 0.0;
  double defect_fine = 0.0;
  double order = 0.0;  // log(defect ratio) / log(grid ratio)
};
TraceOrder trace_identity_order(const std::function<double(double)>& f, double delta, int j, int n_coarse,
                                int n_fine);

struct ScalingRow {
  int j = 0;
  double lambda = 0.0;           // lambda_j(g)
  double lambda_scaled = 0.0;    // lambda_j(c g)
  double verified_defect = 0.0;  // lambda_j(c g) sqrt(c) - lambda_j(g)
  double printed_claim = 0.0;    // sqrt(c) lambda_j(g)
};
struct ScalingReport {
  double c = 1.0;
  std::vector<ScalingRow> rows;
  double max_defect = 0.0;
  bool verified = false;          // lambda_j(c g) = lambda_j(g) / sqrt(c) to 1e-10
  bool printed_law_holds = true;  // lambda_j(c g) = sqrt(c) lambda_j(g) to 1e-10
  std::string note;
};
ScalingReport scaling_check(const CircleDiracModel& model, double c, int J);

struct FlowStep {
  int step = 0;
  double lambda0 = 0.0;
  double length = 0.0;
  double t0 = 0.0;  // step length taken from this state (0 on the last row)
  double C = 0.0;
};
struct FlowTrace {
  std::vector<FlowStep> steps;  // one row per visited metric
  bool strictly_decreasing = true;
  std::string stop_reason;  // "epsilon" or "max_steps"
};
// g <- g + t0 k with k = C W / |W|^2_{L^2}, C = |W|^2_{L^2} / |W|_{L^inf},
// t0 = 2 lambda0 / C, re-solving exactly after every step.
FlowTrace annihilation_flow(const CircleDiracModel& model, int max_steps, double epsilon);

}  // namespace diraclab
