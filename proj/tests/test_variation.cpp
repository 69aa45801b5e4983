#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles/oracles.hpp"

#include "diraclab/error.hpp"
#include "diraclab/transverse_spectrum.hpp"
#include "diraclab/variation.hpp"

using namespace diraclab;

namespace {

const double pi = std::numbers::pi;

double bumpy(double th) { return 1.0 + 0.3 * std::cos(th) + 0.1 * std::sin(2 * th); }

}  // namespace

TEST_CASE("mode ordering") {
  CHECK(mode_number(0, 0.0) == 0);
  CHECK(mode_number(1, 0.0) == 1);
  CHECK(mode_number(2, 0.0) == -1);
  CHECK(mode_number(0, 0.5) == 0);
  CHECK(mode_number(1, 0.5) == -1);
  CHECK(mode_number(2, 0.5) == 1);
}

TEST_CASE("model length and arclength") {
  const auto m = CircleDiracModel::from_function(bumpy, 0.5, 128);
  const double ref = oracle::adaptive_simpson(bumpy, 0.0, 2 * pi, 1e-13);
  CHECK(m.length() == doctest::Approx(ref).epsilon(1e-13));
  for (int i : {0, 17, 64, 100}) {
    const double s = oracle::adaptive_simpson(bumpy, 0.0, m.theta(i), 1e-13);
    CHECK(m.arclength()[i] == doctest::Approx(s).epsilon(1e-12));
  }
  CHECK_THROWS_AS(CircleDiracModel::uniform(1.0, 0.3, 64), InputError);
  CHECK_THROWS_AS(CircleDiracModel::uniform(-1.0, 0.5, 64), InputError);
  CHECK_THROWS_AS(CircleDiracModel::uniform(1.0, 0.5, 7), InputError);
}

TEST_CASE("eigenpairs on the unit circle") {
  const auto m0 = CircleDiracModel::uniform(1.0, 0.0, 128);
  const auto p0 = circle_eigenpairs(m0, 5);
  const double want[] = {0, 1, -1, 2, -2};
  for (int j = 0; j < 5; ++j) {
    CHECK(p0[j].lambda == doctest::Approx(want[j]).epsilon(1e-14));
    CHECK(section_norm_sq(m0, p0[j].psi) == doctest::Approx(1.0).epsilon(1e-13));
  }
  for (const auto& z : p0[0].psi) CHECK(std::abs(z - p0[0].psi[0]) < 1e-14);

  const auto m1 = CircleDiracModel::uniform(1.0, 0.5, 128);
  CHECK(circle_eigenvalue(m1, 0) == doctest::Approx(0.5).epsilon(1e-14));
  const auto o = discrete_circle_oracle(2 * pi, 0.5, 256);
  double minabs = 1e300;
  for (double x : o) minabs = std::min(minabs, std::abs(x));
  CHECK(std::abs(minabs - circle_eigenvalue(m1, 0)) < 1e-3);

  // Length 4 pi through a non-uniform density.
  const auto m2 = CircleDiracModel::from_function([](double th) { return 2.0 + std::cos(th); }, 0.5, 128);
  CHECK(m2.length() == doctest::Approx(4 * pi).epsilon(1e-13));
  for (int j = 0; j < 4; ++j)
    CHECK(circle_eigenvalue(m2, j) == doctest::Approx((mode_number(j, 0.5) + 0.5) / 2).epsilon(1e-13));
  const auto cmp = circle_oracle_check(m2, 4);
  CHECK(cmp.max_deviation < 1e-3);
  CHECK_THROWS_AS(circle_eigenpairs(CircleDiracModel::uniform(1.0, 0.5, 32), 2), InputError);
}

TEST_CASE("eigensections satisfy the twisted periodicity and the eigen equation") {
  const auto m = CircleDiracModel::from_function(bumpy, 0.5, 256);
  for (const auto& p : circle_eigenpairs(m, 4)) {
    // psi = e^{i lambda s}/sqrt(L): |psi|^2 constant.
    for (const auto& z : p.psi) CHECK(std::norm(z) == doctest::Approx(1.0 / m.length()).epsilon(1e-12));
  }
}

TEST_CASE("energy-momentum closed forms") {
  const auto m = CircleDiracModel::uniform(1.0, 0.5, 128);
  const auto p = circle_eigenpairs(m, 1).front();
  for (auto scheme : {DerivativeScheme::spectral, DerivativeScheme::central}) {
    const auto w = energy_momentum(m, p.psi, scheme);
    const double tol = scheme == DerivativeScheme::spectral ? 1e-13 : 1e-4;
    for (double x : w.W) CHECK(std::abs(x - 0.5 / (2 * pi)) < tol);
  }
  // Phase invariance.
  auto rotated = p.psi;
  for (auto& z : rotated) z *= std::polar(1.0, 0.7);
  const auto a = energy_momentum(m, p.psi), b = energy_momentum(m, rotated);
  for (int i = 0; i < m.size(); ++i) CHECK(std::abs(a.W[i] - b.W[i]) < 1e-14);

  const auto z = CircleDiracModel::from_function(bumpy, 0.0, 128);
  const auto w0 = energy_momentum(z, circle_eigenpairs(z, 1).front().psi);
  for (double x : w0.W) CHECK(std::abs(x) < 1e-13);
  CHECK(trace_identity_check(z, 0) < 1e-12);
}

TEST_CASE("trace identity converges at second order") {
  const auto m = CircleDiracModel::uniform(1.0, 0.5, 256);
  CHECK(trace_identity_check(m, 0) < 1e-3);
  CHECK(trace_identity_check(m, 0, DerivativeScheme::spectral) < 1e-12);
  const auto ord = trace_identity_order(bumpy, 0.5, 1, 128, 256);
  CHECK(ord.defect_coarse / ord.defect_fine == doctest::Approx(4.0).epsilon(0.05));
  CHECK(ord.order >= 1.8);
}

TEST_CASE("first variation closed forms") {
  const auto m = CircleDiracModel::uniform(1.0, 0.5, 128);
  const auto v = bg_first_variation(m, std::vector<double>(128, 2.0), 0);
  CHECK(v.lambda == doctest::Approx(0.5));
  CHECK(std::abs(v.formula + 0.5) < 1e-12);
  // fd of lambda/sqrt(1+2t) has truncation error lambda*15/2*h^2... of order 1e-8.
  CHECK(std::abs(v.fd + 0.5) < 1e-7);
  const auto zero = bg_first_variation(m, std::vector<double>(128, 0.0), 0);
  CHECK(zero.formula == 0.0);
  CHECK(std::abs(zero.fd) < 1e-12);

  // k = g: dlambda/dt = -lambda/2.
  const auto b = CircleDiracModel::from_function(bumpy, 0.5, 128);
  std::vector<double> g(128);
  for (int i = 0; i < 128; ++i) g[i] = b.f()[i] * b.f()[i];
  for (int j = 0; j < 4; ++j) {
    const auto x = bg_first_variation(b, g, j);
    CHECK(x.formula == doctest::Approx(-x.lambda / 2).epsilon(1e-10));
    CHECK(x.fd == doctest::Approx(-x.lambda / 2).epsilon(1e-7));
  }
  CHECK_THROWS_AS(bg_first_variation(m, std::vector<double>(128, -2e4), 0), InputError);
  CHECK_THROWS_AS(bg_first_variation(m, std::vector<double>(64, 1.0), 0), InputError);
}

TEST_CASE("first variation agrees with finite differences on random perturbations") {
  const auto m = CircleDiracModel::from_function(bumpy, 0.5, 256);
  const auto cases = bg_variation_suite(m, 5, 10, 2024);
  CHECK(cases.size() == 50);
  for (const auto& c : cases) {
    CHECK(c.pass);
    CHECK(std::abs(c.v.formula - c.v.fd) <= kBGRelTolerance * (1 + std::abs(c.v.formula)));
  }
  const auto again = bg_variation_suite(m, 5, 10, 2024);
  for (std::size_t i = 0; i < cases.size(); ++i) CHECK(again[i].v.fd == cases[i].v.fd);
}

TEST_CASE("finite-difference step sensitivity") {
  const auto m = CircleDiracModel::from_function(bumpy, 0.5, 256);
  std::mt19937_64 rng(5);
  const auto kappa = random_trig_samples(rng, 256);
  const auto base = bg_first_variation(m, kappa, 2);
  for (double h : {1e-3, 1e-4, 1e-5}) {
    const auto v = bg_first_variation(m, kappa, 2, h);
    CHECK(std::abs(v.fd - base.formula) <= 1e-4 * (1 + std::abs(base.formula)));
  }
}

TEST_CASE("scaling law") {
  const auto u = CircleDiracModel::uniform(1.0, 0.5, 64);
  const auto r4 = scaling_check(u, 4.0, 3);
  CHECK(r4.rows[0].lambda_scaled == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(r4.verified);
  CHECK_FALSE(r4.printed_law_holds);
  const auto r1 = scaling_check(u, 1.0, 3);
  CHECK(r1.verified);
  CHECK(r1.printed_law_holds);
  const auto b = CircleDiracModel::from_function(bumpy, 0.0, 128);
  for (double c : {0.25, 0.5, 2.0, 4.0}) {
    const auto r = scaling_check(b, c, 5);
    CHECK(r.verified);
    CHECK(r.max_defect <= 1e-10);
    CHECK(r.rows[0].lambda_scaled == 0.0);
  }
  CHECK_THROWS_AS(scaling_check(u, 0.0, 1), InputError);
}

TEST_CASE("annihilation flow") {
  const auto u = CircleDiracModel::uniform(1.0, 0.5, 64);
  const auto one = annihilation_flow(u, 1, 1e-12);
  REQUIRE(one.steps.size() == 2);
  CHECK(one.steps[0].C == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(one.steps[0].t0 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(one.steps[1].lambda0 == doctest::Approx(1.0 / (2 * std::sqrt(3.0))).epsilon(1e-12));
  CHECK(one.stop_reason == "max_steps");

  const auto ten = annihilation_flow(u, 10, 1e-12);
  CHECK(ten.strictly_decreasing);
  for (std::size_t i = 1; i < ten.steps.size(); ++i) {
    CHECK(std::abs(ten.steps[i].lambda0 / ten.steps[i - 1].lambda0 - 1 / std::sqrt(3.0)) < 1e-6);
    CHECK(ten.steps[i].length == doctest::Approx(std::sqrt(3.0) * ten.steps[i - 1].length).epsilon(1e-12));
  }

  const auto periodic = annihilation_flow(CircleDiracModel::uniform(1.0, 0.0, 64), 10, 1e-12);
  CHECK(periodic.steps.size() == 1);
  CHECK(periodic.stop_reason == "epsilon");

  const auto b = annihilation_flow(CircleDiracModel::from_function(bumpy, 0.5, 128), 6, 1e-12);
  CHECK(b.strictly_decreasing);
}
