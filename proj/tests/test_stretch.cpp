#include <cmath>
#include <numbers>

#include "doctest.h"

#include "diraclab/error.hpp"
#include "diraclab/stretch_experiment.hpp"

using namespace diraclab;

namespace {
const double pi = std::numbers::pi;
const TransverseSpectrum harmonic({{0.0, 1}}, true);
}  // namespace

TEST_CASE("bounds and assembled eigenvalues along a sweep") {
  StretchOptions o;
  o.params.m = 2;
  o.mesh = 2048;
  const auto table = run_stretch_sweep(WarpingProfile::exponential(2, 4 * pi), harmonic, {pi, 2 * pi, 4 * pi}, o);
  CHECK(table.pass());
  REQUIRE(table.rows.size() == 3);
  const double bounds[] = {1.0, 0.25, 1.0 / 16};
  for (int i = 0; i < 3; ++i) {
    const auto& r = table.rows[i];
    CHECK(r.bound == doctest::Approx(bounds[i]).epsilon(1e-14));
    CHECK(std::abs(r.lambda0 - r.bound) < 1e-6);
    CHECK(r.harmonic_lowest);
    CHECK(r.vol_normalized == doctest::Approx(1.0).epsilon(1e-12));
    if (i > 0) CHECK(r.vol_Z < table.rows[i - 1].vol_Z);
    CHECK(r.vol_total >= table.volume_lower);
    CHECK(r.vol_total <= table.volume_upper);
  }
  CHECK(std::abs(table.rows[0].margin) < 1e-6);
}

TEST_CASE("Sobolev norms of h^t stay bounded") {
  StretchOptions o;
  o.params.m = 2;
  o.sobolev_orders = {0, 1, 2, 3};
  o.mesh = 512;
  const std::vector<double> ts{2, 4, 8, 16};
  const auto table = run_stretch_sweep(WarpingProfile::exponential(2, 16.0), harmonic, ts, o);
  CHECK(table.pass());
  REQUIRE(table.hk_variation.size() == 4);
  for (double v : table.hk_variation) CHECK(v <= kHkVariationLimit);
  const double h1_first = table.rows.front().hk_norm_sq[1];
  const double h1_last = table.rows.back().hk_norm_sq[1];
  CHECK(std::max(h1_first, h1_last) / std::min(h1_first, h1_last) <= 1.5);
}

TEST_CASE("mixed spectrum keeps lambda0 at or below the bound") {
  StretchOptions o;
  o.params.m = 3;
  o.K = 3;
  o.mesh = 1024;
  const TransverseSpectrum spec({{-0.5, 1}, {0.0, 1}, {0.5, 1}}, true);
  const auto table = run_stretch_sweep(WarpingProfile::exponential(3, 16.0), spec, {2.0, 4.0, 8.0, 16.0}, o);
  CHECK(table.pass());
  for (const auto& r : table.rows) CHECK(r.lambda0 <= r.bound + kStretchLambdaTolerance);
}

TEST_CASE("norms settle as t grows, so early sweeps need a looser limit") {
  StretchOptions o;
  o.params.m = 3;
  o.mesh = 256;
  o.sobolev_orders = {2};
  const auto p = WarpingProfile::exponential(3, 64.0);
  const auto early = run_stretch_sweep(p, harmonic, {1.0, 2.0, 4.0}, o);
  CHECK_FALSE(early.pass());
  CHECK(early.hk_variation[0] > kHkVariationLimit);
  o.hk_variation_limit = 2.5;
  CHECK(run_stretch_sweep(p, harmonic, {1.0, 2.0, 4.0}, o).pass());
  // Uniform bound: the tail of the sequence is Cauchy.
  const auto tail = run_stretch_sweep(p, harmonic, {16.0, 32.0, 64.0}, o);
  CHECK(std::abs(tail.rows[2].hk_norm_sq[0] - tail.rows[1].hk_norm_sq[0]) <= 1e-9 * tail.rows[2].hk_norm_sq[0]);
}

TEST_CASE("growth fits") {
  const auto p = WarpingProfile::exponential(2, 16.0);
  const std::vector<double> ts{2, 4, 8, 16};
  const auto k0 = sobolev_growth_fit(p, 2, 0, ts);
  CHECK(k0.limit == doctest::Approx(4.2));
  CHECK(k0.slope <= 4.2);
  CHECK(k0.pass);
  const auto k2 = sobolev_growth_fit(p, 2, 2, ts);
  CHECK(k2.slope <= 4.2);
  const auto k3 = sobolev_growth_fit(p, 2, 3, ts);
  CHECK(k3.limit == doctest::Approx(6.2));
  CHECK(k3.slope <= 6.2);
  CHECK(k3.pass);
  // Leading t^4 behavior of the k = 0 norm: A = t^2 on the pullback.
  CHECK(k0.slope >= 3.8);
  CHECK_THROWS_AS(sobolev_growth_fit(p, 2, 0, {2, 4, 8}), InputError);
  CHECK_THROWS_AS(sobolev_growth_fit(p, 2, 0, {2, 3, 4, 5}), InputError);
}

TEST_CASE("sweep preconditions") {
  const TransverseSpectrum noharm({{-1.0, 1}, {1.0, 1}}, true);
  CHECK_THROWS_AS(run_stretch_sweep(WarpingProfile::exponential(2, 4.0), noharm, {1.0, 2.0}), PreconditionError);
  CHECK_THROWS_AS(run_stretch_sweep(WarpingProfile::exponential(2, 4.0), harmonic, {}), InputError);
  CHECK_THROWS_AS(run_stretch_sweep(WarpingProfile::exponential(2, 4.0), harmonic, {2.0, 1.0}), InputError);
}
