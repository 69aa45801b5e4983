#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"

#include "diraclab/error.hpp"
#include "diraclab/transverse_spectrum.hpp"

using namespace diraclab;

namespace {

std::vector<double> mus(const TransverseSpectrum& s) {
  std::vector<double> out;
  for (const auto& e : s.entries()) out.push_back(e.mu);
  return out;
}

double nearest(const std::vector<double>& xs, double target) {
  return *std::min_element(xs.begin(), xs.end(),
                           [&](double a, double b) { return std::abs(a - target) < std::abs(b - target); });
}

}  // namespace

TEST_CASE("circle spectra match the finite-difference oracle") {
  const double L = 2 * std::numbers::pi;
  const auto s0 = circle_spectrum(L, 0.0, 2);
  CHECK(s0.has_harmonic());
  const auto o0 = discrete_circle_oracle(L, 0.0, 1024);
  const std::vector<double> want0{-2, -1, 0, 1, 2};
  REQUIRE(mus(s0).size() == want0.size());
  for (std::size_t i = 0; i < want0.size(); ++i) {
    CHECK(mus(s0)[i] == doctest::Approx(want0[i]).epsilon(1e-14));
    CHECK(std::abs(nearest(o0, want0[i]) - want0[i]) < 1e-4);
  }

  const auto s1 = circle_spectrum(L, 0.5, 1);
  CHECK_FALSE(s1.has_harmonic());
  const auto o1 = discrete_circle_oracle(L, 0.5, 1024);
  const std::vector<double> want1{-1.5, -0.5, 0.5, 1.5};
  REQUIRE(mus(s1).size() == want1.size());
  for (std::size_t i = 0; i < want1.size(); ++i) {
    CHECK(mus(s1)[i] == doctest::Approx(want1[i]).epsilon(1e-14));
    CHECK(std::abs(nearest(o1, want1[i]) - want1[i]) < 1e-4);
  }

  const auto s2 = circle_spectrum(2 * L, 0.0, 1);
  const std::vector<double> want2{-0.5, 0, 0.5};
  CHECK(mus(s2) == want2);
  for (const auto& e : s2.entries()) CHECK(e.multiplicity == 1);
}

TEST_CASE("circle spectrum scales inversely with length") {
  for (double delta : {0.0, 0.5})
    for (double c : {0.5, 3.0}) {
      const auto a = mus(circle_spectrum(1.7, delta, 4));
      const auto b = mus(circle_spectrum(1.7 * c, delta, 4));
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == doctest::Approx(a[i] / c).epsilon(1e-14));
    }
  CHECK_THROWS_AS(circle_spectrum(1.0, 0.25, 2), InputError);
  CHECK_THROWS_AS(circle_spectrum(-1.0, 0.0, 2), InputError);
}

TEST_CASE("discrete circle oracle") {
  const double L = 2 * std::numbers::pi;
  const auto o0 = discrete_circle_oracle(L, 0.0, 256);
  CHECK(std::abs(nearest(o0, 0.0)) < 1e-12);
  const auto o1 = discrete_circle_oracle(L, 0.5, 256);
  double minabs = 1e300;
  for (double x : o1) minabs = std::min(minabs, std::abs(x));
  CHECK(std::abs(minabs - 0.5) < 1e-3);

  for (const auto* o : {&o0, &o1}) {
    auto sorted = *o;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      CHECK(std::abs(sorted[i] + sorted[sorted.size() - 1 - i]) < 1e-10);
  }

  // Second-order convergence of the eigenvalue nearest 1.
  const double e1 = std::abs(nearest(discrete_circle_oracle(L, 0.0, 64), 1.0) - 1.0);
  const double e2 = std::abs(nearest(discrete_circle_oracle(L, 0.0, 128), 1.0) - 1.0);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.01));
  CHECK_THROWS_AS(discrete_circle_oracle(L, 0.0, 15), InputError);
  CHECK_THROWS_AS(discrete_circle_oracle(L, 0.0, 8), InputError);
}

TEST_CASE("slice scaling") {
  const auto p = WarpingProfile::exponential(2, 3.0);
  const TransverseSpectrum spec({{0.0, 2}, {1.0, 1}, {-1.0, 1}}, true);
  const auto s = scale_to_slice(spec, p, 2 * std::log(2.0));
  CHECK(mus(s) == std::vector<double>{-2.0, 0.0, 2.0});
  CHECK(s.has_harmonic());
  CHECK(s.entries()[1].multiplicity == 2);
  CHECK(mus(scale_to_slice(spec, p, 0.0)) == mus(spec));
  for (double u : {0.3, 1.1, 2.9}) {
    const auto x = scale_to_slice(spec, p, u);
    CHECK(x.has_harmonic());
    CHECK(x.total_multiplicity() == spec.total_multiplicity());
    CHECK(x.entries()[1].mu == 0.0);
  }
  CHECK_THROWS_AS(scale_to_slice(spec, p, 3.5), DomainError);
  CHECK_THROWS_AS(scale_to_slice(spec, p, -0.1), DomainError);
}

TEST_CASE("spectrum type invariants") {
  const TransverseSpectrum s({{2.0, 1}, {-1.0, 3}, {2.0, 2}}, false);
  REQUIRE(s.entries().size() == 2);
  CHECK(s.entries()[0].mu == -1.0);
  CHECK(s.entries()[1].multiplicity == 3);
  CHECK_FALSE(s.has_harmonic());
  CHECK(s.warnings().size() == 1);
  CHECK(s.max_abs_mu() == 2.0);
  CHECK_THROWS_AS(TransverseSpectrum({{1.0, 1}}, true), InputError);
  CHECK_THROWS_AS(TransverseSpectrum({{1.0, 0}}, false), InputError);
  CHECK_THROWS_AS(TransverseSpectrum({{1.0, 1}, {-1.0, 1}}, true, 0.5), InputError);
  const TransverseSpectrum sym({{1.0, 2}, {-1.0, 2}, {0.0, 1}}, true, 3.0);
  CHECK(sym.warnings().empty());
  CHECK(*sym.gap() == 3.0);
}
