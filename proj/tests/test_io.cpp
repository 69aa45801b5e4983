#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "doctest.h"

#include "diraclab/error.hpp"
#include "diraclab/io.hpp"

using namespace diraclab;
namespace fs = std::filesystem;

TEST_CASE("doubles round-trip through the text format") {
  for (double x : {0.1, 1.0 / 3.0, std::numbers::pi, 1e-300, -2.5e17}) CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
}

TEST_CASE("csv layout") {
  CHECK(to_csv({"a", "b"}, {{"1", "2"}, {"3", "4"}}) == "a,b\n1,2\n3,4\n");
}

TEST_CASE("profile parsing") {
  const auto e = profile_from_json(Json::parse(R"({"kind":"exponential","m":3})"), 2.0);
  CHECK(e.kind() == ProfileKind::exponential);
  CHECK(e.exponent_m() == 3);
  CHECK(e.domain_length() == 2.0);
  CHECK(profile_from_json(Json::parse(R"({"kind":"constant"})"), 1.0).constant_value() == 1.0);
  const auto s = profile_from_json(Json::parse(R"({"kind":"sampled","knots":[0,1],"values":[1,2],"order":1})"), 1.0);
  CHECK(s.rho(0.5) == doctest::Approx(1.5));
  CHECK_THROWS_AS(profile_from_json(Json::parse(R"({"kind":"spline"})"), 1.0), InputError);
  CHECK_THROWS_AS(profile_from_json(Json::parse(R"({"kind":"exponential"})"), 1.0), InputError);
  CHECK_THROWS_AS(profile_from_json(Json::parse(R"({"kind":"exponential","m":"two"})"), 1.0), InputError);
}

TEST_CASE("spectrum parsing") {
  const auto a = spectrum_from_json(Json::parse(R"({"entries":[[0,1],[1,2],[-1,2]],"symmetric":true,"gap":3})"), ".");
  CHECK(a.symmetric());
  CHECK(a.total_multiplicity() == 5);
  CHECK(*a.gap() == 3.0);
  const auto c = spectrum_from_json(Json::parse(R"({"circle":{"L":6.283185307179586,"delta":0.5,"J":1}})"), ".");
  CHECK(c.entries().size() == 4);
  CHECK_THROWS_AS(spectrum_from_json(Json::parse(R"({"entries":[[0,1.5]]})"), "."), InputError);
  CHECK_THROWS_AS(spectrum_from_json(Json::parse(R"({"entries":[[0,1]],"symmetric":"yes"})"), "."), InputError);

  const fs::path dir = fs::temp_directory_path() / "diraclab_io_test";
  fs::create_directories(dir);
  std::ofstream(dir / "berger.json") << R"({"entries":[[0,2]],"symmetric":true,"gap":1.5})";
  const auto f = spectrum_from_json(Json::parse(R"({"file":"berger.json"})"), dir);
  CHECK(f.entries().front().multiplicity == 2);
  CHECK_THROWS_AS(spectrum_from_json(Json::parse(R"({"file":"missing.json"})"), dir), InputError);
  std::ofstream(dir / "bad.json") << "{ not json";
  CHECK_THROWS_AS(read_json_file(dir / "bad.json"), InputError);
  fs::remove_all(dir);
}

TEST_CASE("trigonometric inputs") {
  const auto v = trig_from_json(Json::parse(R"({"a0":1,"cos":[0.5]})"), 2.0);
  CHECK(v(0.0) == doctest::Approx(1.5));
  CHECK(v.period == 2.0);
  const auto f = density_from_json(Json::parse(R"({"cos":[0.25]})"));
  CHECK(f(0.0) == doctest::Approx(1.25));
  CHECK(density_from_json(Json())(1.0) == 1.0);
  CHECK_THROWS_AS(trig_from_json(Json::parse(R"({"period":0})"), 1.0), InputError);
}

TEST_CASE("neck parameters") {
  const auto p = neck_params_from_json(Json::parse(R"({"core_volume":0.5,"core_scale_h":0.2})"), 4);
  CHECK(p.m == 4);
  CHECK(p.core_volume == 0.5);
  CHECK(*p.core_scale_h == 0.2);
  CHECK_FALSE(p.core_scale_g.has_value());
}

TEST_CASE("report serialization") {
  const auto s = assemble_spectrum(WarpingProfile::exponential(2, std::numbers::pi), TransverseSpectrum({{0.0, 1}}, true),
                                   std::numbers::pi, 2, 2, 1024);
  const auto j = to_json(s);
  CHECK(j.at("records").size() == 2);
  CHECK(j.at("truncation_margin").is_null());
  const auto csv = spectrum_csv(s);
  CHECK(csv.rfind("j,eigenvalue,", 0) == 0);
  const auto cert = to_json(existence_certificate(10));
  CHECK(cert.at("base").at("sphere") == "S^7");
  CHECK(cert.at("base").at("T") == 8.0);
  CHECK(to_json(existence_certificate(3)).at("applicable") == false);
}
