#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Sandbox {
  fs::path dir;
  explicit Sandbox(const std::string& name) : dir(fs::temp_directory_path() / ("diraclab_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }

  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return dir / name;
  }
  std::string read(const std::string& name) const {
    std::ifstream in(dir / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  int run(const std::string& args, const std::string& out = "") const {
    const fs::path o = out.empty() ? dir : dir / out;
    fs::create_directories(o);
    const std::string cmd =
        std::string("\"") + DIRACLAB_CLI + "\" " + args + " --out \"" + o.string() + "\" >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
};

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("spectrum command") {
  Sandbox box("spectrum");
  const auto cfg = box.write("cfg.json", R"({"profile":{"kind":"exponential","m":2},"spectrum":{"entries":[[0,1]]},
                                             "t":3.141592653589793,"m":2,"K":3})");
  CHECK(box.run("spectrum --config " + cfg.string()) == 0);
  const auto rows = lines(box.read("spectrum.csv"));
  REQUIRE(rows.size() == 4);
  const double first = std::stod(rows[1].substr(rows[1].find(',') + 1));
  CHECK(std::abs(first - 1.0) < 1e-6);
  const auto manifest = Json::parse(box.read("spectrum_manifest.json"));
  CHECK(manifest.at("pass") == true);
  CHECK(manifest.at("seed") == 0);
  CHECK(manifest.at("version").is_string());

  CHECK(box.run("spectrum --format json --config " + cfg.string()) == 0);
  CHECK(Json::parse(box.read("spectrum.json")).at("records").size() == 3);
}

TEST_CASE("exit codes for bad input and forced errors") {
  Sandbox box("errors");
  const auto bad = box.write("bad.json", "{ \"t\": ");
  CHECK(box.run("spectrum --config " + bad.string()) == 2);
  CHECK(box.run("spectrum --config " + (box.dir / "none.json").string()) == 2);
  CHECK(box.run("spectrum") == 2);
  CHECK(box.run("nonsense --config x") == 2);
  const auto missing = box.write("missing.json", R"({"profile":{"kind":"exponential","m":2},"t":1})");
  CHECK(box.run("spectrum --config " + missing.string()) == 2);
  const auto risky = box.write("risky.json", R"({"profile":{"kind":"constant","c":1},
      "spectrum":{"entries":[[-1,1],[0,1],[1,1]],"symmetric":true,"gap":1.1},"t":3.141592653589793,"m":2,"K":4})");
  CHECK(box.run("spectrum --config " + risky.string()) == 1);
  CHECK(box.run("spectrum --format xml --config " + risky.string()) == 2);
}

TEST_CASE("identical config and seed give byte-identical reports") {
  Sandbox box("repro");
  const auto cfg = box.write("cfg.json", R"({"J":3,"mesh":256,"random":{"cases":4}})");
  CHECK(box.run("bracket --seed 9 --config " + cfg.string(), "a") == 0);
  CHECK(box.run("bracket --seed 9 --config " + cfg.string(), "b") == 0);
  CHECK(box.read("a/bracket.csv") == box.read("b/bracket.csv"));
  CHECK(box.read("a/bracket_manifest.json") == box.read("b/bracket_manifest.json"));
  CHECK(Json::parse(box.read("a/bracket_manifest.json")).at("seed") == 9);
}

TEST_CASE("single-piece bracket has zero margins") {
  Sandbox box("bracket");
  const auto cfg = box.write("cfg.json", R"({"t":2.0,"J":3,"mesh":512,"potential":{"a0":1,"cos":[0.5]},
                                             "cuts":[],"subset":[0]})");
  CHECK(box.run("bracket --format json --config " + cfg.string()) == 0);
  const auto r = Json::parse(box.read("bracket.json"));
  for (const auto& row : r.at(0).at("rows")) CHECK(std::abs(row.at("margin").get<double>()) < 1e-12);
}

TEST_CASE("certify and flow commands") {
  Sandbox box("certify");
  const auto cfg = box.write("cfg.json", R"({"m":10})");
  CHECK(box.run("certify --config " + cfg.string()) == 0);
  const auto cert = Json::parse(box.read("certificate.json")).at("certificates").at(0);
  CHECK(cert.at("chain") == Json::array({10, 9, 8}));
  CHECK(cert.at("base").at("sphere") == "S^7");
  CHECK(cert.at("base").at("T") == 8.0);

  const auto flow = box.write("flow.json", R"({"delta":0.5,"N":64,"max_steps":10})");
  CHECK(box.run("flow --config " + flow.string()) == 0);
  const auto m = Json::parse(box.read("flow_manifest.json"));
  CHECK(m.at("summary").at("ratios").size() == 10);
  for (const auto& r : m.at("summary").at("ratios")) CHECK(std::abs(r.get<double>() - 1 / std::sqrt(3.0)) < 1e-6);
  CHECK(lines(box.read("flow.csv")).size() == 12);
}

TEST_CASE("stretch and vary commands") {
  Sandbox box("stretch");
  const auto cfg = box.write("cfg.json", R"({"m":2,"t_values":[2,4,8],"mesh":256,
                                             "growth_fit":{"t_values":[2,4,8,16],"orders":[0,3]}})");
  CHECK(box.run("stretch --config " + cfg.string()) == 0);
  CHECK(lines(box.read("stretch.csv")).size() == 4);
  const auto vary = box.write("vary.json", R"({"N":128,"delta":0.5,"modes":2,"perturbations":2,"density":{"cos":[0.2]}})");
  CHECK(box.run("vary --seed 1 --config " + vary.string()) == 0);
  CHECK(Json::parse(box.read("vary_manifest.json")).at("pass") == true);
}
