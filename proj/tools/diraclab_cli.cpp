// diraclab: command-line front end.
//
//   diraclab <spectrum|bracket|stretch|vary|flow|certify> --config cfg.json
//            [--out dir] [--format csv|json] [--seed n] [--mesh n]
//
// Exit codes: 0 success, 1 invariant violation or untrustworthy result,
// 2 bad input.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "diraclab/bracketing.hpp"
#include "diraclab/catalog.hpp"
#include "diraclab/cylinder_assembler.hpp"
#include "diraclab/error.hpp"
#include "diraclab/io.hpp"
#include "diraclab/stretch_experiment.hpp"
#include "diraclab/variation.hpp"

namespace fs = std::filesystem;
using namespace diraclab;

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::optional<int> mesh;
};

struct Run {
  const Options& opt;
  Json cfg;
  fs::path base;

  fs::path out(const std::string& name) const { return fs::path(opt.out) / name; }

  // Table in the selected format plus a JSON manifest.
  void emit(const std::string& stem, const std::string& csv, const Json& table, Json summary, bool pass) const {
    if (opt.format == "csv")
      write_text_file(out(stem + ".csv"), csv);
    else
      write_text_file(out(stem + ".json"), table.dump(2) + "\n");
    Json manifest = {{"command", stem}, {"version", kVersion}, {"seed", opt.seed},
                     {"format", opt.format}, {"config", cfg}, {"pass", pass}};
    manifest["summary"] = std::move(summary);
    if (opt.mesh) manifest["mesh_override"] = *opt.mesh;
    write_text_file(out(stem + "_manifest.json"), manifest.dump(2) + "\n");
  }
};

int cmd_spectrum(const Run& run) {
  const auto& c = run.cfg;
  const double t = get_double(c, "t");
  const auto profile = profile_from_json(c.at("profile"), get_double(c.at("profile"), "t", t));
  const auto spec = spectrum_from_json(c.at("spectrum"), run.base);
  const int mesh = run.opt.mesh.value_or(get_int(c, "mesh", kDefaultTransformedMesh));
  const auto s = assemble_spectrum(profile, spec, t, get_int(c, "m", 2), get_int(c, "K"), mesh);
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
  const Json j = to_json(s);
  run.emit("spectrum", spectrum_csv(s), j,
           {{"lambda0", s.records.front().value}, {"records", s.records.size()},
            {"truncation_margin", j.at("truncation_margin")}},
           true);
  std::cout << "lambda0 = " << format_double(s.records.front().value) << "\n";
  return 0;
}

int cmd_bracket(const Run& run) {
  const auto& c = run.cfg;
  const int J = get_int(c, "J");
  const int mesh = run.opt.mesh.value_or(get_int(c, "mesh", kDefaultTransformedMesh));
  std::vector<BracketReport> reports;
  if (c.contains("random")) {
    reports = random_bracketing_suite(run.opt.seed, get_int(c.at("random"), "cases"), J, mesh);
  } else {
    const double t = get_double(c, "t");
    TransformedProblem tp;
    tp.t = t;
    if (c.contains("profile")) {
      tp = make_transformed_problem(profile_from_json(c.at("profile"), t), get_double(c, "mu0", 0.0), t);
    } else {
      tp.V = trig_from_json(c.value("potential", Json()), t);
    }
    std::vector<double> cuts = c.value("cuts", std::vector<double>{});
    std::vector<int> subset = c.value("subset", std::vector<int>{});
    reports.push_back(bracketing_check(tp, cuts, subset, J, mesh));
    reports.back().seed = run.opt.seed;
  }
  bool pass = true;
  int failures = 0;
  Json arr = Json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass;
    failures += r.pass ? 0 : 1;
    arr.push_back(to_json(r));
  }
  run.emit("bracket", bracket_csv(reports), arr, {{"cases", reports.size()}, {"failures", failures}}, pass);
  std::cout << reports.size() << " case(s), " << failures << " failure(s)\n";
  return pass ? 0 : 1;
}

int cmd_stretch(const Run& run) {
  const auto& c = run.cfg;
  const auto t_values = c.at("t_values").get<std::vector<double>>();
  if (t_values.empty()) throw InputError("t_values must be nonempty");
  const int m = get_int(c, "m", 2);
  Json pj = c.value("profile", Json{{"kind", "exponential"}, {"m", m}});
  const auto profile = profile_from_json(pj, t_values.back());
  Json sj = c.value("spectrum", Json{{"entries", Json::array({Json::array({0.0, 1})})}});
  const auto spec = spectrum_from_json(sj, run.base);
  StretchOptions o;
  o.params = neck_params_from_json(c.value("neck", Json()), m);
  o.K = get_int(c, "K", 1);
  o.mesh = run.opt.mesh.value_or(get_int(c, "mesh", kDefaultTransformedMesh));
  o.hk_variation_limit = get_double(c, "hk_variation_limit", kHkVariationLimit);
  if (c.contains("sobolev_orders")) o.sobolev_orders = c.at("sobolev_orders").get<std::vector<int>>();
  const auto table = run_stretch_sweep(profile, spec, t_values, o);

  bool pass = table.pass();
  Json fits = Json::array();
  if (c.contains("growth_fit")) {
    const auto& g = c.at("growth_fit");
    const auto ts = g.at("t_values").get<std::vector<double>>();
    for (int k : g.value("orders", std::vector<int>{0, 1, 2, 3})) {
      const auto fit = sobolev_growth_fit(profile, m, k, ts, o.params.cross_section_volume);
      pass = pass && fit.pass;
      fits.push_back(to_json(fit));
    }
  }
  Json summary = {{"failures", table.failures}, {"growth_fits", fits}};
  run.emit("stretch", stretch_csv(table), to_json(table), summary, pass);
  for (const auto& f : table.failures) std::cerr << "invariant: " << f << "\n";
  std::cout << table.rows.size() << " t-values, " << (pass ? "all invariants hold" : "invariant violated") << "\n";
  return pass ? 0 : 1;
}

int cmd_vary(const Run& run) {
  const auto& c = run.cfg;
  const int N = run.opt.mesh.value_or(get_int(c, "N", 256));
  const double delta = get_double(c, "delta", 0.5);
  const auto density = density_from_json(c.value("density", Json()));
  const auto model = CircleDiracModel::from_function(density, delta, N);

  const auto cases = bg_variation_suite(model, get_int(c, "modes", 5), get_int(c, "perturbations", 10), run.opt.seed);
  bool pass = true;
  Json arr = Json::array();
  for (const auto& x : cases) {
    pass = pass && x.pass;
    arr.push_back(to_json(x));
  }

  Json scaling = Json::array();
  const auto cs = c.value("scaling_c", std::vector<double>{0.25, 0.5, 2.0, 4.0});
  for (double s : cs) {
    const auto r = scaling_check(model, s, get_int(c, "scaling_modes", 5));
    pass = pass && r.verified;
    scaling.push_back(to_json(r));
  }

  const auto grids = c.value("trace_grids", std::vector<int>{128, 1024});
  if (grids.size() != 2) throw InputError("trace_grids must hold two grid sizes");
  const auto order = trace_identity_order(density, delta, 0, grids[0], grids[1]);
  pass = pass && order.order >= 1.8;

  Json summary = {{"bg_cases", cases.size()}, {"scaling", scaling}, {"trace_order", to_json(order)}};
  run.emit("vary", variation_csv(cases), arr, summary, pass);
  std::cout << cases.size() << " variation cases, trace order " << format_double(order.order) << "\n";
  return pass ? 0 : 1;
}

int cmd_flow(const Run& run) {
  const auto& c = run.cfg;
  const int N = run.opt.mesh.value_or(get_int(c, "N", 256));
  const auto model = CircleDiracModel::from_function(density_from_json(c.value("density", Json())),
                                                     get_double(c, "delta", 0.5), N);
  const auto trace = annihilation_flow(model, get_int(c, "max_steps", 10), get_double(c, "epsilon", 1e-12));
  Json ratios = Json::array();
  for (std::size_t i = 1; i < trace.steps.size(); ++i)
    ratios.push_back(trace.steps[i].lambda0 / trace.steps[i - 1].lambda0);
  const bool pass = trace.strictly_decreasing;
  run.emit("flow", flow_csv(trace), to_json(trace), {{"ratios", ratios}, {"stop_reason", trace.stop_reason}}, pass);
  std::cout << trace.steps.size() - 1 << " step(s), final lambda0 = " << format_double(trace.steps.back().lambda0)
            << "\n";
  return pass ? 0 : 1;
}

int cmd_certify(const Run& run) {
  const auto& c = run.cfg;
  std::vector<int> ms;
  if (c.contains("m_values"))
    ms = c.at("m_values").get<std::vector<int>>();
  else
    ms.push_back(get_int(c, "m"));
  Json certs = Json::array();
  for (int m : ms) certs.push_back(to_json(existence_certificate(m)));
  Json doc = {{"version", kVersion}, {"certificates", certs}};
  write_text_file(run.out("certificate.json"), doc.dump(2) + "\n");
  std::cout << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet spectra of warped cylinders, Dirac eigenvalue variation and harmonic-spinor certificates"};
  app.require_subcommand(1);
  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON configuration file")->required();
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--format", opt.format, "table format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--mesh", opt.mesh, "mesh or grid size override");
  };
  using Handler = int (*)(const Run&);
  const std::pair<const char*, Handler> commands[] = {
      {"spectrum", cmd_spectrum}, {"bracket", cmd_bracket}, {"stretch", cmd_stretch},
      {"vary", cmd_vary},         {"flow", cmd_flow},       {"certify", cmd_certify}};
  const char* help[] = {"assembled cylinder spectrum with branch provenance",
                        "Dirichlet bracketing check (explicit or seeded random cases)",
                        "neck-stretching sweep and Sobolev growth fits",
                        "first variation, scaling law and trace identity on the circle model",
                        "eigenvalue annihilation flow on the circle model",
                        "existence certificates by dimension reduction"};
  for (std::size_t i = 0; i < std::size(commands); ++i) add_common(app.add_subcommand(commands[i].first, help[i]));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (const auto& [name, handler] : commands) {
      if (!app.got_subcommand(name)) continue;
      if (opt.mesh && *opt.mesh < 1) throw InputError("--mesh must be positive");
      Run run{opt, read_json_file(opt.config), fs::path(opt.config).parent_path()};
      if (!run.cfg.is_object()) throw InputError("configuration must be a JSON object");
      return handler(run);
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ComputationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
