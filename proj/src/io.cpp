#include "diraclab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "diraclab/error.hpp"

namespace diraclab {

namespace fs = std::filesystem;

Json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<double> double_list(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<double> v;
  for (const auto& x : j) {
    if (!x.is_number()) throw InputError(std::string(what) + " must contain numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

double get_double(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) throw InputError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double get_double(const Json& j, const char* key, double fallback) {
  return j.is_object() && j.contains(key) ? get_double(j, key) : fallback;
}

int get_int(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

int get_int(const Json& j, const char* key, int fallback) {
  return j.is_object() && j.contains(key) ? get_int(j, key) : fallback;
}

WarpingProfile profile_from_json(const Json& j, double t) {
  const auto& kind = field(j, "kind");
  if (!kind.is_string()) throw InputError("profile kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "exponential") return WarpingProfile::exponential(get_int(j, "m"), t);
  if (k == "constant") return WarpingProfile::constant(get_double(j, "c", 1.0), t);
  if (k == "sampled")
    return WarpingProfile::sampled(double_list(field(j, "knots"), "knots"), double_list(field(j, "values"), "values"),
                                   get_int(j, "order", 3), t);
  throw InputError("unknown profile kind '" + k + "'");
}

TransverseSpectrum spectrum_from_json(const Json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw InputError("spectrum must be an object");
  if (j.contains("file")) {
    fs::path p = field(j, "file").get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return spectrum_from_json(read_json_file(p), p.parent_path());
  }
  if (j.contains("circle")) {
    const auto& c = j.at("circle");
    return circle_spectrum(get_double(c, "L", 2.0 * std::numbers::pi), get_double(c, "delta", 0.0), get_int(c, "J"));
  }
  const auto& arr = field(j, "entries");
  if (!arr.is_array()) throw InputError("spectrum entries must be an array");
  std::vector<SpectrumEntry> entries;
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number_integer())
      throw InputError("spectrum entries must be [mu, multiplicity] pairs");
    entries.push_back({e[0].get<double>(), e[1].get<int>()});
  }
  bool symmetric = false;
  if (j.contains("symmetric")) {
    if (!j.at("symmetric").is_boolean()) throw InputError("'symmetric' must be a boolean");
    symmetric = j.at("symmetric").get<bool>();
  }
  std::optional<double> gap;
  if (j.contains("gap") && !j.at("gap").is_null()) gap = get_double(j, "gap");
  return TransverseSpectrum(std::move(entries), symmetric, gap);
}

NeckParameters neck_params_from_json(const Json& j, int m) {
  NeckParameters p;
  p.m = m;
  if (j.is_null()) return p;
  if (!j.is_object()) throw InputError("neck parameters must be an object");
  p.cross_section_volume = get_double(j, "cross_section_volume", p.cross_section_volume);
  p.complement_volume = get_double(j, "complement_volume", p.complement_volume);
  p.complement_norm_sq = get_double(j, "complement_norm_sq", p.complement_norm_sq);
  p.core_volume = get_double(j, "core_volume", p.core_volume);
  p.core_norm_sq = get_double(j, "core_norm_sq", p.core_norm_sq);
  if (j.contains("core_scale_g")) p.core_scale_g = get_double(j, "core_scale_g");
  if (j.contains("core_scale_h")) p.core_scale_h = get_double(j, "core_scale_h");
  return p;
}

TrigPotential trig_from_json(const Json& j, double default_period) {
  TrigPotential v;
  v.period = default_period;
  if (j.is_null()) return v;
  if (!j.is_object()) throw InputError("trigonometric polynomial must be an object");
  v.a0 = get_double(j, "a0", 0.0);
  if (j.contains("cos")) v.cos = double_list(j.at("cos"), "cos");
  if (j.contains("sin")) v.sin = double_list(j.at("sin"), "sin");
  v.period = get_double(j, "period", default_period);
  if (!(v.period > 0.0)) throw InputError("period must be positive");
  return v;
}

std::function<double(double)> density_from_json(const Json& j) {
  if (j.is_null()) return [](double) { return 1.0; };
  TrigPotential p = trig_from_json(j, 2.0 * std::numbers::pi);
  if (!j.contains("a0")) p.a0 = 1.0;
  return p;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

Json to_json(const AssembledSpectrum& s) {
  Json recs = Json::array();
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    const auto& r = s.records[i];
    recs.push_back({{"j", i},
                    {"value", r.value},
                    {"error_estimate", r.error_estimate},
                    {"branch_id", r.branch_id},
                    {"mu0", r.mu0},
                    {"index", r.index},
                    {"copy", r.copy},
                    {"cluster", r.cluster}});
  }
  return {{"records", recs},
          {"mesh_size", s.mesh_size},
          {"branches_solved", s.branches_solved},
          {"branches_discarded", s.branches_discarded},
          {"truncation_margin", finite_or_null(s.truncation_margin)},
          {"truncation_complete", !std::isfinite(s.truncation_margin)},
          {"warnings", s.warnings}};
}

Json to_json(const BracketReport& r) {
  Json rows = Json::array();
  for (const auto& x : r.rows)
    rows.push_back({{"j", x.j},
                    {"lambda", x.lambda},
                    {"mu", x.mu},
                    {"margin", x.margin},
                    {"tolerance", x.tolerance},
                    {"piece", x.piece}});
  Json j = {{"t", r.t}, {"cuts", r.cuts}, {"subset", r.subset}, {"J", r.J},
            {"mesh", r.mesh}, {"rows", rows}, {"pass", r.pass}};
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  return j;
}

Json to_json(const StretchTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"t", r.t},
                    {"bound", r.bound},
                    {"lambda0", r.lambda0},
                    {"lambda0_error", r.lambda0_error},
                    {"margin", r.margin},
                    {"harmonic_lowest", r.harmonic_lowest},
                    {"vol_U1", r.vol_U1},
                    {"vol_Z", r.vol_Z},
                    {"vol_U2", r.vol_U2},
                    {"vol_total", r.vol_total},
                    {"vol_normalized", r.vol_normalized},
                    {"hk_norm_sq", r.hk_norm_sq}});
  return {{"rows", rows},
          {"sobolev_orders", t.sobolev_orders},
          {"volume_lower", t.volume_lower},
          {"volume_upper", t.volume_upper},
          {"hk_variation", t.hk_variation},
          {"failures", t.failures},
          {"pass", t.pass()}};
}

Json to_json(const GrowthFit& g) {
  return {{"k", g.k},         {"t_values", g.t_values}, {"norms_sq", g.norms_sq}, {"slope", g.slope},
          {"intercept", g.intercept}, {"limit", g.limit}, {"pass", g.pass}};
}

Json to_json(const BGCase& c) {
  return {{"mode", c.mode},       {"perturbation", c.perturbation}, {"lambda", c.v.lambda},
          {"formula", c.v.formula}, {"fd", c.v.fd},                  {"rel_diff", c.rel_diff},
          {"pass", c.pass}};
}

Json to_json(const TraceOrder& t) {
  return {{"n_coarse", t.n_coarse},
          {"n_fine", t.n_fine},
          {"defect_coarse", t.defect_coarse},
          {"defect_fine", t.defect_fine},
          {"order", t.order}};
}

Json to_json(const ScalingReport& r) {
  Json rows = Json::array();
  for (const auto& x : r.rows)
    rows.push_back({{"j", x.j},
                    {"lambda", x.lambda},
                    {"lambda_scaled", x.lambda_scaled},
                    {"verified_defect", x.verified_defect},
                    {"printed_claim", x.printed_claim}});
  return {{"c", r.c},
          {"rows", rows},
          {"max_defect", r.max_defect},
          {"verified", r.verified},
          {"printed_law_holds", r.printed_law_holds},
          {"direction_discrepancy", !r.printed_law_holds},
          {"note", r.note}};
}

Json to_json(const FlowTrace& t) {
  Json rows = Json::array();
  for (const auto& s : t.steps)
    rows.push_back({{"step", s.step}, {"lambda0", s.lambda0}, {"length", s.length}, {"t0", s.t0}, {"C", s.C}});
  return {{"steps", rows}, {"strictly_decreasing", t.strictly_decreasing}, {"stop_reason", t.stop_reason}};
}

Json to_json(const ExistenceCertificate& c) {
  Json j = {{"m", c.m}, {"applicable", c.applicable}};
  if (!c.applicable) {
    j["reason"] = c.reason;
    return j;
  }
  Json steps = Json::array();
  for (const auto& s : c.steps)
    steps.push_back({{"from_m", s.from_m}, {"to_m", s.to_m}, {"justification", s.justification}});
  j["case"] = c.case_label;
  j["chain"] = c.chain;
  j["steps"] = steps;
  j["base"] = {{"m0", c.base.m0},
               {"sphere", "S^" + std::to_string(c.base.sphere_dim)},
               {"sphere_dim", c.base.sphere_dim},
               {"k", c.base.k},
               {"T", c.base.T},
               {"citation", c.base.citation}};
  return j;
}

std::string spectrum_csv(const AssembledSpectrum& s) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    const auto& r = s.records[i];
    rows.push_back({std::to_string(i), format_double(r.value), format_double(r.error_estimate),
                    std::to_string(r.branch_id), format_double(r.mu0), std::to_string(r.index), std::to_string(r.copy),
                    std::to_string(r.cluster)});
  }
  return to_csv({"j", "eigenvalue", "error_estimate", "branch_id", "mu0", "index", "copy", "cluster"}, rows);
}

std::string bracket_csv(const std::vector<BracketReport>& reports) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t c = 0; c < reports.size(); ++c)
    for (const auto& x : reports[c].rows)
      rows.push_back({std::to_string(c), std::to_string(x.j), format_double(x.lambda), format_double(x.mu),
                      format_double(x.margin), format_double(x.tolerance), std::to_string(x.piece),
                      reports[c].pass ? "1" : "0"});
  return to_csv({"case", "j", "lambda", "mu", "margin", "tolerance", "piece", "pass"}, rows);
}

std::string stretch_csv(const StretchTable& t) {
  std::vector<std::string> header{"t", "bound", "lambda0", "margin", "vol_U1", "vol_Z", "vol_U2", "vol_total",
                                  "vol_normalized"};
  for (int k : t.sobolev_orders) header.push_back("H" + std::to_string(k) + "_norm_sq");
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : t.rows) {
    std::vector<std::string> row{format_double(r.t),      format_double(r.bound),  format_double(r.lambda0),
                                 format_double(r.margin), format_double(r.vol_U1), format_double(r.vol_Z),
                                 format_double(r.vol_U2), format_double(r.vol_total), format_double(r.vol_normalized)};
    for (double v : r.hk_norm_sq) row.push_back(format_double(v));
    rows.push_back(std::move(row));
  }
  return to_csv(header, rows);
}

std::string variation_csv(const std::vector<BGCase>& cases) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : cases)
    rows.push_back({std::to_string(c.mode), std::to_string(c.perturbation), format_double(c.v.lambda),
                    format_double(c.v.formula), format_double(c.v.fd), format_double(c.rel_diff),
                    c.pass ? "1" : "0"});
  return to_csv({"mode", "perturbation", "lambda", "formula", "fd", "rel_diff", "pass"}, rows);
}

std::string flow_csv(const FlowTrace& t) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : t.steps)
    rows.push_back({std::to_string(s.step), format_double(s.lambda0), format_double(s.length), format_double(s.t0),
                    format_double(s.C)});
  return to_csv({"step", "lambda0", "L", "t0", "C"}, rows);
}

}  // namespace diraclab
