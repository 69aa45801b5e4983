#include "diraclab/catalog.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "json.hpp"

#include "catalog_data.hpp"
#include "diraclab/error.hpp"

namespace diraclab {

namespace {

using nlohmann::json;

std::optional<long> parse_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (*end != '\0') return std::nullopt;
  return v;
}

std::optional<double> parse_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (*end != '\0') return std::nullopt;
  return v;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

Catalog Catalog::from_json(const std::string& text) {
  Catalog c;
  try {
    const json j = json::parse(text);
    c.version_ = j.at("version").get<int>();
    auto congruences = [](const json& arr, const std::string& citation) {
      std::vector<Congruence> out;
      for (const auto& r : arr) {
        Congruence x;
        x.key = r.at("key").get<std::string>();
        x.modulus = r.at("modulus").get<int>();
        x.residue = r.at("residue").get<int>();
        x.min_m = r.at("min_m").get<int>();
        x.alpha = r.value("invariant", "") == "alpha";
        x.factor = r.value("factor", 1);
        x.fact = r.at("fact").get<std::string>();
        x.citation = r.contains("citation") ? r.at("citation").get<std::string>() : citation;
        out.push_back(std::move(x));
      }
      return out;
    };
    c.index_bounds_ = congruences(j.at("index_bounds"), "");
    c.dminimal_ = congruences(j.at("dminimal_equalities"), j.at("dminimal_citation").get<std::string>());
    for (const auto& r : j.at("dminimal_table"))
      c.dminimal_table_.push_back({r.at("dimension").get<std::string>(), r.at("genus").get<std::string>(),
                                   r.at("statement").get<std::string>()});
    c.dminimal_table_citation_ = j.at("dminimal_table_citation").get<std::string>();
    for (const auto& r : j.at("surfaces")) {
      Surface s;
      s.key = r.at("key").get<std::string>();
      s.genus_min = r.at("genus_min").get<int>();
      if (!r.at("genus_max").is_null()) s.genus_max = r.at("genus_max").get<int>();
      s.fact = r.at("fact").get<std::string>();
      c.surfaces_.push_back(std::move(s));
    }
    c.surfaces_citation_ = j.at("surfaces_citation").get<std::string>();
    c.spheres_ = congruences(j.at("spheres"), "");
    const auto& s2 = j.at("s2_bound");
    c.s2_bound_ = {s2.at("key").get<std::string>(), s2.at("fact").get<std::string>(),
                   s2.at("citation").get<std::string>(), std::nullopt};
    const auto& b = j.at("berger");
    c.berger_ = {"berger", b.at("fact").get<std::string>(), b.at("citation").get<std::string>(), std::nullopt};
    c.reduction_ = j.at("reduction").at("fact").get<std::string>();
    for (const char* m : {"1", "2", "3"}) c.not_applicable_.push_back(j.at("not_applicable").at(m).get<std::string>());
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed catalog: ") + e.what());
  }
  return c;
}

const Catalog& Catalog::embedded() {
  static const Catalog c = from_json(detail::kEmbeddedCatalog);
  return c;
}

long Catalog::index_lower_bound(int m, long a_hat, long alpha) const {
  if (m < 1) throw InputError("dimension m must be >= 1");
  for (const auto& r : index_bounds_)
    if (r.matches(m)) return r.factor * std::labs(r.alpha ? alpha : a_hat);
  return 0;
}

std::optional<long> Catalog::dminimal_value(int m, long a_hat, long alpha, bool simply_connected) const {
  if (m < 1) throw InputError("dimension m must be >= 1");
  if (!simply_connected) return std::nullopt;
  for (const auto& r : dminimal_)
    if (r.matches(m)) return r.factor * std::labs(r.alpha ? alpha : a_hat);
  return std::nullopt;
}

FactRecord Catalog::facts(const std::string& query) const {
  if (starts_with(query, "genus=")) {
    const auto g = parse_int(query.substr(6));
    if (g && *g >= 0)
      for (const auto& s : surfaces_)
        if (*g >= s.genus_min && (!s.genus_max || *g <= *s.genus_max))
          return {s.key, s.fact, surfaces_citation_, std::nullopt};
  } else if (starts_with(query, "sphere:m=")) {
    const auto m = parse_int(query.substr(9));
    if (m)
      for (const auto& s : spheres_)
        if (s.matches(static_cast<int>(*m))) return {s.key, s.fact, s.citation, std::nullopt};
  } else if (query == "s2") {
    return s2_bound_;
  } else if (starts_with(query, "s2:vol=")) {
    const auto v = parse_double(query.substr(7));
    if (v && *v > 0.0) {
      FactRecord r = s2_bound_;
      r.value = 4.0 * std::numbers::pi / *v;
      return r;
    }
    throw InputError("S^2 volume must be a positive number");
  }
  throw NotFoundError("no catalog row for query '" + query + "'");
}

const std::string& Catalog::not_applicable_reason(int m) const {
  if (m < 1 || m > 3) throw InputError("not-applicable reasons exist only for m in {1, 2, 3}");
  return not_applicable_[static_cast<std::size_t>(m - 1)];
}

long index_lower_bound(int m, long a_hat, long alpha) { return Catalog::embedded().index_lower_bound(m, a_hat, alpha); }

std::optional<long> dminimal_value(int m, long a_hat, long alpha, bool simply_connected) {
  return Catalog::embedded().dminimal_value(m, a_hat, alpha, simply_connected);
}

FactRecord surface_and_sphere_facts(const std::string& query) { return Catalog::embedded().facts(query); }

double berger_zero_parameter(int k) {
  if (k < 1) throw InputError("Berger parameter needs k >= 1");
  if (k % 2 == 0) throw NotCoveredError("the Berger zero eigenvalue is known only for k odd; k = " + std::to_string(k));
  return 2.0 * (k + 1);
}

ExistenceCertificate existence_certificate(int m) {
  const auto& cat = Catalog::embedded();
  ExistenceCertificate c;
  c.m = m;
  if (m < 1) throw InputError("dimension m must be >= 1");
  if (m <= 3) {
    c.reason = cat.not_applicable_reason(m);
    return c;
  }
  c.applicable = true;
  c.case_label = "4k+" + std::to_string(4 + (m - 4) % 4);
  int d = m;
  c.chain.push_back(d);
  while (d % 4 != 0) {
    c.steps.push_back({d, d - 1,
                       "boundary sphere S^" + std::to_string(d - 1) + " of a geodesic ball in M^" + std::to_string(d) +
                           " carries harmonic spinors by the dimension " + std::to_string(d - 1) + " case; " +
                           cat.reduction_fact()});
    --d;
    c.chain.push_back(d);
  }
  c.base.m0 = d;
  c.base.sphere_dim = d - 1;
  c.base.k = (d - 2) / 2;
  c.base.T = berger_zero_parameter(c.base.k);
  c.base.citation = cat.berger().citation;
  return c;
}

}  // namespace diraclab
