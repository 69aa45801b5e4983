#pragma once

// Harmonic-spinor facts from the literature, kept as data records with
// citations, plus the dimension-reduction procedure behind the existence of
// metrics with harmonic spinors in dimension m >= 4.

#include <optional>
#include <string>
#include <vector>

namespace diraclab {

struct FactRecord {
  std::string key;
  std::string fact;
  std::string citation;
  std::optional<double> value;  // evaluated bound, when the query carries numbers
};

struct DMinimalRow {
  std::string dimension;
  std::string genus;
  std::string statement;
};

class Catalog {
 public:
  // Parses the catalog JSON; throws InputError on malformed data.
  static Catalog from_json(const std::string& text);
  // Catalog compiled into the library from data/catalog.json.
  static const Catalog& embedded();

  int version() const { return version_; }
  long index_lower_bound(int m, long a_hat, long alpha) const;
  std::optional<long> dminimal_value(int m, long a_hat, long alpha, bool simply_connected) const;
  // Queries: "genus=<g>", "sphere:m=<m>", "s2" or "s2:vol=<v>".
  FactRecord facts(const std::string& query) const;
  const std::vector<DMinimalRow>& dminimal_table() const { return dminimal_table_; }
  const std::string& dminimal_table_citation() const { return dminimal_table_citation_; }
  const FactRecord& berger() const { return berger_; }
  const std::string& reduction_fact() const { return reduction_; }
  // Reason for m in {1, 2, 3}.
  const std::string& not_applicable_reason(int m) const;

 private:
  struct Congruence {
    std::string key;
    int modulus = 1;
    int residue = 0;
    int min_m = 1;
    bool alpha = false;
    int factor = 1;
    std::string fact;
    std::string citation;
    bool matches(int m) const { return m >= min_m && m % modulus == residue; }
  };
  struct Surface {
    std::string key;
    int genus_min = 0;
    std::optional<int> genus_max;
    std::string fact;
  };

  int version_ = 0;
  std::vector<Congruence> index_bounds_;
  std::vector<Congruence> dminimal_;
  std::vector<DMinimalRow> dminimal_table_;
  std::string dminimal_table_citation_;
  std::vector<Surface> surfaces_;
  std::string surfaces_citation_;
  std::vector<Congruence> spheres_;
  FactRecord s2_bound_;
  FactRecord berger_;
  std::string reduction_;
  std::vector<std::string> not_applicable_;  // indexed by m - 1
};

// Free functions over the embedded catalog.
long index_lower_bound(int m, long a_hat, long alpha);
std::optional<long> dminimal_value(int m, long a_hat, long alpha, bool simply_connected);
FactRecord surface_and_sphere_facts(const std::string& query);

// T = 2(k+1) for k odd; NotCoveredError for k even.
double berger_zero_parameter(int k);

struct ReductionStep {
  int from_m = 0;  // M^m
  int to_m = 0;    // boundary sphere S^{m-1} supplies the harmonic spinors
  std::string justification;
};

struct BergerBase {
  int m0 = 0;           // dimension where the chain stops, m0 = 0 mod 4
  int sphere_dim = 0;   // m0 - 1 = 2k + 1
  int k = 0;            // odd
  double T = 0.0;       // 2(k + 1)
  std::string citation;
};

struct ExistenceCertificate {
  int m = 0;
  bool applicable = false;
  std::string reason;               // set when not applicable
  std::string case_label;           // "4k+4", "4k+5", "4k+6" or "4k+7"
  std::vector<int> chain;           // m, m-1, ..., m0
  std::vector<ReductionStep> steps;
  BergerBase base;
};

ExistenceCertificate existence_certificate(int m);

}  // namespace diraclab
