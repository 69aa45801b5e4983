#pragma once

// JSON configuration parsing and report serialization. CSV numbers use
// %.17g so that values round-trip exactly.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "diraclab/bracketing.hpp"
#include "diraclab/catalog.hpp"
#include "diraclab/cylinder_assembler.hpp"
#include "diraclab/stretch_experiment.hpp"
#include "diraclab/variation.hpp"

namespace diraclab {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";

// Throws InputError on a missing file or malformed JSON.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Required/optional field access with InputError on type mismatch.
double get_double(const Json& j, const char* key);
double get_double(const Json& j, const char* key, double fallback);
int get_int(const Json& j, const char* key);
int get_int(const Json& j, const char* key, int fallback);

// {"kind": "exponential", "m": 2} | {"kind": "constant", "c": 1} |
// {"kind": "sampled", "knots": [...], "values": [...], "order": 3}
WarpingProfile profile_from_json(const Json& j, double t);
// {"entries": [[mu, mult], ...], "symmetric": bool, "gap": x} |
// {"circle": {"L": .., "delta": .., "J": ..}} | {"file": "path"}; relative
// file paths resolve against base_dir.
TransverseSpectrum spectrum_from_json(const Json& j, const std::filesystem::path& base_dir);
NeckParameters neck_params_from_json(const Json& j, int m);
// {"a0": .., "cos": [...], "sin": [...], "period": ..}
TrigPotential trig_from_json(const Json& j, double default_period);
// Circle density: trigonometric polynomial in theta, default f = 1.
std::function<double(double)> density_from_json(const Json& j);

std::string format_double(double x);
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

Json to_json(const AssembledSpectrum& s);
Json to_json(const BracketReport& r);
Json to_json(const StretchTable& t);
Json to_json(const GrowthFit& g);
Json to_json(const BGCase& c);
Json to_json(const TraceOrder& t);
Json to_json(const ScalingReport& r);
Json to_json(const FlowTrace& t);
Json to_json(const ExistenceCertificate& c);

std::string spectrum_csv(const AssembledSpectrum& s);
std::string bracket_csv(const std::vector<BracketReport>& reports);
std::string stretch_csv(const StretchTable& t);
std::string variation_csv(const std::vector<BGCase>& cases);
std::string flow_csv(const FlowTrace& t);

}  // namespace diraclab
