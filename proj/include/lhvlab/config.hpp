#pragma once

#include "lhvlab/geometry.hpp"
#include "lhvlab/harness.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lhv {

using Json = nlohmann::ordered_json;

/*!
 * Everything a CLI run depends on. Parsed from a JSON document (all keys
 * optional) and then overridden by flags. `resolve` fills the per-scenario
 * defaults; reports echo the resolved config so any number can be
 * regenerated from the report alone.
 */
struct RunConfig {
    std::string scenario = "sweep";
    std::string model;  ///< empty: scenario default
    double null_injection = ErasureOptions::kDefaultNullInjection;
    bool symmetrize = true;
    bool corrupt_erasure_weight = false;
    std::optional<std::uint64_t> trials;
    std::uint64_t seed = 42;
    std::vector<double> grid;
    std::optional<double> period;  ///< Franson switching hold time; absent = static
    double delta_t = 1.0;
    std::vector<DirectionPair> pairs;  ///< noncoplanar settings
    std::vector<double> chsh_angles;   ///< a, a', b, b'
    std::string format;  ///< csv or json; empty: scenario default
    std::string out;     ///< empty: stdout
    unsigned threads = 0;  ///< not echoed; has no effect on results
};

RunConfig config_from_json(const Json& doc);
RunConfig load_config_file(const std::string& path);

/// Fill scenario defaults and validate. Throws ConfigError.
RunConfig resolve(RunConfig cfg);

Json to_json(const RunConfig& cfg);

/// Build the model options a resolved config describes for `kind`.
ModelSpec model_spec(const RunConfig& cfg, ModelKind kind);

/// Comma-separated list of reals; accepts "pi" multiples such as "pi/4".
std::vector<double> parse_grid(const std::string& text);

/// Round to 6 significant digits so JSON output is byte-stable.
double sig6(double x);
/// printf("%.6g").
std::string fmt6(double x);

}  // namespace lhv
