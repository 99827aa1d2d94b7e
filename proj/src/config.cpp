#include "lhvlab/config.hpp"

#include "lhvlab/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace lhv {

namespace {

const std::set<std::string> kScenarios{"sweep", "rates", "chsh", "noncoplanar", "franson", "verify", "export"};

const std::set<std::string> kKeys{"scenario", "model",  "null_injection", "symmetrize", "corrupt_erasure_weight",
                                  "trials",   "seed",   "grid",           "period",     "delta_t",
                                  "pairs",    "chsh_angles", "format",    "out",        "threads"};

Direction3 direction_from_json(const Json& v)
{
    if (!v.is_array() || v.size() != 3) {
        throw ConfigError("a direction must be a 3-element array");
    }
    try {
        return Direction3::normalized(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
}

Json direction_to_json(const Direction3& d)
{
    return Json::array({d.x(), d.y(), d.z()});
}

double parse_real(std::string s)
{
    // forms: 1.25, pi, 3pi/4, pi/4, 0.5pi
    std::erase(s, ' ');
    const auto pos = s.find("pi");
    try {
        if (pos == std::string::npos) {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) {
                throw ConfigError("trailing characters");
            }
            return v;
        }
        const std::string head = s.substr(0, pos);
        std::string tail = s.substr(pos + 2);
        double v = kPi;
        if (!head.empty()) {
            v *= head == "-" ? -1.0 : std::stod(head);
        }
        if (!tail.empty()) {
            if (tail[0] != '/') {
                throw ConfigError("expected '/' after pi");
            }
            v /= std::stod(tail.substr(1));
        }
        return v;
    } catch (const std::logic_error&) {
        throw ConfigError("cannot parse number '" + s + "'");
    }
}

}  // namespace

std::vector<double> parse_grid(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_real(item));
    }
    if (out.empty()) {
        throw ConfigError("empty grid");
    }
    return out;
}

double sig6(double x)
{
    if (!std::isfinite(x)) {
        return x;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    const double v = std::strtod(buf, nullptr);
    return v == 0.0 ? 0.0 : v;  // no "-0.0"
}

std::string fmt6(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", sig6(x));
    return buf;
}

RunConfig config_from_json(const Json& doc)
{
    if (!doc.is_object()) {
        throw ConfigError("configuration must be a JSON object");
    }
    for (const auto& [key, _] : doc.items()) {
        if (!kKeys.contains(key)) {
            throw ConfigError("unknown configuration key '" + key + "'");
        }
    }
    RunConfig cfg;
    try {
        if (doc.contains("scenario")) cfg.scenario = doc["scenario"].get<std::string>();
        if (doc.contains("model")) cfg.model = doc["model"].get<std::string>();
        if (doc.contains("null_injection")) cfg.null_injection = doc["null_injection"].get<double>();
        if (doc.contains("symmetrize")) cfg.symmetrize = doc["symmetrize"].get<bool>();
        if (doc.contains("corrupt_erasure_weight"))
            cfg.corrupt_erasure_weight = doc["corrupt_erasure_weight"].get<bool>();
        if (doc.contains("trials")) cfg.trials = doc["trials"].get<std::uint64_t>();
        if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
        if (doc.contains("grid")) cfg.grid = doc["grid"].get<std::vector<double>>();
        if (doc.contains("period") && !doc["period"].is_null()) cfg.period = doc["period"].get<double>();
        if (doc.contains("delta_t")) cfg.delta_t = doc["delta_t"].get<double>();
        if (doc.contains("chsh_angles")) cfg.chsh_angles = doc["chsh_angles"].get<std::vector<double>>();
        if (doc.contains("format")) cfg.format = doc["format"].get<std::string>();
        if (doc.contains("out")) cfg.out = doc["out"].get<std::string>();
        if (doc.contains("threads")) cfg.threads = doc["threads"].get<unsigned>();
        if (doc.contains("pairs")) {
            for (const Json& p : doc["pairs"]) {
                if (!p.is_array() || p.size() != 2) {
                    throw ConfigError("each pair must be [[ax,ay,az],[bx,by,bz]]");
                }
                cfg.pairs.push_back({direction_from_json(p[0]), direction_from_json(p[1])});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("configuration type error: ") + e.what());
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    try {
        return config_from_json(Json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
}

RunConfig resolve(RunConfig cfg)
{
    if (!kScenarios.contains(cfg.scenario)) {
        throw ConfigError("unknown scenario '" + cfg.scenario + "'");
    }
    const std::string& s = cfg.scenario;
    if (cfg.model.empty()) {
        cfg.model = s == "franson" ? "franson" : s == "noncoplanar" ? "circle-3d" : "sphere";
    }
    const ModelKind kind = parse_model_kind(cfg.model);
    if (s == "franson" && !is_franson(kind)) {
        throw ConfigError("the franson scenario needs model franson or quantum-franson");
    }
    if ((s == "sweep" || s == "rates" || s == "chsh") && is_franson(kind)) {
        throw ConfigError("scenario " + s + " needs a Bell-type model");
    }
    if (s == "noncoplanar" && kind != ModelKind::Circle3d && kind != ModelKind::SphereErasure) {
        throw ConfigError("the noncoplanar scenario compares circle-3d with sphere");
    }
    if (!cfg.trials) {
        if (s == "export") {
            cfg.trials = 1000;
        } else if (s == "franson" && !cfg.period) {
            cfg.trials = 100'000;
        } else {
            cfg.trials = 1'000'000;
        }
    }
    if (*cfg.trials < 1) {
        throw ConfigError("trials must be at least 1");
    }
    if (cfg.format.empty()) {
        cfg.format = (s == "sweep" || s == "export") ? "csv" : "json";
    }
    if (cfg.format != "csv" && cfg.format != "json") {
        throw ConfigError("format must be csv or json");
    }
    if (s == "sweep" && cfg.grid.empty()) {
        cfg.grid = default_theta_grid();
    }
    if (s == "chsh" && cfg.chsh_angles.empty()) {
        cfg.chsh_angles = {0.0, kPi / 2, kPi / 4, 3 * kPi / 4};
    }
    if (s == "chsh" && cfg.chsh_angles.size() != 4) {
        throw ConfigError("chsh_angles needs exactly four angles a, a', b, b'");
    }
    if (s == "noncoplanar" && cfg.pairs.empty()) {
        const double h = std::sqrt(0.5);
        cfg.pairs = {
            {Direction3(0, 0, 1), Direction3(0, h, h)},
            {Direction3(1, 0, 0), Direction3::in_xy_plane(Angle(kPi / 3))},
            {Direction3(1, 0, 0), Direction3(0, 1, 0)},
        };
    }
    if (!(cfg.null_injection >= 0.0 && cfg.null_injection <= 1.0)) {
        throw ConfigError("null_injection must lie in [0, 1]");
    }
    if (!(cfg.delta_t > 0.0)) {
        throw ConfigError("delta_t must be positive");
    }
    if (cfg.period && !(*cfg.period > 0.0)) {
        throw ConfigError("period must be positive");
    }
    return cfg;
}

Json to_json(const RunConfig& cfg)
{
    Json j;
    j["scenario"] = cfg.scenario;
    j["model"] = cfg.model;
    j["null_injection"] = cfg.null_injection;
    j["symmetrize"] = cfg.symmetrize;
    j["corrupt_erasure_weight"] = cfg.corrupt_erasure_weight;
    j["trials"] = cfg.trials ? Json(*cfg.trials) : Json(nullptr);
    j["seed"] = cfg.seed;
    j["grid"] = Json::array();
    for (double g : cfg.grid) {
        j["grid"].push_back(g);
    }
    j["period"] = cfg.period ? Json(*cfg.period) : Json(nullptr);
    j["delta_t"] = cfg.delta_t;
    j["pairs"] = Json::array();
    for (const DirectionPair& p : cfg.pairs) {
        j["pairs"].push_back(Json::array({direction_to_json(p.a), direction_to_json(p.b)}));
    }
    j["chsh_angles"] = Json::array();
    for (double a : cfg.chsh_angles) {
        j["chsh_angles"].push_back(a);
    }
    j["format"] = cfg.format;
    return j;
}

ModelSpec model_spec(const RunConfig& cfg, ModelKind kind)
{
    ModelSpec m;
    m.kind = kind;
    m.erasure.null_injection_probability = cfg.null_injection;
    m.erasure.symmetrize = cfg.symmetrize;
    m.erasure.uniform_keep = cfg.corrupt_erasure_weight;
    m.delta_t = cfg.delta_t;
    return m;
}

}  // namespace lhv
