// lhvlab: command-line front end for the local hidden variable simulations.
//
// Exit codes: 0 ok, 1 configuration or runtime error, 2 acceptance failure.

#include "lhvlab/acceptance.hpp"
#include "lhvlab/config.hpp"
#include "lhvlab/errors.hpp"
#include "lhvlab/scenarios.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct Flags {
    std::string config_path;
    std::optional<std::string> model;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> grid;
    std::optional<double> null_injection;
    std::optional<double> period;
    std::optional<double> delta_t;
    std::optional<std::string> format;
    std::optional<std::string> out;
    std::optional<unsigned> threads;
    bool no_symmetrize = false;
    bool corrupt = false;
    bool json = false;
};

void add_common(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--config", f.config_path, "JSON run configuration; flags override its values");
    cmd->add_option("--model", f.model,
                    "linear | erased-circle | sphere | circle-3d | quantum | franson | quantum-franson");
    cmd->add_option("--trials", f.trials, "trials per settings point");
    cmd->add_option("--seed", f.seed, "master seed (default 42)");
    cmd->add_option("--grid", f.grid, "comma-separated angles, e.g. 0,pi/4,pi/2");
    cmd->add_option("--null-injection", f.null_injection, "double-null probability (default 1/9)");
    cmd->add_option("--period", f.period, "Franson phase hold time; enables switching mode");
    cmd->add_option("--delta-t", f.delta_t, "Franson long-short arm delay (default 1)");
    cmd->add_option("--format", f.format, "csv | json");
    cmd->add_option("--out", f.out, "output file (default stdout)");
    cmd->add_option("--threads", f.threads, "worker threads, 0 = all cores; results do not depend on it");
    cmd->add_flag("--no-symmetrize", f.no_symmetrize, "always filter Alice's side");
    cmd->add_flag("--json", f.json, "machine-readable output (verify)");
    cmd->add_flag("--corrupt-erasure-weight", f.corrupt)->group("");
}

lhv::RunConfig build_config(const std::string& scenario, const Flags& f)
{
    lhv::RunConfig cfg = f.config_path.empty() ? lhv::RunConfig{} : lhv::load_config_file(f.config_path);
    cfg.scenario = scenario;
    if (f.model) cfg.model = *f.model;
    if (f.trials) cfg.trials = *f.trials;
    if (f.seed) cfg.seed = *f.seed;
    if (f.grid) cfg.grid = lhv::parse_grid(*f.grid);
    if (f.null_injection) cfg.null_injection = *f.null_injection;
    if (f.period) cfg.period = *f.period;
    if (f.delta_t) cfg.delta_t = *f.delta_t;
    if (f.format) cfg.format = *f.format;
    if (f.out) cfg.out = *f.out;
    if (f.threads) cfg.threads = *f.threads;
    if (f.no_symmetrize) cfg.symmetrize = false;
    if (f.corrupt) cfg.corrupt_erasure_weight = true;
    if (f.json) cfg.format = "json";
    return lhv::resolve(cfg);
}

void emit(const lhv::RunConfig& cfg, const std::string& text)
{
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) {
        throw lhv::ConfigError("cannot write '" + cfg.out + "'");
    }
    os << text;
}

int run(const std::string& scenario, const Flags& f)
{
    const lhv::RunConfig cfg = build_config(scenario, f);
    if (scenario == "sweep") {
        const lhv::SweepResult r = lhv::run_sweep(cfg);
        emit(cfg, cfg.format == "csv" ? lhv::sweep_csv(r) : lhv::render(lhv::to_json(r)));
    } else if (scenario == "rates") {
        emit(cfg, lhv::render(lhv::to_json(lhv::run_rates(cfg))));
    } else if (scenario == "chsh") {
        emit(cfg, lhv::render(lhv::to_json(lhv::run_chsh(cfg))));
    } else if (scenario == "noncoplanar") {
        emit(cfg, lhv::render(lhv::to_json(lhv::run_noncoplanar(cfg))));
    } else if (scenario == "franson") {
        emit(cfg, lhv::render(lhv::to_json(lhv::run_franson(cfg))));
    } else if (scenario == "export") {
        emit(cfg, lhv::export_records(cfg));
    } else if (scenario == "verify") {
        lhv::VerifyOptions opts;
        opts.seed = cfg.seed;
        opts.threads = cfg.threads;
        opts.corrupt_erasure_weight = cfg.corrupt_erasure_weight;
        const auto results = lhv::run_acceptance(opts);
        emit(cfg, f.json ? lhv::render(lhv::to_json(results, opts)) : lhv::render_table(results));
        return lhv::all_passed(results) ? 0 : 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"lhvlab - local hidden variable models, detection loophole and Franson simulations"};
    app.require_subcommand(1);

    Flags flags;
    const std::pair<const char*, const char*> commands[] = {
        {"sweep", "correlation curve E(theta) as CSV"},
        {"rates", "click-pattern rates and efficiencies"},
        {"chsh", "CHSH value with efficiency bound and verdict"},
        {"noncoplanar", "circle vs sphere hidden variables on non-coplanar settings"},
        {"franson", "Franson delayed-detection model, static or switching phases"},
        {"export", "dump raw trial records"},
        {"verify", "run the acceptance suite (exit 2 on failure)"},
    };
    std::string chosen;
    for (const auto& [name, help] : commands) {
        CLI::App* cmd = app.add_subcommand(name, help);
        add_common(cmd, flags);
        cmd->callback([&chosen, n = std::string(name)] { chosen = n; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        return run(chosen, flags);
    } catch (const std::exception& e) {
        std::cerr << "lhvlab: " << e.what() << "\n";
        return 1;
    }
}
