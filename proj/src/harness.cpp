#include "lhvlab/harness.hpp"

#include "lhvlab/errors.hpp"
#include "lhvlab/stats.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <thread>
#include <utility>

namespace lhv {

namespace {

constexpr std::array<std::pair<ModelKind, std::string_view>, 7> kModelNames{{
    {ModelKind::Linear, "linear"},
    {ModelKind::ErasedCircle, "erased-circle"},
    {ModelKind::SphereErasure, "sphere"},
    {ModelKind::Circle3d, "circle-3d"},
    {ModelKind::QuantumSinglet, "quantum"},
    {ModelKind::Franson, "franson"},
    {ModelKind::QuantumFranson, "quantum-franson"},
}};

bool is_vector_model(ModelKind kind)
{
    return kind == ModelKind::SphereErasure || kind == ModelKind::Circle3d || kind == ModelKind::QuantumSinglet;
}

template <class Fn>
void parallel_for(std::uint64_t n, unsigned threads, Fn&& fn)
{
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    const std::uint64_t workers = std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, n / 4096));
    if (workers <= 1) {
        fn(std::uint64_t{0}, n);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t begin = n * w / workers;
        const std::uint64_t end = n * (w + 1) / workers;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
}

}  // namespace

std::string_view to_string(ModelKind kind)
{
    for (const auto& [k, name] : kModelNames) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

ModelKind parse_model_kind(std::string_view name)
{
    for (const auto& [k, n] : kModelNames) {
        if (n == name) {
            return k;
        }
    }
    throw ConfigError("unknown model kind '" + std::string(name) + "'");
}

bool is_franson(ModelKind kind)
{
    return kind == ModelKind::Franson || kind == ModelKind::QuantumFranson;
}

bool is_local(ModelKind kind)
{
    return kind != ModelKind::QuantumSinglet && kind != ModelKind::QuantumFranson;
}

void ExperimentSpec::validate() const
{
    if (n_trials < 1) {
        throw ConfigError("n_trials must be at least 1");
    }
    if (settings.empty()) {
        throw ConfigError("experiment needs at least one settings pair");
    }
    try {
        model.erasure.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    if (is_franson(model.kind) && !(model.delta_t > 0.0 && model.emission_window > 0.0)) {
        throw ConfigError("Franson models need positive delta_t and emission window");
    }
    if (!(model.visibility >= 0.0 && model.visibility <= 1.0)) {
        throw ConfigError("visibility must lie in [0, 1]");
    }
}

bool Dataset::same_records(const Dataset& other) const
{
    if (pairs.size() != other.pairs.size()) {
        return false;
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].bell != other.pairs[i].bell || pairs[i].franson != other.pairs[i].franson) {
            return false;
        }
    }
    return true;
}

TrialEvaluator::TrialEvaluator(const ModelSpec& model, const Settings& settings, std::uint64_t master_seed,
                               std::uint64_t pair_index)
    : model_(model), seed_(master_seed), pair_(pair_index)
{
    const ModelKind kind = model.kind;
    if (const auto* angles = std::get_if<AnglePair>(&settings)) {
        angles_ = *angles;
        directions_ = {Direction3::in_xy_plane(angles->a), Direction3::in_xy_plane(angles->b)};
        schedule_ = PhaseSchedule::constant(angles->a, angles->b);
    } else if (const auto* dirs = std::get_if<DirectionPair>(&settings)) {
        if (!is_vector_model(kind)) {
            throw ConfigError(std::string(to_string(kind)) + " takes planar angle settings, not 3D directions");
        }
        directions_ = *dirs;
    } else {
        if (!is_franson(kind)) {
            throw ConfigError(std::string(to_string(kind)) + " does not take a phase schedule");
        }
        schedule_ = std::get<PhaseSchedule>(settings);
        try {
            schedule_.validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
    }
}

TrialRecord TrialEvaluator::bell(std::uint64_t trial_index) const
{
    TrialRng rng = derive_trial_rng(seed_, pair_, trial_index);
    switch (model_.kind) {
    case ModelKind::Linear:
        return linear_trial(sample_circle_hidden(rng), angles_.a, angles_.b);
    case ModelKind::ErasedCircle:
        return erased_circle_trial(sample_circle_hidden(rng), angles_.a, angles_.b, model_.erasure);
    case ModelKind::SphereErasure:
        return sphere_erasure_trial(sample_sphere_hidden(rng), directions_.a, directions_.b, model_.erasure);
    case ModelKind::Circle3d:
        return circle_model_with_3d_settings(sample_circle_hidden(rng), directions_.a, directions_.b,
                                             model_.erasure);
    case ModelKind::QuantumSinglet:
        return quantum_singlet_trial(rng, directions_.a, directions_.b);
    default:
        throw ConfigError(std::string(to_string(model_.kind)) + " produces Franson records");
    }
}

FransonRecord TrialEvaluator::franson(std::uint64_t trial_index) const
{
    TrialRng rng = derive_trial_rng(seed_, pair_, trial_index);
    const double t = model_.emission_window * model_.delta_t * rng.uniform();
    switch (model_.kind) {
    case ModelKind::Franson:
        return franson_trial(sample_franson_hidden(rng), schedule_, model_.delta_t, t, trial_index);
    case ModelKind::QuantumFranson:
        return quantum_franson_trial(rng, schedule_.alpha_at(t), schedule_.beta_at(t), model_.visibility, t,
                                     trial_index);
    default:
        throw ConfigError(std::string(to_string(model_.kind)) + " produces Bell records");
    }
}

Dataset run_experiment(const ExperimentSpec& spec)
{
    spec.validate();
    const auto start = std::chrono::steady_clock::now();

    Dataset ds;
    ds.spec = spec;
    ds.pairs.reserve(spec.settings.size());
    const bool franson = is_franson(spec.model.kind);
    for (std::size_t p = 0; p < spec.settings.size(); ++p) {
        PairData pd{spec.settings[p], {}, {}};
        const TrialEvaluator eval(spec.model, spec.settings[p], spec.master_seed, p);
        if (franson) {
            pd.franson.resize(spec.n_trials);
            parallel_for(spec.n_trials, spec.threads, [&](std::uint64_t begin, std::uint64_t end) {
                for (std::uint64_t i = begin; i < end; ++i) {
                    pd.franson[i] = eval.franson(i);
                }
            });
        } else {
            pd.bell.resize(spec.n_trials);
            parallel_for(spec.n_trials, spec.threads, [&](std::uint64_t begin, std::uint64_t end) {
                for (std::uint64_t i = begin; i < end; ++i) {
                    pd.bell[i] = eval.bell(i);
                }
            });
        }
        ds.pairs.push_back(std::move(pd));
    }
    ds.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return ds;
}

std::vector<double> default_theta_grid()
{
    std::vector<double> grid;
    for (int k = 0; k <= 24; ++k) {
        grid.push_back(k * kPi / 24.0);
    }
    return grid;
}

std::vector<SweepPoint> sweep(const ModelSpec& model, const std::vector<double>& theta_grid,
                              std::uint64_t n_trials, std::uint64_t master_seed, unsigned threads)
{
    if (theta_grid.empty()) {
        throw ConfigError("sweep: empty theta grid");
    }
    if (is_franson(model.kind)) {
        throw ConfigError("sweep: Franson models are swept over phase sums, use the franson scenario");
    }
    ExperimentSpec spec;
    spec.model = model;
    spec.n_trials = n_trials;
    spec.master_seed = master_seed;
    spec.threads = threads;
    for (double theta : theta_grid) {
        spec.settings.emplace_back(AnglePair{Angle(0.0), Angle(theta)});
    }
    const Dataset ds = run_experiment(spec);
    std::vector<SweepPoint> out;
    out.reserve(theta_grid.size());
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        out.push_back({theta_grid[i], estimate_correlation(ds.pairs[i].bell)});
    }
    return out;
}

namespace {

std::string describe(std::uint64_t trial, const char* side)
{
    return std::string(side) + " outcome changed at trial " + std::to_string(trial);
}

/// Runs (base, moved-bob) and (base, moved-alice) from the same streams.
LocalityReport audit(const ModelSpec& model, const Settings& base, const Settings& bob_moved,
                     const Settings& alice_moved, std::uint64_t n, std::uint64_t seed)
{
    const TrialEvaluator e0(model, base, seed, 0);
    const TrialEvaluator eb(model, bob_moved, seed, 0);
    const TrialEvaluator ea(model, alice_moved, seed, 0);
    LocalityReport rep;
    rep.trials = n;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (is_franson(model.kind)) {
            const FransonRecord r0 = e0.franson(i);
            if (!(r0.alice == eb.franson(i).alice)) {
                return {false, n, describe(i, "Alice")};
            }
            if (!(r0.bob == ea.franson(i).bob)) {
                return {false, n, describe(i, "Bob")};
            }
        } else {
            const TrialRecord r0 = e0.bell(i);
            if (!(r0.alice == eb.bell(i).alice)) {
                return {false, n, describe(i, "Alice")};
            }
            if (!(r0.bob == ea.bell(i).bob)) {
                return {false, n, describe(i, "Bob")};
            }
        }
    }
    return rep;
}

}  // namespace

LocalityReport locality_audit(const ModelSpec& model, Angle a, Angle b, Angle b_alt, std::uint64_t n,
                              std::uint64_t master_seed)
{
    if (b == b_alt) {
        throw InvalidArgument("locality_audit: b and b_alt must differ");
    }
    return audit(model, AnglePair{a, b}, AnglePair{a, b_alt}, AnglePair{b_alt, b}, n, master_seed);
}

LocalityReport locality_audit(const ModelSpec& model, const Direction3& a, const Direction3& b,
                              const Direction3& b_alt, std::uint64_t n, std::uint64_t master_seed)
{
    if (b == b_alt) {
        throw InvalidArgument("locality_audit: b and b_alt must differ");
    }
    return audit(model, DirectionPair{a, b}, DirectionPair{a, b_alt}, DirectionPair{b_alt, b}, n, master_seed);
}

}  // namespace lhv
