#pragma once

#include "lhvlab/correlation.hpp"
#include "lhvlab/franson.hpp"
#include "lhvlab/geometry.hpp"
#include "lhvlab/models.hpp"
#include "lhvlab/rng.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lhv {

inline constexpr std::string_view kVersion = "1.0.0";

enum class ModelKind {
    Linear,
    ErasedCircle,
    SphereErasure,
    Circle3d,        ///< erased circle model driven by 3D settings via azimuths
    QuantumSinglet,  ///< reference sampler, not a local model
    Franson,
    QuantumFranson,  ///< reference sampler, not a local model
};

/// CLI/config name, e.g. "erased-circle".
std::string_view to_string(ModelKind kind);
/// Throws ConfigError for unknown names.
ModelKind parse_model_kind(std::string_view name);

bool is_franson(ModelKind kind);
bool is_local(ModelKind kind);

struct ModelSpec {
    ModelKind kind = ModelKind::SphereErasure;
    ErasureOptions erasure;
    double delta_t = 1.0;             ///< Franson arm delay, simulation time unit
    double emission_window = 1.0e4;   ///< emission times uniform on [0, window * delta_t)
    double visibility = 1.0;          ///< quantum Franson only
};

/// One settings point. Vector models accept planar angles (embedded in the
/// x-y plane); Franson models accept angles as constant phases (alpha, beta).
using Settings = std::variant<AnglePair, DirectionPair, PhaseSchedule>;

struct ExperimentSpec {
    ModelSpec model;
    std::vector<Settings> settings;
    std::uint64_t n_trials = 1'000'000;
    std::uint64_t master_seed = 42;
    unsigned threads = 0;  ///< 0 = hardware concurrency; never affects results

    void validate() const;
};

struct PairData {
    Settings settings;
    std::vector<TrialRecord> bell;       ///< non-Franson models
    std::vector<FransonRecord> franson;  ///< Franson models
};

struct Dataset {
    ExperimentSpec spec;
    std::vector<PairData> pairs;
    double wall_seconds = 0.0;
    std::string version{kVersion};

    /// Record-level equality, ignoring wall clock and thread count.
    [[nodiscard]] bool same_records(const Dataset& other) const;
};

/// Evaluates single trials of one settings pair from their derived streams.
class TrialEvaluator {
  public:
    TrialEvaluator(const ModelSpec& model, const Settings& settings, std::uint64_t master_seed,
                   std::uint64_t pair_index);

    [[nodiscard]] TrialRecord bell(std::uint64_t trial_index) const;
    [[nodiscard]] FransonRecord franson(std::uint64_t trial_index) const;

  private:
    ModelSpec model_;
    std::uint64_t seed_;
    std::uint64_t pair_;
    AnglePair angles_;
    DirectionPair directions_;
    PhaseSchedule schedule_;
};

Dataset run_experiment(const ExperimentSpec& spec);

struct SweepPoint {
    double theta = 0.0;
    CorrEstimate estimate;
};

/// Settings a = 0, b = theta for every grid point (x-y plane for vector models).
std::vector<SweepPoint> sweep(const ModelSpec& model, const std::vector<double>& theta_grid,
                              std::uint64_t n_trials, std::uint64_t master_seed, unsigned threads = 0);

/// 25 points, k pi / 24.
std::vector<double> default_theta_grid();

struct LocalityReport {
    bool passed = true;
    std::uint64_t trials = 0;
    std::string detail;  ///< first mismatch, empty when passed
};

/// Replays the same hidden states with Bob's setting b then b_alt and
/// requires Alice's outcome sequence to be bit-identical, then the mirror
/// check with Alice's setting moved to b_alt.
LocalityReport locality_audit(const ModelSpec& model, Angle a, Angle b, Angle b_alt, std::uint64_t n,
                              std::uint64_t master_seed);
LocalityReport locality_audit(const ModelSpec& model, const Direction3& a, const Direction3& b,
                              const Direction3& b_alt, std::uint64_t n, std::uint64_t master_seed);

}  // namespace lhv
