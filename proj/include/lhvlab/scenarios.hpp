#pragma once

#include "lhvlab/config.hpp"
#include "lhvlab/harness.hpp"
#include "lhvlab/stats.hpp"

#include <array>
#include <string>
#include <vector>

namespace lhv {

/// Marginal tallies of one simulated settings point, for the no-signalling audit.
struct LabeledMarginals {
    std::string label;
    Marginals marginals;
};

struct SweepResult {
    RunConfig cfg;
    std::vector<SweepPoint> points;
    std::vector<LabeledMarginals> marginals;
};

struct RatesResult {
    RunConfig cfg;
    RatesSummary rates;
    double effective_efficiency = 0.0;
    double naive_efficiency = 0.0;
    double singles_to_coinc_ratio = 0.0;
    std::vector<LabeledMarginals> marginals;
};

struct ChshResult {
    RunConfig cfg;
    std::array<AnglePair, 4> settings;  ///< (a,b), (a,b'), (a',b), (a',b')
    std::array<CorrEstimate, 4> estimates;
    ChshEstimate s;
    RatesSummary rates;  ///< pooled over the four settings
    double effective_efficiency = 0.0;
    double bound_at_measured = 0.0;
    double bound_at_two_thirds = 0.0;
    std::string verdict;
    std::vector<LabeledMarginals> marginals;
};

struct NoncoplanarRow {
    DirectionPair pair;
    double relative_angle = 0.0;
    double azimuth_gap = 0.0;
    CorrEstimate sphere;
    CorrEstimate circle;
    double quantum = 0.0;
    double sphere_deviation = 0.0;
    double circle_deviation = 0.0;
};

struct NoncoplanarResult {
    RunConfig cfg;
    std::vector<NoncoplanarRow> rows;
    double sphere_max_deviation = 0.0;
    double circle_max_deviation = 0.0;
    std::vector<LabeledMarginals> marginals;
};

struct FransonPoint {
    double alpha = 0.0;
    double beta = 0.0;
    CorrEstimate estimate;
    double quantum = 0.0;  ///< -cos(alpha + beta)
};

struct FransonBinRow {
    double alpha = 0.0;
    double beta = 0.0;
    CorrEstimate estimate;
    double quantum = 0.0;
    double residual = 0.0;
    double residual_in_se = 0.0;
};

struct FransonResult {
    RunConfig cfg;
    bool switching = false;
    PhaseSchedule schedule;  ///< switching mode only
    FransonSummary summary;  ///< pooled over every settings point
    CorrEstimate noncoincident;
    std::vector<FransonPoint> points;  ///< static mode
    double visibility = 0.0;           ///< static mode
    std::vector<FransonBinRow> bins;   ///< switching mode
    double max_residual = 0.0;
    double max_residual_in_se = 0.0;
    std::string verdict;
    std::vector<LabeledMarginals> marginals;
};

/// Switching schedule used by the franson scenario: alpha in {0, pi/4},
/// beta in {pi/3, pi/3 + pi/4}, toggling every `period` time units.
PhaseSchedule switching_schedule(double period);

/// Number of phase points and their sums alpha + beta for the static run.
inline constexpr int kStaticFransonPoints = 12;

/// Residuals beyond this many SE count as a detection-time deviation.
inline constexpr double kDeviationSigmas = 10.0;

SweepResult run_sweep(const RunConfig& cfg);
RatesResult run_rates(const RunConfig& cfg);
ChshResult run_chsh(const RunConfig& cfg);
NoncoplanarResult run_noncoplanar(const RunConfig& cfg);
FransonResult run_franson(const RunConfig& cfg);

std::string sweep_csv(const SweepResult& r);
Json to_json(const SweepResult& r);
Json to_json(const RatesResult& r);
Json to_json(const ChshResult& r);
Json to_json(const NoncoplanarResult& r);
Json to_json(const FransonResult& r);

/// Record dump of the experiment a config describes (csv or json).
std::string export_records(const RunConfig& cfg);

/// Pretty-printed JSON with a trailing newline.
std::string render(const Json& j);

}  // namespace lhv
