#pragma once

#include "lhvlab/correlation.hpp"
#include "lhvlab/franson.hpp"
#include "lhvlab/geometry.hpp"
#include "lhvlab/models.hpp"

#include <cstdint>
#include <span>

namespace lhv {

//---------------------------------------------------------------------------//
// Correlation estimators. Bell records post-select on both detectors
// clicking, Franson records on both clicks landing in the same slot.
//---------------------------------------------------------------------------//

CorrelationCounts count_coincidences(std::span<const TrialRecord> records);
CorrelationCounts count_coincidences(std::span<const FransonRecord> records);

CorrEstimate estimate_correlation(std::span<const TrialRecord> records);
CorrEstimate estimate_correlation(std::span<const FransonRecord> records);

/// Correlation of the non-coincident (displaced) Franson pairs.
CorrEstimate estimate_noncoincident_correlation(std::span<const FransonRecord> records);

//---------------------------------------------------------------------------//
// Closed forms
//---------------------------------------------------------------------------//

/// Singlet correlation -cos(theta), theta in [0, pi].
double quantum_corr(double theta);
/// Linear-model correlation -1 + 2 theta / pi, theta in [0, pi].
double linear_corr(double theta);

/// S = E(a,b) + E(a',b) + E(a',b') - E(a,b'). Inputs must lie in [-1, 1].
double chsh(double e_ab, double e_ab2, double e_a2b, double e_a2b2);

struct ChshEstimate {
    double s = 0.0;
    double se = 0.0;  ///< independent-settings propagation, sqrt(sum se_i^2)
};

ChshEstimate chsh(const CorrEstimate& e_ab, const CorrEstimate& e_ab2, const CorrEstimate& e_a2b,
                  const CorrEstimate& e_a2b2);

/// Largest |S| a local model can reach after post-selecting at per-side
/// detection efficiency eta: 4 / eta - 2. This is the standard
/// detection-loophole bound from the literature.
double lhv_efficiency_bound(double eta);

/// eta solving 4 / eta - 2 = 2 sqrt 2, i.e. 2 / (1 + sqrt 2) ~ 0.828427.
double efficiency_threshold();

//---------------------------------------------------------------------------//
// Click-pattern rates
//---------------------------------------------------------------------------//

struct RatesSummary {
    double f_cc = 0.0;
    double f_a_only = 0.0;
    double f_b_only = 0.0;
    double f_none = 0.0;
    std::uint64_t n_trials = 0;
};

RatesSummary detection_rates(std::span<const TrialRecord> records);

/// Per-side detection probability implied by the pattern, f_cc / (f_cc + f_a_only).
double effective_efficiency(const RatesSummary& rates);

/// sqrt(f_cc / (f_cc + f_a_only + f_b_only)): reads the coincidence share of
/// all detection events as eta^2. Kept for comparison; it overstates the
/// per-side efficiency of the erasure models.
double naive_efficiency(const RatesSummary& rates);

/// (f_a_only + f_b_only) / f_cc.
double singles_to_coincidence_ratio(const RatesSummary& rates);

struct FransonSummary {
    std::uint64_t n_trials = 0;
    std::uint64_t coincident = 0;
    std::uint64_t coincident_early = 0;
    std::uint64_t coincident_late = 0;
    std::uint64_t noncoincident_early_a = 0;  ///< Alice early, Bob late
    std::uint64_t noncoincident_early_b = 0;
    std::uint64_t missing_clicks = 0;  ///< always 0 for well-formed records

    [[nodiscard]] double coincident_fraction() const;
    /// |early - late| / n_trials among coincident pairs.
    [[nodiscard]] double slot_imbalance() const;
    /// |early_a - early_b| / n_trials among non-coincident pairs.
    [[nodiscard]] double side_imbalance() const;
};

FransonSummary summarize_franson(std::span<const FransonRecord> records);

//---------------------------------------------------------------------------//
// Marginals (no-signalling, unbiased singles)
//---------------------------------------------------------------------------//

struct SideMarginal {
    std::uint64_t clicks = 0;
    std::uint64_t plus = 0;
    std::uint64_t singles = 0;      ///< clicks while the other side did not coincide
    std::int64_t singles_sum = 0;   ///< sum of values over those singles

    /// (P(+1 | click) - 1/2) / SE.
    [[nodiscard]] double plus_z() const;
    /// mean single value / SE; 0 when there are no singles.
    [[nodiscard]] double singles_z() const;
};

struct Marginals {
    SideMarginal alice;
    SideMarginal bob;
};

Marginals marginals(std::span<const TrialRecord> records);
/// Singles are the non-coincident clicks.
Marginals marginals(std::span<const FransonRecord> records);

//---------------------------------------------------------------------------//
// Fits and scenario metrics
//---------------------------------------------------------------------------//

struct VisibilityPoint {
    double x = 0.0;  ///< alpha + beta
    double e_hat = 0.0;
    double se = 0.0;
};

/// Weighted least-squares V for E = -V cos x (weights 1/se^2; unweighted
/// if any se is 0).
double visibility_fit(std::span<const VisibilityPoint> points);

/// max_i |e_hat_i - quantum_corr(relative_angle(pair_i))|.
double noncoplanar_deviation(std::span<const DirectionPair> pairs, std::span<const CorrEstimate> estimates);

}  // namespace lhv
