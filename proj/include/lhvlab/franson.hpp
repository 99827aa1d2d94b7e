#pragma once

#include "lhvlab/correlation.hpp"
#include "lhvlab/geometry.hpp"
#include "lhvlab/models.hpp"
#include "lhvlab/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace lhv {

/// Detection slot. Late is delayed by the long-short arm difference dT.
enum class Slot : std::uint8_t { Early, Late };

inline Slot other(Slot s) { return s == Slot::Early ? Slot::Late : Slot::Early; }

struct TimedOutcome {
    std::int8_t value = 1;
    Slot slot = Slot::Early;

    friend bool operator==(const TimedOutcome&, const TimedOutcome&) = default;
};

/// Both detectors always fire; a trial is coincident iff the slots match.
struct FransonRecord {
    TimedOutcome alice;
    TimedOutcome bob;
    std::uint64_t emission_index = 0;
    double emission_time = 0.0;

    [[nodiscard]] bool coincident() const { return alice.slot == bob.slot; }

    friend bool operator==(const FransonRecord&, const FransonRecord&) = default;
};

/// Source program for one Franson emission. Draw budget: 6 uniforms.
struct FransonHidden {
    Angle phi;
    double r = 0.0;
    Side side_coin = Side::A;    ///< filtered side
    Slot slot_coin = Slot::Early;  ///< slot hosting the unfiltered click
    std::int8_t u_a = 1;        ///< Alice's value if her click is displaced
    std::int8_t u_b = 1;
};

inline constexpr int kFransonDraws = 6;

FransonHidden sample_franson_hidden(TrialRng& rng);

enum class Waveform : std::uint8_t { Constant, Square };

/*!
 * Interferometer phase settings as a function of time.
 *
 * Square: both phases step up by `amplitude` for `period` time units, then
 * back down for `period` time units (full cycle 2 * period).
 */
struct PhaseSchedule {
    Angle base_alpha;
    Angle base_beta;
    Waveform waveform = Waveform::Constant;
    double period = 1.0;
    Angle amplitude;

    [[nodiscard]] Angle alpha_at(double t) const;
    [[nodiscard]] Angle beta_at(double t) const;
    /// 0 or 1: which half of the square cycle t falls in (always 0 when constant).
    [[nodiscard]] int level_at(double t) const;

    void validate() const;

    static PhaseSchedule constant(Angle alpha, Angle beta);
};

/*!
 * One emission of the delayed-detection model.
 *
 * The plan is committed with the phases in force at `emission_time`. The
 * unfiltered side clicks in `slot_coin`. The filtered side passes the circle
 * keep-test and clicks in the same slot, or fails it and clicks in the
 * opposite slot with its private fair value. Kept pairs carry the linear
 * model values for settings a' = alpha, b' = -beta, so the coincident
 * correlation is -cos(alpha + beta).
 */
FransonRecord franson_trial(const FransonHidden& h, const PhaseSchedule& sched, double delta_t,
                            double emission_time, std::uint64_t emission_index = 0);

/// Reference sampler: half coincident with E = -V cos(alpha + beta), half
/// non-coincident with independent fair values. Draw budget: 4 uniforms.
FransonRecord quantum_franson_trial(TrialRng& rng, Angle alpha, Angle beta, double visibility = 1.0,
                                    double emission_time = 0.0, std::uint64_t emission_index = 0);

inline constexpr int kQuantumFransonDraws = 4;

struct PhaseBin {
    Angle alpha;
    Angle beta;
    CorrelationCounts counts;
    CorrEstimate estimate;
};

/// Coincident records grouped by the phases in force at detection time
/// (emission_time, plus delta_t for the Late slot). Bins are ordered by
/// (alpha, beta).
std::vector<PhaseBin> bin_by_detection_phase(std::span<const FransonRecord> records, const PhaseSchedule& sched,
                                             double delta_t);

}  // namespace lhv
