#include "lhvlab/franson.hpp"

#include "lhvlab/errors.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace lhv {

FransonHidden sample_franson_hidden(TrialRng& rng)
{
    FransonHidden h;
    h.phi = Angle(kTwoPi * rng.uniform());
    h.r = rng.uniform();
    h.side_coin = rng.uniform() < 0.5 ? Side::A : Side::B;
    h.slot_coin = rng.uniform() < 0.5 ? Slot::Early : Slot::Late;
    h.u_a = rng.uniform() < 0.5 ? 1 : -1;
    h.u_b = rng.uniform() < 0.5 ? 1 : -1;
    return h;
}

int PhaseSchedule::level_at(double t) const
{
    if (waveform == Waveform::Constant) {
        return 0;
    }
    const auto k = static_cast<std::int64_t>(std::floor(t / period));
    return static_cast<int>(k & 1);
}

Angle PhaseSchedule::alpha_at(double t) const
{
    return Angle(base_alpha.radians() + level_at(t) * amplitude.radians());
}

Angle PhaseSchedule::beta_at(double t) const
{
    return Angle(base_beta.radians() + level_at(t) * amplitude.radians());
}

void PhaseSchedule::validate() const
{
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw InvalidArgument("phase schedule period must be positive");
    }
}

PhaseSchedule PhaseSchedule::constant(Angle alpha, Angle beta)
{
    PhaseSchedule s;
    s.base_alpha = alpha;
    s.base_beta = beta;
    return s;
}

FransonRecord franson_trial(const FransonHidden& h, const PhaseSchedule& sched, double delta_t,
                            double emission_time, std::uint64_t emission_index)
{
    if (!(delta_t > 0.0)) {
        throw InvalidArgument("franson_trial: delta_t must be positive");
    }
    const Angle a = sched.alpha_at(emission_time);
    const Angle b(-sched.beta_at(emission_time).radians());

    const double phi = h.phi.radians();
    TimedOutcome alice{static_cast<std::int8_t>(sgn(std::cos(phi - a.radians()))), h.slot_coin};
    TimedOutcome bob{static_cast<std::int8_t>(-sgn(std::cos(phi - b.radians()))), h.slot_coin};

    const bool alice_filtered = h.side_coin == Side::A;
    const double w = circle_keep_weight(h.phi, alice_filtered ? a : b);
    if (!(h.r < w)) {
        TimedOutcome& displaced = alice_filtered ? alice : bob;
        displaced.slot = other(h.slot_coin);
        displaced.value = alice_filtered ? h.u_a : h.u_b;
    }
    return {alice, bob, emission_index, emission_time};
}

FransonRecord quantum_franson_trial(TrialRng& rng, Angle alpha, Angle beta, double visibility,
                                    double emission_time, std::uint64_t emission_index)
{
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw InvalidArgument("visibility must lie in [0, 1]");
    }
    const bool coincident = rng.uniform() < 0.5;
    const bool first = rng.uniform() < 0.5;
    const std::int8_t va = rng.uniform() < 0.5 ? 1 : -1;
    const double u = rng.uniform();

    FransonRecord rec;
    rec.emission_index = emission_index;
    rec.emission_time = emission_time;
    if (coincident) {
        const Slot slot = first ? Slot::Early : Slot::Late;
        // P(bob = -alice) = (1 + V cos(alpha + beta)) / 2
        const double p_anti = 0.5 * (1.0 + visibility * std::cos(alpha.radians() + beta.radians()));
        const std::int8_t vb = u < p_anti ? static_cast<std::int8_t>(-va) : va;
        rec.alice = {va, slot};
        rec.bob = {vb, slot};
    } else {
        const std::int8_t vb = u < 0.5 ? 1 : -1;
        rec.alice = {va, first ? Slot::Early : Slot::Late};
        rec.bob = {vb, first ? Slot::Late : Slot::Early};
    }
    return rec;
}

std::vector<PhaseBin> bin_by_detection_phase(std::span<const FransonRecord> records, const PhaseSchedule& sched,
                                             double delta_t)
{
    std::map<std::pair<double, double>, CorrelationCounts> bins;
    for (const FransonRecord& rec : records) {
        if (!rec.coincident()) {
            continue;
        }
        const double t = rec.emission_time + (rec.alice.slot == Slot::Late ? delta_t : 0.0);
        bins[{sched.alpha_at(t).radians(), sched.beta_at(t).radians()}].add(rec.alice.value, rec.bob.value);
    }
    std::vector<PhaseBin> out;
    out.reserve(bins.size());
    for (const auto& [key, counts] : bins) {
        out.push_back({Angle(key.first), Angle(key.second), counts, estimate_from_counts(counts)});
    }
    return out;
}

}  // namespace lhv
