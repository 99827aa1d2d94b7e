#include "lhvlab/errors.hpp"
#include "lhvlab/franson.hpp"
#include "lhvlab/stats.hpp"

#include "doctest.h"

#include <array>
#include <cmath>
#include <map>
#include <vector>

using namespace lhv;

namespace {

constexpr int kN = 1'000'000;
constexpr double kWindow = 1e4;

std::vector<FransonRecord> simulate(const PhaseSchedule& sched, int n, std::uint64_t seed, double delta_t = 1.0)
{
    std::vector<FransonRecord> out(n);
    for (int i = 0; i < n; ++i) {
        TrialRng rng = derive_trial_rng(seed, 0, i);
        const double t = kWindow * delta_t * rng.uniform();
        out[i] = franson_trial(sample_franson_hidden(rng), sched, delta_t, t, i);
    }
    return out;
}

std::vector<FransonRecord> simulate_quantum(Angle alpha, Angle beta, double v, int n, std::uint64_t seed)
{
    std::vector<FransonRecord> out(n);
    for (int i = 0; i < n; ++i) {
        TrialRng rng = derive_trial_rng(seed, 0, i);
        out[i] = quantum_franson_trial(rng, alpha, beta, v);
    }
    return out;
}

/// 16-cell joint distribution: slot pattern (EE, LL, early-A, early-B) x value pattern.
std::array<double, 16> joint(const std::vector<FransonRecord>& recs)
{
    std::array<double, 16> cells{};
    for (const FransonRecord& r : recs) {
        int slot = 0;
        if (r.coincident()) {
            slot = r.alice.slot == Slot::Early ? 0 : 1;
        } else {
            slot = r.alice.slot == Slot::Early ? 2 : 3;
        }
        const int val = (r.alice.value > 0 ? 0 : 2) + (r.bob.value > 0 ? 0 : 1);
        cells[slot * 4 + val] += 1.0;
    }
    for (double& c : cells) {
        c /= static_cast<double>(recs.size());
    }
    return cells;
}

/*!
 * Exact-probability oracle for detection-time binning under a square
 * schedule holding each level for `hold` time units.
 *
 * Coincident pairs are half Early, half Late. The plan is committed to the
 * emission-time phase sum, so a pair contributes -cos(X_emit) to the bin of
 * the phase sum in force at detection. Emission offsets are uniform over one
 * full cycle; the integral over offsets is evaluated on a fine midpoint grid.
 */
std::map<int, double> switching_oracle(double hold, double delta_t, std::array<double, 2> level_sums)
{
    const int m = 400'000;
    std::array<double, 2> sum{};
    std::array<double, 2> weight{};
    const auto level = [hold](double t) { return static_cast<int>(static_cast<long long>(std::floor(t / hold)) & 1); };
    for (int i = 0; i < m; ++i) {
        const double u = (i + 0.5) * 2 * hold / m;
        const int emit = level(u);
        for (double offset : {0.0, delta_t}) {
            const int det = level(u + offset);
            sum[det] += -std::cos(level_sums[emit]);
            weight[det] += 1.0;
        }
    }
    return {{0, sum[0] / weight[0]}, {1, sum[1] / weight[1]}};
}

}  // namespace

TEST_CASE("trial branches")
{
    FransonHidden h;
    h.phi = Angle(0.3);
    h.slot_coin = Slot::Late;
    h.side_coin = Side::A;
    h.u_a = -1;
    h.u_b = 1;
    const PhaseSchedule s = PhaseSchedule::constant(Angle(0.1), Angle(0.2));

    SUBCASE("kept: both in slot_coin, coincident")
    {
        h.r = 0.0;
        const FransonRecord r = franson_trial(h, s, 1.0, 5.0, 3);
        CHECK(r.coincident());
        CHECK(r.alice.slot == Slot::Late);
        CHECK(r.bob.slot == Slot::Late);
        CHECK(r.alice.value == sgn(std::cos(0.3 - 0.1)));
        CHECK(r.bob.value == -sgn(std::cos(0.3 + 0.2)));
        CHECK(r.emission_index == 3);
    }
    SUBCASE("erased: filtered side displaced with its private value")
    {
        h.r = 0.99;
        FransonRecord r = franson_trial(h, s, 1.0, 5.0);
        CHECK(!r.coincident());
        CHECK(r.alice.slot == Slot::Early);
        CHECK(r.alice.value == -1);
        CHECK(r.bob.slot == Slot::Late);
        h.side_coin = Side::B;
        r = franson_trial(h, s, 1.0, 5.0);
        CHECK(r.bob.slot == Slot::Early);
        CHECK(r.bob.value == 1);
        CHECK(r.alice.slot == Slot::Late);
    }
    CHECK_THROWS_AS(franson_trial(h, s, 0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(franson_trial(h, s, -1.0, 1.0), InvalidArgument);
}

TEST_CASE("phase schedules")
{
    PhaseSchedule s;
    s.base_alpha = Angle(0.5);
    s.base_beta = Angle(1.0);
    s.waveform = Waveform::Square;
    s.period = 2.0;
    s.amplitude = Angle(0.25);
    CHECK(s.level_at(0.0) == 0);
    CHECK(s.level_at(1.99) == 0);
    CHECK(s.level_at(2.0) == 1);
    CHECK(s.level_at(3.5) == 1);
    CHECK(s.level_at(4.0) == 0);
    CHECK(s.level_at(-0.5) == 1);
    CHECK(s.alpha_at(2.5).radians() == doctest::Approx(0.75));
    CHECK(s.beta_at(0.5).radians() == doctest::Approx(1.0));
    CHECK(s.alpha_at(7.3) == s.alpha_at(7.3));
    s.period = 0.0;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    CHECK(PhaseSchedule::constant(Angle(1), Angle(2)).alpha_at(1e6).radians() == 1.0);
}

TEST_CASE("static statistics")
{
    const PhaseSchedule s = PhaseSchedule::constant(Angle(kPi / 6), Angle(kPi / 6));
    const auto recs = simulate(s, kN, 42);
    const FransonSummary sum = summarize_franson(recs);
    CHECK(sum.missing_clicks == 0);
    CHECK(std::abs(sum.coincident_fraction() - 0.5) < 0.003);
    CHECK(sum.slot_imbalance() < 0.006);
    CHECK(sum.side_imbalance() < 0.006);
    CHECK(std::abs(estimate_correlation(recs).e_hat + 0.5) < 0.005);
    const CorrEstimate nc = estimate_noncoincident_correlation(recs);
    CHECK(std::abs(nc.e_hat) <= 4 * nc.se);
    const Marginals m = marginals(recs);
    CHECK(std::abs(m.alice.plus_z()) < 4);
    CHECK(std::abs(m.bob.plus_z()) < 4);
    CHECK(std::abs(m.alice.singles_z()) < 4);
    CHECK(std::abs(m.bob.singles_z()) < 4);
}

TEST_CASE("joint distribution matches the quantum Franson sampler")
{
    for (auto [alpha, beta] : {std::pair{0.0, 0.0}, {kPi / 3, 0.0}, {1.0, 1.4}, {2.0, -0.3}}) {
        const auto model = simulate(PhaseSchedule::constant(Angle(alpha), Angle(beta)), kN, 7);
        const auto quantum = simulate_quantum(Angle(alpha), Angle(beta), 1.0, kN, 8);
        const auto pm = joint(model);
        const auto pq = joint(quantum);
        for (int c = 0; c < 16; ++c) {
            const double se = std::sqrt(pm[c] * (1 - pm[c]) / kN + pq[c] * (1 - pq[c]) / kN);
            CHECK(std::abs(pm[c] - pq[c]) <= std::max(5 * se, 1e-12));
        }
    }
}

TEST_CASE("quantum Franson sampler")
{
    SUBCASE("zero visibility")
    {
        const auto r = simulate_quantum(Angle(0.3), Angle(0.4), 0.0, kN, 1);
        CHECK(std::abs(estimate_correlation(r).e_hat) < 0.003);
    }
    SUBCASE("alpha + beta = 0 anticorrelates coincidences")
    {
        const auto r = simulate_quantum(Angle(0.7), Angle(-0.7), 1.0, 10'000, 2);
        for (const FransonRecord& rec : r) {
            if (rec.coincident()) {
                CHECK(rec.alice.value == -rec.bob.value);
            }
        }
    }
    SUBCASE("slots are balanced")
    {
        const FransonSummary s = summarize_franson(simulate_quantum(Angle(0), Angle(0), 1.0, kN, 3));
        CHECK(s.slot_imbalance() < 0.006);
        CHECK(std::abs(s.coincident_fraction() - 0.5) < 0.003);
    }
    TrialRng rng(1);
    CHECK_THROWS_AS(quantum_franson_trial(rng, Angle(0), Angle(0), 1.5), InvalidArgument);
    CHECK_THROWS_AS(quantum_franson_trial(rng, Angle(0), Angle(0), -0.1), InvalidArgument);
}

TEST_CASE("locality of the delayed-detection model")
{
    for (const PhaseSchedule& alt : {PhaseSchedule::constant(Angle(0.4), Angle(2.0)),
                                     PhaseSchedule::constant(Angle(0.4), Angle(5.1))}) {
        const PhaseSchedule base = PhaseSchedule::constant(Angle(0.4), Angle(0.9));
        for (int i = 0; i < 20'000; ++i) {
            TrialRng g = derive_trial_rng(42, 0, i);
            const FransonHidden h = sample_franson_hidden(g);
            REQUIRE(franson_trial(h, base, 1.0, 3.0).alice == franson_trial(h, alt, 1.0, 3.0).alice);
        }
    }
}

TEST_CASE("switching oracle values")
{
    // Scenario schedule: phase sums pi/3 and pi/3 + pi/2
    const std::array<double, 2> sums{kPi / 3, 5 * kPi / 6};
    const auto fast = switching_oracle(1.0, 1.0, sums);
    const auto slow = switching_oracle(100.0, 1.0, sums);
    // frozen: (cos X0 - cos X1) / 2 and 1/200 of the same gap
    CHECK(std::abs(fast.at(0) + std::cos(sums[0])) == doctest::Approx(0.6830127).epsilon(1e-6));
    CHECK(std::abs(fast.at(1) + std::cos(sums[1])) == doctest::Approx(0.6830127).epsilon(1e-6));
    CHECK(std::abs(slow.at(0) + std::cos(sums[0])) == doctest::Approx(0.0068301).epsilon(1e-4));
    CHECK(std::abs(slow.at(1) + std::cos(sums[1])) == doctest::Approx(0.0068301).epsilon(1e-4));
}

TEST_CASE("detection-time binning")
{
    SUBCASE("constant schedule gives one bin")
    {
        const PhaseSchedule s = PhaseSchedule::constant(Angle(0.5), Angle(0.7));
        const auto bins = bin_by_detection_phase(simulate(s, 200'000, 4), s, 1.0);
        REQUIRE(bins.size() == 1);
        CHECK(std::abs(bins[0].estimate.e_hat + std::cos(1.2)) < 0.005);
    }

    PhaseSchedule s;
    s.base_alpha = Angle(0.0);
    s.base_beta = Angle(kPi / 3);
    s.waveform = Waveform::Square;
    s.amplitude = Angle(kPi / 4);
    const std::array<double, 2> sums{kPi / 3, 5 * kPi / 6};

    SUBCASE("slow switching tracks -cos(alpha + beta)")
    {
        s.period = 100.0;
        const auto bins = bin_by_detection_phase(simulate(s, kN, 42), s, 1.0);
        REQUIRE(bins.size() == 2);
        const auto oracle = switching_oracle(100.0, 1.0, sums);
        for (const PhaseBin& b : bins) {
            const double x = b.alpha.radians() + b.beta.radians();
            const int level = std::abs(x - sums[0]) < 1e-9 ? 0 : 1;
            CHECK(std::abs(b.estimate.e_hat + std::cos(x)) <= 0.02);
            CHECK(std::abs(b.estimate.e_hat - oracle.at(level)) < 5 * b.estimate.se);
        }
    }
    SUBCASE("switching every dT breaks the model")
    {
        s.period = 1.0;
        const auto bins = bin_by_detection_phase(simulate(s, kN, 42), s, 1.0);
        REQUIRE(bins.size() == 2);
        const auto oracle = switching_oracle(1.0, 1.0, sums);
        bool any_large = false;
        for (const PhaseBin& b : bins) {
            const double x = b.alpha.radians() + b.beta.radians();
            const int level = std::abs(x - sums[0]) < 1e-9 ? 0 : 1;
            const double residual = std::abs(b.estimate.e_hat + std::cos(x));
            any_large = any_large || (residual > 0.1 && residual > 10 * b.estimate.se);
            CHECK(std::abs(b.estimate.e_hat - oracle.at(level)) < 5 * b.estimate.se);
        }
        CHECK(any_large);
    }
}
