#include "lhvlab/stats.hpp"

#include "lhvlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lhv {

namespace {

constexpr double kThetaSlack = 1e-12;

void require_theta(double theta)
{
    if (!(theta >= -kThetaSlack && theta <= kPi + kThetaSlack)) {
        throw InvalidArgument("theta must lie in [0, pi], got " + std::to_string(theta));
    }
}

void require_correlation(double e)
{
    if (!(e >= -1.0 && e <= 1.0)) {
        throw InvalidArgument("correlation must lie in [-1, 1], got " + std::to_string(e));
    }
}

}  // namespace

CorrEstimate estimate_from_counts(const CorrelationCounts& counts)
{
    const std::uint64_t n = counts.total();
    if (n == 0) {
        throw EmptySample("no coincidences to estimate a correlation from");
    }
    const double agree = static_cast<double>(counts.pp + counts.mm);
    const double disagree = static_cast<double>(counts.pm + counts.mp);
    const double e = (agree - disagree) / static_cast<double>(n);
    return {e, std::sqrt(std::max(0.0, 1.0 - e * e) / static_cast<double>(n)), n};
}

CorrelationCounts count_coincidences(std::span<const TrialRecord> records)
{
    CorrelationCounts c;
    for (const TrialRecord& r : records) {
        if (r.alice.clicked() && r.bob.clicked()) {
            c.add(r.alice.value(), r.bob.value());
        }
    }
    return c;
}

CorrelationCounts count_coincidences(std::span<const FransonRecord> records)
{
    CorrelationCounts c;
    for (const FransonRecord& r : records) {
        if (r.coincident()) {
            c.add(r.alice.value, r.bob.value);
        }
    }
    return c;
}

CorrEstimate estimate_correlation(std::span<const TrialRecord> records)
{
    return estimate_from_counts(count_coincidences(records));
}

CorrEstimate estimate_correlation(std::span<const FransonRecord> records)
{
    return estimate_from_counts(count_coincidences(records));
}

CorrEstimate estimate_noncoincident_correlation(std::span<const FransonRecord> records)
{
    CorrelationCounts c;
    for (const FransonRecord& r : records) {
        if (!r.coincident()) {
            c.add(r.alice.value, r.bob.value);
        }
    }
    return estimate_from_counts(c);
}

double quantum_corr(double theta)
{
    require_theta(theta);
    return -std::cos(theta);
}

double linear_corr(double theta)
{
    require_theta(theta);
    return -1.0 + 2.0 * theta / kPi;
}

double chsh(double e_ab, double e_ab2, double e_a2b, double e_a2b2)
{
    for (double e : {e_ab, e_ab2, e_a2b, e_a2b2}) {
        require_correlation(e);
    }
    return e_ab + e_a2b + e_a2b2 - e_ab2;
}

ChshEstimate chsh(const CorrEstimate& e_ab, const CorrEstimate& e_ab2, const CorrEstimate& e_a2b,
                  const CorrEstimate& e_a2b2)
{
    return {chsh(e_ab.e_hat, e_ab2.e_hat, e_a2b.e_hat, e_a2b2.e_hat),
            std::sqrt(e_ab.se * e_ab.se + e_ab2.se * e_ab2.se + e_a2b.se * e_a2b.se + e_a2b2.se * e_a2b2.se)};
}

double lhv_efficiency_bound(double eta)
{
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw InvalidArgument("efficiency must lie in (0, 1]");
    }
    return 4.0 / eta - 2.0;
}

double efficiency_threshold()
{
    return 2.0 / (1.0 + std::numbers::sqrt2);
}

RatesSummary detection_rates(std::span<const TrialRecord> records)
{
    if (records.empty()) {
        throw EmptySample("detection_rates: no records");
    }
    std::uint64_t counts[4] = {0, 0, 0, 0};
    for (const TrialRecord& r : records) {
        ++counts[static_cast<int>(r.pattern())];
    }
    const double n = static_cast<double>(records.size());
    RatesSummary s;
    s.f_cc = static_cast<double>(counts[0]) / n;
    s.f_a_only = static_cast<double>(counts[1]) / n;
    s.f_b_only = static_cast<double>(counts[2]) / n;
    s.f_none = static_cast<double>(counts[3]) / n;
    s.n_trials = records.size();
    return s;
}

double effective_efficiency(const RatesSummary& rates)
{
    const double denom = rates.f_cc + rates.f_a_only;
    if (!(rates.f_cc > 0.0) || !(denom > 0.0)) {
        throw EmptySample("effective_efficiency: no coincidences");
    }
    return rates.f_cc / denom;
}

double naive_efficiency(const RatesSummary& rates)
{
    const double denom = rates.f_cc + rates.f_a_only + rates.f_b_only;
    if (!(rates.f_cc > 0.0) || !(denom > 0.0)) {
        throw EmptySample("naive_efficiency: no coincidences");
    }
    return std::sqrt(rates.f_cc / denom);
}

double singles_to_coincidence_ratio(const RatesSummary& rates)
{
    if (!(rates.f_cc > 0.0)) {
        throw EmptySample("singles_to_coincidence_ratio: no coincidences");
    }
    return (rates.f_a_only + rates.f_b_only) / rates.f_cc;
}

double FransonSummary::coincident_fraction() const
{
    if (n_trials == 0) {
        throw EmptySample("FransonSummary: no records");
    }
    return static_cast<double>(coincident) / static_cast<double>(n_trials);
}

double FransonSummary::slot_imbalance() const
{
    if (n_trials == 0) {
        throw EmptySample("FransonSummary: no records");
    }
    const double d = static_cast<double>(coincident_early) - static_cast<double>(coincident_late);
    return std::abs(d) / static_cast<double>(n_trials);
}

double FransonSummary::side_imbalance() const
{
    if (n_trials == 0) {
        throw EmptySample("FransonSummary: no records");
    }
    const double d = static_cast<double>(noncoincident_early_a) - static_cast<double>(noncoincident_early_b);
    return std::abs(d) / static_cast<double>(n_trials);
}

FransonSummary summarize_franson(std::span<const FransonRecord> records)
{
    FransonSummary s;
    s.n_trials = records.size();
    for (const FransonRecord& r : records) {
        if ((r.alice.value != 1 && r.alice.value != -1) || (r.bob.value != 1 && r.bob.value != -1)) {
            ++s.missing_clicks;
        }
        if (r.coincident()) {
            ++s.coincident;
            ++(r.alice.slot == Slot::Early ? s.coincident_early : s.coincident_late);
        } else {
            ++(r.alice.slot == Slot::Early ? s.noncoincident_early_a : s.noncoincident_early_b);
        }
    }
    return s;
}

double SideMarginal::plus_z() const
{
    if (clicks == 0) {
        throw EmptySample("marginal: no clicks");
    }
    const double n = static_cast<double>(clicks);
    return (static_cast<double>(plus) / n - 0.5) / std::sqrt(0.25 / n);
}

double SideMarginal::singles_z() const
{
    if (singles == 0) {
        return 0.0;
    }
    return static_cast<double>(singles_sum) / std::sqrt(static_cast<double>(singles));
}

namespace {

void tally(SideMarginal& m, int value, bool single)
{
    ++m.clicks;
    if (value > 0) {
        ++m.plus;
    }
    if (single) {
        ++m.singles;
        m.singles_sum += value;
    }
}

}  // namespace

Marginals marginals(std::span<const TrialRecord> records)
{
    Marginals m;
    for (const TrialRecord& r : records) {
        if (r.alice.clicked()) {
            tally(m.alice, r.alice.value(), !r.bob.clicked());
        }
        if (r.bob.clicked()) {
            tally(m.bob, r.bob.value(), !r.alice.clicked());
        }
    }
    return m;
}

Marginals marginals(std::span<const FransonRecord> records)
{
    Marginals m;
    for (const FransonRecord& r : records) {
        const bool single = !r.coincident();
        tally(m.alice, r.alice.value, single);
        tally(m.bob, r.bob.value, single);
    }
    return m;
}

double visibility_fit(std::span<const VisibilityPoint> points)
{
    if (points.size() < 2) {
        throw InvalidArgument("visibility_fit: need at least two points");
    }
    const bool weighted = std::ranges::all_of(points, [](const VisibilityPoint& p) { return p.se > 0.0; });
    double num = 0.0;
    double den = 0.0;
    double wsum = 0.0;
    for (const VisibilityPoint& p : points) {
        const double w = weighted ? 1.0 / (p.se * p.se) : 1.0;
        const double c = std::cos(p.x);
        num += w * p.e_hat * -c;
        den += w * c * c;
        wsum += w;
    }
    if (!(den > 1e-12 * wsum)) {
        throw InvalidArgument("visibility_fit: degenerate design, all cos x are zero");
    }
    return num / den;
}

double noncoplanar_deviation(std::span<const DirectionPair> pairs, std::span<const CorrEstimate> estimates)
{
    if (pairs.size() != estimates.size() || pairs.empty()) {
        throw InvalidArgument("noncoplanar_deviation: need one estimate per settings pair");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double target = quantum_corr(relative_angle(pairs[i].a, pairs[i].b));
        worst = std::max(worst, std::abs(estimates[i].e_hat - target));
    }
    return worst;
}

}  // namespace lhv
