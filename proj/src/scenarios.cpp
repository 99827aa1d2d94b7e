#include "lhvlab/scenarios.hpp"

#include "lhvlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lhv {

namespace {

Json estimate_json(const CorrEstimate& e)
{
    return Json{{"e_hat", sig6(e.e_hat)}, {"se", sig6(e.se)}, {"n_coinc", e.n_coinc}};
}

Json rates_json(const RatesSummary& r)
{
    return Json{{"f_cc", sig6(r.f_cc)},
                {"f_a_only", sig6(r.f_a_only)},
                {"f_b_only", sig6(r.f_b_only)},
                {"f_none", sig6(r.f_none)},
                {"n_trials", r.n_trials}};
}

Json header(const RunConfig& cfg)
{
    return Json{{"version", std::string(kVersion)}, {"config", to_json(cfg)}};
}

ExperimentSpec base_spec(const RunConfig& cfg, ModelKind kind)
{
    ExperimentSpec spec;
    spec.model = model_spec(cfg, kind);
    spec.n_trials = *cfg.trials;
    spec.master_seed = cfg.seed;
    spec.threads = cfg.threads;
    return spec;
}

std::string label(std::string_view model, std::string_view what, std::size_t index)
{
    return std::string(model) + "/" + std::string(what) + "#" + std::to_string(index);
}

RatesSummary pooled_rates(const Dataset& ds)
{
    std::vector<TrialRecord> all;
    for (const PairData& p : ds.pairs) {
        all.insert(all.end(), p.bell.begin(), p.bell.end());
    }
    return detection_rates(all);
}

}  // namespace

std::string render(const Json& j)
{
    return j.dump(2) + "\n";
}

PhaseSchedule switching_schedule(double period)
{
    PhaseSchedule s;
    s.base_alpha = Angle(0.0);
    s.base_beta = Angle(kPi / 3);
    s.waveform = Waveform::Square;
    s.period = period;
    s.amplitude = Angle(kPi / 4);
    return s;
}

//---------------------------------------------------------------------------//
// sweep
//---------------------------------------------------------------------------//

SweepResult run_sweep(const RunConfig& cfg)
{
    const ModelKind kind = parse_model_kind(cfg.model);
    ExperimentSpec spec = base_spec(cfg, kind);
    for (double theta : cfg.grid) {
        if (!(theta >= 0.0 && theta <= kPi + 1e-12)) {
            throw ConfigError("sweep grid values must lie in [0, pi]");
        }
        spec.settings.emplace_back(AnglePair{Angle(0.0), Angle(theta)});
    }
    const Dataset ds = run_experiment(spec);
    SweepResult r{cfg, {}, {}};
    for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
        r.points.push_back({cfg.grid[i], estimate_correlation(ds.pairs[i].bell)});
        r.marginals.push_back({label(cfg.model, "sweep", i), marginals(ds.pairs[i].bell)});
    }
    return r;
}

std::string sweep_csv(const SweepResult& r)
{
    std::ostringstream os;
    os << "# config: " << to_json(r.cfg).dump() << "\n";
    os << "theta,e_hat,se,n_coinc,e_quantum,e_linear\n";
    for (const SweepPoint& p : r.points) {
        const double theta = std::min(p.theta, kPi);
        os << fmt6(p.theta) << ',' << fmt6(p.estimate.e_hat) << ',' << fmt6(p.estimate.se) << ','
           << p.estimate.n_coinc << ',' << fmt6(quantum_corr(theta)) << ',' << fmt6(linear_corr(theta)) << "\n";
    }
    return os.str();
}

Json to_json(const SweepResult& r)
{
    Json j = header(r.cfg);
    j["points"] = Json::array();
    double max_q = 0.0;
    for (const SweepPoint& p : r.points) {
        const double theta = std::min(p.theta, kPi);
        max_q = std::max(max_q, std::abs(p.estimate.e_hat - quantum_corr(theta)));
        Json row{{"theta", sig6(p.theta)}};
        row.update(estimate_json(p.estimate));
        row["e_quantum"] = sig6(quantum_corr(theta));
        row["e_linear"] = sig6(linear_corr(theta));
        j["points"].push_back(row);
    }
    j["max_residual_quantum"] = sig6(max_q);
    return j;
}

//---------------------------------------------------------------------------//
// rates
//---------------------------------------------------------------------------//

RatesResult run_rates(const RunConfig& cfg)
{
    const ModelKind kind = parse_model_kind(cfg.model);
    ExperimentSpec spec = base_spec(cfg, kind);
    spec.settings.emplace_back(AnglePair{Angle(0.0), Angle(kPi / 4)});
    const Dataset ds = run_experiment(spec);
    const std::vector<TrialRecord>& recs = ds.pairs.front().bell;

    RatesResult r;
    r.cfg = cfg;
    r.rates = detection_rates(recs);
    r.effective_efficiency = effective_efficiency(r.rates);
    r.naive_efficiency = naive_efficiency(r.rates);
    r.singles_to_coinc_ratio = singles_to_coincidence_ratio(r.rates);
    r.marginals.push_back({label(cfg.model, "rates", 0), marginals(recs)});
    return r;
}

Json to_json(const RatesResult& r)
{
    Json j = header(r.cfg);
    j.update(rates_json(r.rates));
    j["effective_efficiency"] = sig6(r.effective_efficiency);
    j["naive_efficiency"] = sig6(r.naive_efficiency);
    j["singles_to_coinc_ratio"] = sig6(r.singles_to_coinc_ratio);
    return j;
}

//---------------------------------------------------------------------------//
// chsh
//---------------------------------------------------------------------------//

ChshResult run_chsh(const RunConfig& cfg)
{
    const ModelKind kind = parse_model_kind(cfg.model);
    const Angle a(cfg.chsh_angles[0]);
    const Angle a2(cfg.chsh_angles[1]);
    const Angle b(cfg.chsh_angles[2]);
    const Angle b2(cfg.chsh_angles[3]);

    ChshResult r;
    r.cfg = cfg;
    r.settings = {AnglePair{a, b}, AnglePair{a, b2}, AnglePair{a2, b}, AnglePair{a2, b2}};
    ExperimentSpec spec = base_spec(cfg, kind);
    for (const AnglePair& p : r.settings) {
        spec.settings.emplace_back(p);
    }
    const Dataset ds = run_experiment(spec);
    for (std::size_t i = 0; i < 4; ++i) {
        r.estimates[i] = estimate_correlation(ds.pairs[i].bell);
        r.marginals.push_back({label(cfg.model, "chsh", i), marginals(ds.pairs[i].bell)});
    }
    r.s = chsh(r.estimates[0], r.estimates[1], r.estimates[2], r.estimates[3]);
    r.rates = pooled_rates(ds);
    r.effective_efficiency = effective_efficiency(r.rates);
    r.bound_at_measured = lhv_efficiency_bound(r.effective_efficiency);
    r.bound_at_two_thirds = lhv_efficiency_bound(2.0 / 3.0);

    const double abs_s = std::abs(r.s.s);
    if (abs_s - 2.0 <= 3.0 * r.s.se) {
        r.verdict = "no violation";
    } else if (abs_s <= r.bound_at_measured) {
        r.verdict = "loophole-consistent";
    } else {
        r.verdict = "genuine violation";
    }
    return r;
}

Json to_json(const ChshResult& r)
{
    static constexpr const char* kNames[4] = {"E(a,b)", "E(a,b')", "E(a',b)", "E(a',b')"};
    Json j = header(r.cfg);
    j["correlations"] = Json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        Json row{{"term", kNames[i]},
                 {"alice", sig6(r.settings[i].a.radians())},
                 {"bob", sig6(r.settings[i].b.radians())}};
        row.update(estimate_json(r.estimates[i]));
        j["correlations"].push_back(row);
    }
    j["S"] = sig6(r.s.s);
    j["abs_S"] = sig6(std::abs(r.s.s));
    j["se_S"] = sig6(r.s.se);
    j["rates"] = rates_json(r.rates);
    j["effective_efficiency"] = sig6(r.effective_efficiency);
    j["lhv_efficiency_bound"] = sig6(r.bound_at_measured);
    j["lhv_efficiency_bound_at_2_3"] = sig6(r.bound_at_two_thirds);
    j["quantum_abs_S"] = sig6(2.0 * std::numbers::sqrt2);
    j["verdict"] = r.verdict;
    return j;
}

//---------------------------------------------------------------------------//
// noncoplanar
//---------------------------------------------------------------------------//

NoncoplanarResult run_noncoplanar(const RunConfig& cfg)
{
    NoncoplanarResult r;
    r.cfg = cfg;

    std::vector<CorrEstimate> sphere_e;
    std::vector<CorrEstimate> circle_e;
    for (ModelKind kind : {ModelKind::SphereErasure, ModelKind::Circle3d}) {
        ExperimentSpec spec = base_spec(cfg, kind);
        for (const DirectionPair& p : cfg.pairs) {
            spec.settings.emplace_back(p);
        }
        const Dataset ds = run_experiment(spec);
        auto& dest = kind == ModelKind::SphereErasure ? sphere_e : circle_e;
        for (std::size_t i = 0; i < ds.pairs.size(); ++i) {
            dest.push_back(estimate_correlation(ds.pairs[i].bell));
            r.marginals.push_back({label(to_string(kind), "noncoplanar", i), marginals(ds.pairs[i].bell)});
        }
    }

    for (std::size_t i = 0; i < cfg.pairs.size(); ++i) {
        NoncoplanarRow row;
        row.pair = cfg.pairs[i];
        row.relative_angle = relative_angle(row.pair.a, row.pair.b);
        row.azimuth_gap = angular_distance(azimuth(row.pair.a), azimuth(row.pair.b));
        row.sphere = sphere_e[i];
        row.circle = circle_e[i];
        row.quantum = quantum_corr(row.relative_angle);
        row.sphere_deviation = std::abs(row.sphere.e_hat - row.quantum);
        row.circle_deviation = std::abs(row.circle.e_hat - row.quantum);
        r.rows.push_back(row);
    }
    r.sphere_max_deviation = noncoplanar_deviation(cfg.pairs, sphere_e);
    r.circle_max_deviation = noncoplanar_deviation(cfg.pairs, circle_e);
    return r;
}

Json to_json(const NoncoplanarResult& r)
{
    Json j = header(r.cfg);
    j["pairs"] = Json::array();
    for (const NoncoplanarRow& row : r.rows) {
        j["pairs"].push_back(Json{
            {"a", Json::array({sig6(row.pair.a.x()), sig6(row.pair.a.y()), sig6(row.pair.a.z())})},
            {"b", Json::array({sig6(row.pair.b.x()), sig6(row.pair.b.y()), sig6(row.pair.b.z())})},
            {"relative_angle", sig6(row.relative_angle)},
            {"azimuth_gap", sig6(row.azimuth_gap)},
            {"e_hat_sphere", sig6(row.sphere.e_hat)},
            {"se_sphere", sig6(row.sphere.se)},
            {"e_hat_circle", sig6(row.circle.e_hat)},
            {"se_circle", sig6(row.circle.se)},
            {"e_quantum", sig6(row.quantum)},
            {"deviation_sphere", sig6(row.sphere_deviation)},
            {"deviation_circle", sig6(row.circle_deviation)},
        });
    }
    j["max_deviation"] = Json{{"sphere", sig6(r.sphere_max_deviation)}, {"circle-3d", sig6(r.circle_max_deviation)}};
    return j;
}

//---------------------------------------------------------------------------//
// franson
//---------------------------------------------------------------------------//

FransonResult run_franson(const RunConfig& cfg)
{
    const ModelKind kind = parse_model_kind(cfg.model);
    FransonResult r;
    r.cfg = cfg;
    r.switching = cfg.period.has_value();

    ExperimentSpec spec = base_spec(cfg, kind);
    if (r.switching) {
        r.schedule = switching_schedule(*cfg.period);
        spec.settings.emplace_back(r.schedule);
    } else {
        for (int k = 0; k < kStaticFransonPoints; ++k) {
            spec.settings.emplace_back(PhaseSchedule::constant(Angle(kTwoPi * k / kStaticFransonPoints), Angle(0.0)));
        }
    }
    const Dataset ds = run_experiment(spec);

    std::vector<FransonRecord> all;
    for (std::size_t i = 0; i < ds.pairs.size(); ++i) {
        const auto& recs = ds.pairs[i].franson;
        all.insert(all.end(), recs.begin(), recs.end());
        r.marginals.push_back({label(cfg.model, r.switching ? "switching" : "static", i), marginals(recs)});
    }
    r.summary = summarize_franson(all);
    r.noncoincident = estimate_noncoincident_correlation(all);

    if (r.switching) {
        for (const PhaseBin& bin : bin_by_detection_phase(ds.pairs.front().franson, r.schedule, cfg.delta_t)) {
            FransonBinRow row;
            row.alpha = bin.alpha.radians();
            row.beta = bin.beta.radians();
            row.estimate = bin.estimate;
            row.quantum = -std::cos(row.alpha + row.beta);
            row.residual = std::abs(row.estimate.e_hat - row.quantum);
            row.residual_in_se = row.estimate.se > 0.0 ? row.residual / row.estimate.se
                                                       : (row.residual > 0.0 ? INFINITY : 0.0);
            r.max_residual = std::max(r.max_residual, row.residual);
            r.max_residual_in_se = std::max(r.max_residual_in_se, row.residual_in_se);
            r.bins.push_back(row);
        }
        r.verdict = r.max_residual_in_se > kDeviationSigmas
                        ? "fast switching: detection-time statistics deviate from -cos(alpha+beta)"
                        : "slow switching: detection-time statistics match -cos(alpha+beta)";
    } else {
        std::vector<VisibilityPoint> vp;
        for (std::size_t i = 0; i < ds.pairs.size(); ++i) {
            const auto& sched = std::get<PhaseSchedule>(ds.pairs[i].settings);
            FransonPoint p;
            p.alpha = sched.base_alpha.radians();
            p.beta = sched.base_beta.radians();
            p.estimate = estimate_correlation(ds.pairs[i].franson);
            p.quantum = -std::cos(p.alpha + p.beta);
            r.max_residual = std::max(r.max_residual, std::abs(p.estimate.e_hat - p.quantum));
            r.points.push_back(p);
            vp.push_back({p.alpha + p.beta, p.estimate.e_hat, p.estimate.se});
        }
        r.visibility = visibility_fit(vp);
        r.verdict = "static phases";
    }
    return r;
}

Json to_json(const FransonResult& r)
{
    Json j = header(r.cfg);
    j["mode"] = r.switching ? "switching" : "static";
    j["n_trials"] = r.summary.n_trials;
    j["coincident_fraction"] = sig6(r.summary.coincident_fraction());
    j["coincident_early"] = r.summary.coincident_early;
    j["coincident_late"] = r.summary.coincident_late;
    j["slot_imbalance"] = sig6(r.summary.slot_imbalance());
    j["noncoincident_early_a"] = r.summary.noncoincident_early_a;
    j["noncoincident_early_b"] = r.summary.noncoincident_early_b;
    j["records_missing_a_click"] = r.summary.missing_clicks;
    j["noncoincident_correlation"] = estimate_json(r.noncoincident);
    if (r.switching) {
        j["schedule"] = Json{{"base_alpha", sig6(r.schedule.base_alpha.radians())},
                             {"base_beta", sig6(r.schedule.base_beta.radians())},
                             {"waveform", "square"},
                             {"period", sig6(r.schedule.period)},
                             {"amplitude", sig6(r.schedule.amplitude.radians())}};
        j["bins"] = Json::array();
        for (const FransonBinRow& b : r.bins) {
            Json row{{"alpha", sig6(b.alpha)}, {"beta", sig6(b.beta)}};
            row.update(estimate_json(b.estimate));
            row["e_quantum"] = sig6(b.quantum);
            row["residual"] = sig6(b.residual);
            row["residual_in_se"] = sig6(b.residual_in_se);
            j["bins"].push_back(row);
        }
    } else {
        j["points"] = Json::array();
        for (const FransonPoint& p : r.points) {
            Json row{{"alpha", sig6(p.alpha)}, {"beta", sig6(p.beta)}};
            row.update(estimate_json(p.estimate));
            row["e_quantum"] = sig6(p.quantum);
            j["points"].push_back(row);
        }
        j["visibility"] = sig6(r.visibility);
    }
    j["max_residual"] = sig6(r.max_residual);
    j["max_residual_in_se"] = sig6(r.max_residual_in_se);
    j["verdict"] = r.verdict;
    return j;
}

//---------------------------------------------------------------------------//
// export
//---------------------------------------------------------------------------//

std::string export_records(const RunConfig& cfg)
{
    const ModelKind kind = parse_model_kind(cfg.model);
    ExperimentSpec spec = base_spec(cfg, kind);
    const std::vector<double> grid = cfg.grid.empty() ? std::vector<double>{kPi / 4} : cfg.grid;
    if (is_franson(kind)) {
        if (cfg.period) {
            spec.settings.emplace_back(switching_schedule(*cfg.period));
        } else {
            for (double x : grid) {
                spec.settings.emplace_back(PhaseSchedule::constant(Angle(x), Angle(0.0)));
            }
        }
    } else {
        for (double theta : grid) {
            spec.settings.emplace_back(AnglePair{Angle(0.0), Angle(theta)});
        }
    }
    const Dataset ds = run_experiment(spec);
    const auto slot = [](Slot s) { return s == Slot::Early ? "early" : "late"; };

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "# config: " << to_json(cfg).dump() << "\n";
        if (is_franson(kind)) {
            os << "pair,trial,emission_time,alice_value,alice_slot,bob_value,bob_slot\n";
        } else {
            os << "pair,trial,alice,bob\n";
        }
        for (std::size_t p = 0; p < ds.pairs.size(); ++p) {
            for (const FransonRecord& r : ds.pairs[p].franson) {
                os << p << ',' << r.emission_index << ',' << fmt6(r.emission_time) << ',' << int(r.alice.value)
                   << ',' << slot(r.alice.slot) << ',' << int(r.bob.value) << ',' << slot(r.bob.slot) << "\n";
            }
            for (std::size_t i = 0; i < ds.pairs[p].bell.size(); ++i) {
                const TrialRecord& r = ds.pairs[p].bell[i];
                os << p << ',' << i << ',' << int(r.alice.code()) << ',' << int(r.bob.code()) << "\n";
            }
        }
        return os.str();
    }

    Json j = header(cfg);
    j["pairs"] = Json::array();
    for (const PairData& pd : ds.pairs) {
        Json recs = Json::array();
        for (const FransonRecord& r : pd.franson) {
            recs.push_back(Json{{"trial", r.emission_index},
                                {"emission_time", sig6(r.emission_time)},
                                {"alice", Json{{"value", int(r.alice.value)}, {"slot", slot(r.alice.slot)}}},
                                {"bob", Json{{"value", int(r.bob.value)}, {"slot", slot(r.bob.slot)}}}});
        }
        for (const TrialRecord& r : pd.bell) {
            recs.push_back(Json::array({int(r.alice.code()), int(r.bob.code())}));
        }
        j["pairs"].push_back(Json{{"records", recs}});
    }
    return render(j);
}

}  // namespace lhv
