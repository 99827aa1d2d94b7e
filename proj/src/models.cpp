#include "lhvlab/models.hpp"

#include "lhvlab/errors.hpp"

#include <cmath>

namespace lhv {

namespace {

/// Applies null injection and the keep-test on the filtered side to a pair
/// of linear-model clicks.
TrialRecord erase(TrialRecord linear, Side filtered, double keep_weight, double r, double null_coin,
                  const ErasureOptions& opts)
{
    if (null_coin < opts.null_injection_probability) {
        return {Outcome::no_click(), Outcome::no_click()};
    }
    const double weight = opts.uniform_keep ? 0.5 : keep_weight;
    if (r < weight) {
        return linear;
    }
    if (filtered == Side::A) {
        linear.alice = Outcome::no_click();
    } else {
        linear.bob = Outcome::no_click();
    }
    return linear;
}

Side filtered_side(Side coin, const ErasureOptions& opts)
{
    return opts.symmetrize ? coin : Side::A;
}

void require_unit(const Direction3& v)
{
    if (std::abs(v.dot(v) - 1.0) > 1e-9) {
        throw InvalidArgument("setting is not a unit vector");
    }
}

}  // namespace

void ErasureOptions::validate() const
{
    if (!(null_injection_probability >= 0.0 && null_injection_probability <= 1.0)) {
        throw InvalidArgument("null injection probability must lie in [0, 1]");
    }
}

CircleHidden sample_circle_hidden(TrialRng& rng)
{
    CircleHidden h;
    h.phi = Angle(kTwoPi * rng.uniform());
    h.r = rng.uniform();
    h.side_coin = rng.uniform() < 0.5 ? Side::A : Side::B;
    h.null_coin = rng.uniform();
    return h;
}

SphereHidden sample_sphere_hidden(TrialRng& rng)
{
    // z uniform on [-1, 1] and a uniform azimuth give an isotropic direction
    const double z = 2.0 * rng.uniform() - 1.0;
    const double az = kTwoPi * rng.uniform();
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    SphereHidden h;
    h.lambda = Direction3::normalized(rho * std::cos(az), rho * std::sin(az), z);
    h.r = rng.uniform();
    h.side_coin = rng.uniform() < 0.5 ? Side::A : Side::B;
    h.null_coin = rng.uniform();
    return h;
}

double circle_keep_weight(Angle phi, Angle setting)
{
    return 0.25 * kPi * std::abs(std::cos(phi.radians() - setting.radians()));
}

TrialRecord linear_trial(const CircleHidden& h, Angle a, Angle b)
{
    return {Outcome::click(sgn(std::cos(h.phi.radians() - a.radians()))),
            Outcome::click(-sgn(std::cos(h.phi.radians() - b.radians())))};
}

TrialRecord erased_circle_trial(const CircleHidden& h, Angle a, Angle b, const ErasureOptions& opts)
{
    const Side filtered = filtered_side(h.side_coin, opts);
    const double w = circle_keep_weight(h.phi, filtered == Side::A ? a : b);
    return erase(linear_trial(h, a, b), filtered, w, h.r, h.null_coin, opts);
}

TrialRecord sphere_erasure_trial(const SphereHidden& h, const Direction3& a, const Direction3& b,
                                 const ErasureOptions& opts)
{
    require_unit(a);
    require_unit(b);
    const double pa = a.dot(h.lambda);
    const double pb = b.dot(h.lambda);
    const TrialRecord linear{Outcome::click(sgn(pa)), Outcome::click(-sgn(pb))};
    const Side filtered = filtered_side(h.side_coin, opts);
    const double w = std::abs(filtered == Side::A ? pa : pb);
    return erase(linear, filtered, w, h.r, h.null_coin, opts);
}

TrialRecord circle_model_with_3d_settings(const CircleHidden& h, const Direction3& a, const Direction3& b,
                                          const ErasureOptions& opts)
{
    require_unit(a);
    require_unit(b);
    return erased_circle_trial(h, azimuth(a), azimuth(b), opts);
}

TrialRecord quantum_singlet_trial(TrialRng& rng, const Direction3& a, const Direction3& b)
{
    const double c = std::cos(relative_angle(a, b));
    const int alice = rng.uniform() < 0.5 ? +1 : -1;
    // P(bob = -alice) = (1 + cos theta) / 2
    const int bob = rng.uniform() < 0.5 * (1.0 + c) ? -alice : alice;
    return {Outcome::click(alice), Outcome::click(bob)};
}

}  // namespace lhv
