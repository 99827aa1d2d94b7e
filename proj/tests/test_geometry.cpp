#include "lhvlab/errors.hpp"
#include "lhvlab/geometry.hpp"
#include "lhvlab/rng.hpp"

#include "doctest.h"

#include <cmath>
#include <limits>

using namespace lhv;

namespace {

Direction3 random_direction(TrialRng& rng)
{
    const double z = 2 * rng.uniform() - 1;
    const double az = kTwoPi * rng.uniform();
    const double rho = std::sqrt(1 - z * z);
    return Direction3::normalized(rho * std::cos(az), rho * std::sin(az), z);
}

}  // namespace

TEST_CASE("sgn convention")
{
    CHECK(sgn(0.3) == 1);
    CHECK(sgn(-0.3) == -1);
    CHECK(sgn(0.0) == 1);
    CHECK(sgn(-0.0) == 1);
    CHECK_THROWS_AS(sgn(std::numeric_limits<double>::quiet_NaN()), InvalidArgument);
    CHECK_THROWS_AS(sgn(std::numeric_limits<double>::infinity()), InvalidArgument);
}

TEST_CASE("angles are stored normalized")
{
    CHECK(Angle(-0.5).radians() == doctest::Approx(kTwoPi - 0.5).epsilon(1e-15));
    CHECK(Angle(kTwoPi).radians() == 0.0);
    CHECK(Angle(-1e-300).radians() < kTwoPi);
    TrialRng rng(7);
    for (int i = 0; i < 1000; ++i) {
        const double x = 40 * (rng.uniform() - 0.5);
        const double d = std::abs(Angle(x + kTwoPi).radians() - Angle(x).radians());
        CHECK(std::min(d, kTwoPi - d) < 1e-12);
        CHECK(Angle(x).radians() >= 0.0);
        CHECK(Angle(x).radians() < kTwoPi);
    }
}

TEST_CASE("angular_distance")
{
    CHECK(angular_distance(Angle(0), Angle(kPi / 4)) == doctest::Approx(kPi / 4));
    CHECK(angular_distance(Angle(0.1), Angle(0.1)) == 0.0);
    CHECK(angular_distance(Angle(0.1), Angle(kTwoPi - 0.1)) == doctest::Approx(0.2));

    TrialRng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const Angle a(kTwoPi * rng.uniform());
        const Angle b(kTwoPi * rng.uniform());
        const Angle c(kTwoPi * rng.uniform());
        CHECK(angular_distance(a, b) == angular_distance(b, a));
        CHECK(angular_distance(a, b) <= kPi);
        CHECK(angular_distance(a, b) <= angular_distance(a, c) + angular_distance(c, b) + 1e-12);
    }
}

TEST_CASE("Direction3 rejects non-unit components")
{
    CHECK_NOTHROW(Direction3(0, std::sqrt(0.5), std::sqrt(0.5)));
    CHECK_THROWS_AS(Direction3(1, 1, 0), InvalidArgument);
    CHECK_THROWS_AS(Direction3::normalized(0, 0, 0), InvalidArgument);
    const Direction3 d = Direction3::normalized(3, 4, 12);
    CHECK(d.dot(d) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("relative_angle")
{
    CHECK(relative_angle(Direction3(1, 0, 0), Direction3(1, 0, 0)) == 0.0);
    CHECK(relative_angle(Direction3(1, 0, 0), Direction3(0, 0, 1)) == doctest::Approx(kPi / 2));
    const double h = 1 / std::sqrt(2.0);
    CHECK(relative_angle(Direction3(0, 0, 1), Direction3(0, h, h)) == doctest::Approx(kPi / 4));
    CHECK(relative_angle(Direction3(0, 0, 1), Direction3(0, 0, -1)) == doctest::Approx(kPi));
}

TEST_CASE("relative_angle satisfies the spherical triangle inequality")
{
    TrialRng rng(13);
    for (int i = 0; i < 5000; ++i) {
        const Direction3 u = random_direction(rng);
        const Direction3 v = random_direction(rng);
        const Direction3 w = random_direction(rng);
        CHECK(relative_angle(u, v) <= relative_angle(u, w) + relative_angle(w, v) + 1e-12);
    }
}

TEST_CASE("azimuth")
{
    CHECK(azimuth(Direction3(1, 0, 0)).radians() == 0.0);
    CHECK(azimuth(Direction3(0, 1, 0)).radians() == doctest::Approx(kPi / 2));
    CHECK(azimuth(Direction3(0, 0, 1)).radians() == 0.0);
    CHECK(azimuth(Direction3(-1, 0, 0)).radians() == doctest::Approx(kPi));
    CHECK(azimuth(Direction3(0, -1, 0)).radians() == doctest::Approx(3 * kPi / 2));
}

TEST_CASE("azimuth gap equals relative angle only in the x-y plane")
{
    TrialRng rng(17);
    for (int i = 0; i < 2000; ++i) {
        const Direction3 u = Direction3::in_xy_plane(Angle(kTwoPi * rng.uniform()));
        const Direction3 v = Direction3::in_xy_plane(Angle(kTwoPi * rng.uniform()));
        CHECK(std::abs(angular_distance(azimuth(u), azimuth(v)) - relative_angle(u, v)) < 1e-9);
    }
    const double h = 1 / std::sqrt(2.0);
    const Direction3 a(0, 0, 1);
    const Direction3 b(0, h, h);
    CHECK(std::abs(angular_distance(azimuth(a), azimuth(b)) - relative_angle(a, b)) > 0.1);
}

TEST_CASE("rotation preserves relative angles")
{
    TrialRng rng(19);
    for (int i = 0; i < 500; ++i) {
        const Direction3 u = random_direction(rng);
        const Direction3 v = random_direction(rng);
        const Direction3 axis = random_direction(rng);
        const double angle = kTwoPi * rng.uniform();
        CHECK(relative_angle(rotate(u, axis, angle), rotate(v, axis, angle))
              == doctest::Approx(relative_angle(u, v)).epsilon(1e-9));
    }
    const Direction3 r = rotate(Direction3(1, 0, 0), Direction3(0, 0, 1), kPi / 2);
    CHECK(r.y() == doctest::Approx(1.0));
}
