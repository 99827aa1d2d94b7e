#include "lhvlab/geometry.hpp"

#include "lhvlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lhv {

namespace {

void require_unit(const Direction3& v, const char* what)
{
    const double n2 = v.dot(v);
    if (!(std::abs(n2 - 1.0) <= 1e-9)) {
        throw InvalidArgument(std::string(what) + ": expected a unit vector, |v|^2 = " + std::to_string(n2));
    }
}

}  // namespace

double normalize_angle(double radians)
{
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // fmod of a tiny negative value can round back up to exactly 2pi
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

Direction3::Direction3(double x, double y, double z) : x_(x), y_(y), z_(z)
{
    const double n2 = x * x + y * y + z * z;
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 4 * kUnitTolerance) {
        throw InvalidArgument("Direction3: components do not form a unit vector");
    }
}

Direction3 Direction3::normalized(double x, double y, double z)
{
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw InvalidArgument("Direction3::normalized: zero or non-finite vector");
    }
    return Direction3(x / n, y / n, z / n);
}

Direction3 Direction3::from_spherical(double polar, double azimuth)
{
    const double s = std::sin(polar);
    return normalized(s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar));
}

Direction3 Direction3::in_xy_plane(Angle angle)
{
    return normalized(std::cos(angle.radians()), std::sin(angle.radians()), 0.0);
}

int sgn(double x)
{
    if (!std::isfinite(x)) {
        throw InvalidArgument("sgn: non-finite input");
    }
    return x >= 0.0 ? +1 : -1;
}

double angular_distance(Angle a, Angle b)
{
    const double d = std::abs(a.radians() - b.radians());
    return std::min(d, kTwoPi - d);
}

double relative_angle(const Direction3& u, const Direction3& v)
{
    require_unit(u, "relative_angle");
    require_unit(v, "relative_angle");
    return std::acos(std::clamp(u.dot(v), -1.0, 1.0));
}

Angle azimuth(const Direction3& v)
{
    if (v.x() == 0.0 && v.y() == 0.0) {
        return Angle(0.0);
    }
    return Angle(std::atan2(v.y(), v.x()));
}

Direction3 rotate(const Direction3& v, const Direction3& axis, double angle)
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double kd = axis.dot(v);
    // v cos + (k x v) sin + k (k.v)(1 - cos)
    const double cx = axis.y() * v.z() - axis.z() * v.y();
    const double cy = axis.z() * v.x() - axis.x() * v.z();
    const double cz = axis.x() * v.y() - axis.y() * v.x();
    return Direction3::normalized(v.x() * c + cx * s + axis.x() * kd * (1 - c),
                                  v.y() * c + cy * s + axis.y() * kd * (1 - c),
                                  v.z() * c + cz * s + axis.z() * kd * (1 - c));
}

}  // namespace lhv
