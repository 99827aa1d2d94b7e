#pragma once

#include <numbers>

namespace lhv {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wrap an arbitrary real angle into [0, 2pi).
double normalize_angle(double radians);

/// Planar angle, always stored in [0, 2pi).
class Angle {
  public:
    constexpr Angle() = default;
    explicit Angle(double radians) : radians_(normalize_angle(radians)) {}

    [[nodiscard]] double radians() const { return radians_; }

    friend bool operator==(Angle, Angle) = default;

  private:
    double radians_ = 0.0;
};

/// Unit vector on the sphere. Construction checks the norm; use
/// `Direction3::normalized` to project an arbitrary non-zero vector.
class Direction3 {
  public:
    static constexpr double kUnitTolerance = 1e-12;

    Direction3() = default;
    Direction3(double x, double y, double z);

    static Direction3 normalized(double x, double y, double z);
    /// Point on the sphere from polar angle theta (from +z) and azimuth phi.
    static Direction3 from_spherical(double polar, double azimuth);
    /// Embedding of a planar angle in the x-y plane.
    static Direction3 in_xy_plane(Angle angle);

    [[nodiscard]] double x() const { return x_; }
    [[nodiscard]] double y() const { return y_; }
    [[nodiscard]] double z() const { return z_; }

    [[nodiscard]] double dot(const Direction3& o) const { return x_ * o.x_ + y_ * o.y_ + z_ * o.z_; }

    friend bool operator==(const Direction3&, const Direction3&) = default;

  private:
    double x_ = 0.0;
    double y_ = 0.0;
    double z_ = 1.0;
};

struct AnglePair {
    Angle a;
    Angle b;
};

struct DirectionPair {
    Direction3 a;
    Direction3 b;
};

/// Dichotomic sign: +1 for x >= 0, -1 otherwise. Throws on NaN/inf.
int sgn(double x);

/// Shortest arc between two planar angles, in [0, pi].
double angular_distance(Angle a, Angle b);

/// Great-circle angle between two unit vectors, in [0, pi].
double relative_angle(const Direction3& u, const Direction3& v);

/// Lab-frame azimuth of the x-y projection. Polar vectors (x = y = 0) map to 0.
Angle azimuth(const Direction3& v);

/// Rodrigues rotation of `v` about `axis` by `angle` radians.
Direction3 rotate(const Direction3& v, const Direction3& axis, double angle);

}  // namespace lhv
