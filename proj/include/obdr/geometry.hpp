#pragma once

#include <numbers>

namespace obdr
{

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double
deg_to_rad(double degrees)
{
    return degrees * kPi / 180.0;
}

constexpr double
rad_to_deg(double radians)
{
    return radians * 180.0 / kPi;
}

/// Planar position in meters.
struct Point2D
{
    double x{0.0};
    double y{0.0};

    friend bool operator==(const Point2D&, const Point2D&) = default;
};

/**
 * Coverage wedge of a directional transmitter.
 *
 * `axis` is the bearing of the wedge bisector, `half_angle` is half of the
 * beamforming angle (so a 360 degree beam has half_angle == pi).
 */
struct Sector
{
    Point2D apex;
    double axis{0.0};
    double half_angle{0.0};
    double radius{0.0};
};

/// Builds a sector, normalizing the axis into [0, 2pi).
/// Throws std::invalid_argument unless 0 < half_angle <= pi and radius > 0.
Sector make_sector(Point2D apex, double axis, double half_angle, double radius);

double dist(Point2D a, Point2D b);

/// Angle wrapped into [0, 2pi).
double normalize_angle(double radians);

/// Absolute circular difference of two angles, in [0, pi].
double angular_offset(double a, double b);

/// Bearing of (to - from) in [0, 2pi). Throws std::domain_error when the
/// points coincide.
double bearing(Point2D from, Point2D to);

/// Closed-boundary membership test; the apex itself is never inside.
bool in_sector(Point2D p, const Sector& s);

} // namespace obdr
