#include "obdr/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace obdr
{

Sector
make_sector(Point2D apex, double axis, double half_angle, double radius)
{
    if (!(half_angle > 0.0 && half_angle <= kPi))
    {
        throw std::invalid_argument("sector half-angle must lie in (0, pi]");
    }
    if (!(radius > 0.0))
    {
        throw std::invalid_argument("sector radius must be positive");
    }
    return Sector{apex, normalize_angle(axis), half_angle, radius};
}

double
dist(Point2D a, Point2D b)
{
    return std::hypot(b.x - a.x, b.y - a.y);
}

double
normalize_angle(double radians)
{
    double a = std::fmod(radians, kTwoPi);
    if (a < 0.0)
    {
        a += kTwoPi;
    }
    // fmod of a tiny negative value can round up to exactly 2pi
    if (a >= kTwoPi)
    {
        a = 0.0;
    }
    return a;
}

double
angular_offset(double a, double b)
{
    double diff = normalize_angle(a - b);
    return diff > kPi ? kTwoPi - diff : diff;
}

double
bearing(Point2D from, Point2D to)
{
    if (from == to)
    {
        throw std::domain_error("bearing undefined for coincident points");
    }
    return normalize_angle(std::atan2(to.y - from.y, to.x - from.x));
}

bool
in_sector(Point2D p, const Sector& s)
{
    double range = dist(s.apex, p);
    if (range == 0.0 || range > s.radius)
    {
        return false;
    }
    double direction = std::atan2(p.y - s.apex.y, p.x - s.apex.x);
    return angular_offset(direction, s.axis) <= s.half_angle;
}

} // namespace obdr
