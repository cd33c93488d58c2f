#include "obdr/analytic_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace obdr
{

namespace
{

constexpr double kConvergenceTolerance = 1e-6;
constexpr std::size_t kMaxTriangles = 1'000'000;

void
require_positive(double value, const char* what)
{
    if (!(value > 0.0) || !std::isfinite(value))
    {
        throw std::domain_error(std::string(what) + " must be positive and finite");
    }
}

void
require_beam(double theta)
{
    if (!(theta > 0.0 && theta < kTwoPi))
    {
        throw std::domain_error("beam angle must lie in (0, 2pi)");
    }
}

Point2D
step_towards(Point2D from, double heading, double length)
{
    return Point2D{from.x + length * std::cos(heading), from.y + length * std::sin(heading)};
}

} // namespace

double
next_edge(double d_prev, double r, double theta)
{
    require_positive(d_prev, "previous edge");
    require_positive(r, "radius");
    require_beam(theta);
    double radicand = d_prev * d_prev + r * r - 2.0 * r * d_prev * std::cos(theta / 2.0);
    return std::sqrt(std::max(radicand, 0.0));
}

double
triangle_area(double d_i, double r, double theta)
{
    require_positive(d_i, "edge");
    require_positive(r, "radius");
    require_beam(theta);
    return 0.5 * r * d_i * std::sin(theta / 2.0);
}

LeafModel
build_leaf(double d, double r, double theta)
{
    require_positive(d, "source-destination distance");
    require_positive(r, "radius");
    require_beam(theta);
    if (d <= r)
    {
        throw DegenerateLeafError("destination is within one hop of the source");
    }

    LeafModel model;
    model.radius = r;
    model.theta = theta;
    model.d_seq.push_back(d);

    double one_side = 0.0;
    double prev = d;
    while (true)
    {
        double area = triangle_area(prev, r, theta);
        model.areas.push_back(area);
        one_side += area;

        double next = next_edge(prev, r, theta);
        model.d_seq.push_back(next);
        if (next <= r)
        {
            break;
        }
        // beams of 180 degrees or more push the chain away from the destination
        if (next >= prev || std::abs(next - prev) < kConvergenceTolerance * r ||
            model.areas.size() >= kMaxTriangles)
        {
            model.terminated_by_range = false;
            break;
        }
        prev = next;
    }

    model.n_triangles = model.areas.size();
    model.total_area = 2.0 * one_side;
    return model;
}

double
predicted_ratio(const LeafModel& model, double square_side)
{
    require_positive(square_side, "square side");
    return std::clamp(model.total_area / (square_side * square_side), 0.0, 1.0);
}

double
relative_error(double theoretical, double simulated)
{
    if (simulated == 0.0)
    {
        throw std::domain_error("relative error undefined for a zero simulated value");
    }
    return (theoretical - simulated) / simulated;
}

std::vector<Point2D>
leaf_outline(const LeafModel& model, Point2D source, Point2D destination)
{
    double half = model.theta / 2.0;
    std::vector<Point2D> upper;
    std::vector<Point2D> lower;
    Point2D up = source;
    Point2D down = source;
    for (std::size_t i = 0; i < model.n_triangles; ++i)
    {
        up = step_towards(up, bearing(up, destination) + half, model.radius);
        down = step_towards(down, bearing(down, destination) - half, model.radius);
        upper.push_back(up);
        lower.push_back(down);
    }

    std::vector<Point2D> outline;
    outline.reserve(2 * model.n_triangles + 2);
    outline.push_back(source);
    outline.insert(outline.end(), upper.begin(), upper.end());
    outline.push_back(destination);
    outline.insert(outline.end(), lower.rbegin(), lower.rend());
    return outline;
}

} // namespace obdr
