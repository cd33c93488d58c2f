#include "obdr/scenario.hpp"

#include <cmath>

namespace obdr
{

void
ScenarioConfig::validate() const
{
    if (!(square_side > 0.0) || !std::isfinite(square_side))
    {
        throw ConfigError("square_side", "must be positive");
    }
    if (n_nodes > 50'000'000)
    {
        throw ConfigError("n_nodes", "too many nodes");
    }
    if (!(radius > 0.0) || !std::isfinite(radius))
    {
        throw ConfigError("radius", "must be positive");
    }
    if (!(theta > 0.0 && theta <= kTwoPi))
    {
        throw ConfigError("theta", "must lie in (0, 360] degrees");
    }
    if (!(sd_distance >= 0.0))
    {
        throw ConfigError("sd_distance", "must be non-negative");
    }
    if (sd_distance > square_side)
    {
        throw ConfigError("sd_distance", "exceeds the square side");
    }
    if (!(direction_error_bound >= 0.0 && direction_error_bound <= kPi))
    {
        throw ConfigError("direction_error", "must lie in [0, 180] degrees");
    }
}

Point2D
Scenario::position(NodeId id) const
{
    if (id.value < nodes.size())
    {
        return nodes[id.value];
    }
    return id == destination_id() ? destination : source;
}

std::uint64_t
mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t
derive_seed(std::uint64_t seed, std::uint64_t index)
{
    return mix64(seed ^ mix64(index + 1));
}

Scenario
generate(const ScenarioConfig& config)
{
    config.validate();

    Scenario scenario;
    scenario.config = config;

    const double side = config.square_side;
    const double mid = side / 2.0;
    scenario.source = Point2D{(side - config.sd_distance) / 2.0, mid};
    scenario.destination = Point2D{(side + config.sd_distance) / 2.0, mid};

    UniformStream stream(config.seed);
    std::size_t count = config.n_nodes;
    if (config.placement == Placement::PoissonCount && config.n_nodes > 0)
    {
        std::poisson_distribution<std::size_t> poisson(static_cast<double>(config.n_nodes));
        count = poisson(stream.engine());
    }

    scenario.nodes.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
    {
        double x = stream.next() * side;
        double y = stream.next() * side;
        scenario.nodes.push_back(Point2D{x, y});
    }
    return scenario;
}

} // namespace obdr
