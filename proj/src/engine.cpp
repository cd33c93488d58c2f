#include "obdr/engine.hpp"

#include <algorithm>

namespace obdr
{

GridIndex
build_index(const Scenario& scenario)
{
    std::vector<Point2D> points;
    points.reserve(scenario.nodes.size() + 1);
    points.insert(points.end(), scenario.nodes.begin(), scenario.nodes.end());
    points.push_back(scenario.destination);
    return GridIndex(points, scenario.config.radius);
}

double
aim_offset(std::uint64_t stream_seed, NodeId id, double bound)
{
    if (bound == 0.0)
    {
        return 0.0;
    }
    double unit = static_cast<double>(derive_seed(stream_seed, id.value) >> 11) * 0x1.0p-53;
    return (2.0 * unit - 1.0) * bound;
}

Sector
transmit_sector(const Scenario& scenario, NodeId id, std::uint64_t stream_seed)
{
    const ScenarioConfig& cfg = scenario.config;
    Point2D apex = scenario.position(id);
    // a relay sitting exactly on the destination has no bearing; aim along +x
    double axis = apex == scenario.destination ? 0.0 : bearing(apex, scenario.destination);
    axis += aim_offset(stream_seed, id, cfg.direction_error_bound);
    return make_sector(apex, axis, cfg.theta / 2.0, cfg.radius);
}

BroadcastOutcome
propagate(const Scenario& scenario, std::uint64_t stream_seed)
{
    return propagate(scenario, build_index(scenario), stream_seed);
}

BroadcastOutcome
propagate(const Scenario& scenario, const GridIndex& index, std::uint64_t stream_seed)
{
    const std::size_t n = scenario.nodes.size();
    const std::uint32_t destination = scenario.destination_id().value;

    BroadcastOutcome outcome;
    // indices 0..n-1 ordinary nodes, n the destination
    std::vector<char> covered(n + 1, 0);

    std::vector<NodeId> transmitters{scenario.source_id()};
    std::vector<NodeId> next;
    outcome.implicated.push_back(scenario.source_id());

    // a source sitting on the destination has no bearing to aim with
    if (scenario.source == scenario.destination)
    {
        covered[destination] = 1;
        outcome.success = true;
        outcome.first_delivery_hop = 1;
        transmitters.clear();
        outcome.rounds = 1;
        outcome.per_round_transmitters.push_back(1);
    }

    while (!transmitters.empty())
    {
        outcome.per_round_transmitters.push_back(transmitters.size());
        next.clear();
        for (NodeId tx : transmitters)
        {
            Sector s = transmit_sector(scenario, tx, stream_seed);
            index.for_each_in_sector(s, [&](std::uint32_t i, Point2D) {
                if (covered[i])
                {
                    return;
                }
                covered[i] = 1;
                if (i == destination)
                {
                    outcome.first_delivery_hop = outcome.per_round_transmitters.size();
                }
                else
                {
                    next.push_back(NodeId{i});
                }
            });
        }
        std::sort(next.begin(), next.end());
        outcome.implicated.insert(outcome.implicated.end(), next.begin(), next.end());
        transmitters.swap(next);
    }

    outcome.rounds = outcome.per_round_transmitters.size();
    outcome.success = outcome.first_delivery_hop.has_value();
    for (std::uint32_t i = 0; i <= n; ++i)
    {
        if (covered[i])
        {
            outcome.covered.push_back(NodeId{i});
        }
    }
    std::sort(outcome.implicated.begin(), outcome.implicated.end());
    return outcome;
}

} // namespace obdr
