#pragma once

#include "obdr/scenario.hpp"
#include "obdr/spatial_index.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace obdr
{

struct BroadcastOutcome
{
    bool success{false};
    std::optional<std::size_t> first_delivery_hop;
    /// Transmitters, source included, ascending.
    std::vector<NodeId> implicated;
    /// Every receiver (ordinary nodes and the destination), ascending.
    std::vector<NodeId> covered;
    std::size_t rounds{0};
    std::vector<std::size_t> per_round_transmitters;
};

/// Grid over the scenario's nodes followed by the destination, so grid
/// indices coincide with NodeId values.
GridIndex build_index(const Scenario& scenario);

/// Aim error of one transmitter, uniform in [-bound, bound]. A pure function
/// of (stream_seed, id): the order in which a round's transmitters are
/// processed never changes the outcome.
double aim_offset(std::uint64_t stream_seed, NodeId id, double bound);

/// Sector emitted by transmitter `id` at `apex`, aimed at the destination.
Sector transmit_sector(const Scenario& scenario, NodeId id, std::uint64_t stream_seed);

/**
 * Round-synchronous directional flood. Round 0 is the source alone; every
 * newly covered ordinary node transmits exactly once in the following
 * round. The destination is detected but never relays, and the flood runs
 * until no transmitter is left.
 */
BroadcastOutcome propagate(const Scenario& scenario, std::uint64_t stream_seed);

BroadcastOutcome propagate(const Scenario& scenario, const GridIndex& index, std::uint64_t stream_seed);

} // namespace obdr
