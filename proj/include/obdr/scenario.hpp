#pragma once

#include "obdr/geometry.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace obdr
{

/// Invalid experiment parameters. `field` names the offending setting.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message),
          field_(std::move(field))
    {
    }

    const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

enum class Placement
{
    FixedCount,
    PoissonCount,
};

struct ScenarioConfig
{
    double square_side{4000.0};
    std::size_t n_nodes{2000};
    double radius{200.0};
    double theta{deg_to_rad(60.0)};
    double sd_distance{1000.0};
    std::uint64_t seed{1};
    Placement placement{Placement::FixedCount};
    double direction_error_bound{0.0};

    /// Nodes per square meter.
    double density() const { return static_cast<double>(n_nodes) / (square_side * square_side); }

    /// Throws ConfigError on the first violated invariant.
    void validate() const;
};

/// Identifies a receiver: ordinary nodes are 0..n-1, then the destination,
/// then the source.
struct NodeId
{
    std::uint32_t value{0};

    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

struct Scenario
{
    std::vector<Point2D> nodes;
    Point2D source;
    Point2D destination;
    ScenarioConfig config;

    NodeId destination_id() const { return NodeId{static_cast<std::uint32_t>(nodes.size())}; }
    NodeId source_id() const { return NodeId{static_cast<std::uint32_t>(nodes.size() + 1)}; }
    Point2D position(NodeId id) const;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Stable per-index stream seed: mix64(seed ^ mix64(index + 1)).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform doubles in [0, 1) from the top 53 bits of mt19937_64.
class UniformStream
{
  public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

/// Source and destination sit on the horizontal midline, centered.
Scenario generate(const ScenarioConfig& config);

} // namespace obdr
