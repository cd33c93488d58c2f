#pragma once

#include "obdr/experiments.hpp"
#include "obdr/scenario.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace obdr
{

enum class Command
{
    Simulate,
    Sweep,
    Model,
    Compare,
    Snapshot,
};

std::string_view command_name(Command command);

/**
 * Effective settings after reading a config file and applying overrides.
 *
 * File format: flat `key = value` lines, '#' comments, and an optional
 * `[sweep]` section whose keys take comma-separated lists. Keys before any
 * section (or under `[scenario]`) set the base scenario. Angles are in
 * degrees.
 */
struct RunConfig
{
    ScenarioConfig scenario;
    std::size_t trials{500};
    std::optional<std::vector<double>> sweep_theta;
    std::optional<std::vector<std::size_t>> sweep_n;
    std::optional<std::vector<double>> sweep_d;
};

struct RunManifest
{
    Command command{Command::Simulate};
    std::optional<std::string> config_path;
    /// key=value pairs; sweep keys are prefixed with "sweep.".
    std::vector<std::string> overrides;
    std::string output_path;
    std::optional<std::uint64_t> seed;
    unsigned threads{0};
};

/// Parses config text. ConfigError messages carry "line N" diagnostics.
RunConfig parse_config(std::string_view text, RunConfig defaults = {});

RunConfig load_config_file(const std::string& path, RunConfig defaults = {});

/// Applies one "key=value" override; unknown keys are rejected.
void apply_override(RunConfig& config, std::string_view assignment);

/// Config file, then overrides, then the manifest seed.
RunConfig resolve_config(const RunManifest& manifest);

/// Sweep grid for a command. Lists missing from the config default to the
/// evaluated grid: theta 22.5..135 deg in 22.5 deg steps, n {1000, 2000,
/// 3000} ({1000, 3000} for compare), d {1000, 2000, 3000} (the base
/// distance for compare).
SweepSpec make_sweep_spec(const RunConfig& config, Command command);

/// `key = value` lines describing the effective configuration.
std::vector<std::string> describe_config(const RunConfig& config);

std::vector<std::string> describe_sweep(const SweepSpec& spec);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

} // namespace obdr
