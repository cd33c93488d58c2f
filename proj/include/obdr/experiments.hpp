#pragma once

#include "obdr/scenario.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace obdr
{

struct CellResult
{
    double theta{0.0};
    std::size_t n_nodes{0};
    double sd_distance{0.0};
    double radius{0.0};
    double square_side{0.0};
    std::size_t trials{0};
    double success_rate{0.0};
    double success_ci_halfwidth{0.0};
    double implicated_ratio_mean{0.0};
    double implicated_ratio_std{0.0};
    double bandwidth_gain{0.0};
    std::optional<double> mean_hops_on_success;
    /// Absent when d <= r or the leaf never brings the destination in range.
    std::optional<double> model_ratio;
    /// Absent whenever model_ratio is, or the simulated ratio is zero.
    std::optional<double> model_relative_error;
};

struct TrialRecord
{
    bool success{false};
    std::size_t hops{0};
    std::size_t implicated{0};
    std::size_t n_nodes{0};
};

/// Trial t places nodes with derive_seed(seed, t) ...
Scenario trial_scenario(const ScenarioConfig& config, std::uint64_t trial);

/// ... and runs the engine on mix64 of that seed.
std::uint64_t trial_stream_seed(const ScenarioConfig& config, std::uint64_t trial);

TrialRecord run_trial(const ScenarioConfig& config, std::uint64_t trial);

/// threads == 0 uses the hardware concurrency. Results do not depend on the
/// thread count.
CellResult run_cell(const ScenarioConfig& config, std::size_t trials, unsigned threads = 0);

struct SweepSpec
{
    ScenarioConfig base;
    std::vector<double> theta_values;
    std::vector<std::size_t> n_values;
    std::vector<double> d_values;
    std::size_t trials{500};

    /// Checks every derived cell; the ConfigError names the first bad one.
    void validate() const;
};

struct SweepResult
{
    /// Ordered by (d, n, theta).
    std::vector<CellResult> cells;
    double elapsed_seconds{0.0};
};

ScenarioConfig cell_config(const ScenarioConfig& base, double theta, std::size_t n_nodes, double d);

SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0);

/// R^2 of the least-squares line. Throws std::domain_error for fewer than
/// three points or identical abscissae.
double linear_fit_r2(std::span<const std::pair<double, double>> points);

/// 95% half-width: normal approximation, Clopper-Pearson when fewer than
/// five successes or failures.
double success_ci_halfwidth(std::size_t successes, std::size_t trials);

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

} // namespace obdr
