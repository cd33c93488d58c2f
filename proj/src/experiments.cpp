#include "obdr/experiments.hpp"

#include "obdr/analytic_model.hpp"
#include "obdr/engine.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace obdr
{

namespace
{

constexpr double kZ95 = 1.959963984540054;

unsigned
resolve_threads(unsigned requested, std::size_t work)
{
    unsigned threads = requested == 0 ? std::thread::hardware_concurrency() : requested;
    threads = std::max(threads, 1u);
    return static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(work, 1)));
}

std::string
describe_cell(double theta, std::size_t n, double d)
{
    char buf[128];
    std::snprintf(buf, sizeof(buf), "cell theta=%.9g deg, n=%zu, d=%.9g m", rad_to_deg(theta), n, d);
    return buf;
}

} // namespace

Scenario
trial_scenario(const ScenarioConfig& config, std::uint64_t trial)
{
    ScenarioConfig trial_config = config;
    trial_config.seed = derive_seed(config.seed, trial);
    return generate(trial_config);
}

std::uint64_t
trial_stream_seed(const ScenarioConfig& config, std::uint64_t trial)
{
    return mix64(derive_seed(config.seed, trial));
}

TrialRecord
run_trial(const ScenarioConfig& config, std::uint64_t trial)
{
    Scenario scenario = trial_scenario(config, trial);
    BroadcastOutcome outcome = propagate(scenario, trial_stream_seed(config, trial));

    TrialRecord record;
    record.success = outcome.success;
    record.hops = outcome.first_delivery_hop.value_or(0);
    record.implicated = outcome.implicated.size();
    record.n_nodes = scenario.nodes.size();
    return record;
}

CellResult
run_cell(const ScenarioConfig& config, std::size_t trials, unsigned threads)
{
    config.validate();
    if (trials == 0)
    {
        throw ConfigError("trials", "must be at least 1");
    }

    std::vector<TrialRecord> records(trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < trials; t = next++)
        {
            records[t] = run_trial(config, t);
        }
    };
    unsigned workers = resolve_threads(threads, trials);
    if (workers == 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
        {
            pool.emplace_back(worker);
        }
    }

    std::size_t successes = 0;
    std::vector<double> ratios;
    std::vector<double> hops;
    ratios.reserve(trials);
    for (const TrialRecord& r : records)
    {
        ratios.push_back(static_cast<double>(r.implicated) / static_cast<double>(r.n_nodes + 1));
        if (r.success)
        {
            ++successes;
            hops.push_back(static_cast<double>(r.hops));
        }
    }

    CellResult cell;
    cell.theta = config.theta;
    cell.n_nodes = config.n_nodes;
    cell.sd_distance = config.sd_distance;
    cell.radius = config.radius;
    cell.square_side = config.square_side;
    cell.trials = trials;
    cell.success_rate = static_cast<double>(successes) / static_cast<double>(trials);
    cell.success_ci_halfwidth = success_ci_halfwidth(successes, trials);

    const double count = static_cast<double>(trials);
    cell.implicated_ratio_mean = pairwise_sum(ratios) / count;
    if (trials > 1)
    {
        std::vector<double> squares;
        squares.reserve(trials);
        for (double r : ratios)
        {
            squares.push_back((r - cell.implicated_ratio_mean) * (r - cell.implicated_ratio_mean));
        }
        cell.implicated_ratio_std = std::sqrt(pairwise_sum(squares) / (count - 1.0));
    }
    cell.bandwidth_gain = cell.implicated_ratio_mean * config.theta / kTwoPi;
    if (!hops.empty())
    {
        cell.mean_hops_on_success = pairwise_sum(hops) / static_cast<double>(hops.size());
    }

    if (config.sd_distance > config.radius && config.theta < kTwoPi)
    {
        LeafModel leaf = build_leaf(config.sd_distance, config.radius, config.theta);
        if (leaf.terminated_by_range)
        {
            cell.model_ratio = predicted_ratio(leaf, config.square_side);
            if (cell.implicated_ratio_mean > 0.0)
            {
                cell.model_relative_error = relative_error(*cell.model_ratio, cell.implicated_ratio_mean);
            }
        }
    }
    return cell;
}

ScenarioConfig
cell_config(const ScenarioConfig& base, double theta, std::size_t n_nodes, double d)
{
    ScenarioConfig config = base;
    config.theta = theta;
    config.n_nodes = n_nodes;
    config.sd_distance = d;
    return config;
}

void
SweepSpec::validate() const
{
    if (trials == 0)
    {
        throw ConfigError("trials", "must be at least 1");
    }
    if (theta_values.empty())
    {
        throw ConfigError("sweep.theta_deg", "list is empty");
    }
    if (n_values.empty())
    {
        throw ConfigError("sweep.n_nodes", "list is empty");
    }
    if (d_values.empty())
    {
        throw ConfigError("sweep.sd_distance", "list is empty");
    }
    for (double d : d_values)
    {
        for (std::size_t n : n_values)
        {
            for (double theta : theta_values)
            {
                try
                {
                    cell_config(base, theta, n, d).validate();
                }
                catch (const ConfigError& e)
                {
                    throw ConfigError(e.field(), describe_cell(theta, n, d) + ": " + e.what());
                }
            }
        }
    }
}

SweepResult
run_sweep(const SweepSpec& spec, unsigned threads)
{
    spec.validate();
    auto start = std::chrono::steady_clock::now();

    auto thetas = spec.theta_values;
    auto ns = spec.n_values;
    auto ds = spec.d_values;
    std::sort(thetas.begin(), thetas.end());
    std::sort(ns.begin(), ns.end());
    std::sort(ds.begin(), ds.end());

    SweepResult result;
    result.cells.reserve(thetas.size() * ns.size() * ds.size());
    for (double d : ds)
    {
        for (std::size_t n : ns)
        {
            for (double theta : thetas)
            {
                result.cells.push_back(run_cell(cell_config(spec.base, theta, n, d), spec.trials, threads));
            }
        }
    }

    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    result.elapsed_seconds = elapsed.count();
    return result;
}

double
linear_fit_r2(std::span<const std::pair<double, double>> points)
{
    if (points.size() < 3)
    {
        throw std::domain_error("linear fit needs at least three points");
    }
    const double n = static_cast<double>(points.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (auto [x, y] : points)
    {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= n;
    mean_y /= n;

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (auto [x, y] : points)
    {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    if (sxx == 0.0)
    {
        throw std::domain_error("linear fit needs distinct abscissae");
    }
    if (syy == 0.0)
    {
        // a constant series is fitted exactly by the horizontal line
        return 1.0;
    }
    return (sxy * sxy) / (sxx * syy);
}

double
success_ci_halfwidth(std::size_t successes, std::size_t trials)
{
    if (trials == 0 || successes > trials)
    {
        throw std::domain_error("invalid success count");
    }
    const double n = static_cast<double>(trials);
    const double k = static_cast<double>(successes);
    if (successes >= 5 && successes + 5 <= trials)
    {
        double p = k / n;
        return kZ95 * std::sqrt(p * (1.0 - p) / n);
    }
    constexpr double alpha = 0.05;
    double lower = successes == 0 ? 0.0 : boost::math::ibeta_inv(k, n - k + 1.0, alpha / 2.0);
    double upper = successes == trials ? 1.0 : boost::math::ibeta_inv(k + 1.0, n - k, 1.0 - alpha / 2.0);
    return (upper - lower) / 2.0;
}

double
pairwise_sum(std::span<const double> values)
{
    if (values.size() <= 8)
    {
        double sum = 0.0;
        for (double v : values)
        {
            sum += v;
        }
        return sum;
    }
    std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

} // namespace obdr
