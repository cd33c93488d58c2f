#include "obdr/commands.hpp"

#include "obdr/analytic_model.hpp"
#include "obdr/engine.hpp"
#include "obdr/experiments.hpp"
#include "obdr/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>

namespace obdr
{

namespace
{

std::string_view
extension(Command command)
{
    switch (command)
    {
    case Command::Sweep:
    case Command::Compare:
        return "csv";
    case Command::Snapshot:
        return "svg";
    default:
        return "txt";
    }
}

std::string
output_path(const RunManifest& manifest)
{
    return manifest.output_path.empty() ? default_output_path(manifest.command) : manifest.output_path;
}

std::vector<std::string>
echo_header(Command command, std::vector<std::string> lines)
{
    lines.insert(lines.begin(), "obdr " + std::string(command_name(command)));
    return lines;
}

int
guarded(std::ostream& err, const std::function<int()>& body)
{
    try
    {
        return body();
    }
    catch (const ConfigError& e)
    {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
    catch (const IoError& e)
    {
        err << "i/o error: " << e.what() << '\n';
        return kExitIoError;
    }
    catch (const std::logic_error& e)
    {
        // domain_error / invalid_argument from the model and geometry
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
}

std::optional<LeafModel>
leaf_for(const ScenarioConfig& config)
{
    if (config.sd_distance <= config.radius || config.theta >= kTwoPi)
    {
        return std::nullopt;
    }
    return build_leaf(config.sd_distance, config.radius, config.theta);
}

int
write_sweep(const RunManifest& manifest, Command command, std::ostream& out, std::ostream& err,
            const std::function<void(const SweepSpec&)>& check,
            const std::function<void(const SweepResult&)>& summarize)
{
    RunConfig config = resolve_config(manifest);
    SweepSpec spec = make_sweep_spec(config, command);
    spec.validate();
    check(spec);

    AtomicFile file(output_path(manifest));
    SweepResult result = run_sweep(spec, manifest.threads);
    file.write(render_csv(result.cells, echo_header(command, describe_sweep(spec))));
    file.commit();

    summarize(result);
    out << result.cells.size() << " cell(s) written to " << file.path() << '\n';
    err << "runtime: " << result.elapsed_seconds << " s\n";
    return kExitOk;
}

} // namespace

std::string
default_output_path(Command command)
{
    std::string name = std::string(command_name(command)) + "." + std::string(extension(command));
    const char* dir = std::getenv(kOutputDirEnv);
    if (dir == nullptr || *dir == '\0')
    {
        return name;
    }
    std::string base(dir);
    if (base.back() != '/')
    {
        base += '/';
    }
    return base + name;
}

int
cmd_simulate(const RunManifest& manifest, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        RunConfig config = resolve_config(manifest);
        config.scenario.validate();
        AtomicFile file(output_path(manifest));

        Scenario scenario = trial_scenario(config.scenario, 0);
        BroadcastOutcome outcome = propagate(scenario, trial_stream_seed(config.scenario, 0));

        file.write(render_outcome_record(scenario, outcome, echo_header(Command::Simulate, describe_config(config))));
        file.commit();
        out << summarize_outcome(scenario, outcome);
        return kExitOk;
    });
}

int
cmd_sweep(const RunManifest& manifest, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        return write_sweep(
            manifest, Command::Sweep, out, err, [](const SweepSpec&) {}, [](const SweepResult&) {});
    });
}

int
cmd_model(const RunManifest& manifest, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        RunConfig config = resolve_config(manifest);
        config.scenario.validate();
        const ScenarioConfig& s = config.scenario;
        if (s.theta >= kTwoPi)
        {
            throw ConfigError("theta_deg", "the triangle-chain model needs a beam narrower than 360 degrees");
        }
        AtomicFile file(output_path(manifest));

        std::optional<LeafModel> model;
        try
        {
            model = build_leaf(s.sd_distance, s.radius, s.theta);
        }
        catch (const DegenerateLeafError&)
        {
            out << "destination is within one transmission radius of the source: direct delivery, empty leaf\n";
        }
        std::string report = render_model_report(model, s.square_side, echo_header(Command::Model, describe_config(config)));
        file.write(report);
        file.commit();
        out << report;
        return kExitOk;
    });
}

int
cmd_compare(const RunManifest& manifest, std::ostream& out, std::ostream& err)
{
    auto check = [](const SweepSpec& spec) {
        for (double d : spec.d_values)
        {
            if (d <= spec.base.radius)
            {
                throw ConfigError("sd_distance", "compare needs d > r so the model is defined");
            }
        }
    };
    auto summarize = [&out](const SweepResult& result) {
        struct Worst
        {
            double error{0.0};
            std::size_t undefined{0};
        };
        std::map<std::pair<double, std::size_t>, Worst> worst;
        for (const CellResult& c : result.cells)
        {
            char line[160];
            std::snprintf(line, sizeof(line), "d=%g n=%zu theta=%g: simulated %.6g model %s error %s\n",
                          c.sd_distance, c.n_nodes, rad_to_deg(c.theta), c.implicated_ratio_mean,
                          c.model_ratio ? format_sig9(*c.model_ratio).c_str() : "n/a",
                          c.model_relative_error ? format_sig9(*c.model_relative_error).c_str() : "n/a");
            out << line;
            double deg = rad_to_deg(c.theta);
            if (deg >= 45.0 - 1e-9 && deg <= 120.0 + 1e-9)
            {
                Worst& w = worst[{c.sd_distance, c.n_nodes}];
                if (c.model_relative_error)
                {
                    w.error = std::max(w.error, std::abs(*c.model_relative_error));
                }
                else
                {
                    ++w.undefined;
                }
            }
        }
        for (const auto& [key, w] : worst)
        {
            out << "max |relative error| for theta in [45, 120] deg at d=" << key.first << " n=" << key.second
                << ": " << format_sig9(w.error);
            if (w.undefined > 0)
            {
                out << " (" << w.undefined << " cell(s) without a model value)";
            }
            out << '\n';
        }
    };
    return guarded(err, [&] { return write_sweep(manifest, Command::Compare, out, err, check, summarize); });
}

int
cmd_snapshot(const RunManifest& manifest, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        RunConfig config = resolve_config(manifest);
        config.scenario.validate();
        AtomicFile file(output_path(manifest));

        Scenario scenario = trial_scenario(config.scenario, 0);
        BroadcastOutcome outcome = propagate(scenario, trial_stream_seed(config.scenario, 0));
        std::optional<LeafModel> model = leaf_for(config.scenario);

        file.write(render_svg(scenario, outcome, model, echo_header(Command::Snapshot, describe_config(config))));
        file.commit();
        out << summarize_outcome(scenario, outcome);
        out << "scene written to " << file.path() << '\n';
        return kExitOk;
    });
}

int
run_command(const RunManifest& manifest, std::ostream& out, std::ostream& err)
{
    switch (manifest.command)
    {
    case Command::Simulate:
        return cmd_simulate(manifest, out, err);
    case Command::Sweep:
        return cmd_sweep(manifest, out, err);
    case Command::Model:
        return cmd_model(manifest, out, err);
    case Command::Compare:
        return cmd_compare(manifest, out, err);
    case Command::Snapshot:
        return cmd_snapshot(manifest, out, err);
    }
    return kExitConfigError;
}

} // namespace obdr
