#include "obdr/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int
main(int argc, char** argv)
{
    CLI::App app{"Directional broadcast routing simulator and leaf-area model"};
    app.require_subcommand(1);

    obdr::RunManifest manifest;
    std::string config_path;
    std::uint64_t seed = 0;

    struct Entry
    {
        obdr::Command command;
        const char* help;
    };
    const Entry entries[] = {
        {obdr::Command::Simulate, "Run one scenario through the directional flood"},
        {obdr::Command::Sweep, "Monte Carlo sweep over theta x n x d, written as CSV"},
        {obdr::Command::Model, "Print the triangle-chain leaf model"},
        {obdr::Command::Compare, "Model vs simulated implicated ratio, written as CSV"},
        {obdr::Command::Snapshot, "Render one scenario and its leaf outline as SVG"},
    };

    std::vector<std::pair<CLI::App*, obdr::Command>> subcommands;
    for (const Entry& e : entries)
    {
        CLI::App* sub = app.add_subcommand(std::string(obdr::command_name(e.command)), e.help);
        sub->add_option("-c,--config", config_path, "Config file (key = value, optional [sweep] section)")
            ->check(CLI::ExistingFile);
        sub->add_option("-s,--set", manifest.overrides, "Override key=value (sweep lists: sweep.theta_deg=45,90)");
        sub->add_option("-o,--output", manifest.output_path, "Output file");
        sub->add_option("--seed", seed, "Global seed");
        sub->add_option("--threads", manifest.threads, "Worker threads (0 = all cores)");
        subcommands.emplace_back(sub, e.command);
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : obdr::kExitConfigError;
    }

    for (auto [sub, command] : subcommands)
    {
        if (sub->parsed())
        {
            manifest.command = command;
            if (sub->count("--seed") > 0)
            {
                manifest.seed = seed;
            }
        }
    }
    if (!config_path.empty())
    {
        manifest.config_path = config_path;
    }
    return obdr::run_command(manifest, std::cout, std::cerr);
}
