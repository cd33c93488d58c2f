#include "obdr/config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace obdr
{

namespace
{

std::string_view
trim(std::string_view s)
{
    const char* space = " \t\r\n";
    auto first = s.find_first_not_of(space);
    if (first == std::string_view::npos)
    {
        return {};
    }
    auto last = s.find_last_not_of(space);
    return s.substr(first, last - first + 1);
}

double
parse_double(std::string_view key, std::string_view text)
{
    std::string buf(trim(text));
    if (buf.empty())
    {
        throw ConfigError(std::string(key), "missing value");
    }
    char* end = nullptr;
    errno = 0;
    double value = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || errno == ERANGE || !std::isfinite(value))
    {
        throw ConfigError(std::string(key), "not a number: '" + buf + "'");
    }
    return value;
}

std::uint64_t
parse_unsigned(std::string_view key, std::string_view text)
{
    std::string_view t = trim(text);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
    {
        throw ConfigError(std::string(key), "not a non-negative integer: '" + std::string(t) + "'");
    }
    return value;
}

template <typename Parse>
auto
parse_list(std::string_view key, std::string_view text, Parse parse)
{
    std::vector<decltype(parse(key, text))> values;
    std::size_t start = 0;
    while (start <= text.size())
    {
        std::size_t comma = text.find(',', start);
        std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        values.push_back(parse(key, item));
        if (comma == std::string_view::npos)
        {
            break;
        }
        start = comma + 1;
    }
    return values;
}

void
set_scenario_key(RunConfig& config, std::string_view key, std::string_view value)
{
    ScenarioConfig& s = config.scenario;
    if (key == "square_side")
    {
        s.square_side = parse_double(key, value);
    }
    else if (key == "n_nodes")
    {
        s.n_nodes = parse_unsigned(key, value);
    }
    else if (key == "radius")
    {
        s.radius = parse_double(key, value);
    }
    else if (key == "theta_deg")
    {
        s.theta = deg_to_rad(parse_double(key, value));
    }
    else if (key == "sd_distance")
    {
        s.sd_distance = parse_double(key, value);
    }
    else if (key == "seed")
    {
        s.seed = parse_unsigned(key, value);
    }
    else if (key == "placement")
    {
        std::string_view v = trim(value);
        if (v == "fixed")
        {
            s.placement = Placement::FixedCount;
        }
        else if (v == "poisson")
        {
            s.placement = Placement::PoissonCount;
        }
        else
        {
            throw ConfigError(std::string(key), "expected 'fixed' or 'poisson'");
        }
    }
    else if (key == "direction_error_deg")
    {
        s.direction_error_bound = deg_to_rad(parse_double(key, value));
    }
    else if (key == "trials")
    {
        config.trials = parse_unsigned(key, value);
    }
    else
    {
        throw ConfigError(std::string(key), "unknown key");
    }
}

void
set_sweep_key(RunConfig& config, std::string_view key, std::string_view value)
{
    std::string full = "sweep." + std::string(key);
    if (key == "theta_deg")
    {
        auto degrees = parse_list(full, value, parse_double);
        std::vector<double> radians;
        for (double deg : degrees)
        {
            radians.push_back(deg_to_rad(deg));
        }
        config.sweep_theta = std::move(radians);
    }
    else if (key == "n_nodes")
    {
        std::vector<std::size_t> counts;
        for (std::uint64_t n : parse_list(full, value, parse_unsigned))
        {
            counts.push_back(n);
        }
        config.sweep_n = std::move(counts);
    }
    else if (key == "sd_distance")
    {
        config.sweep_d = parse_list(full, value, parse_double);
    }
    else if (key == "trials")
    {
        config.trials = parse_unsigned(full, value);
    }
    else
    {
        throw ConfigError(full, "unknown key");
    }
}

std::vector<double>
default_thetas()
{
    std::vector<double> thetas;
    for (int step = 1; step <= 6; ++step)
    {
        thetas.push_back(deg_to_rad(22.5 * step));
    }
    return thetas;
}

template <typename T>
std::string
join(const std::vector<T>& values, auto format)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (i)
        {
            out += ", ";
        }
        out += format(values[i]);
    }
    return out;
}

std::string
format_degrees(double radians)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", rad_to_deg(radians));
    return buf;
}

} // namespace

std::string_view
command_name(Command command)
{
    switch (command)
    {
    case Command::Simulate:
        return "simulate";
    case Command::Sweep:
        return "sweep";
    case Command::Model:
        return "model";
    case Command::Compare:
        return "compare";
    case Command::Snapshot:
        return "snapshot";
    }
    return "unknown";
}

RunConfig
parse_config(std::string_view text, RunConfig config)
{
    enum class Section
    {
        Scenario,
        Sweep
    } section = Section::Scenario;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        std::string_view line = trim(raw.substr(0, raw.find('#')));
        if (line.empty())
        {
            continue;
        }
        std::string where = "line " + std::to_string(line_no);
        if (line.front() == '[')
        {
            if (line == "[scenario]")
            {
                section = Section::Scenario;
            }
            else if (line == "[sweep]")
            {
                section = Section::Sweep;
            }
            else
            {
                throw ConfigError(where, "unknown section " + std::string(line));
            }
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
        {
            throw ConfigError(where, "expected 'key = value'");
        }
        std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        try
        {
            if (section == Section::Sweep)
            {
                set_sweep_key(config, key, value);
            }
            else
            {
                set_scenario_key(config, key, value);
            }
        }
        catch (const ConfigError& e)
        {
            throw ConfigError(e.field(), where + ": " + e.what());
        }
    }
    return config;
}

RunConfig
load_config_file(const std::string& path, RunConfig defaults)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError("config", "cannot read '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), std::move(defaults));
}

void
apply_override(RunConfig& config, std::string_view assignment)
{
    auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
    {
        throw ConfigError(std::string(assignment), "override must look like key=value");
    }
    std::string_view key = trim(assignment.substr(0, eq));
    std::string_view value = trim(assignment.substr(eq + 1));
    constexpr std::string_view prefix = "sweep.";
    if (key.starts_with(prefix))
    {
        set_sweep_key(config, key.substr(prefix.size()), value);
    }
    else
    {
        set_scenario_key(config, key, value);
    }
}

RunConfig
resolve_config(const RunManifest& manifest)
{
    RunConfig config;
    if (manifest.config_path)
    {
        config = load_config_file(*manifest.config_path);
    }
    for (const std::string& o : manifest.overrides)
    {
        apply_override(config, o);
    }
    if (manifest.seed)
    {
        config.scenario.seed = *manifest.seed;
    }
    return config;
}

SweepSpec
make_sweep_spec(const RunConfig& config, Command command)
{
    SweepSpec spec;
    spec.base = config.scenario;
    spec.trials = config.trials;
    spec.theta_values = config.sweep_theta.value_or(default_thetas());
    if (command == Command::Compare)
    {
        spec.n_values = config.sweep_n.value_or(std::vector<std::size_t>{1000, 3000});
        spec.d_values = config.sweep_d.value_or(std::vector<double>{config.scenario.sd_distance});
    }
    else
    {
        spec.n_values = config.sweep_n.value_or(std::vector<std::size_t>{1000, 2000, 3000});
        spec.d_values = config.sweep_d.value_or(std::vector<double>{1000.0, 2000.0, 3000.0});
    }
    return spec;
}

std::vector<std::string>
describe_config(const RunConfig& config)
{
    const ScenarioConfig& s = config.scenario;
    return {
        "square_side = " + format_number(s.square_side),
        "n_nodes = " + std::to_string(s.n_nodes),
        "radius = " + format_number(s.radius),
        "theta_deg = " + format_degrees(s.theta),
        "sd_distance = " + format_number(s.sd_distance),
        "seed = " + std::to_string(s.seed),
        std::string("placement = ") + (s.placement == Placement::FixedCount ? "fixed" : "poisson"),
        "direction_error_deg = " + format_degrees(s.direction_error_bound),
        "trials = " + std::to_string(config.trials),
    };
}

std::vector<std::string>
describe_sweep(const SweepSpec& spec)
{
    RunConfig base;
    base.scenario = spec.base;
    base.trials = spec.trials;
    std::vector<std::string> lines = describe_config(base);
    lines.push_back("[sweep]");
    lines.push_back("theta_deg = " + join(spec.theta_values, format_degrees));
    lines.push_back("n_nodes = " + join(spec.n_values, [](std::size_t n) { return std::to_string(n); }));
    lines.push_back("sd_distance = " + join(spec.d_values, format_number));
    return lines;
}

std::string
format_number(double value)
{
    char buf[32];
    for (int precision = 6; precision <= 17; ++precision)
    {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value)
        {
            break;
        }
    }
    return buf;
}

} // namespace obdr
