#include "obdr/report.hpp"

#include "obdr/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <sstream>

namespace obdr
{

AtomicFile::AtomicFile(std::string path)
    : path_(std::move(path)),
      temp_path_(path_ + ".tmp")
{
    file_ = std::fopen(temp_path_.c_str(), "wb");
    if (file_ == nullptr)
    {
        throw IoError("cannot open '" + path_ + "' for writing: " + std::strerror(errno));
    }
}

AtomicFile::~AtomicFile()
{
    if (file_ != nullptr)
    {
        std::fclose(file_);
        std::remove(temp_path_.c_str());
    }
}

void
AtomicFile::write(std::string_view text)
{
    if (file_ == nullptr)
    {
        throw IoError("'" + path_ + "' is already committed");
    }
    if (std::fwrite(text.data(), 1, text.size(), file_) != text.size())
    {
        throw IoError("write to '" + path_ + "' failed");
    }
}

void
AtomicFile::commit()
{
    if (file_ == nullptr)
    {
        return;
    }
    int closed = std::fclose(file_);
    file_ = nullptr;
    if (closed != 0 || std::rename(temp_path_.c_str(), path_.c_str()) != 0)
    {
        std::remove(temp_path_.c_str());
        throw IoError("cannot finalize '" + path_ + "'");
    }
}

std::string
format_sig9(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

std::string
comment_block(const std::vector<std::string>& lines)
{
    std::string out;
    for (const std::string& line : lines)
    {
        out += "# ";
        out += line;
        out += '\n';
    }
    return out;
}

namespace
{

std::string
optional_field(const std::optional<double>& value)
{
    return value ? format_sig9(*value) : std::string();
}

std::vector<std::string_view>
split(std::string_view line, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true)
    {
        std::size_t at = line.find(sep, start);
        parts.push_back(line.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
        if (at == std::string_view::npos)
        {
            return parts;
        }
        start = at + 1;
    }
}

double
to_double(std::string_view field)
{
    std::string buf(field);
    char* end = nullptr;
    double value = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size())
    {
        throw IoError("malformed CSV number '" + buf + "'");
    }
    return value;
}

std::optional<double>
to_optional(std::string_view field)
{
    if (field.empty())
    {
        return std::nullopt;
    }
    return to_double(field);
}

std::size_t
to_count(std::string_view field)
{
    double value = to_double(field);
    if (value < 0.0 || value != static_cast<double>(static_cast<std::size_t>(value)))
    {
        throw IoError("malformed CSV count '" + std::string(field) + "'");
    }
    return static_cast<std::size_t>(value);
}

std::string
join_counts(const std::vector<std::size_t>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        out += (i ? "," : "") + std::to_string(values[i]);
    }
    return out;
}

std::string
join_numbers(const std::vector<double>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        out += (i ? "," : "") + format_sig9(values[i]);
    }
    return out;
}

double
implicated_ratio(const Scenario& scenario, const BroadcastOutcome& outcome)
{
    return static_cast<double>(outcome.implicated.size()) / static_cast<double>(scenario.nodes.size() + 1);
}

struct Viewport
{
    double scale;
    double height;

    std::string x(double meters) const { return fixed(meters * scale); }
    std::string y(double meters) const { return fixed(height - meters * scale); }

    static std::string fixed(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return buf;
    }
};

} // namespace

std::string
csv_row(const CellResult& c)
{
    std::string row;
    row += format_sig9(rad_to_deg(c.theta)) + ',';
    row += std::to_string(c.n_nodes) + ',';
    row += format_sig9(c.sd_distance) + ',';
    row += format_sig9(c.radius) + ',';
    row += format_sig9(c.square_side) + ',';
    row += std::to_string(c.trials) + ',';
    row += format_sig9(c.success_rate) + ',';
    row += format_sig9(c.success_ci_halfwidth) + ',';
    row += format_sig9(c.implicated_ratio_mean) + ',';
    row += format_sig9(c.implicated_ratio_std) + ',';
    row += format_sig9(c.bandwidth_gain) + ',';
    row += optional_field(c.mean_hops_on_success) + ',';
    row += optional_field(c.model_ratio) + ',';
    row += optional_field(c.model_relative_error);
    return row;
}

std::string
render_csv(const std::vector<CellResult>& cells, const std::vector<std::string>& echo)
{
    std::string out = comment_block(echo);
    out += kCsvHeader;
    out += '\n';
    for (const CellResult& c : cells)
    {
        out += csv_row(c);
        out += '\n';
    }
    return out;
}

std::vector<CellResult>
parse_csv(std::string_view text)
{
    std::vector<CellResult> cells;
    bool header_seen = false;
    for (std::string_view line : split(text, '\n'))
    {
        if (line.empty() || line.front() == '#')
        {
            continue;
        }
        if (!header_seen)
        {
            if (line != kCsvHeader)
            {
                throw IoError("unexpected CSV header");
            }
            header_seen = true;
            continue;
        }
        auto f = split(line, ',');
        if (f.size() != 14)
        {
            throw IoError("CSV row has " + std::to_string(f.size()) + " fields, expected 14");
        }
        CellResult c;
        c.theta = deg_to_rad(to_double(f[0]));
        c.n_nodes = to_count(f[1]);
        c.sd_distance = to_double(f[2]);
        c.radius = to_double(f[3]);
        c.square_side = to_double(f[4]);
        c.trials = to_count(f[5]);
        c.success_rate = to_double(f[6]);
        c.success_ci_halfwidth = to_double(f[7]);
        c.implicated_ratio_mean = to_double(f[8]);
        c.implicated_ratio_std = to_double(f[9]);
        c.bandwidth_gain = to_double(f[10]);
        c.mean_hops_on_success = to_optional(f[11]);
        c.model_ratio = to_optional(f[12]);
        c.model_relative_error = to_optional(f[13]);
        cells.push_back(c);
    }
    if (!header_seen)
    {
        throw IoError("CSV header missing");
    }
    return cells;
}

std::string
render_outcome_record(const Scenario& scenario, const BroadcastOutcome& outcome,
                      const std::vector<std::string>& echo)
{
    std::ostringstream out;
    out << comment_block(echo);
    out << "nodes = " << scenario.nodes.size() << '\n';
    out << "success = " << (outcome.success ? "true" : "false") << '\n';
    out << "first_delivery_hop = "
        << (outcome.first_delivery_hop ? std::to_string(*outcome.first_delivery_hop) : std::string()) << '\n';
    out << "rounds = " << outcome.rounds << '\n';
    out << "implicated = " << outcome.implicated.size() << '\n';
    out << "covered = " << outcome.covered.size() << '\n';
    out << "implicated_ratio = " << format_sig9(implicated_ratio(scenario, outcome)) << '\n';
    out << "per_round_transmitters = " << join_counts(outcome.per_round_transmitters) << '\n';
    return out.str();
}

std::string
summarize_outcome(const Scenario& scenario, const BroadcastOutcome& outcome)
{
    std::ostringstream out;
    if (outcome.success)
    {
        out << "delivered in " << *outcome.first_delivery_hop << " hop(s)\n";
    }
    else
    {
        out << "transmission failure: relays exhausted before reaching the destination\n";
    }
    out << "implicated nodes: " << outcome.implicated.size() << " of " << scenario.nodes.size() + 1
        << " (ratio " << format_sig9(implicated_ratio(scenario, outcome)) << ")\n";
    out << "covered nodes: " << outcome.covered.size() << ", rounds: " << outcome.rounds << '\n';
    return out.str();
}

std::string
render_model_report(const std::optional<LeafModel>& model, double square_side,
                    const std::vector<std::string>& echo)
{
    std::ostringstream out;
    out << comment_block(echo);
    if (!model)
    {
        out << "# destination within one hop of the source: no relay triangles\n";
        out << "d_seq = \n";
        out << "areas = \n";
        out << "n_triangles = 0\n";
        out << "total_area = 0\n";
        out << "predicted_ratio = 0\n";
        out << "termination = direct\n";
        return out.str();
    }
    out << "d_seq = " << join_numbers(model->d_seq) << '\n';
    out << "areas = " << join_numbers(model->areas) << '\n';
    out << "n_triangles = " << model->n_triangles << '\n';
    out << "total_area = " << format_sig9(model->total_area) << '\n';
    out << "predicted_ratio = " << format_sig9(predicted_ratio(*model, square_side)) << '\n';
    out << "termination = " << (model->terminated_by_range ? "range" : "convergence") << '\n';
    return out.str();
}

std::string
render_svg(const Scenario& scenario, const BroadcastOutcome& outcome, const std::optional<LeafModel>& model,
           const std::vector<std::string>& echo, double viewport_px)
{
    const double side = scenario.config.square_side;
    const Viewport view{viewport_px / side, viewport_px};
    const std::string size = Viewport::fixed(viewport_px);

    std::vector<char> implicated(scenario.nodes.size(), 0);
    for (NodeId id : outcome.implicated)
    {
        if (id.value < scenario.nodes.size())
        {
            implicated[id.value] = 1;
        }
    }

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<!--\n" << comment_block(echo) << "-->\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";

    out << "<g id=\"field\">\n";
    out << "<rect x=\"0.00\" y=\"0.00\" width=\"" << size << "\" height=\"" << size
        << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "</g>\n";

    out << "<g id=\"nodes\" fill=\"#9e9e9e\">\n";
    for (std::size_t i = 0; i < scenario.nodes.size(); ++i)
    {
        if (!implicated[i])
        {
            const Point2D& p = scenario.nodes[i];
            out << "<circle cx=\"" << view.x(p.x) << "\" cy=\"" << view.y(p.y) << "\" r=\"1.5\"/>\n";
        }
    }
    out << "</g>\n";

    out << "<g id=\"implicated\" fill=\"#d32f2f\">\n";
    for (std::size_t i = 0; i < scenario.nodes.size(); ++i)
    {
        if (implicated[i])
        {
            const Point2D& p = scenario.nodes[i];
            out << "<circle cx=\"" << view.x(p.x) << "\" cy=\"" << view.y(p.y) << "\" r=\"2.5\"/>\n";
        }
    }
    out << "</g>\n";

    out << "<g id=\"chain\" fill=\"none\" stroke=\"#1565c0\" stroke-width=\"1.5\">\n";
    if (model)
    {
        out << "<polygon points=\"";
        bool first = true;
        for (Point2D p : leaf_outline(*model, scenario.source, scenario.destination))
        {
            out << (first ? "" : " ") << view.x(p.x) << ',' << view.y(p.y);
            first = false;
        }
        out << "\"/>\n";
    }
    out << "</g>\n";

    out << "<g id=\"endpoints\" font-family=\"sans-serif\" font-size=\"14\">\n";
    out << "<circle cx=\"" << view.x(scenario.source.x) << "\" cy=\"" << view.y(scenario.source.y)
        << "\" r=\"5\" fill=\"#2e7d32\"/>\n";
    out << "<text x=\"" << view.x(scenario.source.x) << "\" y=\"" << Viewport::fixed(view.height - scenario.source.y * view.scale - 8)
        << "\" text-anchor=\"middle\">S</text>\n";
    out << "<circle cx=\"" << view.x(scenario.destination.x) << "\" cy=\"" << view.y(scenario.destination.y)
        << "\" r=\"5\" fill=\"#f57c00\"/>\n";
    out << "<text x=\"" << view.x(scenario.destination.x) << "\" y=\""
        << Viewport::fixed(view.height - scenario.destination.y * view.scale - 8)
        << "\" text-anchor=\"middle\">D</text>\n";
    out << "</g>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace obdr
