#pragma once

#include "obdr/analytic_model.hpp"
#include "obdr/engine.hpp"
#include "obdr/experiments.hpp"

#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace obdr
{

class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Write-once output file. The temporary sibling is opened on construction,
 * so an unwritable destination fails before any work is done; commit()
 * renames it into place. An uncommitted file is removed on destruction.
 */
class AtomicFile
{
  public:
    explicit AtomicFile(std::string path);
    ~AtomicFile();

    AtomicFile(const AtomicFile&) = delete;
    AtomicFile& operator=(const AtomicFile&) = delete;

    void write(std::string_view text);
    void commit();

    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::string temp_path_;
    std::FILE* file_{nullptr};
};

inline constexpr std::string_view kCsvHeader =
    "theta_deg,n_nodes,d_m,r_m,square_side_m,trials,success_rate,success_ci,implicated_ratio_mean,"
    "implicated_ratio_std,bandwidth_gain,mean_hops_success,model_ratio,model_relative_error";

/// 9 significant digits, "%.9g".
std::string format_sig9(double value);

/// '#'-prefixed comment lines.
std::string comment_block(const std::vector<std::string>& lines);

std::string csv_row(const CellResult& cell);

/// Comment block, header and one row per cell.
std::string render_csv(const std::vector<CellResult>& cells, const std::vector<std::string>& echo);

/// Skips '#' lines; throws IoError on a malformed header or row.
std::vector<CellResult> parse_csv(std::string_view text);

/// Machine-readable `key = value` record of one propagation run.
std::string render_outcome_record(const Scenario& scenario, const BroadcastOutcome& outcome,
                                  const std::vector<std::string>& echo);

/// Human-readable summary of one propagation run.
std::string summarize_outcome(const Scenario& scenario, const BroadcastOutcome& outcome);

/// Report of the triangle-chain model; `model` absent means the degenerate
/// single-hop case.
std::string render_model_report(const std::optional<LeafModel>& model, double square_side,
                                const std::vector<std::string>& echo);

/// SVG 1.1 scene: field, nodes, implicated, chain and endpoints layers.
std::string render_svg(const Scenario& scenario, const BroadcastOutcome& outcome,
                       const std::optional<LeafModel>& model, const std::vector<std::string>& echo,
                       double viewport_px = 800.0);

} // namespace obdr
