// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include "obdr/analytic_model.hpp"
#include "obdr/commands.hpp"
#include "obdr/engine.hpp"
#include "obdr/experiments.hpp"

#include "oracles.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace obdr;

namespace
{

constexpr std::size_t kTrials = 500;
constexpr double kRadius = 200.0;
constexpr double kSide = 4000.0;
constexpr std::uint64_t kSeed = 1;

constexpr double kMaxModelError = 0.15;
constexpr double kMinR2 = 0.98;
constexpr double kGainTolerance = 1e-12;
constexpr double kZ95 = 1.959963984540054;
constexpr double kOracleTolerance = 1e-9;
constexpr double kShoelaceTolerance = 1e-6;

const std::vector<double> kGridThetas = {22.5, 45.0, 67.5, 90.0, 112.5, 135.0};

int failures = 0;

void
report(int id, bool pass, const std::string& title)
{
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, title.c_str());
    std::fflush(stdout);
    failures += pass ? 0 : 1;
}

__attribute__((format(printf, 1, 2))) void
detail(const char* fmt, ...)
{
    std::printf("    ");
    va_list args;
    va_start(args, fmt);
    std::vprintf(fmt, args);
    va_end(args);
    std::printf("\n");
}

/// Cells are computed once and shared between criteria.
class CellCache
{
  public:
    const CellResult& get(double theta_deg, std::size_t n, double d)
    {
        auto key = std::make_tuple(theta_deg, n, d);
        auto it = cells_.find(key);
        if (it == cells_.end())
        {
            ScenarioConfig cfg;
            cfg.square_side = kSide;
            cfg.radius = kRadius;
            cfg.seed = kSeed;
            cfg = cell_config(cfg, deg_to_rad(theta_deg), n, d);
            it = cells_.emplace(key, run_cell(cfg, kTrials)).first;
        }
        return it->second;
    }

    const std::map<std::tuple<double, std::size_t, double>, CellResult>& all() const { return cells_; }

  private:
    std::map<std::tuple<double, std::size_t, double>, CellResult> cells_;
};

/// A drop larger than the combined 95% normal margin counts as a decrease.
bool
significant_drop(const CellResult& from, const CellResult& to)
{
    auto var = [](const CellResult& c) { return c.success_rate * (1 - c.success_rate) / static_cast<double>(c.trials); };
    return from.success_rate - to.success_rate > kZ95 * std::sqrt(var(from) + var(to));
}

void
model_agreement(CellCache& cache)
{
    bool pass = true;
    for (std::size_t n : {1000u, 3000u})
    {
        for (double theta : {45.0, 67.5, 90.0, 112.5, 120.0})
        {
            const CellResult& c = cache.get(theta, n, 1000.0);
            if (c.model_relative_error)
            {
                bool ok = std::abs(*c.model_relative_error) <= kMaxModelError;
                pass = pass && ok;
                detail("N=%zu theta=%5.1f  simulated %.6f  model %.6f  relative error %+.4f %s", n, theta,
                       c.implicated_ratio_mean, *c.model_ratio, *c.model_relative_error, ok ? "" : "(exceeds 0.15)");
            }
            else
            {
                pass = false;
                detail("N=%zu theta=%5.1f  simulated %.6f  model undefined (chain does not reach d <= r)", n, theta,
                       c.implicated_ratio_mean);
            }
        }
    }
    report(1, pass, "model vs simulated implicated ratio, |relative error| <= 0.15 for theta in [45, 120] deg");
}

void
density_independence(CellCache& cache)
{
    std::map<std::tuple<double, double>, std::vector<const CellResult*>> groups;
    for (const auto& [key, cell] : cache.all())
    {
        groups[{std::get<0>(key), std::get<2>(key)}].push_back(&cell);
    }
    bool pass = true;
    std::size_t compared = 0;
    for (const auto& [key, cells] : groups)
    {
        for (const CellResult* c : cells)
        {
            pass = pass && c->model_ratio == cells.front()->model_ratio;
            ++compared;
        }
    }
    detail("%zu cells in %zu (theta, d) groups", compared, groups.size());
    report(2, pass && compared > groups.size(), "model_ratio bit-identical across node counts");
}

void
near_linearity(CellCache& cache)
{
    std::vector<std::pair<double, double>> points;
    for (double theta : {22.5, 45.0, 67.5, 90.0, 100.0})
    {
        const CellResult& c = cache.get(theta, 2000, 1000.0);
        points.emplace_back(theta, c.implicated_ratio_mean);
        detail("theta=%5.1f  implicated ratio %.6f", theta, c.implicated_ratio_mean);
    }
    double r2 = linear_fit_r2(points);
    detail("R^2 = %.6f", r2);
    report(3, r2 >= kMinR2, "implicated ratio linear in theta below 100 deg, R^2 >= 0.98");
}

void
success_trends(CellCache& cache)
{
    bool pass = true;
    const CellResult* prev = nullptr;
    for (std::size_t n : {1000u, 2000u, 3000u})
    {
        const CellResult& c = cache.get(90.0, n, 1000.0);
        detail("theta=90 N=%zu success %.3f +- %.3f", n, c.success_rate, c.success_ci_halfwidth);
        if (prev && significant_drop(*prev, c))
        {
            pass = false;
            detail("  decrease in N is significant");
        }
        prev = &c;
    }
    prev = nullptr;
    for (double theta : kGridThetas)
    {
        const CellResult& c = cache.get(theta, 3000, 1000.0);
        detail("N=3000 theta=%5.1f success %.3f +- %.3f", theta, c.success_rate, c.success_ci_halfwidth);
        if (prev && significant_drop(*prev, c))
        {
            pass = false;
            detail("  decrease in theta is significant");
        }
        prev = &c;
    }
    std::size_t ordered = 0;
    for (std::size_t n : {1000u, 2000u, 3000u})
    {
        for (double theta : kGridThetas)
        {
            const CellResult& near = cache.get(theta, n, 1000.0);
            const CellResult& far = cache.get(theta, n, 3000.0);
            if (far.success_rate <= near.success_rate)
            {
                ++ordered;
            }
            else
            {
                detail("N=%zu theta=%5.1f: d=3000 success %.3f vs d=1000 success %.3f", n, theta, far.success_rate,
                       near.success_rate);
            }
            if (significant_drop(far, near))
            {
                pass = false;
                detail("  the d=3000 excess is significant");
            }
        }
    }
    detail("d=3000 <= d=1000 holds in %zu of 18 matched cells (others within 95%% confidence)", ordered);
    report(5, pass, "success rate non-decreasing in N and theta, lower at d = 3000 than at d = 1000");
}

void
bandwidth_identity(const CellCache& cache)
{
    bool pass = true;
    double worst = 0.0;
    for (const auto& [key, c] : cache.all())
    {
        double expected = c.implicated_ratio_mean * rad_to_deg(c.theta) / 360.0;
        double rel = c.bandwidth_gain == 0.0 ? std::abs(expected)
                                             : std::abs(c.bandwidth_gain - expected) / std::abs(c.bandwidth_gain);
        worst = std::max(worst, rel);
        pass = pass && rel <= kGainTolerance && c.bandwidth_gain < c.implicated_ratio_mean;
    }
    detail("%zu rows, worst relative deviation %.3g", cache.all().size(), worst);
    report(4, pass, "bandwidth_gain = implicated_ratio_mean * theta_deg / 360 to 1e-12 relative");
}

void
engine_oracle()
{
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<int> count(0, 50);
    std::uniform_real_distribution<double> theta(10.0, 360.0);
    std::uniform_real_distribution<double> side(400.0, 1200.0);
    int mismatches = 0;
    int successes = 0;
    for (int i = 0; i < 100; ++i)
    {
        ScenarioConfig cfg;
        cfg.square_side = side(rng);
        cfg.n_nodes = static_cast<std::size_t>(count(rng));
        cfg.radius = 200;
        cfg.theta = deg_to_rad(theta(rng));
        cfg.sd_distance = cfg.square_side * 0.6;
        cfg.seed = rng();
        cfg.direction_error_bound = i % 3 == 0 ? deg_to_rad(15.0) : 0.0;
        Scenario sc = generate(cfg);
        std::uint64_t stream = rng();
        BroadcastOutcome o = propagate(sc, stream);
        auto ref = oracle::brute_force_flood(
            sc, [&](std::uint32_t id) { return aim_offset(stream, NodeId{id}, cfg.direction_error_bound); });

        std::set<std::uint32_t> implicated, covered;
        for (NodeId id : o.implicated)
        {
            implicated.insert(id.value);
        }
        for (NodeId id : o.covered)
        {
            covered.insert(id.value);
        }
        bool same = implicated == ref.implicated && covered == ref.covered && o.success == ref.success &&
                    (!o.success || *o.first_delivery_hop == ref.first_hop);
        mismatches += same ? 0 : 1;
        successes += o.success ? 1 : 0;
    }
    detail("100 scenarios, %d deliveries, %d mismatches", successes, mismatches);
    report(6, mismatches == 0, "engine matches brute-force flood on 100 random scenarios (N <= 50)");
}

void
analytic_oracles()
{
    bool pass = true;
    std::mt19937_64 rng(1618);
    std::uniform_real_distribution<double> r_dist(50.0, 400.0);
    std::uniform_real_distribution<double> factor(1.1, 20.0);
    std::uniform_real_distribution<double> theta_dist(deg_to_rad(5.0), deg_to_rad(119.5));
    double worst_seq = 0.0;
    double worst_area = 0.0;
    double worst_shoelace = 0.0;
    for (int i = 0; i < 50; ++i)
    {
        double r = r_dist(rng);
        double d = r * factor(rng);
        double theta = theta_dist(rng);
        LeafModel m = build_leaf(d, r, theta);
        auto ref = oracle::iterate_leaf(d, r, theta);
        if (ref.d_seq.size() != m.d_seq.size() || ref.by_range != m.terminated_by_range)
        {
            pass = false;
            continue;
        }
        for (std::size_t k = 0; k < m.d_seq.size(); ++k)
        {
            worst_seq = std::max(worst_seq, static_cast<double>(std::abs((m.d_seq[k] - ref.d_seq[k]) / ref.d_seq[k])));
        }
        worst_area = std::max(worst_area, static_cast<double>(std::abs((m.total_area - ref.total_area) / ref.total_area)));

        auto v = oracle::chain_vertices(d, r, theta, m.n_triangles);
        for (std::size_t k = 0; k < m.n_triangles; ++k)
        {
            double s = oracle::shoelace({0, 0}, v[k], v[k + 1]);
            worst_shoelace = std::max(worst_shoelace, std::abs(s - m.areas[k]) / s);
        }
    }
    // 30-digit reference for d = 1000, r = 200, theta = 60 deg
    LeafModel frozen = build_leaf(1000, 200, deg_to_rad(60));
    double frozen_err = std::abs(frozen.total_area - 334949.03460144519) / 334949.03460144519;
    pass = pass && frozen.n_triangles == 5 && frozen_err <= kOracleTolerance;

    detail("d_seq worst %.3g, total_area worst %.3g, shoelace worst %.3g, frozen reference %.3g", worst_seq,
           worst_area, worst_shoelace, frozen_err);
    pass = pass && worst_seq <= kOracleTolerance && worst_area <= kOracleTolerance &&
           worst_shoelace <= kShoelaceTolerance;
    report(7, pass, "leaf model matches scripted iteration (1e-9) and shoelace areas (1e-6)");
}

std::string
slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void
determinism()
{
    auto dir = std::filesystem::temp_directory_path() / "obdr_acceptance_determinism";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);

    struct Case
    {
        Command command;
        std::vector<std::string> overrides;
    };
    const std::vector<Case> cases = {
        {Command::Simulate, {"n_nodes=2000", "direction_error_deg=10"}},
        {Command::Sweep, {"trials=20", "sweep.theta_deg=45,90", "sweep.n_nodes=1000,2000", "sweep.sd_distance=1000,2000"}},
        {Command::Model, {"theta_deg=75"}},
        {Command::Compare, {"trials=20", "sweep.theta_deg=45,67.5,90"}},
        {Command::Snapshot, {"n_nodes=2000", "theta_deg=60"}},
    };

    bool pass = true;
    for (const Case& c : cases)
    {
        std::string first;
        for (int run = 0; run < 2; ++run)
        {
            RunManifest m;
            m.command = c.command;
            m.overrides = c.overrides;
            m.seed = 42;
            m.threads = run == 0 ? 1 : 3;
            m.output_path = (dir / (std::string(command_name(c.command)) + std::to_string(run))).string();
            std::ostringstream out, err;
            int code = run_command(m, out, err);
            std::string bytes = slurp(m.output_path);
            if (code != kExitOk || bytes.empty())
            {
                pass = false;
            }
            if (run == 0)
            {
                first = bytes;
            }
            else
            {
                bool same = first == bytes;
                pass = pass && same;
                detail("%-8s %zu bytes, %s", std::string(command_name(c.command)).c_str(), bytes.size(),
                       same ? "identical" : "DIFFERENT");
            }
        }
    }
    std::filesystem::remove_all(dir);
    report(8, pass, "every command reruns to byte-identical output");
}

} // namespace

int
main()
{
    CellCache cache;
    // every simulated cell up front, so criterion 4 sees all emitted rows
    for (double d : {1000.0, 3000.0})
    {
        for (std::size_t n : {1000u, 2000u, 3000u})
        {
            for (double theta : {22.5, 45.0, 67.5, 90.0, 100.0, 112.5, 120.0, 135.0})
            {
                cache.get(theta, n, d);
            }
        }
    }
    model_agreement(cache);
    density_independence(cache);
    near_linearity(cache);
    bandwidth_identity(cache);
    success_trends(cache);
    engine_oracle();
    analytic_oracles();
    determinism();
    std::printf("%s: %d criterion/criteria failed\n", failures ? "FAILED" : "PASSED", failures);
    return failures ? 1 : 0;
}
