#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "shepherd/io.hpp"

namespace shepherd::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Flags shared by `run` and `batch`. Every flag is optional so that only the
/// ones actually given override the config file.
struct CommonFlags {
    std::string config_path;
    std::optional<std::string> policy;
    std::optional<std::string> placement;
    std::optional<int> m;
    std::optional<int> n_sheep;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<int> max_steps;
    std::optional<std::string> alignment_sign;
    std::map<std::string, std::optional<double>> reals;
    std::optional<std::string> out;
    unsigned threads = 0;
};

std::string flag_name(std::string key)
{
    std::replace(key.begin(), key.end(), '_', '-');
    return "--" + key;
}

void add_common(CLI::App& app, CommonFlags& f)
{
    app.add_option("--config", f.config_path, "JSON config file or run manifest");
    app.add_option("--policy", f.policy, "proposed | fat | fat-occ | ots");
    app.add_option("--placement", f.placement, "bottom-left | top-right | surrounding");
    app.add_option("--m", f.m, "number of shepherds");
    app.add_option("--n-sheep", f.n_sheep, "number of sheep");
    app.add_option("--trials", f.trials, "trials per cell");
    app.add_option("--seed", f.seed, "base seed");
    app.add_option("--max-steps", f.max_steps, "step limit per trial");
    app.add_option("--alignment-sign", f.alignment_sign, "as-printed | conventional");
    app.add_option("--out", f.out, "output path");
    app.add_option("--threads", f.threads, "worker threads (0 = hardware concurrency)");
    for (const auto& key : real_config_keys()) {
        if (key == "alpha") {
            app.add_option("--alpha", f.reals[key], "target selection trade-off");
        } else {
            app.add_option(flag_name(key), f.reals[key], "override " + key);
        }
    }
}

struct SweepFlags {
    std::optional<std::vector<int>> m_values;
    std::optional<std::vector<std::string>> policies;
    std::optional<std::vector<std::string>> placements;
};

/// defaults < config file < flags
RunConfig resolve(const CommonFlags& f, const SweepFlags& sweep = {})
{
    RunConfig cfg;
    if (!f.config_path.empty()) {
        cfg = load_config_file(f.config_path, cfg);
    }
    json overrides = json::object();
    if (f.policy) overrides["policy"] = *f.policy;
    if (f.placement) overrides["placement"] = *f.placement;
    if (f.m) overrides["m"] = *f.m;
    if (f.n_sheep) overrides["n_sheep"] = *f.n_sheep;
    if (f.trials) overrides["trials"] = *f.trials;
    if (f.seed) overrides["seed"] = *f.seed;
    if (f.max_steps) overrides["max_steps"] = *f.max_steps;
    if (f.alignment_sign) overrides["alignment_sign"] = *f.alignment_sign;
    if (sweep.m_values) overrides["m_values"] = *sweep.m_values;
    if (sweep.policies) overrides["policies"] = *sweep.policies;
    if (sweep.placements) overrides["placements"] = *sweep.placements;
    for (const auto& [key, value] : f.reals) {
        if (value) {
            overrides[key] = *value;
        }
    }
    cfg = config_from_json(overrides, cfg);
    cfg.validate();
    return cfg;
}

fs::path default_out_dir()
{
    if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
        return env;
    }
    return {};
}

unsigned thread_count(unsigned requested)
{
    if (requested > 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::ofstream open_output(const fs::path& path)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot write output file: " + path.string());
    }
    return os;
}

void write_manifest(const fs::path& path, const std::string& command, const RunConfig& cfg)
{
    RunManifest manifest;
    manifest.command = command;
    manifest.config = cfg;
    manifest.timestamp = utc_timestamp();
    auto os = open_output(path);
    os << manifest_to_json(manifest).dump(2) << '\n';
}

int cmd_run(const CommonFlags& f, bool record, std::ostream& out)
{
    const RunConfig cfg = resolve(f);
    const fs::path traj_path = f.out ? fs::path(*f.out) : default_out_dir() / "trajectory.csv";

    const TrialResult result = run_trial(make_scenario(cfg.scenario), cfg.scenario.policy, record);
    if (record) {
        auto os = open_output(traj_path);
        write_trajectory_csv(os, *result.trajectory);
        if (!os.flush()) {
            throw std::runtime_error("failed writing " + traj_path.string());
        }
        write_manifest(fs::path(traj_path.string() + ".manifest.json"), "run", cfg);
    }
    out << "success=" << (result.success ? 1 : 0) << " steps=" << result.steps
        << " mean_path_len=" << format_real(result.mean_path_len) << '\n';
    return 0;
}

int cmd_batch(const CommonFlags& f, const SweepFlags& sweep, bool plot_data, std::ostream& out)
{
    const RunConfig cfg = resolve(f, sweep);
    const fs::path dir = f.out ? fs::path(*f.out)
                               : (default_out_dir().empty() ? fs::path("shepherd-out")
                                                            : default_out_dir());

    // fail on an unwritable destination before spending time on the sweep
    auto metrics_os = open_output(dir / "metrics.csv");

    const auto rows = sweep_shepherd_count(cfg.scenario, cfg.m_values, cfg.trials,
                                           thread_count(f.threads), cfg.policies, cfg.placements);
    write_metrics_csv(metrics_os, rows);
    write_manifest(dir / "manifest.json", "batch", cfg);
    if (plot_data) {
        const std::pair<const char*, PlotMetric> plots[] = {
            {"plot_success_rate.csv", PlotMetric::SuccessRate},
            {"plot_completion_time.csv", PlotMetric::CompletionTime},
            {"plot_path_length.csv", PlotMetric::PathLength},
        };
        for (const auto& [name, metric] : plots) {
            auto os = open_output(dir / name);
            write_plot_csv(os, rows, metric);
        }
    }
    out << "wrote " << rows.size() << " rows to " << (dir / "metrics.csv").string() << '\n';
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Multi-shepherd herding simulator", "shepherd"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    bool record = true;
    auto* run = app.add_subcommand("run", "simulate a single trial and write its trajectory");
    add_common(*run, run_flags);
    run->add_option("--record-trajectory", record, "write the trajectory file")
        ->default_val(true);

    CommonFlags batch_flags;
    SweepFlags sweep;
    bool no_plot = false;
    auto* batch = app.add_subcommand("batch", "sweep policies x placements x shepherd counts");
    add_common(*batch, batch_flags);
    batch->add_option("--m-values", sweep.m_values, "shepherd counts to sweep")->delimiter(',');
    batch->add_option("--policies", sweep.policies, "policies to sweep")->delimiter(',');
    batch->add_option("--placements", sweep.placements, "placements to sweep")->delimiter(',');
    batch->add_flag("--no-plot-data", no_plot, "skip the per-metric plot tables");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (run->parsed()) {
            return cmd_run(run_flags, record, out);
        }
        return cmd_batch(batch_flags, sweep, !no_plot, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace shepherd::cli
