#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "shepherd/scenario.hpp"

namespace shepherd {

inline constexpr const char* kToolVersion = "1.0.0";

/// Fully resolved settings of a `run` or `batch` invocation. Everything that
/// influences results lives here; output locations and thread counts do not.
struct RunConfig {
    ScenarioConfig scenario;
    int trials = 100;
    std::vector<int> m_values{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<PolicyKind> policies{std::begin(kAllPolicies), std::end(kAllPolicies)};
    std::vector<Placement> placements{std::begin(kAllPlacements), std::end(kAllPlacements)};

    void validate() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Flat key/value JSON object. Keys: n_sheep, m, placement, policy, seed,
/// trials, m_values, policies, placements, c1..c4, r, r_prime, d1..d4, alpha, theta, r_under,
/// R_ots, d_ots, goal_x, goal_y, goal_radius, max_steps, alignment_sign,
/// sheep_disc_radius, cluster_offset, cluster_radius, surround_radius.
nlohmann::json config_to_json(const RunConfig& config);

/// Overlays the keys present in `doc` onto `base`. Unknown keys and values of
/// the wrong type raise std::invalid_argument.
RunConfig config_from_json(const nlohmann::json& doc, RunConfig base = {});

/// Reads a flat config file, or the configuration embedded in a run manifest.
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Config keys holding real numbers, in serialization order.
std::vector<std::string> real_config_keys();

struct RunManifest {
    std::string tool_version = kToolVersion;
    std::string command;  // "run" or "batch"
    RunConfig config;
    std::string rng = std::string(Rng::kName);
    std::string timestamp;  // ISO 8601, UTC
};

nlohmann::json manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& doc);

std::string utc_timestamp();

/// 9 significant digits; "nan" for NaN.
std::string format_real(double v);

// Trajectory CSV: header `t,agent_kind,agent_id,x,y`, one row per agent per
// frame, sheep before shepherds.
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);
Trajectory read_trajectory_csv(std::istream& is);

/// Per-shepherd sum of |q_k(t+1) - q_k(t)| over consecutive frames.
std::vector<double> path_lengths_from_trajectory(const Trajectory& trajectory);

/// Header `policy,placement,m,trials,success_rate,ct_mean,ct_sd,ct_ci,apl_mean,apl_sd,apl_ci`.
void write_metrics_csv(std::ostream& os, const std::vector<SweepRow>& rows);

enum class PlotMetric { SuccessRate, CompletionTime, PathLength };

/// Plot-ready table for one metric: rows keyed by (placement, m), one value
/// column per policy; the time and path metrics add a `<policy>_ci` column.
void write_plot_csv(std::ostream& os, const std::vector<SweepRow>& rows, PlotMetric metric);

} // namespace shepherd
