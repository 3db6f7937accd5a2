#include "shepherd/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace shepherd {

using nlohmann::json;

namespace {

struct RealField {
    const char* key;
    std::function<double&(RunConfig&)> ref;
};

const std::vector<RealField>& real_fields()
{
    static const std::vector<RealField> fields = {
        {"c1", [](RunConfig& c) -> double& { return c.scenario.params.c1; }},
        {"c2", [](RunConfig& c) -> double& { return c.scenario.params.c2; }},
        {"c3", [](RunConfig& c) -> double& { return c.scenario.params.c3; }},
        {"c4", [](RunConfig& c) -> double& { return c.scenario.params.c4; }},
        {"r", [](RunConfig& c) -> double& { return c.scenario.params.r; }},
        {"r_prime", [](RunConfig& c) -> double& { return c.scenario.params.r_prime; }},
        {"d1", [](RunConfig& c) -> double& { return c.scenario.params.d1; }},
        {"d2", [](RunConfig& c) -> double& { return c.scenario.params.d2; }},
        {"d3", [](RunConfig& c) -> double& { return c.scenario.params.d3; }},
        {"d4", [](RunConfig& c) -> double& { return c.scenario.params.d4; }},
        {"alpha", [](RunConfig& c) -> double& { return c.scenario.params.alpha; }},
        {"theta", [](RunConfig& c) -> double& { return c.scenario.params.theta; }},
        {"r_under", [](RunConfig& c) -> double& { return c.scenario.params.r_under; }},
        {"R_ots", [](RunConfig& c) -> double& { return c.scenario.params.R_ots; }},
        {"d_ots", [](RunConfig& c) -> double& { return c.scenario.params.d_ots; }},
        {"goal_x", [](RunConfig& c) -> double& { return c.scenario.params.goal_center.x; }},
        {"goal_y", [](RunConfig& c) -> double& { return c.scenario.params.goal_center.y; }},
        {"goal_radius", [](RunConfig& c) -> double& { return c.scenario.params.goal_radius; }},
        {"sheep_disc_radius",
         [](RunConfig& c) -> double& { return c.scenario.geometry.sheep_disc_radius; }},
        {"cluster_offset",
         [](RunConfig& c) -> double& { return c.scenario.geometry.cluster_offset; }},
        {"cluster_radius",
         [](RunConfig& c) -> double& { return c.scenario.geometry.cluster_radius; }},
        {"surround_radius",
         [](RunConfig& c) -> double& { return c.scenario.geometry.surround_radius; }},
    };
    return fields;
}

std::string_view to_string(AlignmentSign s)
{
    return s == AlignmentSign::AsPrinted ? "as-printed" : "conventional";
}

AlignmentSign parse_alignment_sign(std::string_view name)
{
    if (name == "as-printed") {
        return AlignmentSign::AsPrinted;
    }
    if (name == "conventional") {
        return AlignmentSign::Conventional;
    }
    throw std::invalid_argument("unknown alignment_sign: " + std::string(name));
}

template <class T>
T get_as(const json& value, const std::string& key)
{
    try {
        return value.get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("config key '" + key + "' has the wrong type");
    }
}

int get_int(const json& value, const std::string& key)
{
    if (!value.is_number_integer()) {
        throw std::invalid_argument("config key '" + key + "' must be an integer");
    }
    return get_as<int>(value, key);
}

} // namespace

void RunConfig::validate() const
{
    scenario.validate();
    if (trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
    if (m_values.empty()) {
        throw std::invalid_argument("m_values must not be empty");
    }
    for (int m : m_values) {
        if (m < 1) {
            throw std::invalid_argument("every m value must be >= 1");
        }
    }
    if (policies.empty() || placements.empty()) {
        throw std::invalid_argument("policies and placements must not be empty");
    }
}

json config_to_json(const RunConfig& config)
{
    RunConfig copy = config;
    json doc = json::object();
    doc["n_sheep"] = config.scenario.n_sheep;
    doc["m"] = config.scenario.n_shepherds;
    doc["placement"] = std::string(to_string(config.scenario.placement));
    doc["policy"] = std::string(to_string(config.scenario.policy));
    doc["seed"] = config.scenario.seed;
    doc["trials"] = config.trials;
    doc["m_values"] = config.m_values;
    doc["policies"] = json::array();
    for (PolicyKind p : config.policies) {
        doc["policies"].push_back(std::string(to_string(p)));
    }
    doc["placements"] = json::array();
    for (Placement p : config.placements) {
        doc["placements"].push_back(std::string(to_string(p)));
    }
    doc["max_steps"] = config.scenario.params.max_steps;
    doc["alignment_sign"] = std::string(to_string(config.scenario.params.alignment_sign));
    for (const auto& f : real_fields()) {
        doc[f.key] = f.ref(copy);
    }
    return doc;
}

RunConfig config_from_json(const json& doc, RunConfig base)
{
    if (!doc.is_object()) {
        throw std::invalid_argument("config must be a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key == "n_sheep") {
            base.scenario.n_sheep = get_int(value, key);
        } else if (key == "m") {
            base.scenario.n_shepherds = get_int(value, key);
        } else if (key == "placement") {
            base.scenario.placement = parse_placement(get_as<std::string>(value, key));
        } else if (key == "policy") {
            base.scenario.policy = parse_policy(get_as<std::string>(value, key));
        } else if (key == "seed") {
            if (!value.is_number_unsigned()) {
                throw std::invalid_argument("config key 'seed' must be a non-negative integer");
            }
            base.scenario.seed = value.get<std::uint64_t>();
        } else if (key == "trials") {
            base.trials = get_int(value, key);
        } else if (key == "m_values") {
            if (!value.is_array()) {
                throw std::invalid_argument("config key 'm_values' must be an array");
            }
            base.m_values.clear();
            for (const auto& v : value) {
                base.m_values.push_back(get_int(v, key));
            }
        } else if (key == "policies" || key == "placements") {
            if (!value.is_array()) {
                throw std::invalid_argument("config key '" + key + "' must be an array");
            }
            if (key == "policies") {
                base.policies.clear();
                for (const auto& v : value) {
                    base.policies.push_back(parse_policy(get_as<std::string>(v, key)));
                }
            } else {
                base.placements.clear();
                for (const auto& v : value) {
                    base.placements.push_back(parse_placement(get_as<std::string>(v, key)));
                }
            }
        } else if (key == "max_steps") {
            base.scenario.params.max_steps = get_int(value, key);
        } else if (key == "alignment_sign") {
            base.scenario.params.alignment_sign =
                parse_alignment_sign(get_as<std::string>(value, key));
        } else {
            bool found = false;
            for (const auto& f : real_fields()) {
                if (key == f.key) {
                    if (!value.is_number()) {
                        throw std::invalid_argument("config key '" + key + "' must be a number");
                    }
                    f.ref(base) = value.get<double>();
                    found = true;
                    break;
                }
            }
            if (!found) {
                throw std::invalid_argument("unknown config key: " + key);
            }
        }
    }
    return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file: " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config file " + path + " is not valid JSON: " + e.what());
    }
    // a run manifest carries its configuration under "config"
    if (doc.is_object() && doc.contains("config") && doc.contains("tool_version")) {
        return config_from_json(doc.at("config"), std::move(base));
    }
    return config_from_json(doc, std::move(base));
}

std::vector<std::string> real_config_keys()
{
    std::vector<std::string> keys;
    for (const auto& f : real_fields()) {
        keys.emplace_back(f.key);
    }
    return keys;
}

json manifest_to_json(const RunManifest& manifest)
{
    return json{{"tool_version", manifest.tool_version},
                {"command", manifest.command},
                {"rng", manifest.rng},
                {"timestamp", manifest.timestamp},
                {"config", config_to_json(manifest.config)}};
}

RunManifest manifest_from_json(const json& doc)
{
    RunManifest m;
    m.tool_version = doc.at("tool_version").get<std::string>();
    m.command = doc.at("command").get<std::string>();
    m.rng = doc.at("rng").get<std::string>();
    m.timestamp = doc.at("timestamp").get<std::string>();
    m.config = config_from_json(doc.at("config"));
    return m;
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string format_real(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory)
{
    os << "t,agent_kind,agent_id,x,y\n";
    for (const auto& f : trajectory) {
        for (std::size_t i = 0; i < f.sheep.size(); ++i) {
            os << f.t << ",sheep," << i << ',' << format_real(f.sheep[i].x) << ','
               << format_real(f.sheep[i].y) << '\n';
        }
        for (std::size_t k = 0; k < f.shepherds.size(); ++k) {
            os << f.t << ",shepherd," << k << ',' << format_real(f.shepherds[k].x) << ','
               << format_real(f.shepherds[k].y) << '\n';
        }
    }
}

Trajectory read_trajectory_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != "t,agent_kind,agent_id,x,y") {
        throw std::invalid_argument("trajectory file: missing or wrong header");
    }
    std::map<int, Frame> frames;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string t, kind, id, x, y;
        if (!std::getline(ss, t, ',') || !std::getline(ss, kind, ',') || !std::getline(ss, id, ',')
            || !std::getline(ss, x, ',') || !std::getline(ss, y)) {
            throw std::invalid_argument("trajectory file: malformed line "
                                        + std::to_string(line_no));
        }
        Frame& f = frames[std::stoi(t)];
        f.t = std::stoi(t);
        const std::size_t idx = std::stoul(id);
        auto& list = kind == "sheep" ? f.sheep : kind == "shepherd" ? f.shepherds
            : throw std::invalid_argument("trajectory file: bad agent_kind on line "
                                          + std::to_string(line_no));
        if (list.size() <= idx) {
            list.resize(idx + 1);
        }
        list[idx] = {std::stod(x), std::stod(y)};
    }
    Trajectory out;
    out.reserve(frames.size());
    for (auto& [t, f] : frames) {
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<double> path_lengths_from_trajectory(const Trajectory& trajectory)
{
    if (trajectory.empty()) {
        return {};
    }
    std::vector<double> out(trajectory.front().shepherds.size(), 0.0);
    for (std::size_t n = 1; n < trajectory.size(); ++n) {
        const auto& prev = trajectory[n - 1].shepherds;
        const auto& cur = trajectory[n].shepherds;
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] += norm(cur[k] - prev[k]);
        }
    }
    return out;
}

void write_metrics_csv(std::ostream& os, const std::vector<SweepRow>& rows)
{
    os << "policy,placement,m,trials,success_rate,ct_mean,ct_sd,ct_ci,apl_mean,apl_sd,apl_ci\n";
    for (const auto& row : rows) {
        const auto& m = row.metrics;
        os << to_string(row.policy) << ',' << to_string(row.placement) << ',' << row.m << ','
           << m.trials << ',' << format_real(m.success_rate) << ','
           << format_real(m.completion_time.mean) << ',' << format_real(m.completion_time.sd)
           << ',' << format_real(m.completion_time.ci95) << ','
           << format_real(m.path_length.mean) << ',' << format_real(m.path_length.sd) << ','
           << format_real(m.path_length.ci95) << '\n';
    }
}

void write_plot_csv(std::ostream& os, const std::vector<SweepRow>& rows, PlotMetric metric)
{
    std::vector<PolicyKind> policies;
    std::map<std::pair<int, int>, std::map<int, const SweepRow*>> table;  // (placement, m) -> policy
    std::vector<std::pair<int, int>> keys;
    for (const auto& row : rows) {
        const int pol = static_cast<int>(row.policy);
        if (std::find(policies.begin(), policies.end(), row.policy) == policies.end()) {
            policies.push_back(row.policy);
        }
        const std::pair key{static_cast<int>(row.placement), row.m};
        if (!table.contains(key)) {
            keys.push_back(key);
        }
        table[key][pol] = &row;
    }
    std::sort(keys.begin(), keys.end());

    const bool with_ci = metric != PlotMetric::SuccessRate;
    os << "placement,m";
    for (PolicyKind p : policies) {
        os << ',' << to_string(p);
        if (with_ci) {
            os << ',' << to_string(p) << "_ci";
        }
    }
    os << '\n';
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& key : keys) {
        os << to_string(static_cast<Placement>(key.first)) << ',' << key.second;
        for (PolicyKind p : policies) {
            const auto& cell = table[key];
            const auto it = cell.find(static_cast<int>(p));
            const SweepRow* row = it == cell.end() ? nullptr : it->second;
            switch (metric) {
            case PlotMetric::SuccessRate:
                os << ',' << format_real(row ? row->metrics.success_rate : nan);
                break;
            case PlotMetric::CompletionTime:
                os << ',' << format_real(row ? row->metrics.completion_time.mean : nan) << ','
                   << format_real(row ? row->metrics.completion_time.ci95 : nan);
                break;
            case PlotMetric::PathLength:
                os << ',' << format_real(row ? row->metrics.path_length.mean : nan) << ','
                   << format_real(row ? row->metrics.path_length.ci95 : nan);
                break;
            }
        }
        os << '\n';
    }
}

} // namespace shepherd
