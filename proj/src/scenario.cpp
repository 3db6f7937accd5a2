#include "shepherd/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace shepherd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec2 uniform_in_disc(Rng& rng, Vec2 center, double radius)
{
    const double rho = radius * std::sqrt(rng.uniform());
    const double angle = kTwoPi * rng.uniform();
    return {center.x + rho * std::cos(angle), center.y + rho * std::sin(angle)};
}

// Runs job(i) for i in [0, n) on up to `threads` workers.
template <class Job>
void parallel_for(int n, unsigned threads, Job&& job)
{
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max(n, 1))));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) {
            job(i);
        }
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < n && !failed; i = next++) {
                try {
                    job(i);
                } catch (...) {
                    if (!failed.exchange(true)) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    pool.clear();
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace

std::string_view to_string(Placement placement) noexcept
{
    switch (placement) {
    case Placement::BottomLeft: return "bottom-left";
    case Placement::TopRight: return "top-right";
    case Placement::Surrounding: return "surrounding";
    }
    return "?";
}

Placement parse_placement(std::string_view name)
{
    for (Placement p : kAllPlacements) {
        if (to_string(p) == name) {
            return p;
        }
    }
    throw std::invalid_argument("unknown placement: " + std::string(name));
}

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) noexcept
{
    return splitmix64(base ^ splitmix64(index));
}

std::vector<Vec2> sample_sheep_positions(Rng& rng, int n, double radius)
{
    if (n < 1) {
        throw std::invalid_argument("need at least one sheep");
    }
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.push_back(uniform_in_disc(rng, {}, radius));
    }
    return out;
}

std::vector<Vec2> sample_shepherd_positions(Rng& rng, int m, Placement placement,
                                            const PlacementGeometry& geometry)
{
    if (m < 1) {
        throw std::invalid_argument("need at least one shepherd");
    }
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(m));
    const double off = geometry.cluster_offset;
    for (int k = 0; k < m; ++k) {
        switch (placement) {
        case Placement::BottomLeft:
            out.push_back(uniform_in_disc(rng, {-off, -off}, geometry.cluster_radius));
            break;
        case Placement::TopRight:
            out.push_back(uniform_in_disc(rng, {off, off}, geometry.cluster_radius));
            break;
        case Placement::Surrounding: {
            const double angle = kTwoPi * rng.uniform();
            out.push_back({geometry.surround_radius * std::cos(angle),
                           geometry.surround_radius * std::sin(angle)});
            break;
        }
        }
    }
    return out;
}

void ScenarioConfig::validate() const
{
    if (n_sheep < 1) {
        throw std::invalid_argument("n_sheep must be >= 1");
    }
    if (n_shepherds < 1) {
        throw std::invalid_argument("m (number of shepherds) must be >= 1");
    }
    const auto pos = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!pos(geometry.sheep_disc_radius) || !pos(geometry.cluster_radius)
        || !pos(geometry.surround_radius) || !std::isfinite(geometry.cluster_offset)) {
        throw std::invalid_argument("placement geometry radii must be > 0");
    }
    params.validate();
}

WorldState make_scenario(const ScenarioConfig& config)
{
    config.validate();
    Rng rng(splitmix64(config.seed));

    WorldState world;
    world.params = config.params;
    for (Vec2 p : sample_sheep_positions(rng, config.n_sheep, config.geometry.sheep_disc_radius)) {
        world.sheep.push_back({p, {}});
    }
    for (Vec2 q : sample_shepherd_positions(rng, config.n_shepherds, config.placement,
                                            config.geometry)) {
        world.shepherds.push_back({q, 0.0});
    }
    return world;
}

SampleStats summarize(std::span<const double> values)
{
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    SampleStats s;
    s.count = values.size();
    if (values.empty()) {
        s.mean = s.sd = s.ci95 = nan;
        return s;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(s.count);
    if (s.count < 2) {
        s.sd = s.ci95 = nan;
        return s;
    }
    double ss = 0.0;
    for (double v : values) {
        ss += (v - s.mean) * (v - s.mean);
    }
    s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
    s.ci95 = 1.96 * s.sd / std::sqrt(static_cast<double>(s.count));
    return s;
}

AggregateMetrics aggregate(std::span<const TrialResult> results)
{
    AggregateMetrics m;
    m.trials = static_cast<int>(results.size());
    std::vector<double> times;
    std::vector<double> paths;
    for (const auto& r : results) {
        if (r.success) {
            ++m.successes;
            times.push_back(static_cast<double>(r.steps));
            paths.push_back(r.mean_path_len);
        }
    }
    m.success_rate = m.trials > 0 ? static_cast<double>(m.successes) / m.trials : 0.0;
    m.completion_time = summarize(times);
    m.path_length = summarize(paths);
    return m;
}

BatchResult run_batch(const ScenarioConfig& base, int n_trials, unsigned threads)
{
    if (n_trials < 1) {
        throw std::invalid_argument("n_trials must be >= 1");
    }
    base.validate();
    BatchResult out;
    out.trials.resize(static_cast<std::size_t>(n_trials));
    parallel_for(n_trials, threads, [&](int i) {
        ScenarioConfig cfg = base;
        cfg.seed = trial_seed(base.seed, static_cast<std::uint64_t>(i));
        out.trials[static_cast<std::size_t>(i)] = run_trial(make_scenario(cfg), cfg.policy, false);
    });
    out.metrics = aggregate(out.trials);
    return out;
}

std::vector<SweepRow> sweep_shepherd_count(const ScenarioConfig& base,
                                           std::span<const int> m_values, int n_trials,
                                           unsigned threads, std::span<const PolicyKind> policies,
                                           std::span<const Placement> placements)
{
    if (m_values.empty()) {
        throw std::invalid_argument("m_values must not be empty");
    }
    std::vector<SweepRow> rows;
    rows.reserve(policies.size() * placements.size() * m_values.size());
    for (PolicyKind policy : policies) {
        for (Placement placement : placements) {
            for (int m : m_values) {
                ScenarioConfig cfg = base;
                cfg.policy = policy;
                cfg.placement = placement;
                cfg.n_shepherds = m;
                rows.push_back({policy, placement, m, run_batch(cfg, n_trials, threads).metrics});
            }
        }
    }
    return rows;
}

} // namespace shepherd
