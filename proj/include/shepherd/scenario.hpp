#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "shepherd/engine.hpp"

namespace shepherd {

enum class Placement { BottomLeft, TopRight, Surrounding };

inline constexpr Placement kAllPlacements[] = {Placement::BottomLeft, Placement::TopRight,
                                               Placement::Surrounding};

/// "bottom-left", "top-right", "surrounding"
std::string_view to_string(Placement placement) noexcept;
/// Throws std::invalid_argument("unknown placement: ...").
Placement parse_placement(std::string_view name);

/// Initial-position geometry. Sheep are uniform on a disc at the origin;
/// shepherd clusters are discs centred at (-offset,-offset) or (+offset,+offset);
/// the surrounding pattern puts shepherds on a circle about the origin.
struct PlacementGeometry {
    double sheep_disc_radius = 80.0;
    double cluster_offset = 100.0;
    double cluster_radius = 20.0;
    double surround_radius = 100.0;

    friend bool operator==(const PlacementGeometry&, const PlacementGeometry&) = default;
};

/// Deterministic generator used for every random draw. Doubles are built from
/// the top 53 bits so the stream does not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    static constexpr std::string_view kName = "mt19937_64";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of trial `index` in a batch whose base seed is `base`.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) noexcept;

/// n points uniform by area on the disc of the given radius about the origin.
std::vector<Vec2> sample_sheep_positions(Rng& rng, int n, double radius = 80.0);

std::vector<Vec2> sample_shepherd_positions(Rng& rng, int m, Placement placement,
                                            const PlacementGeometry& geometry = {});

struct ScenarioConfig {
    int n_sheep = 50;
    int n_shepherds = 3;
    Placement placement = Placement::BottomLeft;
    std::uint64_t seed = 1;
    ModelParams params;
    PolicyKind policy = PolicyKind::Proposed;
    PlacementGeometry geometry;

    /// Throws std::invalid_argument on a violated constraint.
    void validate() const;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Initial world for the configuration: sheep drawn first, then shepherds,
/// from a generator seeded by the config seed.
WorldState make_scenario(const ScenarioConfig& config);

struct SampleStats {
    std::size_t count = 0;
    double mean = 0.0;  // NaN when count == 0
    double sd = 0.0;    // sample standard deviation; NaN when count < 2
    double ci95 = 0.0;  // 1.96 sd / sqrt(count); NaN when count < 2
};

SampleStats summarize(std::span<const double> values);

struct AggregateMetrics {
    int trials = 0;
    int successes = 0;
    double success_rate = 0.0;
    SampleStats completion_time;  // successful trials only
    SampleStats path_length;      // successful trials only
};

AggregateMetrics aggregate(std::span<const TrialResult> results);

struct BatchResult {
    std::vector<TrialResult> trials;
    AggregateMetrics metrics;
};

/// Runs n_trials independent trials; trial i uses trial_seed(base.seed, i).
/// Results are in trial order regardless of the number of worker threads.
BatchResult run_batch(const ScenarioConfig& base, int n_trials, unsigned threads = 1);

struct SweepRow {
    PolicyKind policy;
    Placement placement;
    int m;
    AggregateMetrics metrics;
};

/// Cross product policies x placements x m_values in that nesting order.
std::vector<SweepRow> sweep_shepherd_count(const ScenarioConfig& base,
                                           std::span<const int> m_values, int n_trials,
                                           unsigned threads = 1,
                                           std::span<const PolicyKind> policies = kAllPolicies,
                                           std::span<const Placement> placements = kAllPlacements);

} // namespace shepherd
