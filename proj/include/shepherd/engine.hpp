#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "shepherd/policy.hpp"
#include "shepherd/world.hpp"

namespace shepherd {

/// Raised when a step would produce a non-finite movement, which only happens
/// with a misconfigured parameter set.
class NonFiniteStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Frame {
    int t = 0;
    std::vector<Vec2> sheep;
    std::vector<Vec2> shepherds;
};

using Trajectory = std::vector<Frame>;

struct TrialResult {
    bool success = false;
    int steps = 0;  // completion time on success, max_steps otherwise
    std::vector<double> path_len_per_shepherd;
    double mean_path_len = 0.0;
    std::optional<Trajectory> trajectory;  // frames t = 0 .. steps
};

/// Closed-disk membership of every sheep in the goal region.
bool all_in_goal(const WorldState& world);

/// One synchronous update: every sheep and shepherd movement is computed from
/// the state at time t, then all agents move together.
WorldState step(const WorldState& world, PolicyKind policy);

/// In-place variant of step(); reuses the caller's buffers.
void step_in_place(WorldState& world, PolicyKind policy);

/// Runs until all sheep are in the goal or t reaches max_steps. The goal test
/// is applied to the state at time t before its forces are computed, so a
/// solved initial state terminates with steps = 0.
TrialResult run_trial(const WorldState& initial, PolicyKind policy, bool record_trajectory = false);

} // namespace shepherd
