#include "shepherd/engine.hpp"

#include <numeric>
#include <string>

#include "shepherd/sheep_model.hpp"

namespace shepherd {

namespace {

Frame snapshot(const WorldState& world)
{
    Frame f;
    f.t = world.t;
    f.sheep.reserve(world.sheep.size());
    for (const auto& s : world.sheep) {
        f.sheep.push_back(s.pos);
    }
    f.shepherds.reserve(world.shepherds.size());
    for (const auto& s : world.shepherds) {
        f.shepherds.push_back(s.pos);
    }
    return f;
}

[[noreturn]] void non_finite(const char* kind, std::size_t index, int t)
{
    throw NonFiniteStateError(std::string("non-finite ") + kind + " movement for agent "
                              + std::to_string(index) + " at t=" + std::to_string(t)
                              + "; check model parameters");
}

} // namespace

bool all_in_goal(const WorldState& world)
{
    const Vec2 g = world.params.goal_center;
    const double radius = world.params.goal_radius;
    for (const auto& s : world.sheep) {
        if (norm(s.pos - g) > radius) {
            return false;
        }
    }
    return true;
}

void step_in_place(WorldState& world, PolicyKind policy)
{
    std::vector<Vec2> u(world.sheep.size());
    for (std::size_t i = 0; i < world.sheep.size(); ++i) {
        u[i] = sheep_movement(world, i);
        if (!is_finite(u[i])) {
            non_finite("sheep", i, world.t);
        }
    }
    std::vector<Vec2> v(world.shepherds.size());
    for (std::size_t k = 0; k < world.shepherds.size(); ++k) {
        v[k] = shepherd_velocity(world, k, policy);
        if (!is_finite(v[k])) {
            non_finite("shepherd", k, world.t);
        }
    }

    for (std::size_t i = 0; i < world.sheep.size(); ++i) {
        world.sheep[i].pos += u[i];
        world.sheep[i].u_prev = u[i];
    }
    for (std::size_t k = 0; k < world.shepherds.size(); ++k) {
        world.shepherds[k].pos += v[k];
        world.shepherds[k].path_len += norm(v[k]);
    }
    ++world.t;
}

WorldState step(const WorldState& world, PolicyKind policy)
{
    WorldState next = world;
    step_in_place(next, policy);
    return next;
}

TrialResult run_trial(const WorldState& initial, PolicyKind policy, bool record_trajectory)
{
    initial.validate();
    WorldState world = initial;
    const int max_steps = world.params.max_steps;

    TrialResult result;
    if (record_trajectory) {
        result.trajectory.emplace();
        result.trajectory->push_back(snapshot(world));
    }

    bool done = all_in_goal(world);
    while (!done && world.t < max_steps) {
        step_in_place(world, policy);
        if (record_trajectory) {
            result.trajectory->push_back(snapshot(world));
        }
        done = all_in_goal(world);
    }

    result.success = done;
    result.steps = done ? world.t : max_steps;
    result.path_len_per_shepherd.reserve(world.shepherds.size());
    for (std::size_t k = 0; k < world.shepherds.size(); ++k) {
        result.path_len_per_shepherd.push_back(world.shepherds[k].path_len
                                               - initial.shepherds[k].path_len);
    }
    const double total = std::accumulate(result.path_len_per_shepherd.begin(),
                                         result.path_len_per_shepherd.end(), 0.0);
    result.mean_path_len = total / static_cast<double>(world.shepherds.size());
    return result;
}

} // namespace shepherd
