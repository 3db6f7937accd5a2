#pragma once

#include <cstddef>
#include <vector>

#include "shepherd/vec2.hpp"

namespace shepherd {

/// Sign applied to the sheep alignment term.
/// AsPrinted keeps the leading minus of the published model (anti-alignment);
/// Conventional uses the usual boids sign.
enum class AlignmentSign { AsPrinted, Conventional };

/// Every model constant of the sheep flock and the shepherd controllers.
/// Defaults are the published experiment values.
struct ModelParams {
    // sheep force weights: separation, alignment, cohesion, shepherd repulsion
    double c1 = 100.0;
    double c2 = 0.5;
    double c3 = 2.0;
    double c4 = 400.0;
    double r = 20.0;         // sheep recognition radius
    double r_prime = 100.0;  // shepherd recognition radius

    // shepherd force weights: chase, sheep spacing, goal-side offset, shepherd repulsion
    double d1 = 2.5;
    double d2 = 100.0;
    double d3 = 1.0;
    double d4 = 2.0;
    double alpha = 1.0;      // target selection trade-off (0 reduces to farthest-agent)
    double theta = 0.05;     // occlusion angular threshold [rad]
    double r_under = 3.0;    // psi stabilization radius
    double R_ots = 25.0;     // OTS flock-separation radius
    double d_ots = 4.0;      // OTS target offset

    Vec2 goal_center{50.0, 50.0};
    double goal_radius = 20.0;
    int max_steps = 3000;

    AlignmentSign alignment_sign = AlignmentSign::AsPrinted;

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct SheepState {
    Vec2 pos;
    Vec2 u_prev;  // movement applied at the previous step; zero at t = 0
};

struct ShepherdState {
    Vec2 pos;
    double path_len = 0.0;  // accumulated sum of |v_k(t)|
};

struct WorldState {
    int t = 0;
    std::vector<SheepState> sheep;
    std::vector<ShepherdState> shepherds;
    ModelParams params;

    /// Throws std::invalid_argument when the world is empty or holds non-finite values.
    void validate() const;
};

/// Indices visible to one agent, in ascending order.
struct Neighborhood {
    std::vector<std::size_t> sheep;
    std::vector<std::size_t> shepherds;
};

/// Agents strictly inside the open annulus 0 < |d| < r around sheep i
/// (sheep i itself is never included).
Neighborhood sheep_neighbors(const WorldState& world, std::size_t i);

/// Agents strictly inside 0 < |d| < r' around shepherd k (shepherd k itself excluded).
Neighborhood shepherd_neighbors(const WorldState& world, std::size_t k);

} // namespace shepherd
