#pragma once

#include <cstddef>

#include "shepherd/world.hpp"

namespace shepherd {

// Individual flock terms for sheep i. Each is the zero vector when the
// relevant neighborhood is empty. The overloads taking a Neighborhood reuse
// a precomputed sheep_neighbors(world, i).

Vec2 separation_force(const WorldState& world, std::size_t i);
Vec2 separation_force(const WorldState& world, std::size_t i, const Neighborhood& nb);

/// Mean of normalized previous movements of neighbors. Sign follows params.alignment_sign.
Vec2 alignment_force(const WorldState& world, std::size_t i);
Vec2 alignment_force(const WorldState& world, std::size_t i, const Neighborhood& nb);

Vec2 cohesion_force(const WorldState& world, std::size_t i);
Vec2 cohesion_force(const WorldState& world, std::size_t i, const Neighborhood& nb);

Vec2 shepherd_repulsion_force(const WorldState& world, std::size_t i);
Vec2 shepherd_repulsion_force(const WorldState& world, std::size_t i, const Neighborhood& nb);

/// u_i = c1*separation + c2*alignment + c3*cohesion + c4*repulsion.
Vec2 sheep_movement(const WorldState& world, std::size_t i);

} // namespace shepherd
