#include "shepherd/sheep_model.hpp"

namespace shepherd {

namespace {

Vec2 mean(Vec2 sum, std::size_t count)
{
    return count == 0 ? Vec2{} : sum * (1.0 / static_cast<double>(count));
}

} // namespace

Vec2 separation_force(const WorldState& world, std::size_t i)
{
    return separation_force(world, i, sheep_neighbors(world, i));
}

Vec2 separation_force(const WorldState& world, std::size_t i, const Neighborhood& nb)
{
    const Vec2 p = world.sheep[i].pos;
    Vec2 sum;
    for (std::size_t j : nb.sheep) {
        sum += psi_stab(world.sheep[j].pos - p, world.params.r_under);
    }
    return -mean(sum, nb.sheep.size());
}

Vec2 alignment_force(const WorldState& world, std::size_t i)
{
    return alignment_force(world, i, sheep_neighbors(world, i));
}

Vec2 alignment_force(const WorldState& world, std::size_t /*i*/, const Neighborhood& nb)
{
    Vec2 sum;
    for (std::size_t j : nb.sheep) {
        sum += phi(world.sheep[j].u_prev);
    }
    const Vec2 m = mean(sum, nb.sheep.size());
    return world.params.alignment_sign == AlignmentSign::AsPrinted ? -m : m;
}

Vec2 cohesion_force(const WorldState& world, std::size_t i)
{
    return cohesion_force(world, i, sheep_neighbors(world, i));
}

Vec2 cohesion_force(const WorldState& world, std::size_t i, const Neighborhood& nb)
{
    const Vec2 p = world.sheep[i].pos;
    Vec2 sum;
    for (std::size_t j : nb.sheep) {
        sum += phi(world.sheep[j].pos - p);
    }
    return mean(sum, nb.sheep.size());
}

Vec2 shepherd_repulsion_force(const WorldState& world, std::size_t i)
{
    return shepherd_repulsion_force(world, i, sheep_neighbors(world, i));
}

Vec2 shepherd_repulsion_force(const WorldState& world, std::size_t i, const Neighborhood& nb)
{
    const Vec2 p = world.sheep[i].pos;
    Vec2 sum;
    for (std::size_t l : nb.shepherds) {
        sum += psi_stab(world.shepherds[l].pos - p, world.params.r_under);
    }
    return -mean(sum, nb.shepherds.size());
}

Vec2 sheep_movement(const WorldState& world, std::size_t i)
{
    const Neighborhood nb = sheep_neighbors(world, i);
    const ModelParams& c = world.params;
    return c.c1 * separation_force(world, i, nb)
         + c.c2 * alignment_force(world, i, nb)
         + c.c3 * cohesion_force(world, i, nb)
         + c.c4 * shepherd_repulsion_force(world, i, nb);
}

} // namespace shepherd
