#include "shepherd/world.hpp"

#include <stdexcept>
#include <string>

namespace shepherd {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

bool in_open_range(Vec2 offset, double radius)
{
    const double d = norm(offset);
    return d > 0.0 && d < radius;
}

} // namespace

void ModelParams::validate() const
{
    const auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
    const auto finite_pos = [](double v) { return std::isfinite(v) && v > 0.0; };

    require(finite_nonneg(c1) && finite_nonneg(c2) && finite_nonneg(c3) && finite_nonneg(c4),
            "sheep weights c1..c4 must be finite and >= 0");
    require(finite_nonneg(d1) && finite_nonneg(d2) && finite_nonneg(d3) && finite_nonneg(d4),
            "shepherd weights d1..d4 must be finite and >= 0");
    require(finite_pos(r), "r must be > 0");
    require(finite_pos(r_prime), "r_prime must be > 0");
    require(finite_nonneg(alpha), "alpha must be >= 0");
    require(finite_pos(theta), "theta must be > 0");
    require(finite_pos(r_under), "r_under must be > 0");
    require(finite_pos(R_ots), "R_ots must be > 0");
    require(finite_pos(d_ots), "d_ots must be > 0");
    require(is_finite(goal_center), "goal center must be finite");
    require(finite_pos(goal_radius), "goal_radius must be > 0");
    require(max_steps >= 1, "max_steps must be >= 1");
}

void WorldState::validate() const
{
    params.validate();
    require(!sheep.empty(), "world needs at least one sheep");
    require(!shepherds.empty(), "world needs at least one shepherd");
    for (const auto& s : sheep) {
        require(is_finite(s.pos) && is_finite(s.u_prev), "non-finite sheep state");
    }
    for (const auto& s : shepherds) {
        require(is_finite(s.pos) && std::isfinite(s.path_len), "non-finite shepherd state");
    }
}

Neighborhood sheep_neighbors(const WorldState& world, std::size_t i)
{
    Neighborhood out;
    const Vec2 p = world.sheep.at(i).pos;
    const double r = world.params.r;
    for (std::size_t j = 0; j < world.sheep.size(); ++j) {
        if (j != i && in_open_range(p - world.sheep[j].pos, r)) {
            out.sheep.push_back(j);
        }
    }
    for (std::size_t l = 0; l < world.shepherds.size(); ++l) {
        if (in_open_range(p - world.shepherds[l].pos, r)) {
            out.shepherds.push_back(l);
        }
    }
    return out;
}

Neighborhood shepherd_neighbors(const WorldState& world, std::size_t k)
{
    Neighborhood out;
    const Vec2 q = world.shepherds.at(k).pos;
    const double r = world.params.r_prime;
    for (std::size_t j = 0; j < world.sheep.size(); ++j) {
        if (in_open_range(q - world.sheep[j].pos, r)) {
            out.sheep.push_back(j);
        }
    }
    for (std::size_t l = 0; l < world.shepherds.size(); ++l) {
        if (l != k && in_open_range(q - world.shepherds[l].pos, r)) {
            out.shepherds.push_back(l);
        }
    }
    return out;
}

} // namespace shepherd
