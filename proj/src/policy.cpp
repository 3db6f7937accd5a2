#include "shepherd/policy.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace shepherd {

std::string_view to_string(PolicyKind kind) noexcept
{
    switch (kind) {
    case PolicyKind::Proposed: return "proposed";
    case PolicyKind::Fat: return "fat";
    case PolicyKind::FatOcc: return "fat-occ";
    case PolicyKind::Ots: return "ots";
    }
    return "?";
}

PolicyKind parse_policy(std::string_view name)
{
    for (PolicyKind k : kAllPolicies) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown policy: " + std::string(name));
}

ShepherdObservation observe(const WorldState& world, std::size_t k)
{
    const Vec2 goal = world.params.goal_center;
    const Neighborhood nb = shepherd_neighbors(world, k);

    ShepherdObservation obs;
    obs.own_rel_goal = world.shepherds[k].pos - goal;
    obs.sheep.reserve(nb.sheep.size());
    for (std::size_t j : nb.sheep) {
        obs.sheep.push_back({j, world.sheep[j].pos - goal});
    }
    obs.shepherds.reserve(nb.shepherds.size());
    for (std::size_t l : nb.shepherds) {
        obs.shepherds.push_back({l, world.shepherds[l].pos - goal});
    }
    return obs;
}

std::optional<Target> select_target_weighted(const ShepherdObservation& obs, double alpha)
{
    std::optional<Target> best;
    double best_score = 0.0;
    for (const auto& s : obs.sheep) {
        const Vec2 rel = obs.rel_to_self(s);
        const double score = norm(s.rel_goal) - alpha * norm(rel);
        if (!best || score > best_score) {
            best = Target{s.index, rel};
            best_score = score;
        }
    }
    return best;
}

std::vector<std::size_t> occluded_visible_set(const ShepherdObservation& obs, double theta)
{
    std::vector<std::size_t> order(obs.sheep.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> dist(obs.sheep.size());
    std::vector<double> head(obs.sheep.size());
    for (std::size_t n = 0; n < obs.sheep.size(); ++n) {
        const Vec2 rel = obs.rel_to_self(obs.sheep[n]);
        dist[n] = norm(rel);
        head[n] = heading(rel);
    }
    // obs.sheep is index-ascending, so a stable sort breaks distance ties by index
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });

    std::vector<std::size_t> admitted;  // positions into obs.sheep
    for (std::size_t n : order) {
        const bool clear = std::all_of(admitted.begin(), admitted.end(), [&](std::size_t m) {
            return wrapped_angle_diff(head[n], head[m]) > theta;
        });
        if (clear) {
            admitted.push_back(n);
        }
    }

    std::vector<std::size_t> out;
    out.reserve(admitted.size());
    for (std::size_t n : admitted) {
        out.push_back(obs.sheep[n].index);
    }
    return out;
}

Vec2 select_target_ots(const WorldState& world)
{
    const ModelParams& p = world.params;
    Vec2 center;
    for (const auto& s : world.sheep) {
        center += s.pos;
    }
    center *= 1.0 / static_cast<double>(world.sheep.size());

    Vec2 outlier = world.sheep.front().pos;
    double far = -1.0;
    for (const auto& s : world.sheep) {
        const double d = norm(center - s.pos);
        if (d > far) {
            far = d;
            outlier = s.pos;
        }
    }

    if (norm(outlier - center) <= p.R_ots) {
        return center + p.d_ots * phi(center - p.goal_center);
    }
    return center + p.d_ots * phi(outlier - center);
}

ShepherdTerms shepherd_terms(const ShepherdObservation& obs, PolicyKind kind,
                             const ModelParams& params, std::optional<Vec2> ots_target_rel_goal)
{
    ShepherdTerms terms;

    switch (kind) {
    case PolicyKind::Proposed:
    case PolicyKind::Fat:
    case PolicyKind::FatOcc: {
        const double alpha = kind == PolicyKind::Proposed ? params.alpha : 0.0;
        if (const auto target = select_target_weighted(obs, alpha)) {
            terms.chase = phi(target->rel_to_self);
        }
        break;
    }
    case PolicyKind::Ots:
        if (!ots_target_rel_goal) {
            throw std::invalid_argument("ots policy needs the switching target");
        }
        terms.chase = phi(*ots_target_rel_goal - obs.own_rel_goal);
        break;
    }

    Vec2 sum;
    std::size_t count = 0;
    if (kind == PolicyKind::FatOcc) {
        const auto visible = occluded_visible_set(obs, params.theta);
        // sum in ascending index order
        std::vector<std::size_t> sorted(visible);
        std::sort(sorted.begin(), sorted.end());
        auto it = sorted.begin();
        for (const auto& s : obs.sheep) {
            if (it != sorted.end() && *it == s.index) {
                sum += psi_stab(obs.rel_to_self(s), params.r_under);
                ++it;
            }
        }
        count = sorted.size();
    } else {
        for (const auto& s : obs.sheep) {
            sum += psi_stab(obs.rel_to_self(s), params.r_under);
        }
        count = obs.sheep.size();
    }
    if (count > 0) {
        terms.spacing = -(sum * (1.0 / static_cast<double>(count)));
    }

    terms.goal_side = -phi(-obs.own_rel_goal);

    if (!obs.shepherds.empty()) {
        Vec2 rep;
        for (const auto& s : obs.shepherds) {
            rep += psi_stab(obs.rel_to_self(s), params.r_under);
        }
        rep *= 1.0 / static_cast<double>(obs.shepherds.size());
        terms.repulsion = -(norm(obs.own_rel_goal) * rep);
    }
    return terms;
}

Vec2 shepherd_velocity(const WorldState& world, std::size_t k, PolicyKind kind)
{
    const ShepherdObservation obs = observe(world, k);
    std::optional<Vec2> ots_target;
    if (kind == PolicyKind::Ots) {
        ots_target = select_target_ots(world) - world.params.goal_center;
    }
    return shepherd_terms(obs, kind, world.params, ots_target).weighted(world.params);
}

} // namespace shepherd
