#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shepherd/world.hpp"

namespace shepherd {

/// Shepherd steering policies.
///  Proposed  target maximizes |p - x_g| - alpha |p - q_k| over visible sheep
///  Fat       Proposed with alpha = 0 (farthest visible sheep from the goal)
///  FatOcc    Fat with the sheep-spacing term restricted to non-occluded sheep
///  Ots       online target switching between driving the flock center and
///            collecting the outlier; reads global flock state
enum class PolicyKind { Proposed, Fat, FatOcc, Ots };

inline constexpr PolicyKind kAllPolicies[] = {PolicyKind::Proposed, PolicyKind::Fat,
                                              PolicyKind::FatOcc, PolicyKind::Ots};

/// "proposed", "fat", "fat-occ", "ots"
std::string_view to_string(PolicyKind kind) noexcept;
/// Throws std::invalid_argument("unknown policy: ...").
PolicyKind parse_policy(std::string_view name);

/// Everything a shepherd may legally read: goal-relative vectors of itself
/// and of the agents inside its recognition range. Absolute positions never
/// appear here.
struct ShepherdObservation {
    struct Sighting {
        std::size_t index;
        Vec2 rel_goal;  // agent position minus goal center
    };

    Vec2 own_rel_goal;               // q_k - x_g
    std::vector<Sighting> sheep;     // ascending index
    std::vector<Sighting> shepherds; // ascending index, excludes self

    /// Position of a sighted agent relative to the observing shepherd.
    Vec2 rel_to_self(const Sighting& s) const noexcept { return s.rel_goal - own_rel_goal; }
};

ShepherdObservation observe(const WorldState& world, std::size_t k);

struct Target {
    std::size_t index;
    Vec2 rel_to_self;  // p_target - q_k
};

/// Argmax of |p - x_g| - alpha |p - q_k| over visible sheep; ties go to the
/// smallest index. Empty when no sheep is visible.
std::optional<Target> select_target_weighted(const ShepherdObservation& obs, double alpha);

/// Sheep left visible after occlusion: visible sheep are visited nearest
/// first (ties by index) and admitted when their heading from the shepherd
/// differs by more than theta from every sheep admitted before them.
/// Returned in admission order.
std::vector<std::size_t> occluded_visible_set(const ShepherdObservation& obs, double theta);

/// OTS target point (absolute). Drives behind the flock center when the
/// outlier is within R_ots, otherwise offsets the center toward the outlier.
Vec2 select_target_ots(const WorldState& world);

/// The four movement terms of one shepherd, before weighting.
struct ShepherdTerms {
    Vec2 chase;      // phi(target - q_k), zero without target
    Vec2 spacing;    // -mean psi(p_j - q_k) over the spacing set
    Vec2 goal_side;  // -phi(x_g - q_k)
    Vec2 repulsion;  // -|x_g - q_k| mean psi(q_l - q_k) over visible shepherds

    Vec2 weighted(const ModelParams& p) const noexcept
    {
        return p.d1 * chase + p.d2 * spacing + p.d3 * goal_side + p.d4 * repulsion;
    }
};

/// Terms computed from the observation alone. For Ots the caller supplies
/// the switching target as a goal-relative vector (std::invalid_argument if missing).
ShepherdTerms shepherd_terms(const ShepherdObservation& obs, PolicyKind kind,
                             const ModelParams& params,
                             std::optional<Vec2> ots_target_rel_goal = std::nullopt);

/// Movement vector v_k(t) of shepherd k in the given world.
Vec2 shepherd_velocity(const WorldState& world, std::size_t k, PolicyKind kind);

} // namespace shepherd
