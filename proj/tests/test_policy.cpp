#include <doctest.h>

#include <algorithm>
#include <random>

#include "shepherd/policy.hpp"
#include "test_support.hpp"

using namespace shepherd;
using doctest::Approx;

namespace {

WorldState herd(Vec2 dog, std::vector<Vec2> sheep, std::vector<Vec2> other_dogs = {})
{
    WorldState w;
    w.shepherds.push_back({dog, 0.0});
    for (Vec2 q : other_dogs) {
        w.shepherds.push_back({q, 0.0});
    }
    for (Vec2 p : sheep) {
        w.sheep.push_back({p, {}});
    }
    return w;
}

// brute-force argmax of the weighted score straight from absolute positions
std::size_t brute_force_target(const WorldState& w, std::size_t k, double alpha)
{
    const Vec2 q = w.shepherds[k].pos;
    std::size_t best = w.sheep.size();
    double best_score = -1e300;
    for (std::size_t j = 0; j < w.sheep.size(); ++j) {
        const double d = norm(w.sheep[j].pos - q);
        if (!(d > 0 && d < w.params.r_prime)) continue;
        const double score = norm(w.sheep[j].pos - w.params.goal_center) - alpha * d;
        if (score > best_score) {
            best = j;
            best_score = score;
        }
    }
    return best;
}

} // namespace

TEST_CASE("observe exposes only goal-relative vectors of agents in range")
{
    const WorldState alone = herd({0, 0}, {{500, 0}}, {{0, 300}});
    const auto obs_alone = observe(alone, 0);
    CHECK(obs_alone.sheep.empty());
    CHECK(obs_alone.shepherds.empty());
    CHECK(obs_alone.own_rel_goal == Vec2{-50, -50});

    const auto obs = observe(herd({0, 0}, {{10, 0}, {100, 0}}), 0);
    CHECK(obs.own_rel_goal == Vec2{-50, -50});
    REQUIRE(obs.sheep.size() == 1);
    CHECK(obs.sheep[0].index == 0);
    CHECK(obs.sheep[0].rel_goal == Vec2{-40, -50});
    CHECK(obs.rel_to_self(obs.sheep[0]) == Vec2{10, 0});
}

TEST_CASE("weighted target selection")
{
    CHECK_FALSE(select_target_weighted(observe(herd({0, 0}, {{500, 500}}), 0), 1.0));

    const WorldState w = herd({0, 0}, {{0, 10}, {-20, 0}});
    // scores: A = |(-50,-40)| - 10 = 54.031, B = |(-70,-50)| - 20 = 66.023
    CHECK(norm(Vec2{-50, -40}) - 10 == Approx(54.031).epsilon(1e-5));
    CHECK(norm(Vec2{-70, -50}) - 20 == Approx(66.023).epsilon(1e-5));
    CHECK(brute_force_target(w, 0, 1.0) == 1);
    CHECK(brute_force_target(w, 0, 0.0) == 1);

    const auto t1 = select_target_weighted(observe(w, 0), 1.0);
    REQUIRE(t1);
    CHECK(t1->index == 1);
    CHECK(t1->rel_to_self == Vec2{-20, 0});
    const auto t0 = select_target_weighted(observe(w, 0), 0.0);
    REQUIRE(t0);
    CHECK(t0->index == 1);
}

TEST_CASE("weighted target selection: alpha trades distance to goal against distance to self")
{
    // alpha=0: 130.0 vs 84.9 picks the far sheep; alpha=1: 60.0 vs 70.7 picks the near one
    const WorldState w = herd({0, 0}, {{-70, 0}, {-10, -10}});
    CHECK(select_target_weighted(observe(w, 0), 0.0)->index == 0);
    CHECK(select_target_weighted(observe(w, 0), 1.0)->index == 1);
}

TEST_CASE("ties go to the smallest sheep index")
{
    // mirror images about the goal diagonal have equal scores
    const WorldState w = herd({0, 0}, {{0, 30}, {30, 0}});
    CHECK(select_target_weighted(observe(w, 0), 1.0)->index == 0);
    CHECK(select_target_weighted(observe(w, 0), 0.0)->index == 0);
}

TEST_CASE("occlusion hides sheep behind nearer ones")
{
    const WorldState w = herd({0, 0}, {{10, 0}, {20, 0.5}, {10, 10}});
    auto set = occluded_visible_set(observe(w, 0), 0.05);
    std::sort(set.begin(), set.end());
    CHECK(set == std::vector<std::size_t>{0, 2});

    const auto ref = reference::unoccluded(testing_support::to_reference(w),
                                           testing_support::to_reference(w.params), {0, 1, 2},
                                           {0, 0});
    CHECK(std::vector<std::size_t>(ref.begin(), ref.end()) == occluded_visible_set(observe(w, 0), 0.05));

    CHECK(occluded_visible_set(observe(herd({0, 0}, {{3, 4}}), 0), 0.05)
          == std::vector<std::size_t>{0});

    const WorldState equal = herd({0, 0}, {{10, 0}, {10 * std::cos(0.2), 10 * std::sin(0.2)}});
    CHECK(occluded_visible_set(observe(equal, 0), 0.05).size() == 2);
}

TEST_CASE("occlusion set characterization on random states")
{
    // Independent check of the greedy construction: an admitted sheep is clear
    // of every nearer admitted sheep; a rejected one is blocked by one of them.
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 1000; ++trial) {
        const WorldState w = testing_support::random_world(gen, 12, 1, 40.0);
        const auto obs = observe(w, 0);
        const auto set = occluded_visible_set(obs, 0.3);
        const Vec2 q = w.shepherds[0].pos;
        const auto dist = [&](std::size_t j) { return norm(w.sheep[j].pos - q); };
        const auto head = [&](std::size_t j) { return heading(w.sheep[j].pos - q); };
        for (const auto& s : obs.sheep) {
            const bool admitted = std::find(set.begin(), set.end(), s.index) != set.end();
            bool blocked = false;
            for (std::size_t a : set) {
                const bool nearer = dist(a) < dist(s.index) || (dist(a) == dist(s.index) && a < s.index);
                if (a != s.index && nearer && wrapped_angle_diff(head(a), head(s.index)) <= 0.3) {
                    blocked = true;
                }
            }
            REQUIRE(admitted == !blocked);
        }
    }
}

TEST_CASE("OTS switching target")
{
    WorldState w = herd({0, 0}, {{0, 0}, {0, 0}});
    Vec2 t = select_target_ots(w);
    CHECK(t.x == Approx(-4 / std::sqrt(2.0)));
    CHECK(t.y == Approx(-4 / std::sqrt(2.0)));

    // center (0,0), outlier at distance 30: collect branch
    w = herd({0, 0}, {{30, 0}, {-10, 0}, {-10, 0}, {-10, 0}});
    t = select_target_ots(w);
    CHECK(t.x == Approx(4.0));
    CHECK(t.y == Approx(0.0));

    // outlier exactly at R_ots is still the drive branch
    w = herd({0, 0}, {{25, 0}, {-25, 0}});
    t = select_target_ots(w);
    CHECK(t.x == Approx(-4 / std::sqrt(2.0)));
    CHECK(t.y == Approx(-4 / std::sqrt(2.0)));
}

TEST_CASE("shepherd velocity examples")
{
    SUBCASE("shepherd on the goal center with nothing in sight stays put")
    {
        const WorldState w = herd({50, 50}, {{500, 500}});
        CHECK(shepherd_velocity(w, 0, PolicyKind::Proposed) == Vec2{0, 0});
    }

    SUBCASE("single sheep, proposed")
    {
        const WorldState w = herd({0, 0}, {{-20, 0}});
        const auto terms = shepherd_terms(observe(w, 0), PolicyKind::Proposed, w.params);
        CHECK(terms.chase == Vec2{-1, 0});
        CHECK(terms.spacing.x == Approx(0.0025));
        CHECK(terms.goal_side.x == Approx(-std::sqrt(0.5)));
        const Vec2 v = shepherd_velocity(w, 0, PolicyKind::Proposed);
        // frozen from the reference model
        const auto ref = reference::dog_v(testing_support::to_reference(w),
                                          testing_support::to_reference(w.params),
                                          reference::Policy::Proposed, 0);
        CHECK(ref[0] == Approx(-2.5 + 0.25 - std::sqrt(0.5)).epsilon(1e-14));
        CHECK(v.x == Approx(-2.957106781).epsilon(1e-9));
        CHECK(v.y == Approx(-0.707106781).epsilon(1e-9));
    }

    SUBCASE("inter-shepherd repulsion is scaled by distance to goal")
    {
        const WorldState w = herd({0, 0}, {{1000, 0}}, {{10, 0}});
        const auto terms = shepherd_terms(observe(w, 0), PolicyKind::Proposed, w.params);
        CHECK(terms.repulsion.x == Approx(-norm(Vec2{50, 50}) * 0.01));
        CHECK(terms.repulsion.y == 0.0);
        CHECK(w.params.d4 * terms.repulsion.x == Approx(-1.41421356));
    }

    SUBCASE("ots needs the switching target")
    {
        const WorldState w = herd({0, 0}, {{10, 0}});
        CHECK_THROWS_AS(shepherd_terms(observe(w, 0), PolicyKind::Ots, w.params),
                        std::invalid_argument);
    }
}

TEST_CASE("policy names")
{
    for (PolicyKind k : kAllPolicies) {
        CHECK(parse_policy(to_string(k)) == k);
    }
    CHECK_THROWS_WITH_AS(parse_policy("nosuch"), "unknown policy: nosuch", std::invalid_argument);
}

TEST_CASE("policy invariants on random states")
{
    std::mt19937_64 gen(17);
    std::uniform_int_distribution<int> n_sheep(1, 10);
    std::uniform_int_distribution<int> n_dogs(1, 4);

    for (int trial = 0; trial < 1000; ++trial) {
        WorldState w = testing_support::random_world(gen, n_sheep(gen), n_dogs(gen), 60.0);
        for (std::size_t k = 0; k < w.shepherds.size(); ++k) {
            const auto obs = observe(w, k);

            // velocity depends only on the observation
            for (PolicyKind kind : {PolicyKind::Proposed, PolicyKind::Fat, PolicyKind::FatOcc}) {
                REQUIRE(shepherd_terms(obs, kind, w.params).weighted(w.params)
                        == shepherd_velocity(w, k, kind));
            }

            // unit chase and goal-side terms
            const auto terms = shepherd_terms(obs, PolicyKind::Proposed, w.params);
            const double c = norm(terms.chase);
            const double g = norm(terms.goal_side);
            REQUIRE((c == 0.0 || std::abs(c - 1.0) <= 1e-15));
            REQUIRE((g == 0.0 || std::abs(g - 1.0) <= 1e-15));

            // argmax agrees with a brute-force scan
            const auto target = select_target_weighted(obs, w.params.alpha);
            const std::size_t brute = brute_force_target(w, k, w.params.alpha);
            REQUIRE(target.has_value() == (brute < w.sheep.size()));
            if (target) {
                REQUIRE(target->index == brute);
            }

            // alpha = 0 is the plain farthest-from-goal rule
            const auto far = select_target_weighted(obs, 0.0);
            if (far) {
                REQUIRE(far->index == brute_force_target(w, k, 0.0));
            }
        }
    }
}

TEST_CASE("sheep outside the recognition range do not influence a shepherd")
{
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 200; ++trial) {
        WorldState w = testing_support::random_world(gen, 6, 2, 30.0);
        WorldState more = w;
        more.sheep.push_back({w.shepherds[0].pos + Vec2{150, 0}, {}});
        for (PolicyKind kind : {PolicyKind::Proposed, PolicyKind::Fat, PolicyKind::FatOcc}) {
            REQUIRE(shepherd_velocity(w, 0, kind) == shepherd_velocity(more, 0, kind));
        }
    }
}

TEST_CASE("target choice is translation invariant")
{
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 500; ++trial) {
        const WorldState w = testing_support::random_world(gen, 10, 2, 60.0);
        const Vec2 shift = testing_support::random_vec(gen, -200, 200);
        WorldState moved = w;
        moved.params.goal_center += shift;
        for (auto& s : moved.sheep) s.pos += shift;
        for (auto& s : moved.shepherds) s.pos += shift;
        for (std::size_t k = 0; k < w.shepherds.size(); ++k) {
            const auto a = select_target_weighted(observe(w, k), 1.0);
            const auto b = select_target_weighted(observe(moved, k), 1.0);
            REQUIRE(a.has_value() == b.has_value());
            if (a) {
                REQUIRE(a->index == b->index);
            }
        }
    }
}

TEST_CASE("close shepherds repel each other")
{
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> gap(0.1, 2.9);
    std::uniform_real_distribution<double> angle(-3.14, 3.14);
    for (int trial = 0; trial < 500; ++trial) {
        const Vec2 q1 = testing_support::random_vec(gen, -40, 40);
        const Vec2 q2 = q1 + rotate(Vec2{gap(gen), 0}, angle(gen));
        const WorldState w = herd(q1, {{1000, 1000}}, {q2});
        const auto terms = shepherd_terms(observe(w, 0), PolicyKind::Proposed, w.params);
        REQUIRE(dot(terms.repulsion, q1 - q2) > 0.0);
    }
}
