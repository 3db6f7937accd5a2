#include <doctest.h>

#include <random>

#include "shepherd/sheep_model.hpp"
#include "test_support.hpp"

using namespace shepherd;
using doctest::Approx;

namespace {

// sheep 0 at the origin, others at the given offsets; one far-away shepherd
WorldState flock(std::vector<Vec2> offsets, std::vector<Vec2> shepherds = {{1000, 1000}})
{
    WorldState w;
    w.sheep.push_back({{0, 0}, {}});
    for (Vec2 o : offsets) {
        w.sheep.push_back({o, {}});
    }
    for (Vec2 q : shepherds) {
        w.shepherds.push_back({q, 0.0});
    }
    return w;
}

void check_vec(Vec2 got, Vec2 want, double eps = 1e-12)
{
    CHECK(got.x == Approx(want.x).epsilon(eps));
    CHECK(got.y == Approx(want.y).epsilon(eps));
}

reference::P reference_u(const WorldState& w, std::size_t i)
{
    return reference::sheep_u(testing_support::to_reference(w),
                              testing_support::to_reference(w.params), static_cast<int>(i));
}

} // namespace

TEST_CASE("separation")
{
    CHECK(separation_force(flock({}), 0) == Vec2{0, 0});
    check_vec(separation_force(flock({{5, 0}}), 0), {-0.04, 0});
    CHECK(separation_force(flock({{5, 0}, {-5, 0}}), 0) == Vec2{0, 0});
}

TEST_CASE("alignment uses neighbors' previous movement with the printed sign")
{
    CHECK(alignment_force(flock({}), 0) == Vec2{0, 0});

    WorldState w = flock({{5, 0}});
    w.sheep[1].u_prev = {2, 0};
    CHECK(alignment_force(w, 0) == Vec2{-1, 0});

    w.params.alignment_sign = AlignmentSign::Conventional;
    CHECK(alignment_force(w, 0) == Vec2{1, 0});

    w.sheep[1].u_prev = {0, 0};
    CHECK(alignment_force(w, 0) == Vec2{0, 0});
}

TEST_CASE("cohesion is the mean of unit vectors toward neighbors")
{
    CHECK(cohesion_force(flock({}), 0) == Vec2{0, 0});
    CHECK(cohesion_force(flock({{0, 7}}), 0) == Vec2{0, 1});
    check_vec(cohesion_force(flock({{3, 0}, {0, 3}}), 0), {0.5, 0.5});
}

TEST_CASE("repulsion from shepherds")
{
    CHECK(shepherd_repulsion_force(flock({}), 0) == Vec2{0, 0});
    check_vec(shepherd_repulsion_force(flock({}, {{4, 0}}), 0), {-1.0 / 16.0, 0});
    check_vec(shepherd_repulsion_force(flock({}, {{1, 0}}), 0), {-1.0 / 9.0, 0});
}

TEST_CASE("sheep_movement weighted sum, checked against the reference model")
{
    CHECK(sheep_movement(flock({}), 0) == Vec2{0, 0});

    // frozen from the reference model: 100*(-0.04) + 2*1 = -2
    const WorldState pair = flock({{5, 0}});
    const auto ref_pair = reference_u(pair, 0);
    CHECK(ref_pair[0] == Approx(-2.0).epsilon(1e-14));
    check_vec(sheep_movement(pair, 0), {-2.0, 0.0});

    // 400 * (-1/16) = -25
    const WorldState chased = flock({}, {{4, 0}});
    const auto ref_chased = reference_u(chased, 0);
    CHECK(ref_chased[0] == Approx(-25.0).epsilon(1e-14));
    check_vec(sheep_movement(chased, 0), {-25.0, 0.0});
}

TEST_CASE("sheep_movement matches the reference on random small worlds")
{
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<int> n_sheep(1, 5);
    std::uniform_int_distribution<int> n_dogs(1, 2);
    for (int trial = 0; trial < 2000; ++trial) {
        WorldState w = testing_support::random_world(gen, n_sheep(gen), n_dogs(gen), 15.0);
        if (trial % 2 == 1) {
            w.params.alignment_sign = AlignmentSign::Conventional;
        }
        for (std::size_t i = 0; i < w.sheep.size(); ++i) {
            const Vec2 u = sheep_movement(w, i);
            const auto ref = reference_u(w, i);
            REQUIRE(std::abs(u.x - ref[0]) <= 1e-12);
            REQUIRE(std::abs(u.y - ref[1]) <= 1e-12);
        }
    }
}

TEST_CASE("sheep_movement invariants")
{
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> angle(-3.14, 3.14);

    SUBCASE("finite everywhere, including coincident agents")
    {
        WorldState w = flock({{0, 0}, {0, 0}}, {{0, 0}});
        for (std::size_t i = 0; i < w.sheep.size(); ++i) {
            CHECK(is_finite(sheep_movement(w, i)));
        }
    }

    SUBCASE("translation invariance")
    {
        for (int trial = 0; trial < 500; ++trial) {
            const WorldState w = testing_support::random_world(gen, 6, 2, 20.0);
            const Vec2 shift = testing_support::random_vec(gen, -100, 100);
            WorldState moved = w;
            for (auto& s : moved.sheep) s.pos += shift;
            for (auto& s : moved.shepherds) s.pos += shift;
            for (std::size_t i = 0; i < w.sheep.size(); ++i) {
                const Vec2 a = sheep_movement(w, i);
                const Vec2 b = sheep_movement(moved, i);
                REQUIRE(norm(a - b) <= 1e-9);
            }
        }
    }

    SUBCASE("rotation equivariance")
    {
        for (int trial = 0; trial < 500; ++trial) {
            const WorldState w = testing_support::random_world(gen, 6, 2, 20.0);
            const double omega = angle(gen);
            WorldState turned = w;
            for (auto& s : turned.sheep) {
                s.pos = rotate(s.pos, omega);
                s.u_prev = rotate(s.u_prev, omega);
            }
            for (auto& s : turned.shepherds) s.pos = rotate(s.pos, omega);
            for (std::size_t i = 0; i < w.sheep.size(); ++i) {
                const Vec2 a = rotate(sheep_movement(w, i), omega);
                const Vec2 b = sheep_movement(turned, i);
                REQUIRE(norm(a - b) <= 1e-9);
            }
        }
    }

    SUBCASE("separation between two isolated sheep is exactly antisymmetric")
    {
        for (int trial = 0; trial < 500; ++trial) {
            const Vec2 a = testing_support::random_vec(gen, -10, 10);
            const Vec2 b = testing_support::random_vec(gen, -10, 10);
            WorldState w;
            w.sheep = {{a, {}}, {b, {}}};
            w.shepherds = {{{1e4, 1e4}, 0.0}};
            REQUIRE(separation_force(w, 0) == -separation_force(w, 1));
        }
    }
}
