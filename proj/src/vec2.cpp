#include "shepherd/vec2.hpp"

namespace shepherd {

Vec2 phi(Vec2 x) noexcept
{
    const double n = norm(x);
    if (n == 0.0) {
        return {};
    }
    return {x.x / n, x.y / n};
}

Vec2 psi_exact(Vec2 x) noexcept
{
    const double n = norm(x);
    if (n == 0.0) {
        return {};
    }
    const double denom = n * n * n;
    return {x.x / denom, x.y / denom};
}

Vec2 psi_stab(Vec2 x, double r_under) noexcept
{
    const double n = norm(x);
    if (n == 0.0) {
        return {};
    }
    if (n >= r_under) {
        const double denom = n * n * n;
        return {x.x / denom, x.y / denom};
    }
    const double denom = n * r_under * r_under;
    return {x.x / denom, x.y / denom};
}

double wrapped_angle_diff(double a, double b) noexcept
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double d = std::fmod(a - b, two_pi);
    if (d > std::numbers::pi) {
        d -= two_pi;
    } else if (d <= -std::numbers::pi) {
        d += two_pi;
    }
    return std::abs(d);
}

} // namespace shepherd
