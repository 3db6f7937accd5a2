#pragma once

#include <cmath>
#include <numbers>

namespace shepherd {

/// Planar vector in arena units. Used for positions and per-step movements.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(Vec2 o) noexcept { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) noexcept { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) noexcept { x *= s; y *= s; return *this; }

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator-(Vec2 a) noexcept { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) noexcept { return {s * a.x, s * a.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) noexcept { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2 a, Vec2 b) noexcept = default;
};

inline double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) noexcept { return std::sqrt(dot(v, v)); }
inline bool is_finite(Vec2 v) noexcept { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Full-plane heading of v in (-pi, pi].
inline double heading(Vec2 v) noexcept { return std::atan2(v.y, v.x); }

inline Vec2 rotate(Vec2 v, double angle) noexcept
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Normalization x/|x|, with phi(0) = 0.
Vec2 phi(Vec2 x) noexcept;

/// Inverse-square potential x/|x|^3, with psi(0) = 0. Unbounded near the origin.
Vec2 psi_exact(Vec2 x) noexcept;

/// Inverse-square potential with the magnitude capped at 1/r_under^2:
///   x/|x|^3            for |x| >= r_under
///   x/(|x| r_under^2)  for 0 < |x| < r_under
///   0                  for x = 0
/// This is the operator the simulator uses for every repulsion term.
Vec2 psi_stab(Vec2 x, double r_under) noexcept;

/// |a - b| with the difference wrapped into (-pi, pi]. Result lies in [0, pi].
double wrapped_angle_diff(double a, double b) noexcept;

} // namespace shepherd
