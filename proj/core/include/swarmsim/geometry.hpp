#pragma once

#include <cmath>

namespace swarmsim {

/// Planar vector, coordinates in centimeters.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm_sq(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::sqrt(norm_sq(a)); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline double distance_sq(Vec2 a, Vec2 b) { return norm_sq(a - b); }

inline bool is_finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

constexpr double kPi = 3.14159265358979323846;

/// Maps an angle into [-pi, pi). The upper bound is exclusive: +pi maps to -pi.
inline double normalize_angle(double a) {
    double r = std::fmod(a + kPi, 2.0 * kPi);
    if (r < 0.0) r += 2.0 * kPi;
    return r - kPi;
}

/// Position plus heading. Orientation is kept normalized in [-pi, pi).
struct Pose {
    Vec2 position;
    double orientation = 0.0;

    bool operator==(const Pose&) const = default;
};

}  // namespace swarmsim
