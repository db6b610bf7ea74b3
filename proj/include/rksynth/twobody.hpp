#pragma once

#include <array>
#include <cmath>

#include "rksynth/errors.hpp"

namespace rksynth {

// Planar two-body problem with unit gravitational parameter, written as a
// first-order system in v = (x, y, vx, vy). The reference trajectory is the
// unit circle (cos t, sin t, -sin t, cos t).

inline constexpr double singular_radius = 1e-8;

struct state4 {
    double x, y, vx, vy;
};

struct deriv4 {
    double dx, dy, ax, ay;
};

// flat component order: x, y, vx, vy (and dx, dy, ax, ay)
inline double comp(const state4 &s, int j) {
    switch (j) {
    case 0: return s.x;
    case 1: return s.y;
    case 2: return s.vx;
    default: return s.vy;
    }
}

inline double comp(const deriv4 &k, int j) {
    switch (j) {
    case 0: return k.dx;
    case 1: return k.dy;
    case 2: return k.ax;
    default: return k.ay;
    }
}

inline double radius(double x, double y) { return std::sqrt(x * x + y * y); }

inline deriv4 rhs(const state4 &s) {
    double r = radius(s.x, s.y);
    if (!std::isfinite(r) || r < singular_radius) throw singular_state_error();
    double r3 = r * r * r;
    return {s.vx, s.vy, -s.x / r3, -s.y / r3};
}

// partials of the acceleration (-x/r^3, -y/r^3) with respect to (x, y)
inline std::array<std::array<double, 2>, 2> accel_jacobian(double x, double y) {
    double r = radius(x, y);
    if (!std::isfinite(r) || r < singular_radius) throw singular_state_error();
    double r2 = r * r;
    double r3 = r2 * r;
    double r5 = r3 * r2;
    double off = 3.0 * x * y / r5;
    return {{{-1.0 / r3 + 3.0 * x * x / r5, off}, {off, -1.0 / r3 + 3.0 * y * y / r5}}};
}

inline state4 analytic_state(double t) {
    double c = std::cos(t);
    double s = std::sin(t);
    return {c, s, -s, c};
}

} // namespace rksynth
