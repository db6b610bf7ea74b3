#pragma once

#include <utility>
#include <vector>

#include "rksynth/rational.hpp"
#include "rksynth/twobody.hpp"

namespace rksynth {

// Explicit two-stage Runge-Kutta tableau. The consistency condition c2 = a21
// is enforced by construction: only the three free coefficients are taken.
template <class T> struct tableau2 {
    T c2, a21, b1, b2;
    tableau2(T a21v, T b1v, T b2v) : c2(a21v), a21(a21v), b1(b1v), b2(b2v) {}
};

// (b1 + b2 - 1, b2*c2 - 1/2); both zero iff the method has order 2.
// Exact when T is rational.
template <class T> std::pair<T, T> order_residuals(const tableau2<T> &t) {
    return {t.b1 + t.b2 - T(1), t.b2 * t.c2 - T(1) / T(2)};
}

struct step_detail {
    deriv4 k1;
    state4 s2;
    deriv4 k2;
    state4 out;
};

// One RK step with all intermediates exposed. The stage-2 argument shifts all
// four components by h*a21*k1: positions by the velocity entries of k1,
// velocities by its acceleration entries.
inline step_detail rk_step_detail(double a21, double b1, double b2, const state4 &s, double h) {
    step_detail d;
    d.k1 = rhs(s);
    double ha = h * a21;
    d.s2 = {s.x + ha * d.k1.dx, s.y + ha * d.k1.dy, s.vx + ha * d.k1.ax, s.vy + ha * d.k1.ay};
    d.k2 = rhs(d.s2);
    d.out = {s.x + h * (b1 * d.k1.dx + b2 * d.k2.dx), s.y + h * (b1 * d.k1.dy + b2 * d.k2.dy),
             s.vx + h * (b1 * d.k1.ax + b2 * d.k2.ax), s.vy + h * (b1 * d.k1.ay + b2 * d.k2.ay)};
    return d;
}

state4 rk_step(const tableau2<double> &t, const state4 &s, double h);

// Fixed-step integration, numerical solution propagated; element i sits at
// t0 + i*h. Throws singular_state_error carrying the failing step index.
std::vector<state4> integrate(const tableau2<double> &t, const state4 &s0, double t0,
                              double t_end, long long n_steps);

// max over all stored states and components of |state - analytic_state(t)|
double max_abs_error(const std::vector<state4> &traj, double t0, double h);

struct integ_result {
    double max_err;
    state4 final_state;
};

// Same integration without storing the trajectory; for large step counts.
integ_result integrate_max_error(const tableau2<double> &t, const state4 &s0, double t0,
                                 double t_end, long long n_steps);

tableau2<rational> kepler_tableau();   // (11/26, -2/11, 13/11)
tableau2<rational> heun_tableau();     // (1, 1/2, 1/2)
tableau2<rational> midpoint_tableau(); // (1/2, 0, 1)
tableau2<rational> ralston_tableau();  // (2/3, 1/4, 3/4)
tableau2<double> to_double(const tableau2<rational> &t);

} // namespace rksynth
