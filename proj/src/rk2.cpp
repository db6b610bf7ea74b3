#include "rksynth/rk2.hpp"

#include <algorithm>
#include <stdexcept>

namespace rksynth {

state4 rk_step(const tableau2<double> &t, const state4 &s, double h) {
    return rk_step_detail(t.a21, t.b1, t.b2, s, h).out;
}

namespace {

void check_span(double t0, double t_end, long long n_steps) {
    if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
    if (!(t_end > t0)) throw std::invalid_argument("t_end must exceed t0");
}

double max_dev(const state4 &a, const state4 &b) {
    double m = std::fabs(a.x - b.x);
    m = std::max(m, std::fabs(a.y - b.y));
    m = std::max(m, std::fabs(a.vx - b.vx));
    m = std::max(m, std::fabs(a.vy - b.vy));
    return m;
}

} // namespace

std::vector<state4> integrate(const tableau2<double> &t, const state4 &s0, double t0,
                              double t_end, long long n_steps) {
    check_span(t0, t_end, n_steps);
    double h = (t_end - t0) / double(n_steps);
    std::vector<state4> traj(size_t(n_steps) + 1);
    traj[0] = s0;
    for (long long i = 0; i < n_steps; ++i) {
        try {
            traj[size_t(i) + 1] = rk_step(t, traj[size_t(i)], h);
        } catch (const singular_state_error &) {
            throw singular_state_error(i);
        }
    }
    return traj;
}

double max_abs_error(const std::vector<state4> &traj, double t0, double h) {
    if (traj.empty()) throw std::invalid_argument("empty trajectory");
    double m = 0.0;
    for (size_t i = 0; i < traj.size(); ++i)
        m = std::max(m, max_dev(traj[i], analytic_state(t0 + double(i) * h)));
    return m;
}

integ_result integrate_max_error(const tableau2<double> &t, const state4 &s0, double t0,
                                 double t_end, long long n_steps) {
    check_span(t0, t_end, n_steps);
    double h = (t_end - t0) / double(n_steps);
    state4 cur = s0;
    double m = max_dev(cur, analytic_state(t0));
    for (long long i = 0; i < n_steps; ++i) {
        try {
            cur = rk_step(t, cur, h);
        } catch (const singular_state_error &) {
            throw singular_state_error(i);
        }
        m = std::max(m, max_dev(cur, analytic_state(t0 + double(i + 1) * h)));
    }
    return {m, cur};
}

tableau2<rational> kepler_tableau() {
    return {rational(11, 26), rational(-2, 11), rational(13, 11)};
}
tableau2<rational> heun_tableau() { return {rational(1), rational(1, 2), rational(1, 2)}; }
tableau2<rational> midpoint_tableau() { return {rational(1, 2), rational(0), rational(1)}; }
tableau2<rational> ralston_tableau() { return {rational(2, 3), rational(1, 4), rational(3, 4)}; }

tableau2<double> to_double(const tableau2<rational> &t) {
    return {t.a21.to_double(), t.b1.to_double(), t.b2.to_double()};
}

} // namespace rksynth
