#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "rksynth/rk2.hpp"

using namespace rksynth;

namespace {

double uniform01(std::mt19937_64 &gen) { return double(gen() >> 11) * 0x1.0p-53; }

// direct evaluation of the step formula in extended precision, no shared code
state4 oracle_step(double a21, double b1, double b2, const state4 &s, double h) {
    auto acc = [](long double x, long double y, long double &ax, long double &ay) {
        long double r = sqrtl(x * x + y * y);
        long double r3 = r * r * r;
        ax = -x / r3;
        ay = -y / r3;
    };
    long double x = s.x, y = s.y, vx = s.vx, vy = s.vy;
    long double a1x, a1y;
    acc(x, y, a1x, a1y);
    long double k1[4] = {vx, vy, a1x, a1y};
    long double sx = x + (long double)h * a21 * k1[0];
    long double sy = y + (long double)h * a21 * k1[1];
    long double svx = vx + (long double)h * a21 * k1[2];
    long double svy = vy + (long double)h * a21 * k1[3];
    long double a2x, a2y;
    acc(sx, sy, a2x, a2y);
    long double k2[4] = {svx, svy, a2x, a2y};
    return {double(x + h * (b1 * k1[0] + b2 * k2[0])), double(y + h * (b1 * k1[1] + b2 * k2[1])),
            double(vx + h * (b1 * k1[2] + b2 * k2[2])),
            double(vy + h * (b1 * k1[3] + b2 * k2[3]))};
}

double max_dev(const state4 &a, const state4 &b) {
    return std::max(std::max(std::fabs(a.x - b.x), std::fabs(a.y - b.y)),
                    std::max(std::fabs(a.vx - b.vx), std::fabs(a.vy - b.vy)));
}

} // namespace

TEST_CASE("order residuals, exact and floating") {
    auto [r1, r2] = order_residuals(kepler_tableau());
    CHECK(r1 == rational(0));
    CHECK(r2 == rational(0));

    auto [h1, h2] = order_residuals(heun_tableau());
    CHECK(h1 == rational(0));
    CHECK(h2 == rational(0));

    auto [m1, m2] = order_residuals(midpoint_tableau());
    CHECK(m1 == rational(0));
    CHECK(m2 == rational(0));

    auto [q1, q2] = order_residuals(ralston_tableau());
    CHECK(q1 == rational(0));
    CHECK(q2 == rational(0));

    tableau2<double> bad(1.0, 0.6, 0.6);
    auto [d1, d2] = order_residuals(bad);
    CHECK(d1 == doctest::Approx(0.2));
    CHECK(d2 == doctest::Approx(0.1));
}

TEST_CASE("consistency is built in") {
    auto t = kepler_tableau();
    CHECK(t.c2 == t.a21);
    tableau2<double> d(0.37, 0.1, 0.9);
    CHECK(d.c2 == d.a21);
}

TEST_CASE("zero steplength returns the state unchanged") {
    tableau2<double> t = to_double(heun_tableau());
    state4 s{0.3, 0.8, -0.4, 0.9};
    state4 r = rk_step(t, s, 0.0);
    CHECK(r.x == s.x);
    CHECK(r.y == s.y);
    CHECK(r.vx == s.vx);
    CHECK(r.vy == s.vy);
}

TEST_CASE("single heun step matches the direct-formula oracle") {
    tableau2<double> t = to_double(heun_tableau());
    state4 s{1.0, 0.0, 0.0, 1.0};
    state4 got = rk_step(t, s, 0.1);
    state4 want = oracle_step(1.0, 0.5, 0.5, s, 0.1);
    CHECK(max_dev(got, want) <= 1e-15);
}

TEST_CASE("single step local error is below h^3") {
    tableau2<double> t = to_double(kepler_tableau());
    double pi = std::acos(-1.0);
    double h = pi / 128.0;
    state4 got = rk_step(t, analytic_state(0.0), h);
    double err = max_dev(got, analytic_state(h));
    CHECK(err < h * h * h);
    CHECK(err > 0.0);
}

TEST_CASE("rk_step matches the oracle on random states and steplengths") {
    std::mt19937_64 gen(2024);
    double pi = std::acos(-1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double r = 0.8 + 0.7 * uniform01(gen);
        double th = 2.0 * pi * uniform01(gen);
        state4 s{r * std::cos(th), r * std::sin(th), 3.0 * uniform01(gen) - 1.5,
                 3.0 * uniform01(gen) - 1.5};
        double h = 0.1 * uniform01(gen);
        double a21 = 2.0 * uniform01(gen) - 1.0;
        double b1 = 2.0 * uniform01(gen) - 1.0;
        double b2 = 2.0 * uniform01(gen) - 1.0;
        tableau2<double> t(a21, b1, b2);
        worst = std::max(worst, max_dev(rk_step(t, s, h), oracle_step(a21, b1, b2, s, h)));
    }
    CHECK(worst <= 1e-15);
}

TEST_CASE("rk_step is linear in the weights") {
    std::mt19937_64 gen(11);
    state4 s{0.9, 0.3, -0.2, 1.1};
    double h = 0.05;
    for (int i = 0; i < 50; ++i) {
        double a21 = 2.0 * uniform01(gen) - 1.0;
        double b1 = 2.0 * uniform01(gen) - 1.0;
        double b2 = 2.0 * uniform01(gen) - 1.0;
        double c1 = 2.0 * uniform01(gen) - 1.0;
        double c2 = 2.0 * uniform01(gen) - 1.0;
        state4 sum = rk_step(tableau2<double>(a21, b1 + c1, b2 + c2), s, h);
        state4 rc = rk_step(tableau2<double>(a21, c1, c2), s, h);
        state4 rb = rk_step(tableau2<double>(a21, b1, b2), s, h);
        state4 r0 = rk_step(tableau2<double>(a21, 0.0, 0.0), s, h);
        state4 lhs{sum.x - rc.x, sum.y - rc.y, sum.vx - rc.vx, sum.vy - rc.vy};
        state4 rhs2{rb.x - r0.x, rb.y - r0.y, rb.vx - r0.vx, rb.vy - r0.vy};
        CHECK(max_dev(lhs, rhs2) <= 1e-14);
    }
}

TEST_CASE("integrate propagates the numerical solution") {
    tableau2<double> t = to_double(heun_tableau());
    state4 s0{1.0, 0.0, 0.0, 1.0};
    auto traj = integrate(t, s0, 0.0, 0.4, 1);
    REQUIRE(traj.size() == 2);
    CHECK(traj[0].x == s0.x);
    state4 one = rk_step(t, s0, 0.4);
    CHECK(max_dev(traj[1], one) == 0.0);

    auto traj4 = integrate(t, s0, 0.0, 0.4, 4);
    REQUIRE(traj4.size() == 5);
    state4 cur = s0;
    for (int i = 0; i < 4; ++i) cur = rk_step(t, cur, 0.1);
    CHECK(max_dev(traj4[4], cur) == 0.0);

    CHECK_THROWS_AS(integrate(t, s0, 0.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(integrate(t, s0, 1.0, 0.5, 4), std::invalid_argument);
}

TEST_CASE("heun over one orbit lands close to the start") {
    double pi = std::acos(-1.0);
    tableau2<double> t = to_double(heun_tableau());
    auto traj = integrate(t, {1.0, 0.0, 0.0, 1.0}, 0.0, 2.0 * pi, 512);
    state4 fin = traj.back();
    CHECK(max_dev(fin, {1.0, 0.0, 0.0, 1.0}) < 1e-2);
}

TEST_CASE("max_abs_error of an analytic trajectory is zero") {
    double h = 0.01;
    std::vector<state4> traj;
    for (int i = 0; i <= 100; ++i) traj.push_back(analytic_state(0.5 + i * h));
    CHECK(max_abs_error(traj, 0.5, h) == 0.0);

    std::vector<state4> single{analytic_state(0.0)};
    single[0].x += 0x1.0p-10;
    single[0].vy -= 0x1.0p-12;
    CHECK(max_abs_error(single, 0.0, h) == 0x1.0p-10);
    CHECK_THROWS_AS(max_abs_error({}, 0.0, h), std::invalid_argument);
}

TEST_CASE("empirical order is 2 on one orbit for all built-in tableaus") {
    double pi = std::acos(-1.0);
    for (const auto &rt : {kepler_tableau(), heun_tableau(), midpoint_tableau(), ralston_tableau()}) {
        tableau2<double> t = to_double(rt);
        double errs[3];
        long long ns[3] = {256, 512, 1024};
        for (int i = 0; i < 3; ++i) {
            auto traj = integrate(t, {1.0, 0.0, 0.0, 1.0}, 0.0, 2.0 * pi, ns[i]);
            errs[i] = max_abs_error(traj, 0.0, 2.0 * pi / double(ns[i]));
        }
        for (int i = 0; i < 2; ++i) {
            double p = std::log2(errs[i] / errs[i + 1]);
            CHECK(p > 1.7);
            CHECK(p < 2.3);
        }
    }
}

TEST_CASE("error ratio under step doubling on the long interval") {
    tableau2<double> t = to_double(heun_tableau());
    double e1 = integrate_max_error(t, {1.0, 0.0, 0.0, 1.0}, 0.0, 1000.0, 1000000).max_err;
    double e2 = integrate_max_error(t, {1.0, 0.0, 0.0, 1.0}, 0.0, 1000.0, 2000000).max_err;
    double ratio = e1 / e2;
    CHECK(ratio > 3.4);
    CHECK(ratio < 4.7);
}

TEST_CASE("streaming max error agrees with the dense trajectory") {
    double pi = std::acos(-1.0);
    tableau2<double> t = to_double(ralston_tableau());
    auto traj = integrate(t, {1.0, 0.0, 0.0, 1.0}, 0.0, 2.0 * pi, 512);
    double dense = max_abs_error(traj, 0.0, 2.0 * pi / 512.0);
    integ_result st = integrate_max_error(t, {1.0, 0.0, 0.0, 1.0}, 0.0, 2.0 * pi, 512);
    CHECK(st.max_err == dense);
    CHECK(max_dev(st.final_state, traj.back()) == 0.0);
}

TEST_CASE("a singular step aborts with its index") {
    // this tableau sends (1,0,0,1) exactly to the origin in one unit step
    tableau2<double> t(2.0, -0.5, 0.5);
    CHECK_THROWS_AS(integrate(t, {1.0, 0.0, 0.0, 1.0}, 0.0, 2.0, 2), singular_state_error);
    try {
        integrate(t, {1.0, 0.0, 0.0, 1.0}, 0.0, 2.0, 2);
    } catch (const singular_state_error &e) {
        CHECK(e.index == 1);
    }
}
