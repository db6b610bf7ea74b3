#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "rksynth/errors.hpp"
#include "rksynth/rationalize.hpp"

using namespace rksynth;

namespace {

double uniform01(std::mt19937_64 &gen) { return double(gen() >> 11) * 0x1.0p-53; }

// exhaustive reference with the same tie rule: smaller error, then smaller
// denominator, then smaller numerator
rational brute_best(double x, long long maxden) {
    long long bp = 0, bq = 1;
    double berr = 0.0;
    bool have = false;
    for (long long q = 1; q <= maxden; ++q) {
        long long mid = (long long)std::llround(x * double(q));
        for (long long p = mid - 1; p <= mid + 1; ++p) {
            double err = std::fabs(x - double(p) / double(q));
            if (!have || err < berr || (err == berr && (q < bq || (q == bq && p < bp)))) {
                have = true;
                berr = err;
                bp = p;
                bq = q;
            }
        }
    }
    return rational(bp, bq);
}

} // namespace

TEST_CASE("known best approximations") {
    CHECK(best_rational(11.0 / 26.0, 100) == rational(11, 26));
    CHECK(best_rational(-11.0 / 26.0, 100) == rational(-11, 26));
    CHECK(best_rational(0.5, 10) == rational(1, 2));
    CHECK(best_rational(1.0 / 3.0, 10) == rational(1, 3));
    CHECK(best_rational(2.0, 5) == rational(2));
    CHECK(best_rational(0.0, 7) == rational(0));
    double pi = std::acos(-1.0);
    CHECK(best_rational(pi, 10) == rational(22, 7));
    CHECK(best_rational(pi, 1000) == rational(355, 113));
    CHECK(best_rational(-1.0 / 3.0, 100) == rational(-1, 3));
}

TEST_CASE("integer-only approximation rounds, ties toward the smaller value") {
    CHECK(best_rational(2.6, 1) == rational(3));
    CHECK(best_rational(2.5, 1) == rational(2));
    CHECK(best_rational(-2.5, 1) == rational(-3));
    CHECK(best_rational(0.4, 1) == rational(0));
}

TEST_CASE("huge partial quotients terminate and pick the right side") {
    CHECK(best_rational(1.0 + 1e-15, 1000000) == rational(1));
    CHECK(best_rational(1e-30, 1000000) == rational(0));
    // everything except 1/2 itself is at least 1/(2q) > 5e-7 away
    CHECK(best_rational(0.49999999999999994, 1000000) == rational(1, 2));
}

TEST_CASE("agrees with the exhaustive search for small denominators") {
    std::mt19937_64 gen(314159);
    std::vector<double> xs = {0.4230769230769231, 0.5,  -0.5, 1.0 + 1e-15, 0.3333333333333333,
                              1.6180339887498949, 2.718281828459045, 1.4142135623730951};
    for (int i = 0; i < 300; ++i) xs.push_back(20.0 * uniform01(gen) - 10.0);
    for (int i = 0; i < 50; ++i) xs.push_back(double(i) + 0.5);
    for (long long maxden : {1LL, 2LL, 3LL, 7LL, 23LL, 64LL})
        for (double x : xs) {
            CAPTURE(x);
            CAPTURE(maxden);
            CHECK(best_rational(x, maxden) == brute_best(x, maxden));
        }
}

TEST_CASE("exact fractions with small denominators are recovered exactly") {
    for (long long d = 1; d <= 20; ++d)
        for (long long n = -d; n <= d; ++n) {
            if (std::gcd(n < 0 ? -n : n, d) != 1) continue;
            CHECK(best_rational(double(n) / double(d), 64) == rational(n, d));
        }
}

TEST_CASE("input guards") {
    CHECK_THROWS_AS(best_rational(std::nan(""), 100), std::invalid_argument);
    CHECK_THROWS_AS(best_rational(std::numeric_limits<double>::infinity(), 100),
                    std::invalid_argument);
    CHECK_THROWS_AS(best_rational(0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(best_rational(0.5, -3), std::invalid_argument);
    CHECK_THROWS_AS(best_rational(0.5, 1000001), std::invalid_argument);
    CHECK_THROWS_AS(best_rational(1e12, 100), rational_overflow_error);
    CHECK_THROWS_AS(best_rational(-1e15, 100), rational_overflow_error);
    CHECK_NOTHROW(best_rational(9.99e11, 100));
}

TEST_CASE("completing a tableau from the abscissa") {
    tableau2<rational> kep = complete_tableau(rational(11, 26));
    CHECK(kep.c2 == rational(11, 26));
    CHECK(kep.a21 == rational(11, 26));
    CHECK(kep.b1 == rational(-2, 11));
    CHECK(kep.b2 == rational(13, 11));

    tableau2<rational> heun = complete_tableau(rational(1));
    CHECK(heun.b1 == rational(1, 2));
    CHECK(heun.b2 == rational(1, 2));

    tableau2<rational> mid = complete_tableau(rational(1, 2));
    CHECK(mid.b1 == rational(0));
    CHECK(mid.b2 == rational(1));

    tableau2<rational> ral = complete_tableau(rational(2, 3));
    CHECK(ral.b1 == rational(1, 4));
    CHECK(ral.b2 == rational(3, 4));

    tableau2<rational> neg = complete_tableau(rational(-1, 2));
    CHECK(neg.b2 == rational(-1));
    CHECK(neg.b1 == rational(2));

    // any completed tableau satisfies both order conditions exactly
    for (const auto &t : {kep, heun, mid, ral, neg}) {
        auto [r1, r2] = order_residuals(t);
        CHECK(r1 == rational(0));
        CHECK(r2 == rational(0));
    }

    CHECK_THROWS_WITH_AS(complete_tableau(rational(0)), "abscissa must be nonzero",
                         zero_abscissa_error);
}
