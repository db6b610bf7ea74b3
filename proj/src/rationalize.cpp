#include "rksynth/rationalize.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace rksynth {

rational best_rational(double x, long long max_denominator) {
    if (!std::isfinite(x)) throw std::invalid_argument("best_rational: x must be finite");
    if (max_denominator < 1 || max_denominator > 1000000)
        throw std::invalid_argument("max_denominator must be in [1, 1000000]");
    if (std::fabs(x) >= 1e12)
        throw rational_overflow_error("value too large to rationalize: " + std::to_string(x));

    using i128 = __int128;
    long long bp = 0, bq = 1;
    double berr = 0.0;
    bool have = false;
    auto consider = [&](i128 pp, i128 qq) {
        if (qq < 1 || qq > max_denominator) return;
        if (pp > INT64_MAX || pp < INT64_MIN) return;
        long long p = (long long)pp, q = (long long)qq;
        double err = std::fabs(x - double(p) / double(q));
        if (!have || err < berr || (err == berr && (q < bq || (q == bq && p < bp)))) {
            have = true;
            berr = err;
            bp = p;
            bq = q;
        }
    };

    double x0 = std::floor(x);
    long long p0 = 1, q0 = 0;
    long long p1 = (long long)x0, q1 = 1;
    consider(p1, q1);
    double xi = x - x0;
    for (int iter = 0; iter < 64 && xi > 0.0; ++iter) {
        double inv = 1.0 / xi;
        // q grows at least like Fibonacci numbers, so the k loops below are
        // bounded by max_denominator overall
        if (inv >= 4.0e18) {
            long long kcap = (max_denominator - q0) / q1;
            for (long long k = 1; k <= kcap; ++k)
                consider(i128(k) * p1 + p0, i128(k) * q1 + q0);
            break;
        }
        double af = std::floor(inv);
        long long a = (long long)af;
        xi = inv - af;
        long long kcap = (max_denominator - q0) / q1;
        long long kmax = a < kcap ? a : kcap;
        for (long long k = 1; k <= kmax; ++k) consider(i128(k) * p1 + p0, i128(k) * q1 + q0);
        i128 p2 = i128(a) * p1 + p0;
        i128 q2 = i128(a) * q1 + q0;
        if (q2 > max_denominator) break;
        p0 = p1;
        q0 = q1;
        p1 = (long long)p2;
        q1 = (long long)q2;
    }
    return rational(bp, bq);
}

tableau2<rational> complete_tableau(const rational &a21) {
    if (a21.is_zero()) throw zero_abscissa_error();
    rational b2 = rational(1) / (rational(2) * a21);
    rational b1 = rational(1) - b2;
    return {a21, b1, b2};
}

} // namespace rksynth
