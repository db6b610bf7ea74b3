#pragma once

#include <string>

#include "rksynth/errors.hpp"

namespace rksynth {

// Exact fraction with a 64-bit numerator and denominator, always reduced,
// denominator always positive. Arithmetic goes through 128-bit intermediates
// and throws rational_overflow_error if a reduced result does not fit.
class rational {
  public:
    rational() : num_(0), den_(1) {}
    rational(long long n) : num_(n), den_(1) {}
    rational(long long n, long long d);

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    double to_double() const { return double(num_) / double(den_); }
    std::string str() const;

    friend rational operator+(const rational &a, const rational &b);
    friend rational operator-(const rational &a, const rational &b);
    friend rational operator*(const rational &a, const rational &b);
    friend rational operator/(const rational &a, const rational &b);
    rational operator-() const;

    friend bool operator==(const rational &a, const rational &b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const rational &a, const rational &b) { return !(a == b); }
    friend bool operator<(const rational &a, const rational &b);

  private:
    static rational make(__int128 n, __int128 d);
    friend rational parse_rational(const std::string &text);
    long long num_, den_;
};

// Accepts "p/q", integers, and plain decimals ("0.6" parses exactly as 3/5).
// Throws std::invalid_argument on malformed text, rational_overflow_error if
// the exact value does not fit (e.g. more than 18 fractional digits).
rational parse_rational(const std::string &text);

} // namespace rksynth
