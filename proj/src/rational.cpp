#include "rksynth/rational.hpp"

#include <cctype>
#include <cstdint>
#include <stdexcept>

namespace rksynth {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs(i128 v) { return v < 0 ? u128(-v) : u128(v); }

u128 gcd_u128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr i128 i64_max = INT64_MAX;
constexpr i128 i64_min = INT64_MIN;

// digits -> i128; empty string yields 0; rejects non-digits and absurd lengths
bool digits_to_i128(const std::string &s, i128 &out) {
    out = 0;
    if (s.size() > 30) return false;
    for (char c : s) {
        if (!std::isdigit((unsigned char)c)) return false;
        out = out * 10 + (c - '0');
    }
    return true;
}

} // namespace

rational rational::make(i128 n, i128 d) {
    if (d == 0) throw std::invalid_argument("rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) return rational();
    u128 g = gcd_u128(uabs(n), uabs(d));
    n /= i128(g);
    d /= i128(g);
    if (n > i64_max || n < i64_min || d > i64_max)
        throw rational_overflow_error("rational arithmetic overflow");
    rational r;
    r.num_ = (long long)n;
    r.den_ = (long long)d;
    return r;
}

rational::rational(long long n, long long d) { *this = make(n, d); }

std::string rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

rational operator+(const rational &a, const rational &b) {
    return rational::make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

rational operator-(const rational &a, const rational &b) {
    return rational::make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

rational operator*(const rational &a, const rational &b) {
    return rational::make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

rational operator/(const rational &a, const rational &b) {
    if (b.num_ == 0) throw std::domain_error("rational: division by zero");
    return rational::make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

rational rational::operator-() const { return make(-i128(num_), den_); }

bool operator<(const rational &a, const rational &b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
}

rational parse_rational(const std::string &text) {
    size_t b = text.find_first_not_of(" \t");
    size_t e = text.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty rational literal");
    std::string s = text.substr(b, e - b + 1);

    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    auto bad = [&]() { return std::invalid_argument("malformed rational literal: " + text); };
    if (s.empty()) throw bad();

    size_t slash = s.find('/');
    if (slash != std::string::npos) {
        i128 n = 0, d = 0;
        if (slash == 0 || slash + 1 >= s.size()) throw bad();
        if (!digits_to_i128(s.substr(0, slash), n) || !digits_to_i128(s.substr(slash + 1), d))
            throw bad();
        if (d == 0) throw std::invalid_argument("rational: zero denominator in " + text);
        return rational::make(neg ? -n : n, d);
    }

    size_t dot = s.find('.');
    if (dot == std::string::npos) {
        i128 n = 0;
        if (!digits_to_i128(s, n)) throw bad();
        return rational::make(neg ? -n : n, 1);
    }

    std::string ip = s.substr(0, dot);
    std::string fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw bad();
    if (fp.size() > 18)
        throw rational_overflow_error("decimal literal has more than 18 fractional digits: " +
                                      text);
    i128 ipart = 0, fpart = 0;
    if (!digits_to_i128(ip, ipart) || !digits_to_i128(fp, fpart)) throw bad();
    i128 den = 1;
    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    i128 n = ipart * den + fpart;
    return rational::make(neg ? -n : n, den);
}

} // namespace rksynth
