#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace fieldline {

// Exact fraction on 64-bit words. Every operation reduces through gcd and
// funnels intermediate products through 128-bit arithmetic; overflow of the
// reduced result throws instead of wrapping.
struct rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    rat() = default;
    rat(std::int64_t n) : num(n), den(1) {}
    rat(std::int64_t n, std::int64_t d) { *this = make(n, d); }

    static rat make(__int128 n, __int128 d) {
        if (d == 0) throw std::invalid_argument("rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        rat r;
        r.num = narrow(n);
        r.den = narrow(d);
        return r;
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend rat operator+(const rat& a, const rat& b) {
        return make(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                    static_cast<__int128>(a.den) * b.den);
    }
    friend rat operator-(const rat& a, const rat& b) {
        return make(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                    static_cast<__int128>(a.den) * b.den);
    }
    friend rat operator*(const rat& a, const rat& b) {
        return make(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
    }
    friend rat operator-(const rat& a) { return make(-static_cast<__int128>(a.num), a.den); }

    friend bool operator==(const rat& a, const rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const rat& a, const rat& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const rat& a, const rat& b) { return a == b || a < b; }

private:
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { const __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }
    static std::int64_t narrow(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rat: 64-bit overflow");
        return static_cast<std::int64_t>(v);
    }
};

// Floor of a fraction, correct for negative numerators.
inline std::int64_t rat_floor(const rat& r) {
    std::int64_t q = r.num / r.den;
    if (r.num % r.den != 0 && r.num < 0) --q;
    return q;
}

// Fractional part in [0, 1).
inline rat rat_frac(const rat& r) { return r - rat(rat_floor(r)); }

// Mathematical modulus, result in [0, m).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace fieldline
