#pragma once

// Independent reference computations used to check machine outputs.

#include <cstdint>
#include <vector>

#include "bssvm/rational.hpp"

namespace testing {

/// Distance from x to the level-m Cantor cover (union of 2^m closed
/// intervals of length 3^-m). The Cantor set lies inside the cover, so the
/// true distance is between this value and this value plus 3^-m.
inline bssvm::Rational cantor_cover_distance(const bssvm::Rational& x, unsigned m) {
    using bssvm::Rational;
    __int128 pow3 = 1;
    for (unsigned k = 0; k < m; ++k) pow3 *= 3;
    // x scaled by 3^m, as num/den
    __int128 num = static_cast<__int128>(mpz_get_si(x.numerator().get_mpz_t()));
    __int128 den = static_cast<__int128>(mpz_get_si(x.denominator().get_mpz_t()));
    __int128 sx = num * pow3;  // x * 3^m * den
    __int128 best = -1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        // left end in units of 3^-m: ternary digits 0 / 2 chosen by mask
        __int128 left = 0;
        for (unsigned k = 0; k < m; ++k) left = left * 3 + (((mask >> (m - 1 - k)) & 1) ? 2 : 0);
        __int128 lo = left * den, hi = (left + 1) * den;
        __int128 d = sx < lo ? lo - sx : (sx > hi ? sx - hi : 0);
        if (best < 0 || d < best) best = d;
    }
    auto to_big = [](__int128 v) {
        bool neg = v < 0;
        if (neg) v = -v;
        std::string s;
        do {
            s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
            v /= 10;
        } while (v);
        return bssvm::BigInt((neg ? "-" : "") + s);
    };
    return Rational(to_big(best), to_big(den * pow3));
}

/// First `bits` binary digits of x in [0, 1) (finitely-many-ones expansion).
inline std::vector<int> binary_digits(bssvm::Rational x, unsigned bits) {
    std::vector<int> out;
    for (unsigned k = 0; k < bits; ++k) {
        x = x * bssvm::Rational(2);
        if (x >= bssvm::Rational(1)) {
            out.push_back(1);
            x = x - bssvm::Rational(1);
        } else {
            out.push_back(0);
        }
    }
    return out;
}

/// Interleaves y's and x's digits (y first) for x, y in [0, 1), truncated
/// after `bits` digits of each.
inline bssvm::Rational interleave(const bssvm::Rational& x, const bssvm::Rational& y, unsigned bits) {
    auto dx = binary_digits(x, bits), dy = binary_digits(y, bits);
    bssvm::Rational z = 0, w = 1;
    for (unsigned k = 0; k < bits; ++k) {
        w = w / bssvm::Rational(2);
        if (dy[k]) z = z + w;
        w = w / bssvm::Rational(2);
        if (dx[k]) z = z + w;
    }
    return z;
}

}  // namespace testing
