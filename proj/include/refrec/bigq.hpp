#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>

namespace refrec {

// Arbitrary-precision rational. mpq keeps gcd(num,den)=1 and den>0.
using BigQ = boost::multiprecision::mpq_rational;
using BigZ = boost::multiprecision::mpz_int;

inline BigZ q_num(const BigQ& q) { return numerator(q); }
inline BigZ q_den(const BigQ& q) { return denominator(q); }

inline bool is_zero(const BigQ& q) { return q.is_zero(); }
inline bool is_one(const BigQ& q) { return q == 1; }

inline std::string to_string(const BigQ& q) { return q.str(); }

inline BigQ q_pow(const BigQ& base, long e) {
    if (e == 0) return BigQ(1);
    BigQ b = base;
    bool inv = e < 0;
    if (inv) e = -e;
    BigQ r(1);
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    if (inv) r = BigQ(1) / r;
    return r;
}

inline BigZ z_gcd(const BigZ& a, const BigZ& b) { return gcd(a, b); }

} // namespace refrec
