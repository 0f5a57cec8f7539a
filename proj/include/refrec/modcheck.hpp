#pragma once

#include "refrec/zpoly.hpp"

#include <cstdint>

namespace refrec {

// Cheap necessary condition for exact divisibility: project to a univariate
// polynomial over Z_p by substituting random residues for all parameters and
// all but one variable, then test the projected remainder. A zero projected
// remainder may be a false positive (caller confirms with exact division);
// a nonzero remainder proves indivisibility.
namespace modp {

constexpr uint64_t P = 2305843009213693951ull; // 2^61 - 1

inline uint64_t addm(uint64_t a, uint64_t b) {
    uint64_t s = a + b;
    if (s >= P) s -= P;
    return s;
}
inline uint64_t subm(uint64_t a, uint64_t b) { return addm(a, P - b); }
inline uint64_t mulm(uint64_t a, uint64_t b) {
    unsigned __int128 t = (unsigned __int128)a * b;
    uint64_t lo = (uint64_t)(t & P), hi = (uint64_t)(t >> 61);
    uint64_t r = lo + hi;
    if (r >= P) r -= P;
    return r;
}
inline uint64_t powm(uint64_t a, uint64_t e) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulm(r, a);
        a = mulm(a, a);
        e >>= 1;
    }
    return r;
}
inline uint64_t invm(uint64_t a) { return powm(a % P, P - 2); }

inline uint64_t q_mod(const BigQ& q) {
    BigZ n = q_num(q) % BigZ(P);
    BigZ d = q_den(q) % BigZ(P);
    uint64_t nn = (uint64_t)(n < 0 ? n + BigZ(P) : n);
    uint64_t dd = (uint64_t)d;
    if (dd == 0) return 0; // degenerate projection; caller treats as maybe
    return mulm(nn, invm(dd));
}

struct Seeds {
    std::array<uint64_t, kNumParams> par;
    std::array<uint64_t, kMaxZ> zv;
};

inline Seeds default_seeds() {
    Seeds s;
    uint64_t x = 0x9e3779b97f4a7c15ull;
    auto next = [&x]() {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        return (x % (P - 7)) + 3;
    };
    for (auto& v : s.par) v = next();
    for (auto& v : s.zv) v = next();
    return s;
}

// project to dense univariate in variable `keep`
inline bool project_zpoly(const ZPoly& f, int keep, const Seeds& sd, std::vector<uint64_t>& out) {
    out.assign(f.deg(keep) + 1, 0);
    for (auto& t : f.terms()) {
        const PRat& c = t.second;
        uint64_t cd = 1, cn = 1;
        // evaluate PRat coefficient
        uint64_t nv = 0, dv = 0;
        {
            uint64_t acc = 0;
            for (auto& mt : c.num().terms()) {
                uint64_t m = q_mod(mt.second);
                for (int i = 0; i < kNumParams; ++i)
                    if (mt.first.e[i]) m = mulm(m, powm(sd.par[i], mt.first.e[i]));
                acc = addm(acc, m);
            }
            nv = acc;
            acc = 0;
            for (auto& mt : c.den().terms()) {
                uint64_t m = q_mod(mt.second);
                for (int i = 0; i < kNumParams; ++i)
                    if (mt.first.e[i]) m = mulm(m, powm(sd.par[i], mt.first.e[i]));
                acc = addm(acc, m);
            }
            dv = acc;
        }
        if (dv == 0) return false; // projection degenerate
        uint64_t val = mulm(nv, invm(dv));
        for (int i = 0; i < kMaxZ; ++i)
            if (i != keep && t.first.e[i]) val = mulm(val, powm(sd.zv[i], t.first.e[i]));
        out[t.first.e[keep]] = addm(out[t.first.e[keep]], val);
        (void)cd;
        (void)cn;
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return true;
}

// returns false only when division is provably impossible
inline bool maybe_divisible(const ZPoly& num, const ZPoly& f) {
    int keep = -1;
    for (int i = 0; i < kMaxZ; ++i)
        if (f.depends_on(i)) {
            keep = i;
            break;
        }
    if (keep < 0) return true; // constant-ish factor
    if (num.deg(keep) < f.deg(keep)) return false;
    static const Seeds sd = default_seeds();
    std::vector<uint64_t> a, b;
    if (!project_zpoly(num, keep, sd, a)) return true;
    if (!project_zpoly(f, keep, sd, b)) return true;
    if (b.empty()) return true;
    if (a.empty()) return true;
    if (a.size() < b.size()) return false;
    // dense univariate remainder
    uint64_t linv = invm(b.back());
    for (int i = int(a.size()) - 1; i >= int(b.size()) - 1; --i) {
        uint64_t q = mulm(a[i], linv);
        if (q == 0) continue;
        int off = i - (int(b.size()) - 1);
        for (int j = 0; j < int(b.size()); ++j) a[off + j] = subm(a[off + j], mulm(q, b[j]));
    }
    for (int i = 0; i < int(b.size()) - 1 && i < int(a.size()); ++i)
        if (a[i] != 0) return false;
    return true;
}

} // namespace modp
} // namespace refrec
