#pragma once

#include "refrec/series.hpp"
#include "refrec/zrat.hpp"

namespace refrec {

// Ladder of a polynomial under the shift zi -> p + w: returns the exact list
// of w-coefficients (each a ZRat in the remaining variables). p may involve
// other z-variables.
inline std::vector<ZRat> shift_ladder(const ZPoly& f, int zi, const ZRat& p) {
    auto cs = f.coeffs_in(zi); // ZPoly in other vars
    int n = int(cs.size());
    std::vector<ZRat> out(std::max(n, 1));
    if (f.is_zero()) return out;
    // out[j] = sum_{k>=j} C(k,j) cs[k] p^{k-j}
    std::vector<ZRat> ppow(n);
    ZRat one(PRat(BigQ(1)));
    ZRat acc = one;
    for (int k = 0; k < n; ++k) {
        ppow[k] = acc;
        if (k + 1 < n) acc = acc * p;
    }
    std::vector<std::vector<BigQ>> C(n, std::vector<BigQ>(n, BigQ(0)));
    for (int k = 0; k < n; ++k) {
        C[k][0] = 1;
        for (int j = 1; j <= k; ++j) C[k][j] = C[k - 1][j - 1] + (j <= k - 1 ? C[k - 1][j] : BigQ(0));
    }
    for (int j = 0; j < n; ++j) {
        ZRat s;
        for (int k = j; k < n; ++k) {
            if (cs[k].is_zero()) continue;
            s += ZRat(cs[k]) * ppow[k - j] * PRat(C[k][j]);
        }
        out[j] = s;
    }
    return out;
}

// Laurent expansion of f (rational in zi) at zi = p, orders kmin..kmax.
// Exact coefficients, each a ZRat in the remaining variables.
inline WSeries<ZRat> laurent_at(const ZRat& f, int zi, const ZRat& p, int kmin, int kmax) {
    if (f.is_zero()) return WSeries<ZRat>();
    // numerator ladder
    std::vector<ZRat> nl = shift_ladder(f.num(), zi, p);
    WSeries<ZRat> num;
    num.lo = 0;
    num.c = nl;
    num.trim_front();
    if (num.c.empty()) return WSeries<ZRat>();
    // denominator factors
    int K = 0;
    std::vector<std::pair<WSeries<ZRat>, int>> units;
    for (auto& fac : f.den_factors()) {
        std::vector<ZRat> fl = shift_ladder(fac.first, zi, p);
        WSeries<ZRat> s;
        s.lo = 0;
        s.c = fl;
        s.trim_front();
        if (s.c.empty()) throw std::runtime_error("laurent_at: denominator factor vanishes identically");
        K += s.lo * fac.second;
        s.lo = 0; // unit part
        units.emplace_back(std::move(s), fac.second);
    }
    // f = w^{-K} * num / prod units^pow ; need orders kmin..kmax
    int need = kmax + K;
    WSeries<ZRat> r = num;
    r.truncate(need);
    for (auto& [u, pw] : units) {
        for (int i = 0; i < pw; ++i) r = ws_div(r, u, need);
    }
    r.lo -= K;
    r.truncate(kmax);
    // drop below kmin
    while (!r.c.empty() && r.lo < kmin) {
        r.c.erase(r.c.begin());
        ++r.lo;
    }
    for (auto& cf : r.c) cf.reduce();
    return r;
}

// Residue of f dz at zi = p (a rational point or a rational function of the
// other marked variables). Returns 0 when p is not a pole.
inline ZRat residue_at(const ZRat& f, int zi, const ZRat& p) {
    WSeries<ZRat> s = laurent_at(f, zi, p, -64, -1);
    return s.coeff(-1);
}

inline ZRat residue_at(const ZRat& f, int zi, const PRat& p) { return residue_at(f, zi, ZRat(p)); }

// Residue of f dz at zi = infinity: Res_{w=0} f(1/w) * (-1/w^2) dw.
// Substituting z = 1/w, f(1/w) = w^s * Nrev(w)/prod Frev(w)^p with all
// reversed polynomials nonvanishing at w = 0.
inline ZRat residue_at_infinity(const ZRat& f, int zi) {
    if (f.is_zero()) return ZRat();
    auto reverse_poly = [&](const ZPoly& g) {
        int d = g.deg(zi);
        auto cs = g.coeffs_in(zi);
        WSeries<ZRat> s;
        s.lo = 0;
        s.c.assign(d + 1, ZRat());
        for (int k = 0; k <= d; ++k) s.c[d - k] = ZRat(cs[k]);
        return std::make_pair(s, d);
    };
    auto [num, dn] = reverse_poly(f.num());
    int s = -dn;
    std::vector<std::pair<WSeries<ZRat>, int>> units;
    for (auto& fac : f.den_factors()) {
        auto [u, df] = reverse_poly(fac.first);
        s += df * fac.second;
        units.emplace_back(u, fac.second);
    }
    int target = 1 - s; // coefficient of w^1 in f(1/w)
    if (target < 0) return ZRat();
    WSeries<ZRat> acc = num;
    acc.truncate(target);
    for (auto& [u, pw] : units)
        for (int i = 0; i < pw; ++i) acc = ws_div(acc, u, target);
    return ZRat() - acc.coeff(target);
}

// Public series expansion: exact Laurent coefficients of f at zi = p for
// orders kmin..kmax (p finite).
inline WSeries<ZRat> series_expand(const ZRat& f, int zi, const ZRat& p, int kmin, int kmax) {
    return laurent_at(f, zi, p, kmin, kmax);
}

} // namespace refrec
