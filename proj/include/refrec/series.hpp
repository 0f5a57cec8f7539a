#pragma once

#include <stdexcept>
#include <vector>

namespace refrec {

// Truncated Laurent series: sum_{k>=lo} c[k-lo] * w^k, with coefficients in a
// field-like type T (PRat, ZRat, BigQ). Operations take an explicit highest
// retained order; results are exact up to that order.
template <class T>
struct WSeries {
    int lo = 0;
    std::vector<T> c;

    bool is_zero() const {
        for (auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
    int hi() const { return lo + int(c.size()) - 1; }

    const T coeff(int k) const {
        if (k < lo || k > hi()) return T();
        return c[k - lo];
    }

    void trim_front() {
        while (!c.empty() && c.front().is_zero()) {
            c.erase(c.begin());
            ++lo;
        }
    }

    void truncate(int maxord) {
        if (hi() > maxord) c.resize(std::max(0, maxord - lo + 1));
    }

    static WSeries monomial(const T& v, int k) {
        WSeries s;
        s.lo = k;
        s.c = {v};
        return s;
    }
};

template <class T>
WSeries<T> ws_add(const WSeries<T>& a, const WSeries<T>& b) {
    if (a.c.empty()) return b;
    if (b.c.empty()) return a;
    WSeries<T> r;
    r.lo = std::min(a.lo, b.lo);
    int hi = std::max(a.hi(), b.hi());
    r.c.assign(hi - r.lo + 1, T());
    for (int k = a.lo; k <= a.hi(); ++k) r.c[k - r.lo] = r.c[k - r.lo] + a.coeff(k);
    for (int k = b.lo; k <= b.hi(); ++k) r.c[k - r.lo] = r.c[k - r.lo] + b.coeff(k);
    return r;
}

template <class T>
WSeries<T> ws_neg(const WSeries<T>& a) {
    WSeries<T> r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

template <class T>
WSeries<T> ws_mul(const WSeries<T>& a, const WSeries<T>& b, int maxord) {
    WSeries<T> r;
    if (a.c.empty() || b.c.empty()) return r;
    r.lo = a.lo + b.lo;
    if (r.lo > maxord) return WSeries<T>();
    int n = maxord - r.lo + 1;
    r.c.assign(n, T());
    for (int i = 0; i < int(a.c.size()); ++i) {
        if (a.c[i].is_zero()) continue;
        for (int j = 0; j < int(b.c.size()) && i + j < n; ++j) {
            if (b.c[j].is_zero()) continue;
            r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
        }
    }
    return r;
}

// Inverse of a series whose lowest coefficient is a unit.
template <class T>
WSeries<T> ws_inv(WSeries<T> a, int maxord) {
    a.trim_front();
    if (a.c.empty()) throw std::runtime_error("WSeries: inverting zero");
    T lead = a.c[0];
    WSeries<T> r;
    r.lo = -a.lo;
    int n = maxord - r.lo + 1;
    if (n <= 0) return WSeries<T>();
    r.c.assign(n, T());
    // u = a / lead shifted to start at order 0; invert 1/(1+x)
    std::vector<T> u(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) u[i] = a.c[i] / lead;
    r.c[0] = T(1) / lead;
    for (int k = 1; k < n; ++k) {
        T acc = T();
        for (int j = 1; j <= k && j < int(u.size()); ++j) {
            if (u[j].is_zero() || r.c[k - j].is_zero()) continue;
            acc = acc + u[j] * r.c[k - j];
        }
        r.c[k] = -acc;
    }
    return r;
}

template <class T>
WSeries<T> ws_div(const WSeries<T>& a, const WSeries<T>& b, int maxord) {
    if (a.c.empty()) return a;
    WSeries<T> bi = ws_inv(b, maxord - a.lo + std::max(0, -a.lo));
    // ensure enough orders: product low = a.lo + bi.lo
    return ws_mul(a, bi, maxord);
}

// Compose f(g) for g with positive valuation; f may have negative orders only
// if g's leading coefficient is invertible (then uses inverse powers of g).
template <class T>
WSeries<T> ws_compose(const WSeries<T>& f, const WSeries<T>& g, int maxord) {
    WSeries<T> r;
    if (f.c.empty()) return r;
    WSeries<T> gc = g;
    gc.trim_front();
    if (!gc.c.empty() && gc.lo < 1) throw std::runtime_error("WSeries: composition needs valuation >= 1");
    // positive part by Horner
    int dmax = f.hi();
    if (dmax >= 0) {
        WSeries<T> pos;
        for (int k = dmax; k >= 0; --k) {
            pos = ws_mul(pos, gc, maxord);
            T fk = f.coeff(k);
            if (!fk.is_zero()) pos = ws_add(pos, WSeries<T>::monomial(fk, 0));
        }
        r = pos;
    }
    if (f.lo < 0) {
        WSeries<T> gi = ws_inv(gc, maxord + (-f.lo) * std::max(1, gc.lo) + 4);
        WSeries<T> acc = gi;
        for (int k = -1; k >= f.lo; --k) {
            T fk = f.coeff(k);
            if (!fk.is_zero()) r = ws_add(r, ws_mul(acc, WSeries<T>::monomial(fk, 0), maxord));
            if (k > f.lo) acc = ws_mul(acc, gi, maxord + 4);
        }
        r.truncate(maxord);
    }
    return r;
}

// Compositional inverse of x(z) = c/z * (1 + O(z)): returns z(w) with
// x(z(w)) = 1/w + O(w^{K}) and z(0) = 0, via the fixed point z = w*U0(z)
// where U0(z) = z*x(z) (a power series with invertible constant term).
template <class T>
WSeries<T> ws_reversion(const WSeries<T>& x, int K) {
    WSeries<T> xx = x;
    xx.trim_front();
    if (xx.c.empty() || xx.lo != -1) throw std::runtime_error("WSeries: reversion needs a simple pole");
    WSeries<T> U0 = xx;
    U0.lo += 1;
    WSeries<T> z = WSeries<T>::monomial(U0.coeff(0), 1);
    for (int it = 0; it < K + 2; ++it) {
        WSeries<T> Uz = ws_compose(U0, z, K);
        WSeries<T> nz = ws_mul(WSeries<T>::monomial(T(1), 1), Uz, K + 1);
        nz.truncate(K + 1);
        if (ws_add(nz, ws_neg(z)).is_zero()) {
            z = nz;
            break;
        }
        z = nz;
    }
    return z;
}

} // namespace refrec
