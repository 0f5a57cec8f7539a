#include "refrec/curve.hpp"

namespace refrec {

namespace {

ZRat zv(int i) { return ZRat::var(i); }
PRat pv(int p) { return PRat::var(p); }
PRat q(long n) { return PRat(BigQ(n)); }

} // namespace

std::string curve_id_name(CurveId id) {
    switch (id) {
        case CurveId::main_w: return "main";
        case CurveId::bipartite: return "bipartite";
        case CurveId::monotone: return "monotone";
        case CurveId::mixed: return "mixed";
        case CurveId::gbe: return "gbe";
        case CurveId::jbe: return "jbe";
        case CurveId::lbe: return "lbe";
    }
    return "?";
}

std::optional<CurveId> curve_id_from_name(const std::string& s) {
    for (CurveId id : {CurveId::main_w, CurveId::bipartite, CurveId::monotone, CurveId::mixed, CurveId::gbe,
                       CurveId::jbe, CurveId::lbe})
        if (s == curve_id_name(id)) return id;
    return std::nullopt;
}

ZRat involution_of(const ZRat& xr) {
    const ZPoly num = xr.num();
    const ZPoly den = xr.den_expanded();
    int d = std::max(num.deg(0), den.deg(0));
    if (d != 2) throw std::runtime_error("involution: map is not of degree two");
    auto nc = num.coeffs_in(0);
    auto dc = den.coeffs_in(0);
    nc.resize(3);
    dc.resize(3);
    auto pr = [](const ZPoly& p) { return p.is_zero() ? PRat() : p.constant_value(); };
    PRat n0 = pr(nc[0]), n1 = pr(nc[1]), n2 = pr(nc[2]);
    PRat d0 = pr(dc[0]), d1 = pr(dc[1]), d2 = pr(dc[2]);
    PRat A01 = n0 * d1 - n1 * d0;
    PRat A02 = n0 * d2 - n2 * d0;
    PRat A12 = n1 * d2 - n2 * d1;
    // x(z)-x(w) factors through (z-w)(A01 + A02(z+w) + A12 zw);
    // sigma(z) = -(A01 + A02 z)/(A02 + A12 z)
    ZRat snum = ZRat(-A01) - ZRat(A02) * zv(0);
    ZRat sden = ZRat(A02) + ZRat(A12) * zv(0);
    if (sden.is_zero()) throw std::runtime_error("involution: degenerate bilinear factor");
    ZRat s = snum / sden;
    if ((s - zv(0)).is_zero()) throw std::runtime_error("involution: map is not a genuine double cover");
    return s;
}

CPoint SpectralCurve::sigma_point(const CPoint& c) const {
    ZPoly den = sigma.den_expanded();
    if (!c) {
        int dn = sigma.num().deg(0), dd = den.deg(0);
        if (dn > dd) return std::nullopt;
        auto nc = sigma.num().coeffs_in(0);
        auto dc = den.coeffs_in(0);
        if (dn == dd) return CPoint(nc[dn].constant_value() / dc[dd].constant_value());
        return CPoint(PRat());
    }
    PRat dv = ZRat(den).subst_const(0, *c).is_zero() ? PRat() : ZRat(den).subst_const(0, *c).constant_value();
    if (dv.is_zero()) return std::nullopt;
    PRat nv = ZRat(sigma.num()).subst_const(0, *c).constant_value();
    return CPoint(nv / dv);
}

ZRat SpectralCurve::eta(const CPoint& c, int zi) const {
    ZRat r;
    if (c) r += (zv(zi) - ZRat(*c)).inv();
    CPoint sc = sigma_point(c);
    if (sc) r -= (zv(zi) - ZRat(*sc)).inv();
    return r;
}

ZRat SpectralCurve::w01(int zi) const { return (y * xprime).rename(0, zi); }

ZRat SpectralCurve::w02(int zi1, int zi2) const {
    ZRat s2 = sigma.rename(0, zi2);
    ZRat d = zv(zi1) - s2;
    return ZRat() - s2.deriv(zi2) * d.pow(-2);
}

ZRat SpectralCurve::w_half(int zi) const {
    ZRat r = ZRat() - ytilde.dlog(0);
    for (size_t i = 0; i < P_plus.size(); ++i) {
        if (mu[i].is_zero()) continue;
        r += ZRat(mu[i]) * eta(CPoint(P_plus[i]), 0);
    }
    r = r * PRat(MPoly::var(P_b), MPoly(BigQ(2)));
    return r.rename(0, zi);
}

ZRat SpectralCurve::half_shift_z(int zi) const {
    if (half_shift.is_zero()) return ZRat();
    return compose_x(half_shift, zi) * xprime_at(zi);
}

ZRat SpectralCurve::compose_x(const ZRat& fX, int zi) const {
    return fX.rename(kXSlot, zi).subst_rat(zi, x_at(zi));
}

namespace {

SpectralCurve build_from_xy(CurveId id, ZRat x, ZRat y) {
    SpectralCurve c;
    c.id = id;
    c.name = curve_id_name(id);
    c.x = std::move(x);
    c.y = std::move(y);
    c.sigma = involution_of(c.x);
    ZRat ys = c.y.subst_rat(0, c.sigma);
    c.ytilde = (c.y - ys) * PRat(BigQ(1, 2));
    c.xprime = c.x.deriv(0);
    c.ram_poly = (zv(0) - c.sigma).num();
    return c;
}

} // namespace

SpectralCurve catalog_curve(CurveId id, const std::map<int, BigQ>& bindings) {
    PRat u1 = pv(P_u1), u2 = pv(P_u2), v = pv(P_v), t = pv(P_t), u = pv(P_u);
    PRat gam = pv(P_gamma), del = pv(P_delta);
    ZRat z = zv(0), X = zv(kXSlot);
    SpectralCurve c;

    auto make_main = [&](PRat U1, PRat U2, PRat V, PRat T) {
        ZRat xx = ZRat(T) * (z + ZRat(U1)) * (z + ZRat(U2)) / (z * (ZRat(V) - z));
        SpectralCurve cc = build_from_xy(id, xx, z / xx);
        PRat third = -(U1 * U2) / (U1 + U2 + V);
        cc.P_plus = {PRat(), -U1, third};
        cc.mu = {q(-1), q(0), q(0)};
        cc.P_all = {CPoint(PRat()), CPoint(V), CPoint(-U1), CPoint(-U2), CPoint(third), CPoint()};
        cc.S_inv = (ZRat(T * (U1 + U2)) - ZRat(V) * X) / (ZRat(q(2)) * X * (ZRat(T) + X));
        cc.C_clear = ZRat(q(2)) * X * (ZRat(T) + X);
        cc.U_curve = ZRat(V * V) * X * X - ZRat(q(2) * T * ((U1 + U2) * V + q(2) * U1 * U2)) * X +
                     ZRat(T * T * (U1 - U2) * (U1 - U2));
        PRat b2(MPoly::var(P_b), MPoly(BigQ(2)));
        cc.half_shift = ZRat(b2) * ((ZRat(T) + X).inv() + X.inv());
        return cc;
    };

    switch (id) {
        case CurveId::main_w:
            c = make_main(u1, u2, v, t);
            break;
        case CurveId::jbe:
            // weight (1+z)(gamma+z)/(gamma+delta+z) is the main family at
            // (u1,u2,v,t) -> (1, gamma, -(gamma+delta), -t)
            c = make_main(q(1), gam, -(gam + del), -t);
            break;
        case CurveId::bipartite:
        case CurveId::lbe: {
            PRat U1 = (id == CurveId::lbe) ? q(1) : u1;
            PRat U2 = (id == CurveId::lbe) ? gam : u2;
            ZRat xx = ZRat(t) * (z + ZRat(U1)) * (z + ZRat(U2)) / z;
            c = build_from_xy(id, xx, z / xx);
            c.P_plus = {PRat(), -U1};
            c.mu = {q(-1), q(0)};
            c.P_all = {CPoint(PRat()), CPoint(), CPoint(-U1), CPoint(-U2)};
            c.S_inv = (ZRat(t * (U1 + U2)) - X) / (ZRat(q(2) * t) * X);
            c.C_clear = ZRat(q(2) * t) * X;
            c.U_curve = (X - ZRat(t * (U1 + U2))).pow(2) - ZRat(q(4) * t * t * U1 * U2);
            PRat b2(MPoly::var(P_b), MPoly(BigQ(2)));
            c.half_shift = ZRat(b2) * X.inv();
            break;
        }
        case CurveId::monotone: {
            ZRat xx = ZRat(t) / (z * (ZRat(v) - z));
            c = build_from_xy(id, xx, z / xx);
            c.P_plus = {PRat()};
            c.mu = {q(-1)};
            c.P_all = {CPoint(PRat()), CPoint(v)};
            c.S_inv = ZRat(-v) / (ZRat(q(2)) * X);
            c.C_clear = ZRat(q(2)) * X * X;
            c.U_curve = ZRat(v * v) * X * X - ZRat(q(4) * t) * X;
            PRat bb = pv(P_b);
            c.half_shift = ZRat(bb) * X.inv();
            break;
        }
        case CurveId::mixed: {
            ZRat xx = ZRat(t) * (z + ZRat(u1)) / (z * (ZRat(v) - z));
            c = build_from_xy(id, xx, z / xx);
            c.P_plus = {PRat(), -u1};
            c.mu = {q(-1), q(0)};
            c.P_all = {CPoint(PRat()), CPoint(v), CPoint(-u1), CPoint()};
            c.S_inv = (ZRat(t) - ZRat(v) * X) / (ZRat(q(2)) * X * X);
            c.C_clear = ZRat(q(2)) * X * X;
            c.U_curve = ZRat(v * v) * X * X - ZRat(q(2) * t * (v + q(2) * u1)) * X + ZRat(t * t);
            PRat bb = pv(P_b);
            c.half_shift = ZRat(bb) * X.inv();
            break;
        }
        case CurveId::gbe: {
            ZRat xx = ZRat(t) * (ZRat(q(1)) + ZRat(u) * z * z) / z;
            ZRat yy = ZRat(u * u) * z * z * z / (ZRat(t) * (ZRat(q(1)) + ZRat(u) * z * z));
            c = build_from_xy(id, xx, yy);
            c.P_plus = {PRat()};
            c.mu = {q(-1)};
            c.P_all = {CPoint(PRat()), CPoint()};
            c.S_inv = ZRat(u) / X - X / ZRat(q(2) * t * t);
            c.C_clear = ZRat(q(2) * t * t);
            c.U_curve = X * X - ZRat(q(4) * t * t * u);
            c.half_shift = ZRat();
            break;
        }
    }

    if (!bindings.empty()) {
        auto sub_prat = [&](const PRat& f) {
            PRat r = f;
            for (auto& [p, val] : bindings) r = r.subst(p, val);
            return r;
        };
        auto sub_simple = [&](const ZRat& f) {
            ZPoly n;
            for (auto& tm : f.num().terms()) n += ZPoly::monomial(tm.first, sub_prat(tm.second));
            ZRat r(n);
            for (auto& fac : f.den_factors()) {
                ZPoly g;
                for (auto& tm : fac.first.terms()) g += ZPoly::monomial(tm.first, sub_prat(tm.second));
                if (g.is_zero()) throw std::runtime_error("catalog: binding degenerates curve");
                r = r / ZRat(g).pow(fac.second);
            }
            return r;
        };
        c.x = sub_simple(c.x);
        c.y = sub_simple(c.y);
        c.sigma = sub_simple(c.sigma);
        c.ytilde = sub_simple(c.ytilde);
        c.xprime = sub_simple(c.xprime);
        c.S_inv = sub_simple(c.S_inv);
        c.C_clear = sub_simple(c.C_clear);
        c.U_curve = sub_simple(c.U_curve);
        c.half_shift = sub_simple(c.half_shift);
        for (auto& p : c.P_plus) p = sub_prat(p);
        for (auto& m : c.mu) m = sub_prat(m);
        for (auto& pt : c.P_all)
            if (pt) pt = CPoint(sub_prat(*pt));
        ZPoly rp;
        for (auto& tm : c.ram_poly.terms()) rp += ZPoly::monomial(tm.first, sub_prat(tm.second));
        c.ram_poly = rp;
    }
    return c;
}

std::map<int, BigQ> random_generic_binding(CurveId id, Rng& rng) {
    for (int attempt = 0; attempt < 400; ++attempt) {
        std::map<int, BigQ> b;
        for (int p : {P_u1, P_u2, P_v, P_t, P_u, P_gamma, P_delta}) b[p] = rng.small_fraction(7, 4);
        try {
            SpectralCurve c = catalog_curve(id, b);
            validate_curve(c);
            return b;
        } catch (const std::exception&) {
            continue;
        }
    }
    throw std::runtime_error("random_generic_binding: no generic tuple found");
}

void validate_curve(const SpectralCurve& c) {
    ZRat xs = c.x.subst_rat(0, c.sigma);
    if (!(xs - c.x).is_zero()) throw std::runtime_error("curve: x o sigma != x");
    ZRat ss = c.sigma.subst_rat(0, c.sigma);
    if (!(ss - zv(0)).is_zero()) throw std::runtime_error("curve: sigma not an involution");
    if ((c.sigma - zv(0)).is_zero()) throw std::runtime_error("curve: sigma is the identity");
    ZRat lhs = (c.compose_x(c.C_clear, 0) * c.ytilde).pow(2);
    ZRat rhs = c.compose_x(c.U_curve, 0);
    if (!(lhs - rhs).is_zero()) throw std::runtime_error("curve: curve equation fails");
    ZRat yt = c.y + c.compose_x(c.S_inv, 0);
    if (!(yt - c.ytilde).is_zero()) throw std::runtime_error("curve: invariant shift mismatch");
    for (size_t i = 0; i < c.P_all.size(); ++i)
        for (size_t j = i + 1; j < c.P_all.size(); ++j)
            if (same_point(c.P_all[i], c.P_all[j])) throw std::runtime_error("curve: colliding catalog points");
    ZRat anti = c.ytilde * c.xprime;
    ZPoly den = anti.den_expanded();
    for (auto& p : c.P_plus) {
        if (ZRat(c.ram_poly).subst_const(0, p).is_zero())
            throw std::runtime_error("curve: P_+ point is a ramification point");
        bool pole = ZRat(den).subst_const(0, p).is_zero();
        bool zero = false;
        if (!pole) zero = anti.subst_const(0, p).is_zero();
        if (!pole && !zero) throw std::runtime_error("curve: P_+ point not in the zero/pole set");
    }
    if (c.mu.size() != c.P_plus.size()) throw std::runtime_error("curve: mu/P_+ size mismatch");
}

} // namespace refrec
