#include "doctest.h"

#include "refrec/curve.hpp"

using namespace refrec;

namespace {
ZRat zv(int i) { return ZRat::var(i); }
PRat pv(int p) { return PRat::var(p); }
} // namespace

TEST_CASE("involution closed forms") {
    // x = z^2 -> sigma = -z
    ZRat x2 = zv(0) * zv(0);
    CHECK((involution_of(x2) + zv(0)).is_zero());
    // gbe curve: x = t(1+u z^2)/z -> sigma = 1/(u z)
    SpectralCurve g = catalog_curve(CurveId::gbe);
    ZRat expect = (ZRat(pv(P_u)) * zv(0)).inv();
    CHECK((g.sigma - expect).is_zero());
}

TEST_CASE("catalog curves satisfy the involution and curve identities") {
    for (CurveId id : {CurveId::main_w, CurveId::bipartite, CurveId::monotone, CurveId::mixed, CurveId::gbe,
                       CurveId::jbe, CurveId::lbe}) {
        CAPTURE(curve_id_name(id));
        SpectralCurve c = catalog_curve(id);
        validate_curve(c); // x o sigma = x, sigma^2 = id, curve equation, P_+ membership
    }
}

TEST_CASE("catalog curves validate at 5 random bindings") {
    Rng rng(21);
    for (CurveId id : {CurveId::main_w, CurveId::gbe, CurveId::jbe}) {
        for (int k = 0; k < 5; ++k) {
            auto b = random_generic_binding(id, rng);
            SpectralCurve c = catalog_curve(id, b);
            validate_curve(c);
        }
    }
}

TEST_CASE("catalog data matches the named entries") {
    SpectralCurve m = catalog_curve(CurveId::main_w);
    PRat u1 = pv(P_u1), u2 = pv(P_u2), v = pv(P_v);
    CHECK(m.P_plus.size() == 3);
    CHECK(m.P_plus[0] == PRat());
    CHECK(m.P_plus[1] == -u1);
    CHECK(m.P_plus[2] == -(u1 * u2) / (u1 + u2 + v));
    CHECK(m.mu[0] == PRat(BigQ(-1)));
    CHECK(m.mu[1].is_zero());
    CHECK(m.mu[2].is_zero());

    SpectralCurve g = catalog_curve(CurveId::gbe);
    CHECK(g.P_plus.size() == 1);
    CHECK(g.P_plus[0].is_zero());
    CHECK(g.mu[0] == PRat(BigQ(-1)));

    // Jacobi-ensemble curve: x(z) = t(1+z)(gamma+z)/(z(delta+gamma+z))
    SpectralCurve j = catalog_curve(CurveId::jbe);
    PRat gam = pv(P_gamma), del = pv(P_delta), t = pv(P_t);
    ZRat z = zv(0);
    ZRat xj = ZRat(t) * (z + ZRat(PRat(BigQ(1)))) * (z + ZRat(gam)) / (z * (ZRat(del + gam) + z));
    CHECK((j.x - xj).is_zero());
    CHECK(j.P_plus.size() == 3);
    CHECK(j.P_plus[1] == PRat(BigQ(-1)));
    // third marked point: the finite preimage of x = t, namely gamma/(delta-1)
    CHECK(j.P_plus[2] == gam / (del - PRat(BigQ(1))));
    ZRat xval = j.x.subst_const(0, j.P_plus[2]);
    CHECK(xval.constant_value() == t);
}

TEST_CASE("eta has residue +1 at c and -1 at sigma(c)") {
    SpectralCurve m = catalog_curve(CurveId::main_w);
    CPoint c = CPoint(pv(P_u2) * PRat(BigQ(1, 3))); // generic point
    ZRat e = m.eta(c, 0);
    CHECK(residue_at(e, 0, *c) == ZRat(PRat(BigQ(1))));
    CPoint sc = m.sigma_point(c);
    REQUIRE(sc.has_value());
    CHECK(residue_at(e, 0, *sc) == ZRat(PRat(BigQ(-1))));
}

TEST_CASE("gbe: sigma(0) is infinite so eta^0 = dz/z") {
    SpectralCurve g = catalog_curve(CurveId::gbe);
    ZRat e = g.eta(CPoint(PRat()), 0);
    CHECK((e - zv(0).inv()).is_zero());
}

TEST_CASE("eta^0 identity on the main curve: eta^0 * 2 ytilde x (t+x) / x' = v") {
    SpectralCurve m = catalog_curve(CurveId::main_w);
    ZRat x = m.x;
    ZRat lhs = m.eta(CPoint(PRat()), 0) * PRat(BigQ(2)) * m.ytilde * x * (ZRat(pv(P_t)) + x) / m.xprime;
    CHECK((lhs - ZRat(pv(P_v))).is_zero());
    // residue of the packaged differential at z=0 is +1
    ZRat f = ZRat(pv(P_v)) * m.xprime / (PRat(BigQ(2)) * m.ytilde * x * (ZRat(pv(P_t)) + x));
    CHECK(residue_at(f, 0, PRat()) == ZRat(PRat(BigQ(1))));
}

TEST_CASE("unstable correlators") {
    SpectralCurve m = catalog_curve(CurveId::main_w);
    // omega_{1/2,1} = (b/2)(-dytilde/ytilde - eta^0) on the main curve
    ZRat expect = (ZRat() - m.ytilde.deriv(0) / m.ytilde - m.eta(CPoint(PRat()), 0)) *
                  PRat(MPoly::var(P_b), MPoly(BigQ(2)));
    CHECK((m.w_half(0) - expect).is_zero());
    // b -> 0 kills omega_{1/2,1}
    CHECK(m.w_half(0).subst_param(P_b, BigQ(0)).is_zero());
}

TEST_CASE("bidifferential relation B(z1,z2)+B(z1,sigma(z2)) = dx dx/(x1-x2)^2") {
    for (CurveId id : {CurveId::gbe, CurveId::main_w}) {
        SpectralCurve c = catalog_curve(id);
        ZRat B12 = (zv(0) - zv(1)).pow(-2);
        ZRat Bs = ZRat() - c.w02(0, 1); // B(z1, sigma(z2)) = -omega_{0,2}
        ZRat rhs = c.xprime_at(0) * c.xprime_at(1) * (c.x_at(0) - c.x_at(1)).pow(-2);
        CHECK((B12 + Bs - rhs).is_zero());
    }
}

TEST_CASE("kernel identity on the main curve") {
    SpectralCurve m = catalog_curve(CurveId::main_w);
    PRat t = pv(P_t);
    ZRat x = m.x_at(0), x1 = m.x_at(1);
    // eta^{z1}(z)/dz = 1/(z - z1) - 1/(z - sigma(z1))
    ZRat s1 = m.sigma_at(1);
    ZRat etaz1 = (zv(0) - zv(1)).inv() - (zv(0) - s1).inv();
    ZRat lhs = m.ytilde_at(0) * m.xprime_at(0) * etaz1 / (m.ytilde_at(1) * m.xprime_at(1));
    ZRat rhs = (x1 * (ZRat(t) + x1)) / ((x - x1) * x * (ZRat(t) + x)) * m.xprime_at(0).pow(2) /
               m.xprime_at(1);
    CHECK((lhs - rhs).is_zero());
}

TEST_CASE("gbe curve equation ytilde^2 = x^2/(4 t^4) - u/t^2") {
    SpectralCurve g = catalog_curve(CurveId::gbe);
    PRat t = pv(P_t), u = pv(P_u);
    ZRat rhs = g.x * g.x * PRat(MPoly(BigQ(1)), MPoly::var(P_t, 4) * BigQ(4)) - ZRat(u / (t * t));
    CHECK((g.ytilde * g.ytilde - rhs).is_zero());
}
