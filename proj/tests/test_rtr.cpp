#include "doctest.h"

#include "refrec/numeval.hpp"
#include "refrec/rtr.hpp"

using namespace refrec;

namespace {

ZRat zv(int i) { return ZRat::var(i); }

std::map<int, BigQ> fixed_binding() {
    // a generic small-height tuple for the main-family curves
    return {{P_u1, BigQ(2)},     {P_u2, BigQ(3, 2)}, {P_v, BigQ(5)}, {P_t, BigQ(1, 3)},
            {P_u, BigQ(2, 3)},   {P_gamma, BigQ(2)}, {P_delta, BigQ(3)}};
}

} // namespace

TEST_CASE("half-genus loop equation on the main curve") {
    // 2 (ytilde x') W_{1/2,1} + b x' ytilde' = -b v (x')^2 / (2 x (t+x))
    SpectralCurve m = catalog_curve(CurveId::main_w);
    ZRat lhs = ZRat(PRat(BigQ(2))) * m.ytilde * m.xprime * m.w_half(0) +
               ZRat(PRat::var(P_b)) * m.xprime * m.ytilde.deriv(0);
    ZRat rhs = ZRat(-PRat::var(P_b) * PRat::var(P_v)) * m.xprime * m.xprime /
               (ZRat(PRat(BigQ(2))) * m.x * (ZRat(PRat::var(P_t)) + m.x));
    CHECK((lhs - rhs).is_zero());
}

TEST_CASE("leading disc coefficients on the symbolic main curve") {
    SpectralCurve m = catalog_curve(CurveId::main_w);
    CorrelatorTable tbl(m);
    // F_{0,1}[1] = t u1 u2 / v
    PRat expect = PRat::var(P_t) * PRat::var(P_u1) * PRat::var(P_u2) / PRat::var(P_v);
    CHECK(tbl.fgn(0, {1}) == expect);
    // F_{1/2,1}[1] = 0 (the shifted expansion has no first coefficient)
    CHECK(tbl.fgn(1, {1}).is_zero());
    // F_{1/2,1}[mu] vanishes at b = 0
    PRat f2 = tbl.fgn(1, {2});
    CHECK(f2.subst(P_b, BigQ(0)).is_zero());
}

TEST_CASE("gbe: F_{0,2}[1,1] vanishes") {
    CorrelatorTable tbl(catalog_curve(CurveId::gbe));
    CHECK(tbl.fgn(0, {1, 1}).is_zero());
    // and the degree-two coefficient of the disc is t^2 u^2 at genus 0
    PRat f = tbl.fgn(0, {2});
    PRat expect = PRat::var(P_t).pow(2) * PRat::var(P_u).pow(2);
    CHECK(f == expect);
}

TEST_CASE("correlator structure checks at a numeric tuple") {
    SpectralCurve m = catalog_curve(CurveId::main_w, fixed_binding());
    validate_curve(m);
    CorrelatorTable tbl(m);
    for (auto [g2, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 2}, {2, 1}, {0, 4}, {1, 3}, {2, 2}, {3, 1}}) {
        CAPTURE(g2);
        CAPTURE(n);
        auto rep = tbl.check_structure(g2, n);
        CHECK(rep.ok());
        if (!rep.ok()) MESSAGE(rep.detail);
    }
}

TEST_CASE("disc expansion routes agree (series reversion vs residues)") {
    SpectralCurve m = catalog_curve(CurveId::main_w, fixed_binding());
    CorrelatorTable tbl(m);
    const int K = 3;
    for (auto [g2, n] : std::vector<std::pair<int, int>>{{0, 1}, {1, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 1}}) {
        CAPTURE(g2);
        CAPTURE(n);
        auto table = tbl.disc_expand(g2, n, K);
        for (auto& [mu, val] : table) {
            CAPTURE(mu[0]);
            PRat viaf = tbl.fgn(g2, mu);
            CHECK(viaf == val);
        }
    }
}

TEST_CASE("F table is symmetric under reordering of indices") {
    SpectralCurve m = catalog_curve(CurveId::main_w, fixed_binding());
    CorrelatorTable tbl(m);
    CHECK(tbl.fgn(0, {1, 2, 3}) == tbl.fgn(0, {3, 2, 1}));
    CHECK(tbl.fgn(1, {2, 1}) == tbl.fgn(1, {1, 2}));
}

TEST_CASE("positive-contour form agrees with the complementary contour numerically") {
    // omega_{0,3}(z0,z1,z2) computed exactly from residues at P_+ and the marked
    // points must match minus the numeric residues at the ramification points,
    // the involution images, and infinity. Checked at b = 0 and at generic b.
    auto bind = fixed_binding();
    SpectralCurve m = catalog_curve(CurveId::main_w, bind);
    CorrelatorTable tbl(m);
    const ZRat& W = tbl.omega(0, 3);

    std::array<double, kNumParams> par{};
    for (auto& [p, q] : bind) par[p] = to_double(q);
    par[P_b] = 0.0;
    par[P_s] = 1.0;

    // Rec_{0,3}(z; z1, z2) in slots: z -> 3, z1 -> 1, z2 -> 2
    ZRat w02_31 = m.w02(3, 1), w02_32 = m.w02(3, 2);
    ZRat xx31 = m.xprime_at(3) * m.xprime_at(1) * (m.x_at(3) - m.x_at(1)).pow(-2);
    ZRat xx32 = m.xprime_at(3) * m.xprime_at(2) * (m.x_at(3) - m.x_at(2)).pow(-2);
    ZRat rec = ZRat(PRat(BigQ(2))) * w02_31 * w02_32 + w02_32 * xx31 + w02_31 * xx32;
    ZRat eta = (zv(0) - zv(3)).inv() - (zv(0) - m.sigma_at(3)).inv();
    ZRat integrand = eta / (ZRat(PRat(BigQ(2))) * m.ytilde_at(3) * m.xprime_at(3)) * rec;

    std::array<CD, kMaxZ> zpt{};
    zpt[0] = CD(0.37, 0.11);
    zpt[1] = CD(-0.62, 0.23);
    zpt[2] = CD(1.45, -0.4);

    auto f = [&](CD z) {
        auto zz = zpt;
        zz[3] = z;
        return eval_cd(integrand, par, zz);
    };

    // complementary-contour points: ramification, sigma images, infinity
    std::vector<CD> neg;
    {
        auto cs = ZRat(m.ram_poly).num().coeffs_in(0);
        double a = eval_cd(cs.size() > 2 ? cs[2].constant_value() : PRat(), par).real();
        double b2 = eval_cd(cs.size() > 1 ? cs[1].constant_value() : PRat(), par).real();
        double c = eval_cd(cs[0].constant_value(), par).real();
        CD disc = std::sqrt(CD(b2 * b2 - 4 * a * c, 0));
        neg.push_back((-b2 + disc) / (2 * a));
        neg.push_back((-b2 - disc) / (2 * a));
        for (auto& p : m.P_plus) {
            CPoint sp = m.sigma_point(CPoint(p));
            if (sp) neg.push_back(eval_cd(*sp, par));
        }
        for (int j : {1, 2}) {
            ZRat sj = m.sigma_at(j);
            std::array<CD, kMaxZ> zz = zpt;
            neg.push_back(eval_cd(sj, par, zz));
        }
    }
    CD total = 0.0;
    for (CD p : neg) total += contour_residue(f, p, 2e-3);
    // residue at infinity
    auto finf = [&](CD w) {
        CD z = 1.0 / w;
        return -f(z) / (w * w);
    };
    total += contour_residue(finf, CD(0, 0), 1e-3);

    std::array<CD, kMaxZ> zz = zpt;
    CD exact = eval_cd(W, par, zz);
    CHECK(std::abs(exact + total) < 1e-6 * (1.0 + std::abs(exact)));

    // repeat at generic b (the contour identity holds for every b once the
    // half-genus correlators enter; use omega_{1/2,2} which has a b-term)
    par[P_b] = 0.75;
    const ZRat& Wh = tbl.omega(1, 2);
    ZRat wh3 = m.w_half(3);
    ZRat rec_h = ZRat(PRat(BigQ(2))) * wh3 * m.w02(3, 1) + wh3 * xx31 +
                 ZRat(PRat::var(P_b)) * (m.w02(3, 1) / m.xprime_at(3)).deriv(3);
    ZRat integrand_h = eta / (ZRat(PRat(BigQ(2))) * m.ytilde_at(3) * m.xprime_at(3)) * rec_h;
    auto fh = [&](CD z) {
        auto zzz = zpt;
        zzz[3] = z;
        return eval_cd(integrand_h, par, zzz);
    };
    std::vector<CD> neg_h = neg;
    neg_h.pop_back(); // drop sigma(z2); omega_{1/2,2} has one marked point
    CD total_h = 0.0;
    for (CD p : neg_h) total_h += contour_residue(fh, p, 2e-3);
    auto finf_h = [&](CD w) {
        CD z = 1.0 / w;
        return -fh(z) / (w * w);
    };
    total_h += contour_residue(finf_h, CD(0, 0), 1e-3);
    CD exact_h = eval_cd(Wh, par, zz);
    CHECK(std::abs(exact_h + total_h) < 1e-6 * (1.0 + std::abs(exact_h)));
}
