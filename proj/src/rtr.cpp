#include "refrec/rtr.hpp"

#include <algorithm>
#include <functional>

namespace refrec {

namespace {

ZRat zv(int i) { return ZRat::var(i); }

// multiset binomial: prod_v C(mult_M(v), mult_S(v))
BigQ multiset_binomial(const std::vector<int>& M, const std::vector<int>& S) {
    auto count = [](const std::vector<int>& v, int x) { return (int)std::count(v.begin(), v.end(), x); };
    std::vector<int> distinct = M;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    auto binom = [](int n, int k) {
        BigZ r(1);
        for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
        return BigQ(r);
    };
    BigQ c(1);
    for (int v : distinct) c *= binom(count(M, v), count(S, v));
    return c;
}

void submultisets(const std::vector<int>& M, std::vector<std::vector<int>>& out) {
    std::vector<int> distinct = M;
    std::sort(distinct.begin(), distinct.end(), std::greater<>());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> mult;
    for (int v : distinct) mult.push_back((int)std::count(M.begin(), M.end(), v));
    std::vector<int> pick(distinct.size(), 0);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == distinct.size()) {
            std::vector<int> s;
            for (size_t j = 0; j < distinct.size(); ++j)
                for (int k = 0; k < pick[j]; ++k) s.push_back(distinct[j]);
            out.push_back(std::move(s));
            return;
        }
        for (pick[i] = 0; pick[i] <= mult[i]; ++pick[i]) rec(i + 1);
        pick[i] = 0;
    };
    rec(0);
}

std::vector<int> multiset_minus(const std::vector<int>& M, const std::vector<int>& S) {
    std::vector<int> r = M;
    for (int x : S) r.erase(std::find(r.begin(), r.end(), x));
    return r;
}

std::vector<int> remove_one(const std::vector<int>& M, int x) {
    std::vector<int> r = M;
    r.erase(std::find(r.begin(), r.end(), x));
    return r;
}

} // namespace

CorrelatorTable::CorrelatorTable(SpectralCurve curve, TableOptions opt)
    : curve_(std::move(curve)), opt_(opt) {}

ZRat CorrelatorTable::xx_kernel(int a, int b) const {
    return curve_.xprime_at(a) * curve_.xprime_at(b) * (curve_.x_at(a) - curve_.x_at(b)).pow(-2);
}

ZRat CorrelatorTable::kernel_K(int slotT) const {
    ZRat eta = (zv(0) - zv(slotT)).inv() - (zv(0) - curve_.sigma_at(slotT)).inv();
    return eta / (ZRat(PRat(BigQ(2))) * curve_.ytilde_at(slotT) * curve_.xprime_at(slotT));
}

const ZRat& CorrelatorTable::e_kernel(int mu) {
    auto it = ekernel_.find(mu);
    if (it != ekernel_.end()) return it->second;
    // disc extraction of the xx kernel over its second slot, z-side symbolic in slot 6
    const int zslot = 6, wslot = 7;
    ZRat ker = curve_.xprime_at(zslot) * curve_.xprime_at(wslot) *
               (curve_.x_at(zslot) - curve_.x_at(wslot)).pow(-2);
    ZRat val = ZRat() - residue_at(curve_.x_at(wslot).pow(mu) * ker, wslot, PRat());
    return ekernel_.emplace(mu, std::move(val)).first->second;
}

const ZRat& CorrelatorTable::fetch(int g2, int nsym, std::vector<int> tail) {
    std::sort(tail.begin(), tail.end(), std::greater<>());
    return wf(g2, nsym, std::move(tail));
}

ZRat CorrelatorTable::fetch_as(int g2, int nsym, const std::vector<int>& tail,
                               const std::vector<int>& arg_slots) {
    ZRat f = fetch(g2, nsym, tail);
    if ((int)arg_slots.size() != nsym) throw std::runtime_error("fetch_as: arity mismatch");
    // slot 0 and any temp targets (>= nsym) move first; temp targets may merge
    f = f.rename(0, arg_slots[0]);
    std::vector<int> rest;
    for (int j = 1; j < nsym; ++j) {
        if (arg_slots[j] >= nsym) {
            f = f.rename(j, arg_slots[j]);
        } else {
            rest.push_back(j);
        }
    }
    bool down = true, up = true;
    for (int j : rest) {
        if (arg_slots[j] > j) down = false;
        if (arg_slots[j] < j) up = false;
    }
    if (down) {
        for (int j : rest)
            if (arg_slots[j] != j) f = f.rename(j, arg_slots[j]);
    } else if (up) {
        for (auto it = rest.rbegin(); it != rest.rend(); ++it)
            if (arg_slots[*it] != *it) f = f.rename(*it, arg_slots[*it]);
    } else {
        throw std::runtime_error("fetch_as: unsupported slot pattern");
    }
    return f;
}

const ZRat& CorrelatorTable::omega(int g2, int n) { return wf(g2, n, {}); }

const ZRat& CorrelatorTable::wf(int g2, int nsym, std::vector<int> tail) {
    std::sort(tail.begin(), tail.end(), std::greater<>());
    WfKey key{g2, nsym, tail};
    {
        std::lock_guard<std::recursive_mutex> lk(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) {
            ++hits_;
            return it->second;
        }
    }
    ZRat val = compute(key);
    std::lock_guard<std::recursive_mutex> lk(mu_);
    auto [it, fresh] = memo_.emplace(key, std::move(val));
    return it->second;
}

ZRat CorrelatorTable::compute(const WfKey& key) {
    const int g2 = key.g2, nsym = key.nsym;
    const auto& M = key.tail;
    const int chi = g2 - 2 + nsym + (int)M.size();

    if (g2 == 0 && nsym == 1 && M.empty())
        throw std::runtime_error("wf: omega_{0,1} is handled inline, not stored");

    if (chi <= 0) {
        if (g2 == 0 && nsym == 2 && M.empty()) return curve_.w02(0, 1);
        if (g2 == 1 && nsym == 1 && M.empty()) return curve_.w_half(0);
        if (g2 == 0 && nsym == 1 && M.size() == 1) {
            ZRat w = curve_.w02(0, 1);
            return ZRat() - residue_at(curve_.x_at(1).pow(M[0]) * w, 1, PRat());
        }
        throw std::runtime_error("wf: no such unstable entry");
    }

    const int n = nsym - 1;
    const int T = nsym;
    const int U = nsym + 1;
    if (U >= kMaxZ) throw std::runtime_error("wf: out of variable slots");

    std::vector<int> argsT(nsym);
    argsT[0] = T;
    for (int j = 1; j < nsym; ++j) argsT[j] = j;

    ZRat rec;
    if (g2 >= 2) {
        std::vector<int> args(nsym + 1);
        args[0] = T;
        args[1] = T;
        for (int j = 2; j <= nsym; ++j) args[j] = j - 1;
        rec += fetch_as(g2 - 2, nsym + 1, M, args);
    }
    {
        std::vector<std::vector<int>> subsA;
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<int> A;
            for (int j = 0; j < n; ++j)
                if (mask & (1 << j)) A.push_back(j + 1);
            subsA.push_back(std::move(A));
        }
        std::vector<std::vector<int>> subsM;
        submultisets(M, subsM);
        for (int g2a = 0; g2a <= g2; ++g2a) {
            int g2b = g2 - g2a;
            for (auto& A : subsA) {
                std::vector<int> B;
                for (int j = 1; j <= n; ++j)
                    if (std::find(A.begin(), A.end(), j) == A.end()) B.push_back(j);
                for (auto& M1 : subsM) {
                    std::vector<int> M2 = multiset_minus(M, M1);
                    bool a_full = (g2a == g2 && (int)A.size() == n && M1.size() == M.size());
                    bool b_full = (g2b == g2 && (int)B.size() == n && M2.size() == M.size());
                    if (a_full || b_full) continue;
                    std::vector<int> slotsA{T}, slotsB{T};
                    for (int j : A) slotsA.push_back(j);
                    for (int j : B) slotsB.push_back(j);
                    ZRat fa = fetch_as(g2a, 1 + (int)A.size(), M1, slotsA);
                    ZRat fb = fetch_as(g2b, 1 + (int)B.size(), M2, slotsB);
                    rec += fa * fb * PRat(multiset_binomial(M, M1));
                }
            }
        }
    }
    for (int s = 1; s <= n; ++s) {
        std::vector<int> slots{T};
        for (int j = 1; j <= n; ++j)
            if (j != s) slots.push_back(j);
        ZRat f = fetch_as(g2, nsym - 1, M, slots);
        rec += f * xx_kernel(T, s);
    }
    if (g2 >= 1) {
        ZRat f;
        if (g2 - 1 == 0 && nsym == 1 && M.empty())
            f = curve_.ytilde_at(T) * curve_.xprime_at(T); // anti-invariant omega_{0,1}
        else
            f = fetch_as(g2 - 1, nsym, M, argsT);
        rec += ZRat(PRat::var(P_b)) * (f / curve_.xprime_at(T)).deriv(T);
    }

    ZRat K = kernel_K(T);
    ZRat integrand = K * rec;

    std::vector<ZRat> points;
    for (auto& p : curve_.P_plus) points.push_back(ZRat(p));
    points.push_back(zv(0));
    for (int s = 1; s <= n; ++s) points.push_back(zv(s));

    ZRat result;
    for (auto& p : points) result += residue_at(integrand, T, p);

    std::vector<int> distinct = M;
    std::sort(distinct.begin(), distinct.end(), std::greater<>());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int mu : distinct) {
        PRat m(BigQ((long)std::count(M.begin(), M.end(), mu)));
        ZRat f = fetch_as(g2, nsym, remove_one(M, mu), argsT);
        // residues away from the expansion point commute with the extraction
        ZRat integ = K * f * e_kernel(mu).rename(6, T);
        for (auto& p : points) {
            if (p.is_constant() && p.constant_value().is_zero()) continue;
            result += ZRat(m) * residue_at(integ, T, p);
        }
        // at the expansion point the z-residue is taken before the extraction
        ZRat R = residue_at(K * f * xx_kernel(T, U), T, PRat());
        result -= ZRat(m) * residue_at(curve_.x_at(U).pow(mu) * R, U, PRat());
        // pole of the recursion variable at the expanded point itself
        std::vector<int> argsU(nsym);
        argsU[0] = U;
        for (int j = 1; j < nsym; ++j) argsU[j] = j;
        ZRat fU = fetch_as(g2, nsym, remove_one(M, mu), argsU);
        ZRat etaU = (zv(0) - zv(U)).inv() - (zv(0) - curve_.sigma_at(U)).inv();
        ZRat KU = etaU / (ZRat(PRat(BigQ(2))) * curve_.ytilde_at(U) * curve_.xprime_at(U));
        ZRat piece = curve_.x_at(U).pow(mu - 1) * curve_.xprime_at(U) * KU * fU;
        result += ZRat(m * PRat(BigQ(mu))) * residue_at(piece, U, PRat());
    }

    result.reduce();
    return result;
}

PRat CorrelatorTable::fgn(int g2, const std::vector<int>& mu_in) {
    std::vector<int> mu = mu_in;
    std::sort(mu.begin(), mu.end(), std::greater<>());
    int n = (int)mu.size();
    ZRat f;
    if (g2 == 0 && n == 1) {
        f = curve_.w01(0);
    } else if (g2 == 1 && n == 1) {
        f = curve_.w_half(0) - curve_.half_shift_z(0);
    } else {
        std::vector<int> tail(mu.begin() + 1, mu.end());
        f = fetch(g2, 1, tail);
    }
    ZRat val = ZRat() - residue_at(curve_.x_at(0).pow(mu[0]) * f, 0, PRat());
    if (val.is_zero()) return PRat();
    return val.constant_value();
}

PRat extract_disc(const SpectralCurve& c, const ZRat& f, int zi, int mu) {
    ZRat val = ZRat() - residue_at(c.x_at(zi).pow(mu) * f, zi, PRat());
    if (val.is_zero()) return PRat();
    return val.constant_value();
}

std::map<std::vector<int>, PRat> CorrelatorTable::disc_expand(int g2, int n, int K) {
    WSeries<ZRat> xs = laurent_at(curve_.x, 0, ZRat(PRat()), -1, K + 2);
    WSeries<PRat> x_ser;
    x_ser.lo = xs.lo;
    for (auto& cf : xs.c) x_ser.c.push_back(cf.is_zero() ? PRat() : cf.constant_value());
    WSeries<PRat> zs = ws_reversion(x_ser, K + 1);
    WSeries<PRat> zsp;
    zsp.lo = zs.lo - 1;
    for (int k = zs.lo; k <= zs.hi(); ++k) zsp.c.push_back(zs.coeff(k) * PRat(BigQ(k)));

    ZRat base;
    if (g2 == 0 && n == 1)
        base = curve_.w01(0);
    else if (g2 == 1 && n == 1)
        base = curve_.w_half(0) - curve_.half_shift_z(0);
    else if (g2 == 0 && n == 2)
        base = curve_.w02(0, 1);
    else
        base = omega(g2, n);

    auto lift = [](const WSeries<PRat>& s) {
        WSeries<ZRat> r;
        r.lo = s.lo;
        for (auto& cf : s.c) r.c.push_back(ZRat(cf));
        return r;
    };
    WSeries<ZRat> zser = lift(zs), zder = lift(zsp);

    struct Entry {
        std::vector<int> mu;
        ZRat f;
    };
    std::vector<Entry> cur{{{}, base}};
    for (int slot = n - 1; slot >= 0; --slot) {
        std::vector<Entry> next;
        for (auto& e : cur) {
            int maxord = K + 2;
            auto comp_poly = [&](const ZPoly& p) {
                auto cs = p.coeffs_in(slot);
                WSeries<ZRat> acc;
                for (int d = (int)cs.size() - 1; d >= 0; --d) {
                    acc = ws_mul(acc, zser, maxord);
                    if (!cs[d].is_zero()) acc = ws_add(acc, WSeries<ZRat>::monomial(ZRat(cs[d]), 0));
                }
                return acc;
            };
            WSeries<ZRat> ser = comp_poly(e.f.num());
            for (auto& fac : e.f.den_factors()) {
                WSeries<ZRat> fs = comp_poly(fac.first);
                for (int i = 0; i < fac.second; ++i) ser = ws_div(ser, fs, maxord);
            }
            ser = ws_mul(ser, zder, K - 1);
            for (int mu = 1; mu <= K; ++mu) {
                Entry ne;
                ne.mu = e.mu;
                ne.mu.insert(ne.mu.begin(), mu);
                ne.f = ZRat() - ser.coeff(mu - 1);
                next.push_back(std::move(ne));
            }
        }
        cur = std::move(next);
    }
    std::map<std::vector<int>, PRat> out;
    for (auto& e : cur) out[e.mu] = e.f.is_zero() ? PRat() : e.f.constant_value();
    return out;
}

StructureReport CorrelatorTable::check_structure(int g2, int n) {
    StructureReport rep;
    const ZRat& W = omega(g2, n);
    for (int i = 0; i + 1 < n; ++i) {
        ZRat sw = W.rename(i, 6).rename(i + 1, i).rename(6, i + 1);
        if (!(sw - W).is_zero()) {
            rep.symmetric = false;
            rep.detail += "asymmetric in (" + std::to_string(i) + "," + std::to_string(i + 1) + "); ";
        }
    }
    int bdeg = 0;
    bool den_b = false;
    for (auto& t : W.num().terms()) {
        bdeg = std::max(bdeg, t.second.num().deg(P_b));
        if (t.second.den().depends_on(P_b)) den_b = true;
    }
    for (auto& f : W.den_factors())
        for (auto& t : f.first.terms())
            if (t.second.depends_on(P_b)) den_b = true;
    if (den_b || bdeg > g2) {
        rep.b_degree_ok = false;
        rep.detail += "b-degree " + std::to_string(bdeg) + " vs bound " + std::to_string(g2) + "; ";
    }
    if (g2 % 2 == 1 && !W.subst_param(P_b, BigQ(0)).is_zero()) {
        rep.b_parity_ok = false;
        rep.detail += "odd 2g but nonzero at b=0; ";
    }
    for (auto& p : curve_.P_all) {
        if (!p) continue;
        auto s = laurent_at(W, 0, ZRat(*p), -40, -1);
        if (!s.is_zero()) {
            rep.pole_locations_ok = false;
            rep.detail += "pole at P-point " + p->str() + "; ";
        }
    }
    for (int j = 1; j < n; ++j) {
        auto s = laurent_at(W, 0, zv(j), -40, -1);
        if (!s.is_zero()) {
            rep.pole_locations_ok = false;
            rep.detail += "diagonal pole z0=z" + std::to_string(j) + "; ";
        }
    }
    for (auto& p : curve_.P_plus) {
        CPoint sp = curve_.sigma_point(CPoint(p));
        if (!sp) continue;
        if (!residue_at(W, 0, ZRat(*sp)).is_zero()) {
            rep.residue_free_ok = false;
            rep.detail += "residue at image of a marked point; ";
        }
    }
    for (int j = 1; j < n; ++j) {
        if (!residue_at(W, 0, curve_.sigma_at(j)).is_zero()) {
            rep.residue_free_ok = false;
            rep.detail += "residue at sigma(z" + std::to_string(j) + "); ";
        }
    }
    return rep;
}

} // namespace refrec
