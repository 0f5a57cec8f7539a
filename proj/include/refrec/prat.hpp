#pragma once

#include "refrec/params.hpp"

#include <optional>
#include <stdexcept>

namespace refrec {

// Exact rational function in the parameter alphabet. Denominator nonzero,
// normalized by content; full gcd is applied only in the univariate case.
// Equality is decided by cross-multiplication.
class PRat {
  public:
    PRat() : num_(), den_(BigQ(1)) {}
    PRat(const BigQ& q) : num_(q), den_(BigQ(1)) {}
    PRat(long q) : num_(BigQ(q)), den_(BigQ(1)) {}
    PRat(const MPoly& n) : num_(n), den_(BigQ(1)) {}
    PRat(MPoly n, MPoly d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw std::runtime_error("PRat: zero denominator");
        normalize();
    }

    static PRat var(int p) { return PRat(MPoly::var(p)); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    BigQ constant_value() const { return num_.constant_value() / den_.constant_value(); }
    bool depends_on(int p) const { return num_.depends_on(p) || den_.depends_on(p); }

    PRat operator-() const {
        PRat r = *this;
        r.num_ = -r.num_;
        return r;
    }
    PRat operator+(const PRat& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        if (den_ == o.den_) return PRat(num_ + o.num_, den_);
        return PRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    PRat operator-(const PRat& o) const { return *this + (-o); }
    PRat operator*(const PRat& o) const {
        if (is_zero() || o.is_zero()) return PRat();
        return PRat(num_ * o.num_, den_ * o.den_);
    }
    PRat operator/(const PRat& o) const {
        if (o.is_zero()) throw std::runtime_error("PRat: division by zero");
        if (is_zero()) return PRat();
        return PRat(num_ * o.den_, den_ * o.num_);
    }
    PRat& operator+=(const PRat& o) { return *this = *this + o; }
    PRat& operator-=(const PRat& o) { return *this = *this - o; }
    PRat& operator*=(const PRat& o) { return *this = *this * o; }
    PRat& operator/=(const PRat& o) { return *this = *this / o; }

    PRat inv() const { return PRat(BigQ(1)) / *this; }

    bool operator==(const PRat& o) const {
        if (den_ == o.den_) return num_ == o.num_;
        return (num_ * o.den_) == (o.num_ * den_);
    }
    bool operator!=(const PRat& o) const { return !(*this == o); }

    PRat pow(long e) const {
        if (e < 0) return inv().pow(-e);
        PRat r(BigQ(1)), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    // Substitute one parameter by a rational function; rejects substitutions
    // that zero the denominator.
    PRat subst(int p, const PRat& val) const {
        MPoly n, d;
        if (val.den().is_constant()) {
            MPoly vs = val.num() * (BigQ(1) / val.den().constant_value());
            n = num_.subst_poly(p, vs);
            d = den_.subst_poly(p, vs);
        } else {
            // clear val's denominator: f(A/B) = \tilde f(A,B) / B^deg
            int dn = num_.deg(p), dd = den_.deg(p);
            int dm = std::max(dn, dd);
            n = subst_cleared(num_, p, val.num(), val.den(), dm);
            d = subst_cleared(den_, p, val.num(), val.den(), dm);
        }
        if (d.is_zero()) throw std::runtime_error("PRat: substitution zeroes denominator");
        return PRat(std::move(n), std::move(d));
    }
    PRat subst(int p, const BigQ& val) const {
        MPoly d = den_.subst(p, val);
        if (d.is_zero()) throw std::runtime_error("PRat: substitution zeroes denominator");
        return PRat(num_.subst(p, val), std::move(d));
    }

    BigQ eval(const std::array<BigQ, kNumParams>& pt) const {
        BigQ d = den_.eval(pt);
        if (refrec::is_zero(d)) throw std::runtime_error("PRat: pole at evaluation point");
        return num_.eval(pt) / d;
    }

    std::string str() const {
        if (den_.is_constant() && refrec::is_one(den_.constant_value())) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

  private:
    static MPoly subst_cleared(const MPoly& f, int p, const MPoly& A, const MPoly& B, int clear_deg) {
        auto cs = f.coeffs_in(p);
        MPoly r;
        // f = sum c_k p^k  ->  sum c_k A^k B^(clear_deg-k)
        MPoly Apow(BigQ(1));
        std::vector<MPoly> Apows(cs.size());
        for (size_t k = 0; k < cs.size(); ++k) {
            Apows[k] = Apow;
            if (k + 1 < cs.size()) Apow = Apow * A;
        }
        MPoly Bpow(BigQ(1));
        for (int k = int(cs.size()) - 1; k >= 0; --k) {
            if (!cs[k].is_zero()) r += cs[k] * Apows[k] * Bpow;
            Bpow = Bpow * B;
        }
        // also multiply by B^(clear_deg - (cs.size()-1)) uniformly: done by caller symmetry
        int extra = clear_deg - (int(cs.size()) - 1);
        for (int i = 0; i < extra; ++i) r = r * B;
        return r;
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = MPoly(BigQ(1));
            return;
        }
        auto [cs_n, mono_n] = num_.content();
        auto [cs_d, mono_d] = den_.content();
        PExpo common;
        for (int i = 0; i < kNumParams; ++i) common.e[i] = std::min(mono_n.e[i], mono_d.e[i]);
        bool strip = false;
        for (int i = 0; i < kNumParams; ++i)
            if (common.e[i]) strip = true;
        if (strip) {
            num_ = num_.divide_monomial(common);
            den_ = den_.divide_monomial(common);
        }
        BigQ sc = cs_n / cs_d; // num/den scaled so den primitive-positive
        num_ = num_ * (BigQ(1) / cs_d);
        den_ = den_ * (BigQ(1) / cs_d);
        (void)sc;
        // cheap exact cancellations
        if (den_.is_constant()) return;
        if (detail::mp_maybe_divisible(num_, den_)) {
            if (auto q = num_.divide_exact(den_)) {
                num_ = *q;
                den_ = MPoly(BigQ(1));
                return;
            }
        }
        // univariate case: full gcd
        int var = -1;
        bool multi = false;
        for (int i = 0; i < kNumParams && !multi; ++i) {
            if (num_.depends_on(i) || den_.depends_on(i)) {
                if (var < 0)
                    var = i;
                else
                    multi = true;
            }
        }
        if (!multi && var >= 0) reduce_univariate(var);
    }

    void reduce_univariate(int p) {
        MPoly g = gcd_uni(num_, den_, p);
        if (g.deg(p) > 0) {
            auto qn = num_.divide_exact(g);
            auto qd = den_.divide_exact(g);
            if (qn && qd) {
                num_ = *qn;
                den_ = *qd;
            }
        }
        auto [cs_d, mono_d] = den_.content();
        num_ = num_ * (BigQ(1) / cs_d);
        den_ = den_ * (BigQ(1) / cs_d);
    }

    // univariate gcd over Q (exact Euclid with content stripping)
    static MPoly gcd_uni(MPoly a, MPoly b, int p) {
        auto prim = [&](MPoly f) {
            auto [c, m] = f.content();
            PExpo strip{};
            strip.e[p] = m.e[p];
            f = f.divide_monomial(strip);
            auto [c2, m2] = f.content();
            return f * (BigQ(1) / c2);
        };
        a = prim(a);
        b = prim(b);
        while (!b.is_zero()) {
            // pseudo-remainder of a by b in variable p
            int da = a.deg(p), db = b.deg(p);
            if (da < db) {
                std::swap(a, b);
                continue;
            }
            auto bc = b.coeffs_in(p);
            MPoly lead_b = bc[db];
            MPoly r = a;
            while (!r.is_zero() && r.deg(p) >= db) {
                auto rc = r.coeffs_in(p);
                int dr = r.deg(p);
                MPoly lead_r = rc[dr];
                // r = lead_b * r - lead_r * x^(dr-db) * b
                MPoly shift = MPoly::var(p, dr - db);
                r = lead_b * r - lead_r * shift * b;
            }
            a = b;
            b = r.is_zero() ? MPoly() : prim(r);
        }
        return a;
    }

    MPoly num_, den_;
};

inline PRat operator+(const BigQ& c, const PRat& r) { return PRat(c) + r; }
inline PRat operator*(const BigQ& c, const PRat& r) { return PRat(c) * r; }

// Laurent polynomial in s as a pair decomposition over Q[b], using
// s^2 = 1 - b s and 1/s = b + s. Used to eliminate s in favour of b.
struct SPair {
    MPoly A, B; // value = A + s*B with A,B free of s
};

// Decompose an s-polynomial (no s in denominators here) as A + s B over b.
inline SPair s_reduce(const MPoly& f) {
    auto cs = f.coeffs_in(P_s);
    // rep of s^k as (A_k, B_k), computed iteratively
    SPair acc{MPoly(), MPoly()};
    MPoly Ak(BigQ(1)), Bk; // s^0
    MPoly b = MPoly::var(P_b);
    for (size_t k = 0; k < cs.size(); ++k) {
        if (!cs[k].is_zero()) {
            acc.A += cs[k] * Ak;
            acc.B += cs[k] * Bk;
        }
        // s^{k+1} = s*(Ak + Bk s) = Bk + (Ak - b Bk) s
        MPoly nA = Bk;
        MPoly nB = Ak - b * Bk;
        Ak = std::move(nA);
        Bk = std::move(nB);
    }
    return acc;
}

// Rewrite a PRat whose s-dependence is eliminable as a rational function of b
// (and the other parameters). Returns nullopt when the s-component survives.
inline std::optional<PRat> rewrite_s_to_b(const PRat& f) {
    if (!f.depends_on(P_s)) return f;
    SPair n = s_reduce(f.num());
    SPair d = s_reduce(f.den());
    // 1/(A + sB): multiply by conjugate under s -> -1/s = -(b+s):
    // conj(A + sB) = A - (b+s)B ; (A+sB)(A - bB - sB) = A^2 - A b B - s^2 B^2 ... compute exactly:
    // (A+sB)(C+sD) with C = A - bB, D = -B:
    //   = AC + s(AD + BC) + s^2 BD = AC + BD + s(AD + BC - b BD)
    MPoly b = MPoly::var(P_b);
    MPoly C = d.A - b * d.B;
    MPoly D = -d.B;
    MPoly denA = d.A * C + d.B * D;
    MPoly denB = d.A * D + d.B * C - b * d.B * D;
    if (!denB.is_zero()) return std::nullopt; // norm should be s-free by construction
    MPoly numA = n.A * C + n.B * D;
    MPoly numB = n.A * D + n.B * C - b * n.B * D;
    if (!numB.is_zero()) return std::nullopt; // genuine s-dependence left
    if (denA.is_zero()) return std::nullopt;
    return PRat(numA, denA);
}

} // namespace refrec
