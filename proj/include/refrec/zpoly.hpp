#pragma once

#include "refrec/prat.hpp"

#include <map>
#include <optional>
#include <vector>

namespace refrec {

// Up to 8 curve-coordinate variables. Index 0 is conventionally the active
// recursion variable; marked points use higher slots.
constexpr int kMaxZ = 8;

inline std::string zvar_name(int i) { return i == 0 ? "z" : ("z" + std::to_string(i)); }

struct ZExpo {
    std::array<uint16_t, kMaxZ> e{};
    bool operator==(const ZExpo& o) const { return e == o.e; }
    bool operator<(const ZExpo& o) const { return e < o.e; }
    bool is_zero() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }
    ZExpo operator+(const ZExpo& o) const {
        ZExpo r;
        for (int i = 0; i < kMaxZ; ++i) r.e[i] = uint16_t(e[i] + o.e[i]);
        return r;
    }
};

// Sparse polynomial in the z-variables with PRat coefficients.
class ZPoly {
  public:
    using Term = std::pair<ZExpo, PRat>;

    ZPoly() = default;
    explicit ZPoly(const PRat& c) {
        if (!c.is_zero()) terms_.emplace_back(ZExpo{}, c);
    }
    explicit ZPoly(const BigQ& c) : ZPoly(PRat(c)) {}
    explicit ZPoly(long c) : ZPoly(PRat(c)) {}

    static ZPoly var(int zi, int deg = 1, const PRat& c = PRat(BigQ(1))) {
        ZPoly r;
        if (c.is_zero()) return r;
        ZExpo ex;
        ex.e[zi] = uint16_t(deg);
        r.terms_.emplace_back(ex, c);
        return r;
    }
    static ZPoly monomial(const ZExpo& ex, const PRat& c) {
        ZPoly r;
        if (!c.is_zero()) r.terms_.emplace_back(ex, c);
        return r;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_zero()); }
    PRat constant_value() const {
        if (terms_.empty()) return PRat();
        return terms_[0].second;
    }
    size_t size() const { return terms_.size(); }

    int deg(int zi) const {
        int d = 0;
        for (auto& t : terms_) d = std::max(d, (int)t.first.e[zi]);
        return d;
    }
    bool depends_on(int zi) const {
        for (auto& t : terms_)
            if (t.first.e[zi]) return true;
        return false;
    }
    std::vector<int> vars() const {
        std::vector<int> out;
        for (int i = 0; i < kMaxZ; ++i)
            if (depends_on(i)) out.push_back(i);
        return out;
    }

    ZPoly operator-() const {
        ZPoly r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }
    ZPoly operator+(const ZPoly& o) const {
        ZPoly r;
        r.terms_.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            if (terms_[i].first < o.terms_[j].first)
                r.terms_.push_back(terms_[i++]);
            else if (o.terms_[j].first < terms_[i].first)
                r.terms_.push_back(o.terms_[j++]);
            else {
                PRat c = terms_[i].second + o.terms_[j].second;
                if (!c.is_zero()) r.terms_.emplace_back(terms_[i].first, c);
                ++i;
                ++j;
            }
        }
        while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
        while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
        return r;
    }
    ZPoly operator-(const ZPoly& o) const { return *this + (-o); }
    ZPoly operator*(const ZPoly& o) const {
        if (is_zero() || o.is_zero()) return ZPoly();
        if (o.terms_.size() == 1) return mul_term(o.terms_[0]);
        if (terms_.size() == 1) return o.mul_term(terms_[0]);
        std::map<ZExpo, PRat> acc;
        for (auto& a : terms_)
            for (auto& b : o.terms_) {
                PRat c = a.second * b.second;
                if (c.is_zero()) continue;
                auto key = a.first + b.first;
                auto it = acc.find(key);
                if (it == acc.end())
                    acc.emplace(key, std::move(c));
                else
                    it->second += c;
            }
        ZPoly r;
        r.terms_.reserve(acc.size());
        for (auto& kv : acc)
            if (!kv.second.is_zero()) r.terms_.emplace_back(kv.first, kv.second);
        return r;
    }
    ZPoly mul_term(const Term& t) const {
        ZPoly r;
        r.terms_.reserve(terms_.size());
        for (auto& a : terms_) {
            PRat c = a.second * t.second;
            if (!c.is_zero()) r.terms_.emplace_back(a.first + t.first, c);
        }
        return r;
    }
    ZPoly operator*(const PRat& c) const {
        if (c.is_zero()) return ZPoly();
        ZPoly r = *this;
        for (auto& t : r.terms_) t.second *= c;
        return r;
    }
    ZPoly& operator+=(const ZPoly& o) { return *this = *this + o; }
    ZPoly& operator-=(const ZPoly& o) { return *this = *this - o; }
    ZPoly& operator*=(const ZPoly& o) { return *this = *this * o; }
    bool operator==(const ZPoly& o) const {
        if (terms_.size() != o.terms_.size()) return (*this - o).is_zero();
        return (*this - o).is_zero();
    }

    ZPoly pow(int e) const {
        ZPoly r(PRat(BigQ(1))), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    // Coefficients as polynomial in variable zi (dense ladder).
    std::vector<ZPoly> coeffs_in(int zi) const {
        std::vector<ZPoly> out(deg(zi) + 1);
        for (auto& t : terms_) {
            ZExpo ex = t.first;
            int d = ex.e[zi];
            ex.e[zi] = 0;
            out[d] += ZPoly::monomial(ex, t.second);
        }
        return out;
    }

    ZPoly deriv(int zi) const {
        ZPoly r;
        for (auto& t : terms_) {
            if (t.first.e[zi] == 0) continue;
            ZExpo ex = t.first;
            int d = ex.e[zi];
            ex.e[zi] = uint16_t(d - 1);
            r += ZPoly::monomial(ex, t.second * PRat(BigQ(d)));
        }
        return r;
    }

    // z_i -> constant value
    ZPoly subst_const(int zi, const PRat& val) const {
        std::map<ZExpo, PRat> acc;
        for (auto& t : terms_) {
            ZExpo ex = t.first;
            int d = ex.e[zi];
            ex.e[zi] = 0;
            PRat c = t.second * val.pow(d);
            if (c.is_zero()) continue;
            auto it = acc.find(ex);
            if (it == acc.end())
                acc.emplace(ex, std::move(c));
            else
                it->second += c;
        }
        ZPoly r;
        for (auto& kv : acc)
            if (!kv.second.is_zero()) r.terms_.emplace_back(kv.first, kv.second);
        return r;
    }

    // rename zi -> zj
    ZPoly rename(int zi, int zj) const {
        if (zi == zj) return *this;
        ZPoly r;
        std::map<ZExpo, PRat> acc;
        for (auto& t : terms_) {
            ZExpo ex = t.first;
            ex.e[zj] = uint16_t(ex.e[zj] + ex.e[zi]);
            ex.e[zi] = 0;
            auto it = acc.find(ex);
            if (it == acc.end())
                acc.emplace(ex, t.second);
            else
                it->second += t.second;
        }
        for (auto& kv : acc)
            if (!kv.second.is_zero()) r.terms_.emplace_back(kv.first, kv.second);
        return r;
    }

    // z_i -> polynomial
    ZPoly subst_poly(int zi, const ZPoly& val) const {
        int dmax = deg(zi);
        if (dmax == 0) return *this;
        auto cs = coeffs_in(zi);
        ZPoly r = cs[dmax];
        for (int d = dmax - 1; d >= 0; --d) r = r * val + cs[d];
        return r;
    }

    // z_i -> A/B, returning numerator after clearing B^clear_deg (clear_deg >= deg_zi)
    ZPoly subst_rat_cleared(int zi, const ZPoly& A, const ZPoly& B, int clear_deg) const {
        auto cs = coeffs_in(zi);
        ZPoly r;
        ZPoly Apow(PRat(BigQ(1)));
        std::vector<ZPoly> Apows(cs.size());
        for (size_t k = 0; k < cs.size(); ++k) {
            Apows[k] = Apow;
            if (k + 1 < cs.size()) Apow = Apow * A;
        }
        ZPoly Bpow(PRat(BigQ(1)));
        for (int k = int(cs.size()) - 1; k >= 0; --k) {
            if (!cs[k].is_zero()) r += cs[k] * Apows[k] * Bpow;
            Bpow = Bpow * B;
        }
        int extra = clear_deg - (int(cs.size()) - 1);
        for (int i = 0; i < extra; ++i) r = r * B;
        return r;
    }

    // exact division; nullopt if not divisible (ladder division in the
    // variable of smallest degree in d)
    std::optional<ZPoly> divide_exact(const ZPoly& d) const {
        if (d.is_zero()) throw std::runtime_error("ZPoly: division by zero");
        if (is_zero()) return ZPoly();
        if (d.is_constant()) return *this * d.constant_value().inv();
        int v = -1, dv = 1 << 20;
        for (int i = 0; i < kMaxZ; ++i) {
            int dd = d.deg(i);
            if (dd > 0 && dd < dv) {
                dv = dd;
                v = i;
            }
        }
        auto nl = coeffs_in(v);
        auto dl = d.coeffs_in(v);
        int dn = int(nl.size()) - 1, df = int(dl.size()) - 1;
        if (dn < df) return std::nullopt;
        const ZPoly& lead = dl[df];
        bool lead_const = lead.is_constant();
        PRat lead_inv = lead_const ? lead.constant_value().inv() : PRat();
        std::vector<ZPoly> q(dn - df + 1);
        for (int k = dn; k >= df; --k) {
            if (nl[k].is_zero()) continue;
            ZPoly qk;
            if (lead_const) {
                qk = nl[k] * lead_inv;
            } else {
                auto qq = nl[k].divide_exact(lead);
                if (!qq) return std::nullopt;
                qk = std::move(*qq);
            }
            nl[k] = ZPoly();
            for (int j = 0; j < df; ++j)
                if (!dl[j].is_zero()) nl[k - df + j] -= qk * dl[j];
            q[k - df] = std::move(qk);
        }
        for (int j = 0; j < df; ++j)
            if (!nl[j].is_zero()) return std::nullopt;
        ZPoly quot;
        for (int k = 0; k <= dn - df; ++k) {
            if (q[k].is_zero()) continue;
            ZExpo sh;
            sh.e[v] = uint16_t(k);
            quot += q[k].mul_term({sh, PRat(BigQ(1))});
        }
        return quot;
    }

    // Normalize to a fraction-free, integer-primitive, sign-canonical form.
    // Returns the scalar c with (old) == c * (new). Keeping denominator
    // factors fraction-free prevents coefficient swell in long additions.
    PRat strip_content() {
        if (is_zero()) return PRat(BigQ(1));
        // clear coefficient denominators (product of distinct ones)
        MPoly D(BigQ(1));
        std::vector<MPoly> seen;
        for (auto& t : terms_) {
            const MPoly& d = t.second.den();
            if (d.is_constant()) continue;
            bool dup = false;
            for (auto& s : seen)
                if (s == d) dup = true;
            if (!dup) {
                seen.push_back(d);
                D = D * d;
            }
        }
        if (!D.is_constant())
            for (auto& t : terms_) t.second = t.second * PRat(D);
        // now all coefficients should be polynomial; common rational+monomial content
        BigZ gnum(0), glcm(1);
        PExpo mono;
        bool first = true;
        for (auto& t : terms_) {
            auto [c, m] = t.second.num().content();
            BigQ cc = c / t.second.den().constant_value();
            gnum = z_gcd(gnum, q_num(cc));
            BigZ d = q_den(cc);
            glcm = glcm * d / z_gcd(glcm, d);
            if (first) {
                mono = m;
                first = false;
            } else {
                for (int i = 0; i < kNumParams; ++i) mono.e[i] = std::min(mono.e[i], m.e[i]);
            }
        }
        BigQ content = BigQ(gnum) / BigQ(glcm);
        // canonical sign from the lex-last coefficient's lex-last term
        {
            const PRat& lead = terms_.back().second;
            BigQ lc = lead.num().terms().back().second / lead.den().constant_value();
            if (lc < 0) content = -content;
        }
        PRat scale = PRat(MPoly::monomial(mono, content));
        PRat unscale = scale.inv();
        for (auto& t : terms_) t.second = t.second * unscale;
        return scale / PRat(D);
    }

    PRat eval_const(const std::map<int, PRat>& vals) const {
        PRat r;
        for (auto& t : terms_) {
            PRat m = t.second;
            for (int i = 0; i < kMaxZ; ++i)
                if (t.first.e[i]) {
                    auto it = vals.find(i);
                    if (it == vals.end()) throw std::runtime_error("ZPoly: missing value");
                    m *= it->second.pow(t.first.e[i]);
                }
            r += m;
        }
        return r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        bool first = true;
        for (auto& t : terms_) {
            std::string term = "(" + t.second.str() + ")";
            for (int i = 0; i < kMaxZ; ++i) {
                if (!t.first.e[i]) continue;
                term += "*" + zvar_name(i);
                if (t.first.e[i] > 1) term += "^" + std::to_string(t.first.e[i]);
            }
            if (!first) out += " + ";
            out += term;
            first = false;
        }
        return out;
    }

  private:
    std::vector<Term> terms_;
};

inline ZPoly operator*(const PRat& c, const ZPoly& p) { return p * c; }

} // namespace refrec
