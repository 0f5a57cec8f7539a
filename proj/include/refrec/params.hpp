#pragma once

#include "refrec/bigq.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace refrec {

// Fixed scalar-parameter alphabet. All coefficient arithmetic lives over
// exact rational functions in these.
constexpr int kNumParams = 16;

enum Par : int {
    P_u1 = 0,
    P_u2,
    P_v,
    P_t,
    P_u,
    P_gamma,
    P_delta,
    P_s,
    P_b,
    P_eps,
    P_p1,
    P_p2,
    P_p3,
    P_p4,
    P_p5,
    P_p6,
};

inline const char* par_name(int p) {
    static const char* names[kNumParams] = {"u1", "u2", "v",  "t",  "u",  "gamma", "delta", "s",
                                            "b",  "eps", "p1", "p2", "p3", "p4",    "p5",    "p6"};
    return names[p];
}

inline std::optional<int> par_from_name(const std::string& n) {
    for (int i = 0; i < kNumParams; ++i)
        if (n == par_name(i)) return i;
    return std::nullopt;
}

struct PExpo {
    std::array<uint16_t, kNumParams> e{};

    bool operator==(const PExpo& o) const { return e == o.e; }
    bool operator<(const PExpo& o) const { return e < o.e; }
    bool is_zero() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }
    PExpo operator+(const PExpo& o) const {
        PExpo r;
        for (int i = 0; i < kNumParams; ++i) r.e[i] = uint16_t(e[i] + o.e[i]);
        return r;
    }
    int deg(int p) const { return e[p]; }
};

// Sparse multivariate polynomial over BigQ in the fixed parameter alphabet.
// Terms sorted by exponent vector; no zero coefficients stored.
class MPoly {
  public:
    using Term = std::pair<PExpo, BigQ>;

    MPoly() = default;
    explicit MPoly(const BigQ& c) {
        if (!refrec::is_zero(c)) terms_.emplace_back(PExpo{}, c);
    }
    explicit MPoly(long c) : MPoly(BigQ(c)) {}

    static MPoly var(int p, int deg = 1, const BigQ& c = BigQ(1)) {
        MPoly r;
        if (refrec::is_zero(c)) return r;
        PExpo ex;
        ex.e[p] = uint16_t(deg);
        r.terms_.emplace_back(ex, c);
        return r;
    }
    static MPoly monomial(const PExpo& ex, const BigQ& c) {
        MPoly r;
        if (!refrec::is_zero(c)) r.terms_.emplace_back(ex, c);
        return r;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_zero()); }
    BigQ constant_value() const {
        if (terms_.empty()) return BigQ(0);
        if (!is_constant()) throw std::runtime_error("MPoly: not constant");
        return terms_[0].second;
    }
    size_t size() const { return terms_.size(); }

    int deg(int p) const {
        int d = 0;
        for (auto& t : terms_) d = std::max(d, (int)t.first.e[p]);
        return d;
    }
    bool depends_on(int p) const {
        for (auto& t : terms_)
            if (t.first.e[p]) return true;
        return false;
    }
    int total_deg() const {
        int d = 0;
        for (auto& t : terms_) {
            int s = 0;
            for (auto x : t.first.e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    MPoly operator+(const MPoly& o) const {
        MPoly r;
        r.terms_.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            if (terms_[i].first < o.terms_[j].first) {
                r.terms_.push_back(terms_[i++]);
            } else if (o.terms_[j].first < terms_[i].first) {
                r.terms_.push_back(o.terms_[j++]);
            } else {
                BigQ c = terms_[i].second + o.terms_[j].second;
                if (!refrec::is_zero(c)) r.terms_.emplace_back(terms_[i].first, c);
                ++i;
                ++j;
            }
        }
        while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
        while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
        return r;
    }
    MPoly operator-(const MPoly& o) const { return *this + (-o); }

    MPoly operator*(const MPoly& o) const {
        if (is_zero() || o.is_zero()) return MPoly();
        if (o.terms_.size() == 1) return mul_term(o.terms_[0]);
        if (terms_.size() == 1) return o.mul_term(terms_[0]);
        std::map<PExpo, BigQ> acc;
        for (auto& a : terms_)
            for (auto& b : o.terms_) {
                BigQ c = a.second * b.second;
                auto key = a.first + b.first;
                auto it = acc.find(key);
                if (it == acc.end())
                    acc.emplace(key, std::move(c));
                else
                    it->second += c;
            }
        MPoly r;
        r.terms_.reserve(acc.size());
        for (auto& kv : acc)
            if (!refrec::is_zero(kv.second)) r.terms_.emplace_back(kv.first, kv.second);
        return r;
    }

    MPoly mul_term(const Term& t) const {
        MPoly r;
        r.terms_.reserve(terms_.size());
        for (auto& a : terms_) r.terms_.emplace_back(a.first + t.first, a.second * t.second);
        return r;
    }
    MPoly operator*(const BigQ& c) const {
        if (refrec::is_zero(c)) return MPoly();
        MPoly r = *this;
        for (auto& t : r.terms_) t.second *= c;
        return r;
    }

    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    bool operator==(const MPoly& o) const { return terms_ == o.terms_; }

    // Exact division; returns nullopt if not divisible.
    std::optional<MPoly> divide_exact(const MPoly& d) const {
        if (d.is_zero()) throw std::runtime_error("MPoly: division by zero");
        if (is_zero()) return MPoly();
        if (d.is_constant()) return *this * (BigQ(1) / d.constant_value());
        MPoly rem = *this, quot;
        const Term& lead = d.terms_.back();
        while (!rem.is_zero()) {
            const Term& rl = rem.terms_.back();
            PExpo qe;
            for (int i = 0; i < kNumParams; ++i) {
                if (rl.first.e[i] < lead.first.e[i]) return std::nullopt;
                qe.e[i] = uint16_t(rl.first.e[i] - lead.first.e[i]);
            }
            BigQ qc = rl.second / lead.second;
            MPoly m = MPoly::monomial(qe, qc);
            quot += m;
            rem -= d.mul_term({qe, qc});
        }
        return quot;
    }

    // Substitute parameter p by a BigQ value.
    MPoly subst(int p, const BigQ& val) const {
        std::map<PExpo, BigQ> acc;
        for (auto& t : terms_) {
            PExpo ex = t.first;
            int d = ex.e[p];
            ex.e[p] = 0;
            BigQ c = t.second * q_pow(val, d);
            if (refrec::is_zero(c)) continue;
            auto it = acc.find(ex);
            if (it == acc.end())
                acc.emplace(ex, std::move(c));
            else
                it->second += c;
        }
        MPoly r;
        for (auto& kv : acc)
            if (!refrec::is_zero(kv.second)) r.terms_.emplace_back(kv.first, kv.second);
        return r;
    }

    // Substitute parameter p by another MPoly.
    MPoly subst_poly(int p, const MPoly& val) const {
        // Horner over descending powers of p.
        int dmax = deg(p);
        if (dmax == 0) return *this;
        std::vector<MPoly> coef(dmax + 1);
        for (auto& t : terms_) {
            PExpo ex = t.first;
            int d = ex.e[p];
            ex.e[p] = 0;
            coef[d] += MPoly::monomial(ex, t.second);
        }
        MPoly r = coef[dmax];
        for (int d = dmax - 1; d >= 0; --d) r = r * val + coef[d];
        return r;
    }

    BigQ eval(const std::array<BigQ, kNumParams>& pt) const {
        BigQ r(0);
        for (auto& t : terms_) {
            BigQ m = t.second;
            for (int i = 0; i < kNumParams; ++i)
                if (t.first.e[i]) m *= q_pow(pt[i], t.first.e[i]);
            r += m;
        }
        return r;
    }

    // Integer content times parameter-monomial content (for normalization).
    // Returns (rational scale, monomial) such that *this = scale * monomial * primitive.
    std::pair<BigQ, PExpo> content() const {
        if (is_zero()) return {BigQ(1), PExpo{}};
        PExpo mono = terms_[0].first;
        BigZ gnum(0), gden(1);
        for (auto& t : terms_) {
            for (int i = 0; i < kNumParams; ++i) mono.e[i] = std::min(mono.e[i], t.first.e[i]);
            gnum = z_gcd(gnum, q_num(t.second));
            gden = gden * q_den(t.second) / z_gcd(gden, q_den(t.second)); // lcm
        }
        BigQ scale = BigQ(gnum) / BigQ(gden);
        // sign: make the trailing (largest exponent) coefficient positive
        if (terms_.back().second < 0) scale = -scale;
        return {scale, mono};
    }

    MPoly divide_monomial(const PExpo& mono) const {
        MPoly r = *this;
        for (auto& t : r.terms_)
            for (int i = 0; i < kNumParams; ++i) {
                if (t.first.e[i] < mono.e[i]) throw std::runtime_error("MPoly: monomial division");
                t.first.e[i] = uint16_t(t.first.e[i] - mono.e[i]);
            }
        return r;
    }

    // Collect coefficients of powers of parameter p.
    std::vector<MPoly> coeffs_in(int p) const {
        std::vector<MPoly> out(deg(p) + 1);
        for (auto& t : terms_) {
            PExpo ex = t.first;
            int d = ex.e[p];
            ex.e[p] = 0;
            out[d] += MPoly::monomial(ex, t.second);
        }
        return out;
    }

    std::string str() const;

  private:
    std::vector<Term> terms_;
};

inline MPoly operator*(const BigQ& c, const MPoly& p) { return p * c; }

namespace detail {

constexpr uint64_t kP61 = 2305843009213693951ull;

inline uint64_t mp_add(uint64_t a, uint64_t b) {
    uint64_t s = a + b;
    return s >= kP61 ? s - kP61 : s;
}
inline uint64_t mp_mul(uint64_t a, uint64_t b) {
    unsigned __int128 t = (unsigned __int128)a * b;
    uint64_t r = (uint64_t)(t & kP61) + (uint64_t)(t >> 61);
    return r >= kP61 ? r - kP61 : r;
}
inline uint64_t mp_pow(uint64_t a, uint64_t e) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mp_mul(r, a);
        a = mp_mul(a, a);
        e >>= 1;
    }
    return r;
}
inline uint64_t mp_inv(uint64_t a) { return mp_pow(a % kP61, kP61 - 2); }
inline uint64_t mp_q(const BigQ& q) {
    BigZ n = q_num(q) % BigZ(kP61);
    BigZ d = q_den(q) % BigZ(kP61);
    uint64_t nn = (uint64_t)(n < 0 ? n + BigZ(kP61) : n);
    uint64_t dd = (uint64_t)d;
    if (dd == 0) return 0;
    return mp_mul(nn, mp_inv(dd));
}

// project to a dense univariate polynomial in parameter `keep`
inline bool mp_project(const MPoly& f, int keep, std::vector<uint64_t>& out) {
    static const std::array<uint64_t, kNumParams> seeds = [] {
        std::array<uint64_t, kNumParams> s{};
        uint64_t x = 0xc2b2ae3d27d4eb4full;
        for (auto& v : s) {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            v = (x % (kP61 - 7)) + 3;
        }
        return s;
    }();
    out.assign(f.deg(keep) + 1, 0);
    for (auto& t : f.terms()) {
        uint64_t val = mp_q(t.second);
        for (int i = 0; i < kNumParams; ++i)
            if (i != keep && t.first.e[i]) val = mp_mul(val, mp_pow(seeds[i], t.first.e[i]));
        out[t.first.e[keep]] = mp_add(out[t.first.e[keep]], val);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return true;
}

// false only when exact divisibility is impossible
inline bool mp_maybe_divisible(const MPoly& num, const MPoly& f) {
    int keep = -1;
    for (int i = 0; i < kNumParams; ++i)
        if (f.depends_on(i)) {
            keep = i;
            break;
        }
    if (keep < 0) return true;
    if (num.deg(keep) < f.deg(keep)) return false;
    std::vector<uint64_t> a, b;
    mp_project(num, keep, a);
    mp_project(f, keep, b);
    if (a.empty() || b.empty()) return true;
    if (a.size() < b.size()) return false;
    uint64_t linv = mp_inv(b.back());
    for (int i = int(a.size()) - 1; i >= int(b.size()) - 1; --i) {
        uint64_t q = mp_mul(a[i], linv);
        if (q == 0) continue;
        int off = i - (int(b.size()) - 1);
        for (int j = 0; j < int(b.size()); ++j) {
            uint64_t prod = mp_mul(q, b[j]);
            a[off + j] = mp_add(a[off + j], kP61 - prod);
        }
    }
    for (int i = 0; i + 1 < int(b.size()) && i < int(a.size()); ++i)
        if (a[i] != 0) return false;
    return true;
}

} // namespace detail

inline std::string MPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& t : terms_) {
        BigQ c = t.second;
        std::string term;
        bool neg = c < 0;
        BigQ ac = neg ? BigQ(-c) : c;
        std::vector<std::string> factors;
        if (!refrec::is_one(ac) || t.first.is_zero()) factors.push_back(ac.str());
        for (int i = 0; i < kNumParams; ++i) {
            if (t.first.e[i] == 0) continue;
            std::string f = par_name(i);
            if (t.first.e[i] > 1) f += "^" + std::to_string(t.first.e[i]);
            factors.push_back(f);
        }
        for (size_t k = 0; k < factors.size(); ++k) {
            if (k) term += "*";
            term += factors[k];
        }
        if (first) {
            out += (neg ? "-" : "") + term;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + term;
        }
    }
    return out;
}

} // namespace refrec
