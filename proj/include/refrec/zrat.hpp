#pragma once

#include "refrec/modcheck.hpp"
#include "refrec/zpoly.hpp"

#include <map>
#include <vector>

namespace refrec {

// Rational function in the z-variables over PRat. The denominator is kept as
// a product of normalized factors (lex-leading coefficient 1) with powers;
// this keeps cancellations cheap because all denominators in the recursion
// come from a small factor family.
class ZRat {
  public:
    using Factor = std::pair<ZPoly, int>;

    ZRat() = default;
    ZRat(const PRat& c) : num_(c) {}
    ZRat(const BigQ& c) : num_(PRat(c)) {}
    ZRat(long c) : num_(PRat(BigQ(c))) {}
    ZRat(const ZPoly& n) : num_(n) {}
    ZRat(ZPoly n, std::vector<Factor> d) : num_(std::move(n)), den_(std::move(d)) { tidy(); }

    static ZRat var(int zi) { return ZRat(ZPoly::var(zi)); }

    static ZRat from_num_den(ZPoly n, ZPoly d) {
        if (d.is_zero()) throw std::runtime_error("ZRat: zero denominator");
        ZRat r;
        if (d.is_constant()) {
            r.num_ = n * d.constant_value().inv();
            return r;
        }
        PRat c = d.strip_content();
        r.num_ = n * c.inv();
        r.den_.emplace_back(std::move(d), 1);
        r.tidy();
        return r;
    }

    const ZPoly& num() const { return num_; }
    const std::vector<Factor>& den_factors() const { return den_; }

    ZPoly den_expanded() const {
        ZPoly d(PRat(BigQ(1)));
        for (auto& f : den_)
            for (int i = 0; i < f.second; ++i) d *= f.first;
        return d;
    }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.empty(); }
    PRat constant_value() const {
        if (!den_.empty()) throw std::runtime_error("ZRat: not constant");
        return num_.constant_value();
    }
    bool depends_on(int zi) const {
        if (num_.depends_on(zi)) return true;
        for (auto& f : den_)
            if (f.first.depends_on(zi)) return true;
        return false;
    }
    std::vector<int> vars() const {
        std::vector<int> out;
        for (int i = 0; i < kMaxZ; ++i)
            if (depends_on(i)) out.push_back(i);
        return out;
    }

    ZRat operator-() const {
        ZRat r = *this;
        r.num_ = -r.num_;
        return r;
    }

    // products do not reduce; call reduce() at computation boundaries
    ZRat operator*(const ZRat& o) const {
        if (is_zero() || o.is_zero()) return ZRat();
        ZRat r;
        r.num_ = num_ * o.num_;
        r.den_ = merge_add(den_, o.den_);
        return r;
    }
    ZRat operator*(const PRat& c) const {
        ZRat r = *this;
        r.num_ = r.num_ * c;
        if (c.is_zero()) r.den_.clear();
        return r;
    }
    ZRat inv() const {
        if (is_zero()) throw std::runtime_error("ZRat: division by zero");
        ZRat r;
        ZPoly n = num_;
        PRat c = n.strip_content();
        // numerator = old denominator / c ; denominator = primitive old numerator
        r.num_ = ZPoly(c.inv());
        for (auto& f : den_)
            for (int i = 0; i < f.second; ++i) r.num_ = r.num_ * f.first;
        if (n.is_constant())
            r.num_ = r.num_ * n.constant_value().inv();
        else
            r.den_.emplace_back(std::move(n), 1);
        r.tidy();
        return r;
    }
    ZRat operator/(const ZRat& o) const { return *this * o.inv(); }

    ZRat operator+(const ZRat& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        // lcm of factored denominators
        std::vector<Factor> l = merge_max(den_, o.den_);
        ZPoly a = num_, b = o.num_;
        for (auto& f : l) {
            int pa = find_pow(den_, f.first), pb = find_pow(o.den_, f.first);
            for (int i = 0; i < f.second - pa; ++i) a *= f.first;
            for (int i = 0; i < f.second - pb; ++i) b *= f.first;
        }
        ZRat r;
        r.num_ = a + b;
        r.den_ = std::move(l);
        r.tidy();
        return r;
    }
    ZRat operator-(const ZRat& o) const { return *this + (-o); }
    ZRat& operator+=(const ZRat& o) { return *this = *this + o; }
    ZRat& operator-=(const ZRat& o) { return *this = *this - o; }
    ZRat& operator*=(const ZRat& o) { return *this = *this * o; }
    ZRat& operator/=(const ZRat& o) { return *this = *this / o; }

    ZRat pow(int e) const {
        if (e < 0) return inv().pow(-e);
        ZRat r(PRat(BigQ(1))), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    bool operator==(const ZRat& o) const { return (*this - o).is_zero(); }
    bool operator!=(const ZRat& o) const { return !(*this == o); }

    ZRat& reduce() {
        tidy();
        return *this;
    }

    // logarithmic derivative f'/f assembled factor-by-factor
    ZRat dlog(int zi) const {
        if (is_zero()) throw std::runtime_error("ZRat: dlog of zero");
        ZRat r = ZRat::from_num_den(num_.deriv(zi), num_);
        for (auto& f : den_) {
            if (!f.first.depends_on(zi)) continue;
            r -= ZRat::from_num_den(f.first.deriv(zi), f.first) * PRat(BigQ(f.second));
        }
        return r;
    }

    ZRat deriv(int zi) const {
        // d(num/prod f^k) = num'/prod f^k - num * sum k f' f^{-1} / prod f^k
        ZRat r(num_.deriv(zi));
        r.den_ = den_;
        r.tidy();
        for (auto& f : den_) {
            if (!f.first.depends_on(zi)) continue;
            ZRat t;
            t.num_ = num_ * f.first.deriv(zi) * PRat(BigQ(-f.second));
            t.den_ = den_;
            bool found = false;
            for (auto& g : t.den_)
                if (g.first == f.first) {
                    g.second += 1;
                    found = true;
                    break;
                }
            if (!found) t.den_.emplace_back(f.first, f.second + 1);
            t.tidy();
            r += t;
        }
        return r;
    }

    // substitute a scalar parameter by a value in all coefficients
    ZRat subst_param(int p, const BigQ& val) const {
        ZRat r;
        for (auto& t : num_.terms()) {
            PRat c = t.second.subst(p, val);
            if (!c.is_zero()) r.num_ += ZPoly::monomial(t.first, c);
        }
        for (auto& f : den_) {
            ZPoly g;
            for (auto& t : f.first.terms()) {
                PRat c = t.second.subst(p, val);
                if (!c.is_zero()) g += ZPoly::monomial(t.first, c);
            }
            if (g.is_zero()) throw std::runtime_error("ZRat: parameter substitution hits pole");
            if (g.is_constant())
                r.num_ = r.num_ * g.constant_value().pow(-f.second);
            else {
                PRat c = g.strip_content();
                r.num_ = r.num_ * c.pow(-f.second);
                r.push_den(std::move(g), f.second);
            }
        }
        r.tidy();
        return r;
    }

    // substitute zi -> constant (must not zero the denominator)
    ZRat subst_const(int zi, const PRat& val) const {
        ZRat r;
        r.num_ = num_.subst_const(zi, val);
        for (auto& f : den_) {
            ZPoly fd = f.first.subst_const(zi, val);
            if (fd.is_zero()) throw std::runtime_error("ZRat: substitution hits pole");
            if (fd.is_constant()) {
                r.num_ = r.num_ * fd.constant_value().pow(-f.second);
            } else {
                PRat c = fd.strip_content();
                r.num_ = r.num_ * c.pow(-f.second);
                r.push_den(std::move(fd), f.second);
            }
        }
        r.tidy();
        return r;
    }

    ZRat rename(int zi, int zj) const {
        ZRat r;
        r.num_ = num_.rename(zi, zj);
        for (auto& f : den_) r.push_den(f.first.rename(zi, zj), f.second);
        r.tidy();
        return r;
    }

    // substitute zi -> rational function g (in other variables)
    ZRat subst_rat(int zi, const ZRat& g) const {
        int dn = num_.deg(zi);
        int dd = 0;
        for (auto& f : den_) dd += f.first.deg(zi) * f.second;
        int dm = std::max(dn, dd);
        if (dm == 0) return *this;
        ZPoly A = g.num_;
        ZPoly B = g.den_expanded();
        ZRat r;
        r.num_ = num_.subst_rat_cleared(zi, A, B, dm);
        int used = dn;
        for (auto& f : den_) {
            int df = f.first.deg(zi);
            ZPoly fd = f.first.subst_rat_cleared(zi, A, B, df);
            used += df * f.second;
            if (fd.is_zero()) throw std::runtime_error("ZRat: substitution hits pole");
            if (fd.is_constant()) {
                r.num_ = r.num_ * fd.constant_value().pow(-f.second);
            } else {
                PRat c = fd.strip_content();
                r.num_ = r.num_ * c.pow(-f.second);
                r.push_den(std::move(fd), f.second);
            }
        }
        // balance powers of B: num got B^dm (cleared), den got B^(sum df * pow)
        int extra = dm - dd;
        // numerator carries B^dm from clearing; denominator should carry B^dm too.
        // den factors contributed B^dd total, so multiply den by B^extra.
        if (extra > 0) {
            ZPoly Bp = B;
            PRat c = Bp.strip_content();
            r.num_ = r.num_ * c.pow(-extra);
            if (!Bp.is_constant()) r.push_den(Bp, extra);
        }
        (void)used;
        r.tidy();
        return r;
    }

    // evaluate at full point map (z-values as PRat)
    PRat eval_const(const std::map<int, PRat>& vals) const {
        PRat n = num_.eval_const(vals);
        PRat d(BigQ(1));
        for (auto& f : den_) {
            PRat fv = f.first.eval_const(vals);
            if (fv.is_zero()) throw std::runtime_error("ZRat: evaluation at pole");
            d *= fv.pow(f.second);
        }
        return n / d;
    }

    std::string str() const {
        std::string out = "(" + num_.str() + ")";
        if (!den_.empty()) {
            out += " / (";
            bool first = true;
            for (auto& f : den_) {
                if (!first) out += " * ";
                out += "(" + f.first.str() + ")";
                if (f.second > 1) out += "^" + std::to_string(f.second);
                first = false;
            }
            out += ")";
        }
        return out;
    }

    // Reduce: cancel denominator factors dividing the numerator.
    void tidy() {
        if (num_.is_zero()) {
            den_.clear();
            return;
        }
        std::vector<Factor> nd;
        for (auto& f : den_) {
            int p = f.second;
            while (p > 0) {
                if (!modp::maybe_divisible(num_, f.first)) break;
                auto q = num_.divide_exact(f.first);
                if (!q) break;
                num_ = std::move(*q);
                --p;
            }
            if (p > 0) nd.emplace_back(f.first, p);
        }
        std::sort(nd.begin(), nd.end(), [](const Factor& a, const Factor& b) {
            if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
            for (size_t i = 0; i < a.first.terms().size(); ++i) {
                const auto& ta = a.first.terms()[i];
                const auto& tb = b.first.terms()[i];
                if (ta.first < tb.first) return true;
                if (tb.first < ta.first) return false;
            }
            return false;
        });
        den_ = std::move(nd);
    }

  private:
    void push_den(ZPoly f, int pow) {
        for (auto& g : den_)
            if (g.first == f) {
                g.second += pow;
                return;
            }
        den_.emplace_back(std::move(f), pow);
    }

    static int find_pow(const std::vector<Factor>& fs, const ZPoly& f) {
        for (auto& g : fs)
            if (g.first == f) return g.second;
        return 0;
    }
    static std::vector<Factor> merge_add(const std::vector<Factor>& a, const std::vector<Factor>& b) {
        std::vector<Factor> r = a;
        for (auto& f : b) {
            bool found = false;
            for (auto& g : r)
                if (g.first == f.first) {
                    g.second += f.second;
                    found = true;
                    break;
                }
            if (!found) r.push_back(f);
        }
        return r;
    }
    static std::vector<Factor> merge_max(const std::vector<Factor>& a, const std::vector<Factor>& b) {
        std::vector<Factor> r = a;
        for (auto& f : b) {
            bool found = false;
            for (auto& g : r)
                if (g.first == f.first) {
                    g.second = std::max(g.second, f.second);
                    found = true;
                    break;
                }
            if (!found) r.push_back(f);
        }
        return r;
    }

    ZPoly num_;
    std::vector<Factor> den_; // normalized factors, powers >= 1
};

inline ZRat operator*(const PRat& c, const ZRat& r) { return r * c; }

} // namespace refrec
