#pragma once

#include "refrec/zrat.hpp"

#include <complex>

namespace refrec {

using CD = std::complex<double>;

inline double to_double(const BigQ& q) {
    return q_num(q).convert_to<double>() / q_den(q).convert_to<double>();
}

inline CD eval_cd(const MPoly& f, const std::array<double, kNumParams>& par) {
    CD r = 0.0;
    for (auto& t : f.terms()) {
        CD m = to_double(t.second);
        for (int i = 0; i < kNumParams; ++i)
            for (int k = 0; k < t.first.e[i]; ++k) m *= par[i];
        r += m;
    }
    return r;
}

inline CD eval_cd(const PRat& f, const std::array<double, kNumParams>& par) {
    return eval_cd(f.num(), par) / eval_cd(f.den(), par);
}

inline CD eval_cd(const ZPoly& f, const std::array<double, kNumParams>& par,
                  const std::array<CD, kMaxZ>& z) {
    CD r = 0.0;
    for (auto& t : f.terms()) {
        CD m = eval_cd(t.second, par);
        for (int i = 0; i < kMaxZ; ++i)
            for (int k = 0; k < t.first.e[i]; ++k) m *= z[i];
        r += m;
    }
    return r;
}

inline CD eval_cd(const ZRat& f, const std::array<double, kNumParams>& par,
                  const std::array<CD, kMaxZ>& z) {
    CD r = eval_cd(f.num(), par, z);
    for (auto& fac : f.den_factors()) {
        CD d = eval_cd(fac.first, par, z);
        for (int i = 0; i < fac.second; ++i) r /= d;
    }
    return r;
}

// numeric residue by trapezoidal contour quadrature around a point
template <class F>
CD contour_residue(F&& f, CD center, double radius, int npoints = 1024) {
    CD acc = 0.0;
    for (int k = 0; k < npoints; ++k) {
        double th = 2.0 * M_PI * k / npoints;
        CD w = std::polar(radius, th);
        acc += f(center + w) * w;
    }
    return acc / (double)npoints;
}

} // namespace refrec
