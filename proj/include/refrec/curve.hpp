#pragma once

#include "refrec/residue.hpp"
#include "refrec/rng.hpp"
#include "refrec/zrat.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace refrec {

// A point of P^1 in the curve coordinate; nullopt encodes infinity.
using CPoint = std::optional<PRat>;

inline bool same_point(const CPoint& a, const CPoint& b) {
    if (!a && !b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

// Formal slot used for functions of the base coordinate x (weight-level data
// such as the curve polynomial and disc-expansion shifts).
constexpr int kXSlot = 7;

enum class CurveId { main_w, bipartite, monotone, mixed, gbe, jbe, lbe };

std::string curve_id_name(CurveId id);
std::optional<CurveId> curve_id_from_name(const std::string& s);

// Genus-zero refined spectral curve: degree-two map x, function y, canonical
// involution, the splitting P_+ with parameters mu, and weight-level data in
// the formal X variable.
struct SpectralCurve {
    CurveId id;
    std::string name;
    ZRat x;      // slot 0
    ZRat y;      // slot 0
    ZRat sigma;  // slot 0, degree-1 rational
    ZRat ytilde; // (y - y o sigma)/2, slot 0
    ZRat xprime; // dx/dz

    std::vector<PRat> P_plus;
    std::vector<PRat> mu;
    std::vector<CPoint> P_all; // full zero/pole set of the anti-invariant differential

    // weight-level data, functions of the formal variable X (slot kXSlot)
    ZRat S_inv;      // invariant shift: ytilde = y + S_inv(x)
    ZRat C_clear;    // clearing polynomial: (C(x) ytilde)^2 = U(x)
    ZRat U_curve;    // the curve polynomial in X
    ZRat half_shift; // (1/2,1) disc-expansion shift as a function of X (dx basis)

    // ramification polynomial: numerator of z - sigma(z) (roots are the
    // sigma-fixed points); may drop a root at infinity
    ZPoly ram_poly;

    // substitute the curve coordinate slot 0 -> slot zi
    ZRat x_at(int zi) const { return x.rename(0, zi); }
    ZRat y_at(int zi) const { return y.rename(0, zi); }
    ZRat sigma_at(int zi) const { return sigma.rename(0, zi); }
    ZRat ytilde_at(int zi) const { return ytilde.rename(0, zi); }
    ZRat xprime_at(int zi) const { return xprime.rename(0, zi); }

    // sigma evaluated at a point (handles the image at infinity)
    CPoint sigma_point(const CPoint& c) const;

    // eta^c(z)/dz = 1/(z-c) - 1/(z-sigma(c)), infinite terms dropped
    ZRat eta(const CPoint& c, int zi = 0) const;

    // unstable correlators in the dz basis
    ZRat w01(int zi = 0) const;                   // y x'
    ZRat w02(int zi1 = 0, int zi2 = 1) const;     // -sigma'(z2)/(z1-sigma(z2))^2
    ZRat w_half(int zi = 0) const;                // (b/2)(-ytilde'/ytilde + sum mu_c eta^c)
    ZRat half_shift_z(int zi = 0) const;          // half_shift(x(z)) * x'(z)

    // compose a function of X with x(z_i)
    ZRat compose_x(const ZRat& fX, int zi) const;
};

// Canonical involution of a degree-two rational map (solved linearly from the
// bilinear factor of x(z) - x(w)).
ZRat involution_of(const ZRat& x);

// Catalog of the named curves; bindings substitute numeric values for the
// curve parameters (u1,u2,v,t,u,gamma,delta). Symbolic when empty.
SpectralCurve catalog_curve(CurveId id, const std::map<int, BigQ>& bindings = {});

// Draw a random small-height binding for the curve's parameters that keeps
// all catalog points distinct and the curve nondegenerate.
std::map<int, BigQ> random_generic_binding(CurveId id, Rng& rng);

// structural validation (involution identities, P_+ membership, curve equation)
void validate_curve(const SpectralCurve& c);

} // namespace refrec
