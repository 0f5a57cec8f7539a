#pragma once

#include "refrec/curve.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace refrec {

// Correlators are indexed by twice the genus (g2 = 2g) and the argument
// count; extended entries carry a sorted multiset of disc indices whose
// variables have already been expanded at the marked point z = 0.
struct WfKey {
    int g2;
    int nsym;
    std::vector<int> tail; // sorted descending

    bool operator<(const WfKey& o) const {
        if (g2 != o.g2) return g2 < o.g2;
        if (nsym != o.nsym) return nsym < o.nsym;
        return tail < o.tail;
    }
};

struct TableOptions {
    bool enforce_structure = true; // symmetry / b-degree / pole checks on full correlators
    bool check_integrand_poles = false;
};

struct StructureReport {
    bool symmetric = true;
    bool b_degree_ok = true;
    bool b_parity_ok = true;
    bool pole_locations_ok = true;
    bool residue_free_ok = true;
    std::string detail;
    bool ok() const { return symmetric && b_degree_ok && b_parity_ok && pole_locations_ok && residue_free_ok; }
};

class CorrelatorTable {
  public:
    explicit CorrelatorTable(SpectralCurve curve, TableOptions opt = {});

    const SpectralCurve& curve() const { return curve_; }

    // W_{g,n}(z_0..z_{n-1}) in the dz basis, fully symbolic arguments
    const ZRat& omega(int g2, int n);

    // extended entry: nsym symbolic arguments, `tail` disc-expanded indices
    const ZRat& wf(int g2, int nsym, std::vector<int> tail);

    // F_{g,n}[mu_1..mu_n]; applies the curve's (1/2,1) shift convention
    PRat fgn(int g2, const std::vector<int>& mu);

    // disc expansion of a materialized correlator via series reversion;
    // returns all F values with 1 <= mu_i <= K
    std::map<std::vector<int>, PRat> disc_expand(int g2, int n, int K);

    // structural checks (symmetry, b-degree/parity, pole locations, residues)
    StructureReport check_structure(int g2, int n);

    uint64_t hits() const { return hits_; }

  private:
    ZRat compute(const WfKey& key);
    ZRat rec_pieces(const WfKey& key, int slotT);
    const ZRat& fetch(int g2, int nsym, std::vector<int> tail);
    ZRat fetch_as(int g2, int nsym, const std::vector<int>& tail, const std::vector<int>& arg_slots);
    ZRat kernel_K(int slotT) const;   // eta^z(z0)/(2 ytilde(z) x'(z)) scalar
    const ZRat& e_kernel(int mu);     // extraction of the xx-kernel over its second slot
    ZRat xx_kernel(int a, int b) const;

    SpectralCurve curve_;
    TableOptions opt_;
    std::map<WfKey, ZRat> memo_;
    std::map<int, ZRat> ekernel_;
    std::recursive_mutex mu_;
    uint64_t hits_ = 0;
};

// expansion coefficient: minus the residue at z=0 of x^mu f dz over slot zi
PRat extract_disc(const SpectralCurve& c, const ZRat& f, int zi, int mu);

} // namespace refrec
