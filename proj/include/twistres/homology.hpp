#pragma once

// Derived-functor dimensions from free resolutions.
//
// Hochschild cochains: Hom_{L^e}(L (x) V_n (x) L, L) = Hom(V_n, L), with basis
// (label, monomial) and codifferential (delta f)(L) = f(d L). The weight of
// (L, m) is deg m - deg L; it is preserved for graded input and never raised
// otherwise. Internal degrees are reported as weight + n.
//
// Tor and Ext over an augmented algebra: k (x)_L P and Hom_L(P, k) for a
// one-sided resolution P of k collapse each free term L (x) V to V.

#include "twistres/complex.hpp"

#include <string>
#include <vector>

namespace twistres {

struct HochschildRow {
    int n = 0;
    int degree = 0;        // graded: internal degree; filtered: the cutoff
    long long dim = 0;
    bool stable = true;    // filtered: the cutoff+2 window agrees
};

struct HochschildReport {
    bool graded = true;
    int cutoff = 0;
    int top = 0;  // highest cohomological degree reported
    std::vector<HochschildRow> rows;

    /// Graded: the dimension in internal degree d; filtered: the windowed
    /// dimension (any d).
    long long dim(int n, int d) const;
    /// Graded: the sum over internal degrees <= cutoff; filtered: the windowed dimension.
    long long total(int n) const;
    bool stable() const;
};

/// HH^n(L) for n <= top from a bimodule resolution c of L. Graded inputs get
/// exact dimensions per internal degree d <= N; filtered inputs get the
/// windowed dimension at weight cutoff N with a stability flag from N + 2.
HochschildReport hochschild_cohomology(const ChainComplex& c, int N);

/// Sum over n1 + n2 = n, d1 + d2 = d of products of factor dimensions, for
/// graded reports.
std::vector<std::vector<long long>> kunneth_convolution(const HochschildReport& a, const HochschildReport& b, int top,
                                                        int N);

struct DerivedDims {
    std::vector<long long> dims;  // indexed by n
};

/// Tor^L_n(k, k) from a one-sided resolution of k.
DerivedDims tor_over_augmented(const ChainComplex& c);
/// Ext^n_L(k, k) from the dual of the reduced complex.
DerivedDims ext_over_augmented(const ChainComplex& c);

/// The reduced differential k (x)_L d_n as a matrix labels[n] -> labels[n-1].
SparseMatrix reduced_differential(const ChainComplex& c, int n);

} // namespace twistres
