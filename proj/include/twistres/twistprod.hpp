#pragma once

// Twisted product complexes. For resolutions P of M over A and Q of N over
// B, both compatible with tau, X_{i,j} = P_i (x) Q_j carries an A (x)_tau B
// action routed through the lifts,
//   (a (x) b) . (p (x) q)   = a p' (x) b' q         with tau_{B,i}(b (x) p) = p' (x) b',
//   (p (x) q) . (a (x) b)   = p a'' (x) q' b        with tau_{j,A}(q (x) a) = a'' (x) q',
// and the total complex with d = d_i (x) 1 + (-1)^i (x) d_j resolves M (x) N.
// Each X_{i,j} is free on the generators (1 L_i 1) (x) (1 L_j 1); the total
// differential is written in that basis by inverting the free-form map
//   lambda (x) g (x) lambda'  ->  lambda . g . lambda'
// degree by degree.

#include "twistres/resolutions.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace twistres {

struct TotalLabel {
    int i = 0;
    int j = 0;
    int left = 0;   // label index in P_i
    int right = 0;  // label index in Q_j
};

/// An element of P_i (x) Q_j: sum c p (x) q over basis terms.
using XElement = std::map<std::pair<Term, Term>, Scalar>;

struct TwistedProductOptions {
    bool vertical_sign = true;  // the (-1)^i in d_i (x) 1 + (-1)^i (x) d_j
};

class TwistedBicomplex;

struct TotalComplex {
    ComplexPtr complex;                              // over the twisted product algebra
    std::vector<std::vector<TotalLabel>> provenance;  // [n][label] -> (i, j, L_i, L_j)
    std::shared_ptr<const TwistedBicomplex> bicomplex;
};

class TwistedBicomplex {
public:
    /// Bimodule case: P carries a left lift, Q a right lift. One-sided case:
    /// P and Q are one-sided resolutions and only P's left lift is used.
    TwistedBicomplex(ResolutionBundle p, ResolutionBundle q, TwistPtr tau, TwistedProductOptions options);

    bool one_sided() const { return one_sided_; }
    const AlgebraPtr& algebra() const { return lambda_; }
    const ResolutionBundle& left() const { return p_; }
    const ResolutionBundle& right() const { return q_; }
    const TwistPtr& twist() const { return tau_; }
    const TwistedProductOptions& options() const { return options_; }

    /// Degree bounds for X_{i,j} (exclusive of the augmented spot).
    int max_i() const { return p_.complex->n_max(); }
    int max_j() const { return q_.complex->n_max(); }

    /// 1 L_i 1 (x) 1 L_j 1.
    XElement generator(int li, int lj) const;
    XElement act_left(const Monomial& lambda, int i, const XElement& x) const;
    XElement act_right(int j, const XElement& x, const Monomial& lambda) const;
    /// lambda . (1 L_i 1 (x) 1 L_j 1) . lambda'
    XElement phi(int i, int j, int li, int lj, const Monomial& lambda, const Monomial& lambda_right) const;

    /// d_i (x) 1 into X_{i-1,j} and the unsigned 1 (x) d_j into X_{i,j-1}.
    XElement horizontal(int i, const XElement& x) const;
    XElement vertical(int j, const XElement& x) const;

    int degree(int i, int j, const XElement& x) const;
    std::string format(int i, int j, const XElement& x) const;

    /// Writes x in X_{i,j} in the free basis; the result uses (li, lj) pairs
    /// in place of labels: Term.label = li * |Q_j labels| + lj.
    ModuleElement decompose(int i, int j, const XElement& x) const;

private:
    struct Solver;
    Solver& solver(int i, int j) const;

    ResolutionBundle p_, q_;
    TwistPtr tau_;
    TwistedProductOptions options_;
    bool one_sided_ = false;
    AlgebraPtr lambda_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<Solver>> solvers_;
};

/// Total complex of X_{.,.} for bimodule resolutions P of A and Q of B.
/// Throws MissingLift when a lift is absent and NonInvertibleTruncation when
/// a differential does not lie in the span of the free basis.
TotalComplex bimodule_twisted_product(const ResolutionBundle& p, const ResolutionBundle& q, TwistPtr tau,
                                      TwistedProductOptions options = {});

/// Total complex of Y_{.,.} for one-sided resolutions P of M over A (with a
/// left lift) and Q of N over B.
TotalComplex one_sided_twisted_product(const ResolutionBundle& p, const ResolutionBundle& q, TwistPtr tau,
                                       TwistedProductOptions options = {});

/// The wedge identification (i, j, L_i, L_j) -> L_i u (L_j + offset) with
/// offset the number of generators of A; used to compare a total complex of
/// Koszul-type factors with a Koszul complex of the product.
struct WedgeComparison {
    bool labels_match = true;
    bool differentials_match = true;
    std::vector<std::string> mismatches;
    bool ok() const { return labels_match && differentials_match; }
};
WedgeComparison compare_with_wedge(const TotalComplex& t, const ChainComplex& koszul);

/// Ore module resolution over R[x; 1, delta]: the one-sided twisted product
/// of P (resolving k over R) with 0 -> k[x] -x-> k[x] -> k.
struct OreModuleResolution {
    TotalComplex total;
    SigmaDelta sigma_delta;
    std::vector<LinearForm> delta;
    AlgebraPtr kx;

    /// psi: R[x] (x)_R P_i (x) e_j -> Y_{i,j}, lambda (x) z -> lambda . (z (x) e_j).
    XElement psi(int i, int j, const Monomial& lambda, const Term& z) const;
    /// The inverse via psi^{-1}(z (x) x^m) = x psi^{-1}(z (x) x^{m-1}) - psi^{-1}(delta~(z) (x) x^{m-1}),
    /// returning an element of the free module with total-complex labels.
    ModuleElement psi_inverse(int i, int j, const XElement& y) const;
};

OreModuleResolution ore_module_resolution(const ResolutionBundle& r_bundle, std::vector<LinearForm> delta,
                                          const std::string& x_name = "x");

/// Re-presents an Ore module resolution as a one-sided wedge resolution over
/// the iterated Ore extension R[x; delta], so it can be twisted again.
ResolutionBundle to_wedge_bundle(const OreModuleResolution& r);

/// Chevalley-Eilenberg resolutions by iterated Ore twisting: generators
/// x_1, ..., x_t with delta[j][i] = [x_j, x_i] for i < j.
ResolutionBundle iterated_ore_resolution(const AlgebraPtr& ore_algebra);

struct Degree0Row {
    int degree = 0;
    long long h0 = 0;
    long long expected = 0;
};
struct Degree0Report {
    std::vector<Degree0Row> rows;
    bool ok() const;
};
/// dim H_0 of the truncated unaugmented complex against dim (M (x) N) in each
/// cutoff d <= N.
Degree0Report kunneth_degree0_check(const TotalComplex& t, int N);

struct BicomplexCheck {
    std::size_t checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};
/// d^h d^v = d^v d^h on every generator of X_{i,j}, i.e. the squares
/// anticommute once the (-1)^i is applied.
BicomplexCheck anticommutation_check(const TotalComplex& t);
/// D(lambda . g . lambda') = lambda . D(g) . lambda' for every generator g and
/// a seeded sample of monomial pairs of degree <= bound.
BicomplexCheck action_check(const TotalComplex& t, int bound, int samples, std::uint64_t seed);

} // namespace twistres
