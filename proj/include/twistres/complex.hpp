#pragma once

// Free (bi)module chain complexes over a presented algebra.
//
// A term in homological degree n is A (x) span(labels) (x) A, or A (x)
// span(labels) for left modules; differentials are given on labels. Truncation
// keeps basis elements a0 (x) L (x) a1 with deg a0 + deg L + deg a1 <= N.

#include "twistres/algebra.hpp"
#include "twistres/linalg.hpp"

#include <string>
#include <vector>

namespace twistres {

struct Label {
    std::vector<int> key;  // family-specific identity (wedge subset, bar tuple, ...)
    int degree = 0;        // internal filtration degree
    std::string name;
};

/// a0 (x) L (x) a1; for left modules the right monomial is the unit.
struct Term {
    Monomial left;
    int label = 0;
    Monomial right;

    bool operator<(const Term& o) const {
        if (label != o.label) return label < o.label;
        if (left != o.left) return left < o.left;
        return right < o.right;
    }
    bool operator==(const Term& o) const { return label == o.label && left == o.left && right == o.right; }
};

struct ModuleElement {
    std::map<Term, Scalar> terms;

    void add(const Term& t, const Scalar& c);
    void add(const ModuleElement& o, const Scalar& c);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const ModuleElement& o) const { return terms == o.terms; }
};

enum class Side { Bimodule, Left };
enum class AugmentationKind { AlgebraItself, TrivialModule };

struct ChainComplex {
    AlgebraPtr algebra;
    Side side = Side::Bimodule;
    AugmentationKind augmentation = AugmentationKind::AlgebraItself;
    std::vector<std::vector<Label>> labels;               // [n][label]
    std::vector<std::vector<ModuleElement>> differential;  // [n][label], n >= 1
    std::vector<Element> augmentation_images;              // per degree-0 label
    bool bounded = false;  // terms above n_max are zero
    std::string name;

    int n_max() const { return static_cast<int>(labels.size()) - 1; }
    Term generator(int label) const;  // 1 (x) L (x) 1
    int find_label(int n, const std::vector<int>& key) const;
    /// Renders an element of the degree-n term.
    std::string format(int n, const ModuleElement& m) const;
};

ModuleElement act_left(const ChainComplex& c, const Element& lambda, const ModuleElement& m);
ModuleElement act_right(const ChainComplex& c, const ModuleElement& m, const Element& lambda);
/// d_n applied to an element of degree n.
ModuleElement apply_differential(const ChainComplex& c, int n, const ModuleElement& m);
/// Augmentation of a degree-0 element: an element of the algebra (bimodule
/// case) or a scalar multiple of the unit (trivial module).
Element apply_augmentation(const ChainComplex& c, const ModuleElement& m);

struct ComposeViolation {
    int degree = 0;
    std::string label;
    std::string residue;
};

struct ComposeReport {
    std::size_t labels_checked = 0;
    std::vector<ComposeViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// d_{n-1}(d_n(L)) for every label of degree n >= 2, and epsilon(d_1(L)).
ComposeReport compose_check(const ChainComplex& c);

/// Finite matrices for spots -1 (the resolved object) .. n_max.
struct TruncatedComplex {
    int cutoff = 0;
    std::vector<std::vector<Term>> bases;   // bases[n + 1]; spot -1 uses label -1
    std::vector<std::vector<int>> degrees;  // matching filtration degrees
    std::vector<SparseMatrix> maps;         // maps[n] : spot n -> spot n - 1, n = 0..n_max

    std::size_t size(int spot) const { return bases[spot + 1].size(); }
};

/// Throws DegreeRaising if a differential raises total filtration degree.
TruncatedComplex truncate(const ChainComplex& c, int N);

/// Largest drop deg(column) - deg(row) over entries of `m` whose column has
/// degree <= col_limit.
int max_degree_drop(const SparseMatrix& m, const std::vector<int>& col_deg, const std::vector<int>& row_deg,
                    int col_limit);

/// dim (ker d_out / im d_in) restricted to filtration <= N in the middle
/// space, using preimages of degree <= M:
///   #mid(<=N) - rank(d_out | cols <= N) - rank(d_in | cols <= M)
///             + rank(rows > N of d_in | cols <= M).
/// Either map may be null (zero).
long long windowed_homology(int N, int M, const std::vector<int>& mid_deg, const SparseMatrix* d_in,
                            const std::vector<int>* in_col_deg, const SparseMatrix* d_out);

struct HomologyEntry {
    int degree = 0;     // -1 is the cokernel of the augmentation
    long long dim = 0;  // reduced homology inside the window
};

struct ExactnessReport {
    int cutoff = 0;
    int shift = 0;        // maximal degree drop of the differentials
    int top_degree = 0;   // highest spot whose homology is reported
    std::vector<HomologyEntry> entries;
    long long h0 = 0;           // unaugmented H_0 inside the window
    long long module_dim = 0;   // dim of the resolved object inside the window
    bool composes = true;       // consecutive truncated maps compose to zero
    bool exact() const;
};

ExactnessReport exactness_report(const ChainComplex& c, int N);

/// (windowed unaugmented H_0, dim of the resolved object) for cutoffs 0..N.
std::vector<std::pair<long long, long long>> degree0_profile(const ChainComplex& c, int N);

} // namespace twistres
