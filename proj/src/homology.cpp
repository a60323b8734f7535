#include "twistres/homology.hpp"

#include "twistres/errors.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <tuple>

namespace twistres {

namespace {

bool homogeneous(const ChainComplex& c) {
    if (!c.algebra->is_graded()) return false;
    const Algebra& a = *c.algebra;
    for (int n = 1; n <= c.n_max(); ++n)
        for (std::size_t l = 0; l < c.labels[n].size(); ++l)
            for (const auto& [t, v] : c.differential[n][l].terms)
                if (a.degree(t.left) + c.labels[n - 1][t.label].degree + a.degree(t.right) != c.labels[n][l].degree)
                    return false;
    return true;
}

// Monomials of the algebra grouped by degree, up to a bound.
class BasisCache {
public:
    explicit BasisCache(const Algebra& a) : a_(a) {}
    const std::vector<Monomial>& of_degree(int d) {
        if (d < 0) return empty_;
        if (d > top_) {
            by_degree_.assign(d + 1, {});
            for (const auto& m : a_.basis_up_to(d)) by_degree_[a_.degree(m)].push_back(m);
            top_ = d;
        }
        return by_degree_[d];
    }

private:
    const Algebra& a_;
    int top_ = -1;
    std::vector<std::vector<Monomial>> by_degree_;
    std::vector<Monomial> empty_;
};

struct Cochains {
    std::vector<std::pair<int, Monomial>> basis;  // (label, monomial)
    std::vector<int> weight;
    std::map<std::pair<int, Monomial>, std::size_t> index;
};

// Cochains of degree k with weights in [lo, hi].
Cochains cochains(const ChainComplex& c, BasisCache& cache, int k, int lo, int hi) {
    Cochains out;
    if (k < 0 || k > c.n_max()) return out;
    for (int l = 0; l < static_cast<int>(c.labels[k].size()); ++l) {
        const int dl = c.labels[k][l].degree;
        for (int w = std::max(lo, -dl); w <= hi; ++w)
            for (const auto& m : cache.of_degree(w + dl)) {
                out.index.emplace(std::make_pair(l, m), out.basis.size());
                out.basis.emplace_back(l, m);
                out.weight.push_back(w);
            }
    }
    return out;
}

// delta: C^k -> C^{k+1}, (L', m) -> sum over terms c a0 L' a1 of d(L): c a0 m a1 at L.
SparseMatrix codifferential(const ChainComplex& c, int k, const Cochains& from, const Cochains& to) {
    const Algebra& a = *c.algebra;
    SparseMatrix out(to.basis.size(), from.basis.size(), a.field());
    if (k < 0 || k + 1 > c.n_max()) return out;
    // label L' of degree k -> (L, a0, a1, coefficient)
    std::vector<std::vector<std::tuple<int, Monomial, Monomial, Scalar>>> uses(c.labels[k].size());
    for (std::size_t l = 0; l < c.labels[k + 1].size(); ++l)
        for (const auto& [t, v] : c.differential[k + 1][l].terms)
            uses[t.label].emplace_back(static_cast<int>(l), t.left, t.right, v);
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> columns(from.basis.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t j = 0; j < from.basis.size(); ++j) {
        try {
            const auto& [lp, m] = from.basis[j];
            for (const auto& [l, a0, a1, v] : uses[lp]) {
                const Element left = a.multiply(a0, m);
                for (const auto& [p, pc] : left.terms())
                    for (const auto& [q, qc] : a.multiply(a.element(p), a.element(a1)).terms()) {
                        auto it = to.index.find({l, q});
                        if (it == to.index.end())
                            throw Error("cochain (" + c.labels[k + 1][l].name + ", " + a.format(q) +
                                        ") is outside the truncation");
                        columns[j].emplace_back(it->second, v * pc * qc);
                    }
            }
        } catch (...) {
#pragma omp critical(hochschild_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (const auto& [r, v] : columns[j]) out.add(r, j, v);
    return out;
}

int top_degree(const ChainComplex& c) { return c.bounded ? c.n_max() : c.n_max() - 1; }

long long windowed_cohomology(const ChainComplex& c, BasisCache& cache, int n, int N, int max_label_degree) {
    auto build = [&](int hi, Cochains& prev, Cochains& mid, Cochains& next) {
        const int lo = -max_label_degree;
        prev = cochains(c, cache, n - 1, lo, hi);
        mid = cochains(c, cache, n, lo, hi);
        next = cochains(c, cache, n + 1, lo, hi);
    };
    Cochains prev, mid, next;
    build(N, prev, mid, next);
    SparseMatrix d_in = codifferential(c, n - 1, prev, mid);
    int shift = max_degree_drop(d_in, prev.weight, mid.weight, N);
    if (shift > 0) {
        build(N + shift, prev, mid, next);
        d_in = codifferential(c, n - 1, prev, mid);
    }
    const SparseMatrix d_out = codifferential(c, n, mid, next);
    // the window counts degrees from 0: shift weights up by the largest label degree
    auto lifted = [&](std::vector<int> w) {
        for (int& x : w) x += max_label_degree;
        return w;
    };
    const std::vector<int> mid_deg = lifted(mid.weight), prev_deg = lifted(prev.weight);
    return windowed_homology(N + max_label_degree, N + shift + max_label_degree, mid_deg, n >= 1 ? &d_in : nullptr,
                             n >= 1 ? &prev_deg : nullptr, &d_out);
}

} // namespace

long long HochschildReport::dim(int n, int d) const {
    for (const auto& r : rows)
        if (r.n == n && (!graded || r.degree == d)) return r.dim;
    return 0;
}

long long HochschildReport::total(int n) const {
    long long s = 0;
    for (const auto& r : rows)
        if (r.n == n) s += r.dim;
    return s;
}

bool HochschildReport::stable() const {
    for (const auto& r : rows)
        if (!r.stable) return false;
    return true;
}

HochschildReport hochschild_cohomology(const ChainComplex& c, int N) {
    if (c.side != Side::Bimodule || c.augmentation != AugmentationKind::AlgebraItself)
        throw SpecMismatch("Hochschild cohomology needs a bimodule resolution of the algebra");
    HochschildReport rep;
    rep.graded = homogeneous(c);
    rep.cutoff = N;
    rep.top = top_degree(c);
    BasisCache cache(*c.algebra);
    if (rep.graded) {
        for (int n = 0; n <= rep.top; ++n)
            for (int d = 0; d <= N; ++d) {
                const int w = d - n;
                const Cochains prev = cochains(c, cache, n - 1, w, w);
                const Cochains mid = cochains(c, cache, n, w, w);
                const Cochains next = cochains(c, cache, n + 1, w, w);
                long long dim = static_cast<long long>(mid.basis.size());
                if (dim > 0) {
                    dim -= static_cast<long long>(rank(codifferential(c, n, mid, next)));
                    if (n >= 1) dim -= static_cast<long long>(rank(codifferential(c, n - 1, prev, mid)));
                }
                rep.rows.push_back({n, d, dim, true});
            }
        return rep;
    }
    int max_label = 0;
    for (const auto& ls : c.labels)
        for (const auto& l : ls) max_label = std::max(max_label, l.degree);
    for (int n = 0; n <= rep.top; ++n) {
        const long long at_n = windowed_cohomology(c, cache, n, N, max_label);
        const long long at_n2 = windowed_cohomology(c, cache, n, N + 2, max_label);
        rep.rows.push_back({n, N, at_n, at_n == at_n2});
    }
    return rep;
}

std::vector<std::vector<long long>> kunneth_convolution(const HochschildReport& a, const HochschildReport& b, int top,
                                                        int N) {
    if (!a.graded || !b.graded) throw SpecMismatch("Kunneth convolution needs graded reports");
    std::vector<std::vector<long long>> out(top + 1, std::vector<long long>(N + 1, 0));
    for (int n = 0; n <= top; ++n)
        for (int d = 0; d <= N; ++d)
            for (int n1 = 0; n1 <= n; ++n1)
                for (int d1 = 0; d1 <= d; ++d1) out[n][d] += a.dim(n1, d1) * b.dim(n - n1, d - d1);
    return out;
}

SparseMatrix reduced_differential(const ChainComplex& c, int n) {
    const Algebra& a = *c.algebra;
    SparseMatrix m(c.labels[n - 1].size(), c.labels[n].size(), a.field());
    for (std::size_t l = 0; l < c.labels[n].size(); ++l)
        for (const auto& [t, v] : c.differential[n][l].terms) {
            Scalar e = v * a.augmentation(t.left);
            if (c.side == Side::Bimodule) e *= a.augmentation(t.right);
            m.add(t.label, l, e);
        }
    return m;
}

namespace {

void check_augmented(const ChainComplex& c) {
    if (c.side != Side::Left || c.augmentation != AugmentationKind::TrivialModule)
        throw SpecMismatch("Tor/Ext over the algebra need a one-sided resolution of k");
}

} // namespace

DerivedDims tor_over_augmented(const ChainComplex& c) {
    check_augmented(c);
    DerivedDims out;
    const int top = top_degree(c);
    std::vector<std::size_t> ranks(c.n_max() + 2, 0);
    for (int n = 1; n <= c.n_max(); ++n) ranks[n] = rank(reduced_differential(c, n));
    for (int n = 0; n <= top; ++n)
        out.dims.push_back(static_cast<long long>(c.labels[n].size()) - static_cast<long long>(ranks[n]) -
                           static_cast<long long>(ranks[n + 1]));
    return out;
}

DerivedDims ext_over_augmented(const ChainComplex& c) {
    check_augmented(c);
    DerivedDims out;
    const int top = top_degree(c);
    // delta^{n-1} = (d_n)^T : Hom(V_{n-1}, k) -> Hom(V_n, k)
    std::vector<std::size_t> ranks(c.n_max() + 2, 0);
    for (int n = 1; n <= c.n_max(); ++n) ranks[n] = rank(reduced_differential(c, n).transpose());
    for (int n = 0; n <= top; ++n)
        out.dims.push_back(static_cast<long long>(c.labels[n].size()) - static_cast<long long>(ranks[n + 1]) -
                           static_cast<long long>(ranks[n]));
    return out;
}

} // namespace twistres
