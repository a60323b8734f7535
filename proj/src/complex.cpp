#include "twistres/complex.hpp"

#include "twistres/errors.hpp"

#include <algorithm>
#include <exception>
#include <map>

namespace twistres {

void ModuleElement::add(const Term& t, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(t);
    if (it == terms.end()) {
        terms.emplace(t, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

void ModuleElement::add(const ModuleElement& o, const Scalar& c) {
    for (const auto& [t, v] : o.terms) add(t, v * c);
}

Term ChainComplex::generator(int label) const { return Term{algebra->one(), label, algebra->one()}; }

int ChainComplex::find_label(int n, const std::vector<int>& key) const {
    if (n < 0 || n > n_max()) return -1;
    const auto& ls = labels[n];
    for (std::size_t i = 0; i < ls.size(); ++i)
        if (ls[i].key == key) return static_cast<int>(i);
    return -1;
}

std::string ChainComplex::format(int n, const ModuleElement& m) const {
    if (m.is_zero()) return "0";
    std::string out;
    for (const auto& [t, c] : m.terms) {
        if (!out.empty()) out += " + ";
        if (!c.is_one()) out += c.to_string() + "*";
        out += algebra->format(t.left) + "⊗[" + labels[n][t.label].name + "]";
        if (side == Side::Bimodule) out += "⊗" + algebra->format(t.right);
    }
    return out;
}

ModuleElement act_left(const ChainComplex& c, const Element& lambda, const ModuleElement& m) {
    const Algebra& a = *c.algebra;
    ModuleElement out;
    for (const auto& [t, v] : m.terms)
        for (const auto& [lm, lc] : lambda.terms())
            for (const auto& [p, pc] : a.multiply(lm, t.left).terms()) out.add(Term{p, t.label, t.right}, v * lc * pc);
    return out;
}

ModuleElement act_right(const ChainComplex& c, const ModuleElement& m, const Element& lambda) {
    if (c.side != Side::Bimodule) throw SpecMismatch("right action on a left module");
    const Algebra& a = *c.algebra;
    ModuleElement out;
    for (const auto& [t, v] : m.terms)
        for (const auto& [lm, lc] : lambda.terms())
            for (const auto& [p, pc] : a.multiply(t.right, lm).terms()) out.add(Term{t.left, t.label, p}, v * lc * pc);
    return out;
}

ModuleElement apply_differential(const ChainComplex& c, int n, const ModuleElement& m) {
    if (n < 1 || n > c.n_max()) throw SpecMismatch("no differential in degree " + std::to_string(n));
    const Algebra& a = *c.algebra;
    const auto& d = c.differential[n];
    ModuleElement out;
    for (const auto& [t, v] : m.terms) {
        for (const auto& [s, w] : d.at(t.label).terms) {
            const Element left = a.multiply(t.left, s.left);
            if (c.side == Side::Left) {
                for (const auto& [p, pc] : left.terms()) out.add(Term{p, s.label, a.one()}, v * w * pc);
                continue;
            }
            const Element right = a.multiply(s.right, t.right);
            for (const auto& [p, pc] : left.terms())
                for (const auto& [q, qc] : right.terms()) out.add(Term{p, s.label, q}, v * w * pc * qc);
        }
    }
    return out;
}

Element apply_augmentation(const ChainComplex& c, const ModuleElement& m) {
    const Algebra& a = *c.algebra;
    Element out = a.zero();
    for (const auto& [t, v] : m.terms) {
        const Element& img = c.augmentation_images.at(t.label);
        if (c.augmentation == AugmentationKind::TrivialModule) {
            out += img.scaled(v * a.augmentation(t.left));
        } else {
            out += a.multiply(a.multiply(a.element(t.left), img), a.element(t.right)).scaled(v);
        }
    }
    return out;
}

ComposeReport compose_check(const ChainComplex& c) {
    ComposeReport report;
    for (int n = 1; n <= c.n_max(); ++n) {
        for (std::size_t l = 0; l < c.labels[n].size(); ++l) {
            ++report.labels_checked;
            const ModuleElement& dl = c.differential[n][l];
            std::string residue;
            if (n == 1) {
                const Element e = apply_augmentation(c, dl);
                if (!e.is_zero()) residue = e.to_string();
            } else {
                const ModuleElement dd = apply_differential(c, n - 1, dl);
                if (!dd.is_zero()) residue = c.format(n - 2, dd);
            }
            if (!residue.empty()) report.violations.push_back({n, c.labels[n][l].name, residue});
        }
    }
    return report;
}

namespace {

int term_degree(const ChainComplex& c, int n, const Term& t) {
    const Algebra& a = *c.algebra;
    int d = a.degree(t.left);
    if (n >= 0) d += c.labels[n][t.label].degree;
    if (c.side == Side::Bimodule && n >= 0) d += a.degree(t.right);
    return d;
}

} // namespace

TruncatedComplex truncate(const ChainComplex& c, int N) {
    if (N < 0) throw ValidationError("negative cutoff");
    const Algebra& a = *c.algebra;
    TruncatedComplex tc;
    tc.cutoff = N;
    const int top = c.n_max();
    tc.bases.resize(top + 2);
    tc.degrees.resize(top + 2);

    // spot -1: the resolved object
    if (c.augmentation == AugmentationKind::TrivialModule) {
        tc.bases[0].push_back(Term{a.one(), -1, a.one()});
        tc.degrees[0].push_back(0);
    } else {
        for (const auto& m : a.basis_up_to(N)) {
            tc.bases[0].push_back(Term{m, -1, a.one()});
            tc.degrees[0].push_back(a.degree(m));
        }
    }
    for (int n = 0; n <= top; ++n) {
        auto& basis = tc.bases[n + 1];
        for (std::size_t l = 0; l < c.labels[n].size(); ++l) {
            const int ld = c.labels[n][l].degree;
            if (ld > N) continue;
            for (const auto& p : a.basis_up_to(N - ld)) {
                const int rest = N - ld - a.degree(p);
                if (c.side == Side::Left) {
                    basis.push_back(Term{p, static_cast<int>(l), a.one()});
                    continue;
                }
                for (const auto& q : a.basis_up_to(rest)) basis.push_back(Term{p, static_cast<int>(l), q});
            }
        }
        for (const auto& t : basis) tc.degrees[n + 1].push_back(term_degree(c, n, t));
    }

    // maps[n]: spot n -> spot n - 1
    tc.maps.reserve(top + 1);
    for (int n = 0; n <= top; ++n) {
        const auto& cols = tc.bases[n + 1];
        const auto& rows = tc.bases[n];
        std::map<Term, std::size_t> row_index;
        for (std::size_t r = 0; r < rows.size(); ++r) row_index.emplace(rows[r], r);

        std::vector<std::vector<std::pair<std::size_t, Scalar>>> columns(cols.size());
        std::exception_ptr failure;
        const long ncols = static_cast<long>(cols.size());
#pragma omp parallel for schedule(dynamic, 8)
        for (long j = 0; j < ncols; ++j) {
            try {
                const Term& t = cols[j];
                const int cdeg = tc.degrees[n + 1][j];
                ModuleElement single;
                single.add(t, a.field().one());
                std::vector<std::pair<Term, Scalar>> image;
                if (n == 0) {
                    const Element e = apply_augmentation(c, single);
                    for (const auto& [m, v] : e.terms()) {
                        if (c.augmentation == AugmentationKind::TrivialModule)
                            image.emplace_back(Term{a.one(), -1, a.one()}, v);
                        else
                            image.emplace_back(Term{m, -1, a.one()}, v);
                    }
                } else {
                    for (const auto& [s, v] : apply_differential(c, n, single).terms) image.emplace_back(s, v);
                }
                for (const auto& [s, v] : image) {
                    const int rdeg = n == 0 && c.augmentation == AugmentationKind::TrivialModule
                                         ? 0
                                         : term_degree(c, n - 1, s);
                    if (rdeg > cdeg)
                        throw DegreeRaising("d_" + std::to_string(n) + " raises degree " + std::to_string(cdeg) +
                                            " to " + std::to_string(rdeg) + " (" + c.name + ")");
                    columns[j].emplace_back(row_index.at(s), v);
                }
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        SparseMatrix m(rows.size(), cols.size(), a.field());
        for (std::size_t j = 0; j < columns.size(); ++j)
            for (const auto& [r, v] : columns[j]) m.add(r, j, v);
        tc.maps.push_back(std::move(m));
    }
    return tc;
}

int max_degree_drop(const SparseMatrix& m, const std::vector<int>& col_deg, const std::vector<int>& row_deg,
                    int col_limit) {
    int drop = 0;
    for (const auto& e : m.entries())
        if (col_deg[e.col] <= col_limit) drop = std::max(drop, col_deg[e.col] - row_deg[e.row]);
    return drop;
}

namespace {

std::vector<std::size_t> indices_where(const std::vector<int>& deg, int lo, int hi) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < deg.size(); ++i)
        if (deg[i] >= lo && deg[i] <= hi) out.push_back(i);
    return out;
}

} // namespace

long long windowed_homology(int N, int M, const std::vector<int>& mid_deg, const SparseMatrix* d_in,
                            const std::vector<int>* in_col_deg, const SparseMatrix* d_out) {
    const auto low = indices_where(mid_deg, 0, N);
    long long h = static_cast<long long>(low.size());
    if (d_out) h -= static_cast<long long>(rank(d_out->select_cols(low)));
    if (d_in) {
        const auto cols = indices_where(*in_col_deg, 0, M);
        const auto high = indices_where(mid_deg, N + 1, 1 << 30);
        const SparseMatrix sub = d_in->select_cols(cols);
        h -= static_cast<long long>(rank(sub));
        h += static_cast<long long>(rank(sub.select_rows(high)));
    }
    return h;
}

bool ExactnessReport::exact() const {
    for (const auto& e : entries)
        if (e.dim != 0) return false;
    return composes && h0 == module_dim;
}

namespace {

struct Window {
    TruncatedComplex tc;
    int shift = 0;
};

// Preimages are taken up to degree M = N + s, s the largest degree drop of
// d_n (n >= 1) on columns of degree <= N: a chain of degree D lands no lower
// than D - s. The augmentation is left out: its preimages of degree <= N
// already reach everything of degree <= N.
Window prepare_window(const ChainComplex& c, int N) {
    Window w;
    w.tc = truncate(c, N);
    for (int n = 1; n <= c.n_max(); ++n)
        w.shift = std::max(w.shift, max_degree_drop(w.tc.maps[n], w.tc.degrees[n + 1], w.tc.degrees[n], N));
    if (w.shift > 0) w.tc = truncate(c, N + w.shift);
    return w;
}

} // namespace

ExactnessReport exactness_report(const ChainComplex& c, int N) {
    ExactnessReport rep;
    rep.cutoff = N;
    const int top_spot = c.bounded ? c.n_max() : c.n_max() - 1;
    rep.top_degree = top_spot;
    const Window w = prepare_window(c, N);
    const TruncatedComplex& tc = w.tc;
    rep.shift = w.shift;
    const int M = N + w.shift;
    for (int n = 1; n <= c.n_max() && rep.composes; ++n)
        rep.composes = tc.maps[n - 1].multiply(tc.maps[n]).is_zero();

    // spot s has basis tc.bases[s + 1]; maps[s] leaves spot s
    for (int s = -1; s <= top_spot; ++s) {
        const SparseMatrix* d_out = s >= 0 ? &tc.maps[s] : nullptr;
        const SparseMatrix* d_in = s + 1 <= c.n_max() ? &tc.maps[s + 1] : nullptr;
        const std::vector<int>* in_deg = d_in ? &tc.degrees[s + 2] : nullptr;
        rep.entries.push_back({s, windowed_homology(N, M, tc.degrees[s + 1], d_in, in_deg, d_out)});
    }
    const SparseMatrix* d1 = c.n_max() >= 1 ? &tc.maps[1] : nullptr;
    rep.h0 = windowed_homology(N, M, tc.degrees[1], d1, d1 ? &tc.degrees[2] : nullptr, nullptr);
    rep.module_dim = static_cast<long long>(indices_where(tc.degrees[0], 0, N).size());
    return rep;
}

std::vector<std::pair<long long, long long>> degree0_profile(const ChainComplex& c, int N) {
    const Window w = prepare_window(c, N);
    const TruncatedComplex& tc = w.tc;
    const SparseMatrix* d1 = c.n_max() >= 1 ? &tc.maps[1] : nullptr;
    std::vector<std::pair<long long, long long>> out;
    for (int d = 0; d <= N; ++d)
        out.emplace_back(windowed_homology(d, d + w.shift, tc.degrees[1], d1, d1 ? &tc.degrees[2] : nullptr, nullptr),
                         static_cast<long long>(indices_where(tc.degrees[0], 0, d).size()));
    return out;
}

} // namespace twistres
