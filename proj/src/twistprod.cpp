#include "twistres/twistprod.hpp"

#include "twistres/errors.hpp"
#include "twistres/wedge.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <functional>
#include <limits>
#include <random>
#include <set>

namespace twistres {

namespace {

void x_add(XElement& x, const Term& p, const Term& q, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = x.find({p, q});
    if (it == x.end()) {
        x.emplace(std::make_pair(p, q), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) x.erase(it);
    }
}

int term_degree(const ChainComplex& c, int n, const Term& t) {
    const Algebra& a = *c.algebra;
    int d = a.degree(t.left) + c.labels[n][t.label].degree;
    if (c.side == Side::Bimodule) d += a.degree(t.right);
    return d;
}

ModuleElement single(const Term& t, const Scalar& c) {
    ModuleElement m;
    m.add(t, c);
    return m;
}

bool is_wedge_family(Family f) {
    return f == Family::PolyKoszul || f == Family::OreKoszul || f == Family::OneSidedKoszul;
}

} // namespace

struct TwistedBicomplex::Solver {
    explicit Solver(Field f) : echelon(f) {}
    std::mutex mutex;
    std::map<std::pair<Term, Term>, std::size_t> rows;
    ColumnEchelon echelon;
    std::vector<Term> columns;  // lambda (x) (li, lj) (x) lambda'
    std::size_t inserted = 0;
    int done = -1;              // columns of degree <= done are inserted
};

TwistedBicomplex::TwistedBicomplex(ResolutionBundle p, ResolutionBundle q, TwistPtr tau, TwistedProductOptions options)
    : p_(std::move(p)), q_(std::move(q)), tau_(std::move(tau)), options_(options) {
    const ChainComplex& pc = *p_.complex;
    const ChainComplex& qc = *q_.complex;
    if (pc.side != qc.side) throw SpecMismatch("twisted product of a bimodule and a one-sided resolution");
    one_sided_ = pc.side == Side::Left;
    if (pc.algebra.get() != tau_->left().get()) throw SpecMismatch("P is not a resolution over tau's left factor");
    if (qc.algebra.get() != tau_->right().get()) throw SpecMismatch("Q is not a resolution over tau's right factor");
    if (!p_.left_lift) throw MissingLift("no lift of " + tau_->right()->name() + " across " + pc.name);
    if (!one_sided_ && !q_.right_lift) throw MissingLift("no lift of " + tau_->left()->name() + " across " + qc.name);
    lambda_ = Algebra::twisted_product(tau_);
}

XElement TwistedBicomplex::generator(int li, int lj) const {
    XElement x;
    x_add(x, p_.complex->generator(li), q_.complex->generator(lj), lambda_->field().one());
    return x;
}

XElement TwistedBicomplex::act_left(const Monomial& lambda, int i, const XElement& x) const {
    const Algebra& a = *tau_->left();
    const Algebra& b = *tau_->right();
    const Monomial alpha = lambda_->left_part(lambda);
    const Monomial beta = lambda_->right_part(lambda);
    XElement out;
    for (const auto& [pq, c] : x) {
        const auto& [p, q] = pq;
        for (const auto& [pb, c1] : p_.left_lift->apply(beta, i, p)) {
            const auto& [p1, b1] = pb;
            const Element left = a.multiply(alpha, p1.left);
            const Element right = b.multiply(b1, q.left);
            for (const auto& [am, ac] : left.terms())
                for (const auto& [bm, bc] : right.terms())
                    x_add(out, Term{am, p1.label, p1.right}, Term{bm, q.label, q.right}, c * c1 * ac * bc);
        }
    }
    return out;
}

XElement TwistedBicomplex::act_right(int j, const XElement& x, const Monomial& lambda) const {
    if (one_sided_) throw SpecMismatch("right action on a one-sided product");
    const Algebra& a = *tau_->left();
    const Algebra& b = *tau_->right();
    const Monomial alpha = lambda_->left_part(lambda);
    const Monomial beta = lambda_->right_part(lambda);
    XElement out;
    for (const auto& [pq, c] : x) {
        const auto& [p, q] = pq;
        for (const auto& [aq, c1] : q_.right_lift->apply(j, q, alpha)) {
            const auto& [a1, q1] = aq;
            const Element left = a.multiply(p.right, a1);
            const Element right = b.multiply(q1.right, beta);
            for (const auto& [am, ac] : left.terms())
                for (const auto& [bm, bc] : right.terms())
                    x_add(out, Term{p.left, p.label, am}, Term{q1.left, q1.label, bm}, c * c1 * ac * bc);
        }
    }
    return out;
}

XElement TwistedBicomplex::phi(int i, int j, int li, int lj, const Monomial& lambda, const Monomial& lambda_right) const {
    XElement x = act_left(lambda, i, generator(li, lj));
    if (!one_sided_) x = act_right(j, x, lambda_right);
    return x;
}

XElement TwistedBicomplex::horizontal(int i, const XElement& x) const {
    XElement out;
    for (const auto& [pq, c] : x)
        for (const auto& [p1, c1] : apply_differential(*p_.complex, i, single(pq.first, c)).terms)
            x_add(out, p1, pq.second, c1);
    return out;
}

XElement TwistedBicomplex::vertical(int j, const XElement& x) const {
    XElement out;
    for (const auto& [pq, c] : x)
        for (const auto& [q1, c1] : apply_differential(*q_.complex, j, single(pq.second, c)).terms)
            x_add(out, pq.first, q1, c1);
    return out;
}

int TwistedBicomplex::degree(int i, int j, const XElement& x) const {
    int d = 0;
    for (const auto& [pq, c] : x)
        d = std::max(d, term_degree(*p_.complex, i, pq.first) + term_degree(*q_.complex, j, pq.second));
    return d;
}

std::string TwistedBicomplex::format(int i, int j, const XElement& x) const {
    if (x.empty()) return "0";
    std::string out;
    for (const auto& [pq, c] : x) {
        if (!out.empty()) out += " + ";
        if (!c.is_one()) out += c.to_string() + "*";
        out += "(" + p_.complex->format(i, single(pq.first, lambda_->field().one())) + ")⊗(" +
               q_.complex->format(j, single(pq.second, lambda_->field().one())) + ")";
    }
    return out;
}

TwistedBicomplex::Solver& TwistedBicomplex::solver(int i, int j) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto& s = solvers_[{i, j}];
    if (!s) s = std::make_unique<Solver>(lambda_->field());
    return *s;
}

ModuleElement TwistedBicomplex::decompose(int i, int j, const XElement& x) const {
    ModuleElement out;
    if (x.empty()) return out;
    Solver& s = solver(i, j);
    std::lock_guard<std::mutex> lock(s.mutex);
    const auto& pl = p_.complex->labels[i];
    const auto& ql = q_.complex->labels[j];
    const int nq = static_cast<int>(ql.size());
    // free basis elements lambda (x) g (x) lambda', added one total degree at a time
    for (int d = s.done + 1; d <= degree(i, j, x); ++d) {
        const auto basis = lambda_->basis_up_to(d);
        for (int li = 0; li < static_cast<int>(pl.size()); ++li)
            for (int lj = 0; lj < nq; ++lj) {
                const int e = pl[li].degree + ql[lj].degree;
                if (e > d) continue;
                for (const auto& l : basis) {
                    const int dl = lambda_->degree(l);
                    if (one_sided_) {
                        if (dl == d - e) s.columns.push_back(Term{l, li * nq + lj, lambda_->one()});
                        continue;
                    }
                    if (dl > d - e) continue;
                    for (const auto& r : basis)
                        if (lambda_->degree(r) == d - e - dl) s.columns.push_back(Term{l, li * nq + lj, r});
                }
            }
        for (std::size_t id = s.inserted; id < s.columns.size(); ++id) {
            const Term& t = s.columns[id];
            SparseVector col;
            for (const auto& [pq, c] : phi(i, j, t.label / nq, t.label % nq, t.left, t.right)) {
                auto [it, fresh] = s.rows.emplace(pq, s.rows.size());
                col.emplace(it->second, c);
            }
            s.echelon.insert(id, col);
        }
        s.inserted = s.columns.size();
        s.done = d;
    }
    SparseVector target;
    for (const auto& [pq, c] : x) {
        auto it = s.rows.find(pq);
        if (it == s.rows.end())
            throw NonInvertibleTruncation("X_" + std::to_string(i) + "," + std::to_string(j) + ": " + format(i, j, x) +
                                          " is outside the span of the free basis");
        target.emplace(it->second, c);
    }
    auto combo = s.echelon.solve(target);
    if (!combo)
        throw NonInvertibleTruncation("X_" + std::to_string(i) + "," + std::to_string(j) + ": " + format(i, j, x) +
                                      " is outside the span of the free basis");
    for (const auto& [id, c] : *combo) out.add(s.columns[id], c);
    return out;
}

namespace {

TotalComplex build_total(std::shared_ptr<const TwistedBicomplex> bc) {
    const ChainComplex& pc = *bc->left().complex;
    const ChainComplex& qc = *bc->right().complex;
    const Algebra& lambda = *bc->algebra();
    const Field f = lambda.field();

    int n_max = 0;
    bool bounded = pc.bounded && qc.bounded;
    if (bounded) {
        n_max = pc.n_max() + qc.n_max();
    } else {
        n_max = std::numeric_limits<int>::max();
        if (!pc.bounded) n_max = std::min(n_max, pc.n_max());
        if (!qc.bounded) n_max = std::min(n_max, qc.n_max());
    }

    auto c = std::make_shared<ChainComplex>();
    c->algebra = bc->algebra();
    c->side = pc.side;
    c->augmentation = pc.augmentation;
    c->bounded = bounded;
    c->name = pc.name + " ⊗τ " + qc.name;
    c->labels.resize(n_max + 1);
    c->differential.resize(n_max + 1);

    TotalComplex out;
    out.provenance.resize(n_max + 1);
    // (n, i, li, lj) -> total label
    std::vector<std::map<std::array<int, 3>, int>> index(n_max + 1);
    for (int n = 0; n <= n_max; ++n)
        for (int i = 0; i <= std::min(n, pc.n_max()); ++i) {
            const int j = n - i;
            if (j > qc.n_max()) continue;
            for (int li = 0; li < static_cast<int>(pc.labels[i].size()); ++li)
                for (int lj = 0; lj < static_cast<int>(qc.labels[j].size()); ++lj) {
                    const Label& a = pc.labels[i][li];
                    const Label& b = qc.labels[j][lj];
                    index[n][{i, li, lj}] = static_cast<int>(c->labels[n].size());
                    c->labels[n].push_back(Label{{i, j, li, lj}, a.degree + b.degree, a.name + ";" + b.name});
                    out.provenance[n].push_back(TotalLabel{i, j, li, lj});
                }
        }

    // augmentation: eps_P (x) eps_Q read in A (x) B
    for (const auto& t : out.provenance[0]) {
        Element img(c->algebra.get());
        for (const auto& [am, ac] : pc.augmentation_images.at(t.left).terms())
            for (const auto& [bm, bcf] : qc.augmentation_images.at(t.right).terms())
                img.add(lambda.combine(am, bm), ac * bcf);
        c->augmentation_images.push_back(img);
    }

    auto to_total = [&](int n, int i, int j, const ModuleElement& m, const Scalar& sign, ModuleElement& acc) {
        const int nq = static_cast<int>(qc.labels[j].size());
        for (const auto& [t, v] : m.terms) {
            const int label = index[n].at({i, t.label / nq, t.label % nq});
            acc.add(Term{t.left, label, t.right}, v * sign);
        }
    };

    for (int n = 1; n <= n_max; ++n) {
        const auto& prov = out.provenance[n];
        std::vector<ModuleElement> d(prov.size());
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
        for (std::size_t l = 0; l < prov.size(); ++l) {
            try {
                const TotalLabel& t = prov[l];
                const XElement g = bc->generator(t.left, t.right);
                ModuleElement acc;
                if (t.i >= 1)
                    to_total(n - 1, t.i - 1, t.j, bc->decompose(t.i - 1, t.j, bc->horizontal(t.i, g)), f.one(), acc);
                if (t.j >= 1) {
                    const bool negative = bc->options().vertical_sign && t.i % 2 == 1;
                    to_total(n - 1, t.i, t.j - 1, bc->decompose(t.i, t.j - 1, bc->vertical(t.j, g)),
                             negative ? f.from(-1) : f.one(), acc);
                }
                d[l] = std::move(acc);
            } catch (...) {
#pragma omp critical(twistprod_error)
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
        c->differential[n] = std::move(d);
    }
    out.complex = c;
    out.bicomplex = std::move(bc);
    return out;
}

} // namespace

TotalComplex bimodule_twisted_product(const ResolutionBundle& p, const ResolutionBundle& q, TwistPtr tau,
                                      TwistedProductOptions options) {
    if (p.complex->side != Side::Bimodule || q.complex->side != Side::Bimodule)
        throw SpecMismatch("bimodule_twisted_product needs bimodule resolutions");
    return build_total(std::make_shared<TwistedBicomplex>(p, q, std::move(tau), options));
}

TotalComplex one_sided_twisted_product(const ResolutionBundle& p, const ResolutionBundle& q, TwistPtr tau,
                                       TwistedProductOptions options) {
    if (p.complex->side != Side::Left || q.complex->side != Side::Left)
        throw SpecMismatch("one_sided_twisted_product needs one-sided resolutions");
    return build_total(std::make_shared<TwistedBicomplex>(p, q, std::move(tau), options));
}

namespace {

std::vector<int> wedge_key(const TotalComplex& t, int n, int label, int offset) {
    const TwistedBicomplex& bc = *t.bicomplex;
    const TotalLabel& tl = t.provenance[n][label];
    std::vector<int> key = bc.left().complex->labels[tl.i][tl.left].key;
    for (int k : bc.right().complex->labels[tl.j][tl.right].key) key.push_back(k + offset);
    std::sort(key.begin(), key.end());
    return key;
}

} // namespace

WedgeComparison compare_with_wedge(const TotalComplex& t, const ChainComplex& koszul) {
    WedgeComparison out;
    const ChainComplex& c = *t.complex;
    const TwistedBicomplex& bc = *t.bicomplex;
    if (!is_wedge_family(bc.left().family) || !is_wedge_family(bc.right().family))
        throw SpecMismatch("wedge comparison needs Koszul-type factors");
    if (c.algebra->nvars() != koszul.algebra->nvars() || c.side != koszul.side) {
        out.labels_match = false;
        out.mismatches.push_back("algebras or sides differ");
        return out;
    }
    const int offset = static_cast<int>(bc.left().complex->algebra->nvars());
    if (c.n_max() != koszul.n_max()) {
        out.labels_match = false;
        out.mismatches.push_back("n_max " + std::to_string(c.n_max()) + " vs " + std::to_string(koszul.n_max()));
    }
    const int top = std::min(c.n_max(), koszul.n_max());
    for (int n = 0; n <= top; ++n) {
        if (c.labels[n].size() != koszul.labels[n].size()) {
            out.labels_match = false;
            out.mismatches.push_back("degree " + std::to_string(n) + ": label counts differ");
            continue;
        }
        std::vector<int> to_koszul(c.labels[n].size(), -1);
        std::set<int> seen;
        for (std::size_t l = 0; l < c.labels[n].size(); ++l) {
            to_koszul[l] = koszul.find_label(n, wedge_key(t, n, static_cast<int>(l), offset));
            if (to_koszul[l] < 0 || !seen.insert(to_koszul[l]).second) {
                out.labels_match = false;
                out.mismatches.push_back("degree " + std::to_string(n) + ": no partner for " + c.labels[n][l].name);
            }
        }
        if (!out.labels_match || n == 0) continue;
        std::vector<int> below(c.labels[n - 1].size());
        for (std::size_t l = 0; l < below.size(); ++l)
            below[l] = koszul.find_label(n - 1, wedge_key(t, n - 1, static_cast<int>(l), offset));
        for (std::size_t l = 0; l < c.labels[n].size(); ++l) {
            ModuleElement mapped;
            for (const auto& [term, v] : c.differential[n][l].terms)
                mapped.add(Term{term.left, below[term.label], term.right}, v);
            if (!(mapped == koszul.differential[n][to_koszul[l]])) {
                out.differentials_match = false;
                out.mismatches.push_back("d(" + c.labels[n][l].name + ") = " + koszul.format(n - 1, mapped) + " vs " +
                                         koszul.format(n - 1, koszul.differential[n][to_koszul[l]]));
            }
        }
    }
    return out;
}

XElement OreModuleResolution::psi(int i, int j, const Monomial& lambda, const Term& z) const {
    const TwistedBicomplex& bc = *total.bicomplex;
    XElement x;
    (void)j;  // Q_0 and Q_1 both have a single generator
    x.emplace(std::make_pair(z, bc.right().complex->generator(0)), bc.algebra()->field().one());
    return bc.act_left(lambda, i, x);
}

ModuleElement OreModuleResolution::psi_inverse(int i, int j, const XElement& y) const {
    const TwistedBicomplex& bc = *total.bicomplex;
    const ChainComplex& c = *total.complex;
    const Algebra& lambda = *bc.algebra();
    const Field f = lambda.field();
    const int n = i + j;
    auto label_of = [&](int li) {
        for (std::size_t l = 0; l < total.provenance[n].size(); ++l) {
            const TotalLabel& t = total.provenance[n][l];
            if (t.i == i && t.j == j && t.left == li) return static_cast<int>(l);
        }
        throw SpecMismatch("no total label for (" + std::to_string(i) + "," + std::to_string(j) + ")");
    };
    const Element x = lambda.element(lambda.combine(bc.left().complex->algebra->one(), kx->generator(0)));
    // inv(z, m) with z = r (x) L a basis term of P_i
    std::map<std::pair<Term, int>, ModuleElement> memo;
    std::function<ModuleElement(const Term&, int)> inv = [&](const Term& z, int m) -> ModuleElement {
        auto it = memo.find({z, m});
        if (it != memo.end()) return it->second;
        ModuleElement out;
        if (m == 0) {
            out.add(Term{lambda.combine(z.left, kx->one()), label_of(z.label), lambda.one()}, f.one());
        } else {
            out = act_left(c, x, inv(z, m - 1));
            ModuleElement zz;
            zz.add(z, f.one());
            for (const auto& [z1, c1] : sigma_delta.apply(i, zz).terms) out.add(inv(z1, m - 1), -c1);
        }
        memo.emplace(std::make_pair(z, m), out);
        return out;
    };
    ModuleElement out;
    for (const auto& [pq, v] : y) {
        const auto& [z, q] = pq;
        if (q.label != 0) throw SpecMismatch("psi_inverse: unexpected Q label");
        out.add(inv(z, q.left[0]), v);
    }
    return out;
}

OreModuleResolution ore_module_resolution(const ResolutionBundle& r_bundle, std::vector<LinearForm> delta,
                                          const std::string& x_name) {
    const AlgebraPtr& r = r_bundle.complex->algebra;
    if (!is_wedge_family(r_bundle.family) || r_bundle.complex->side != Side::Left)
        throw SpecMismatch("ore_module_resolution needs a one-sided wedge resolution of k");
    OreModuleResolution out{{}, sigma_delta_chain_maps(r_bundle, delta), delta, Algebra::polynomial(r->field(), {x_name})};
    auto tau = TwistMap::ore(r, out.kx, delta);
    const ResolutionBundle p = lift_twist(r_bundle, tau, LiftSide::Left);
    out.total = one_sided_twisted_product(p, one_sided_koszul_kx(out.kx), tau);
    return out;
}

namespace {

AlgebraPtr extended_ore_algebra(const Algebra& r, const std::vector<LinearForm>& delta, const std::string& x_name) {
    const Field f = r.field();
    const std::size_t t = r.nvars();
    auto widen = [&](LinearForm form) {
        form.coeff.resize(t + 1, f.zero());
        return form;
    };
    std::vector<std::string> names = r.names();
    names.push_back(x_name);
    std::vector<std::vector<LinearForm>> table(t + 1);
    for (std::size_t j = 0; j < t; ++j)
        for (std::size_t i = 0; i < j; ++i) table[j].push_back(widen(r.delta_form(j, i)));
    for (const auto& form : delta) table[t].push_back(widen(form));
    return Algebra::iterated_ore(f, names, table);
}

ResolutionBundle wedge_bundle_over(const OreModuleResolution& r, AlgebraPtr target) {
    const TotalComplex& t = r.total;
    const ChainComplex& c = *t.complex;
    const TwistedBicomplex& bc = *t.bicomplex;
    const int offset = static_cast<int>(bc.left().complex->algebra->nvars());
    auto out = std::make_shared<ChainComplex>();
    out->algebra = target;
    out->side = Side::Left;
    out->augmentation = AugmentationKind::TrivialModule;
    out->bounded = c.bounded;
    out->name = "one-sided koszul(" + target->name() + ")";
    out->labels.resize(c.labels.size());
    out->differential.resize(c.labels.size());
    out->augmentation_images = {target->unit()};
    // wedge subsets in lexicographic order; remember where each total label goes
    std::vector<std::vector<int>> where(c.labels.size());
    for (int n = 0; n <= c.n_max(); ++n) {
        std::vector<std::pair<std::vector<int>, int>> keyed;
        for (std::size_t l = 0; l < c.labels[n].size(); ++l)
            keyed.emplace_back(wedge_key(t, n, static_cast<int>(l), offset), static_cast<int>(l));
        std::sort(keyed.begin(), keyed.end());
        where[n].resize(keyed.size());
        for (std::size_t k = 0; k < keyed.size(); ++k) {
            out->labels[n].push_back(Label{keyed[k].first, n, wedge_name(keyed[k].first, target->names())});
            where[n][keyed[k].second] = static_cast<int>(k);
        }
    }
    for (int n = 1; n <= c.n_max(); ++n) {
        out->differential[n].resize(c.labels[n].size());
        for (std::size_t l = 0; l < c.labels[n].size(); ++l) {
            ModuleElement m;
            for (const auto& [term, v] : c.differential[n][l].terms)
                m.add(Term{term.left, where[n - 1][term.label], target->one()}, v);
            out->differential[n][where[n][l]] = std::move(m);
        }
    }
    return ResolutionBundle{out, Family::OneSidedKoszul, "k", {}, {}, {}};
}

} // namespace

ResolutionBundle to_wedge_bundle(const OreModuleResolution& r) {
    const Algebra& base = *r.total.bicomplex->left().complex->algebra;
    return wedge_bundle_over(r, extended_ore_algebra(base, r.delta, r.kx->names()[0]));
}

ResolutionBundle iterated_ore_resolution(const AlgebraPtr& s) {
    if (s->kind() != AlgebraKind::IteratedOre && s->kind() != AlgebraKind::Polynomial)
        throw SpecMismatch("iterated_ore_resolution needs an iterated Ore extension");
    const Field f = s->field();
    const std::size_t t = s->nvars();
    if (t == 0) throw ValidationError("no generators");
    AlgebraPtr r = Algebra::polynomial(f, {s->names()[0]});
    ResolutionBundle b = poly_koszul(r, false);
    if (t == 1) {
        auto c = std::make_shared<ChainComplex>(*b.complex);
        c->algebra = s;
        c->augmentation_images = {s->unit()};
        b.complex = c;
        return b;
    }
    for (std::size_t k = 1; k < t; ++k) {
        std::vector<LinearForm> delta;
        for (std::size_t i = 0; i < k; ++i) {
            LinearForm form = s->delta_form(k, i);
            form.coeff.resize(k, f.zero());
            delta.push_back(form);
        }
        const OreModuleResolution step = ore_module_resolution(b, delta, s->names()[k]);
        r = k + 1 == t ? s : extended_ore_algebra(*r, delta, s->names()[k]);
        b = wedge_bundle_over(step, r);
    }
    return b;
}

Degree0Report kunneth_degree0_check(const TotalComplex& t, int N) {
    Degree0Report rep;
    const auto profile = degree0_profile(*t.complex, N);
    for (int d = 0; d <= N; ++d) rep.rows.push_back({d, profile[d].first, profile[d].second});
    return rep;
}

bool Degree0Report::ok() const {
    for (const auto& r : rows)
        if (r.h0 != r.expected) return false;
    return true;
}

BicomplexCheck anticommutation_check(const TotalComplex& t) {
    const TwistedBicomplex& bc = *t.bicomplex;
    BicomplexCheck out;
    for (int n = 2; n <= t.complex->n_max(); ++n)
        for (const auto& tl : t.provenance[n]) {
            if (tl.i < 1 || tl.j < 1) continue;
            const XElement g = bc.generator(tl.left, tl.right);
            const XElement hv = bc.horizontal(tl.i, bc.vertical(tl.j, g));
            const XElement vh = bc.vertical(tl.j, bc.horizontal(tl.i, g));
            ++out.checked;
            if (hv != vh)
                out.violations.push_back("X_" + std::to_string(tl.i) + "," + std::to_string(tl.j) + ": " +
                                         bc.format(tl.i - 1, tl.j - 1, hv) + " vs " + bc.format(tl.i - 1, tl.j - 1, vh));
        }
    return out;
}

BicomplexCheck action_check(const TotalComplex& t, int bound, int samples, std::uint64_t seed) {
    const TwistedBicomplex& bc = *t.bicomplex;
    const Algebra& lambda = *bc.algebra();
    std::vector<std::pair<Monomial, Monomial>> pool;
    const auto basis = lambda.basis_up_to(bound);
    for (const auto& l : basis) {
        if (bc.one_sided()) {
            pool.emplace_back(l, lambda.one());
            continue;
        }
        for (const auto& r : basis)
            if (lambda.degree(l) + lambda.degree(r) <= bound) pool.emplace_back(l, r);
    }
    std::vector<std::pair<Monomial, Monomial>> chosen = pool;
    if (samples >= 0 && static_cast<std::size_t>(samples) < pool.size()) {
        std::mt19937_64 rng(seed);
        chosen.clear();
        for (int k = 0; k < samples; ++k) chosen.push_back(pool[rng() % pool.size()]);
    }
    auto act = [&](int i, int j, const Monomial& l, const Monomial& r, const XElement& x) {
        XElement y = bc.act_left(l, i, x);
        if (!bc.one_sided()) y = bc.act_right(j, y, r);
        return y;
    };
    BicomplexCheck out;
    for (int n = 1; n <= t.complex->n_max(); ++n)
        for (const auto& tl : t.provenance[n]) {
            const XElement g = bc.generator(tl.left, tl.right);
            for (const auto& [l, r] : chosen) {
                const XElement x = bc.phi(tl.i, tl.j, tl.left, tl.right, l, r);
                ++out.checked;
                if (tl.i >= 1) {
                    const XElement lhs = bc.horizontal(tl.i, x);
                    const XElement rhs = act(tl.i - 1, tl.j, l, r, bc.horizontal(tl.i, g));
                    if (lhs != rhs)
                        out.violations.push_back("horizontal at " + t.complex->labels[n][&tl - &t.provenance[n][0]].name +
                                                 " with " + lambda.format(l) + ", " + lambda.format(r) + ": " +
                                                 bc.format(tl.i - 1, tl.j, lhs) + " vs " + bc.format(tl.i - 1, tl.j, rhs));
                }
                if (tl.j >= 1) {
                    const XElement lhs = bc.vertical(tl.j, x);
                    const XElement rhs = act(tl.i, tl.j - 1, l, r, bc.vertical(tl.j, g));
                    if (lhs != rhs)
                        out.violations.push_back("vertical at " + t.complex->labels[n][&tl - &t.provenance[n][0]].name +
                                                 " with " + lambda.format(l) + ", " + lambda.format(r) + ": " +
                                                 bc.format(tl.i, tl.j - 1, lhs) + " vs " + bc.format(tl.i, tl.j - 1, rhs));
                }
            }
        }
    return out;
}

} // namespace twistres
