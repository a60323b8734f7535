#include "twistres/resolutions.hpp"

#include "twistres/errors.hpp"
#include "twistres/wedge.hpp"

#include <algorithm>
#include <functional>

namespace twistres {

std::string family_name(Family f) {
    switch (f) {
    case Family::Bar: return "bar";
    case Family::ReducedBar: return "reduced-bar";
    case Family::PolyKoszul: return "koszul";
    case Family::CyclicPeriodic: return "cyclic-periodic";
    case Family::OreKoszul: return "ore-koszul";
    case Family::OneSidedKoszul: return "one-sided-koszul";
    }
    return "?";
}

namespace {

std::vector<int> encode(const std::vector<Monomial>& factors) {
    std::vector<int> key;
    for (const auto& m : factors)
        for (std::size_t k = 0; k < m.size; ++k) key.push_back(m[k]);
    return key;
}

// All size-n subsets of {0..t-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int t, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < t; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<std::vector<Label>> wedge_labels(const Algebra& s) {
    const int t = static_cast<int>(s.nvars());
    std::vector<std::vector<Label>> labels(t + 1);
    for (int n = 0; n <= t; ++n)
        for (auto& w : subsets(t, n)) labels[n].push_back(Label{w, n, wedge_name(w, s.names())});
    return labels;
}

std::vector<int> without(const std::vector<int>& l, std::size_t i) {
    std::vector<int> w = l;
    w.erase(w.begin() + static_cast<long>(i));
    return w;
}

// The single sum of the Koszul differential; bimodule or one-sided.
ModuleElement koszul_single_sum(const ChainComplex& c, int n, const std::vector<int>& l, bool skip_first) {
    const Algebra& s = *c.algebra;
    const Field f = s.field();
    ModuleElement d;
    for (std::size_t i = 0; i < l.size(); ++i) {
        const Scalar sign = f.from(i % 2 == 0 ? 1 : -1);
        const int idx = c.find_label(n - 1, without(l, i));
        const Monomial x = s.generator(l[i]);
        if (!(skip_first && i == 0)) d.add(Term{x, idx, s.one()}, sign);
        if (c.side == Side::Bimodule) d.add(Term{s.one(), idx, x}, -sign);
    }
    return d;
}

// L with slot i replaced by the linear part of `form`, re-sorted with sign.
void add_replaced(const ChainComplex& c, int n, const std::vector<int>& l, std::size_t i, const LinearForm& form,
                  const Scalar& scale, const Monomial& left, ModuleElement& out) {
    const Field f = c.algebra->field();
    for (std::size_t k = 0; k < form.coeff.size(); ++k) {
        if (form.coeff[k].is_zero()) continue;
        std::vector<int> w = l;
        w[i] = static_cast<int>(k);
        const int sign = wedge_sort(w);
        if (sign == 0) continue;
        out.add(Term{left, c.find_label(n, w), c.algebra->one()}, scale * form.coeff[k] * f.from(sign));
    }
}

std::shared_ptr<ChainComplex> koszul_shell(AlgebraPtr s, bool bimodule, const std::string& name) {
    auto c = std::make_shared<ChainComplex>();
    c->algebra = s;
    c->side = bimodule ? Side::Bimodule : Side::Left;
    c->augmentation = bimodule ? AugmentationKind::AlgebraItself : AugmentationKind::TrivialModule;
    c->labels = wedge_labels(*s);
    c->differential.resize(c->labels.size());
    c->augmentation_images = {s->unit()};
    c->bounded = true;
    c->name = name;
    return c;
}

} // namespace

ResolutionBundle bar(AlgebraPtr a, int n_max, bool reduced, int label_cutoff) {
    if (n_max < 0) throw ValidationError("bar: negative n_max");
    auto c = std::make_shared<ChainComplex>();
    c->algebra = a;
    c->name = std::string(reduced ? "reduced bar" : "bar") + "(" + a->name() + ")";
    std::vector<Monomial> middle;
    for (const auto& m : a->basis_up_to(label_cutoff))
        if (!(reduced && m.is_unit())) middle.push_back(m);

    c->labels.resize(n_max + 1);
    std::vector<std::map<std::vector<int>, int>> index(n_max + 1);
    std::vector<std::pair<std::vector<Monomial>, int>> level{{{}, 0}};
    for (int n = 0; n <= n_max; ++n) {
        std::vector<std::pair<std::vector<Monomial>, int>> next;
        for (const auto& [tuple, deg] : level) {
            std::string name;
            for (const auto& m : tuple) name += (name.empty() ? "" : "|") + a->format(m);
            index[n][encode(tuple)] = static_cast<int>(c->labels[n].size());
            c->labels[n].push_back(Label{encode(tuple), deg, name.empty() ? "1" : name});
            if (n == n_max) continue;
            for (const auto& m : middle) {
                const int d = deg + a->degree(m);
                if (d > label_cutoff) continue;
                auto t2 = tuple;
                t2.push_back(m);
                next.emplace_back(std::move(t2), d);
            }
        }
        level = std::move(next);
    }

    const Field f = a->field();
    auto lookup = [&](int n, const std::vector<Monomial>& t) {
        auto it = index[n].find(encode(t));
        if (it == index[n].end()) throw CutoffTooSmall("bar label beyond cutoff " + std::to_string(label_cutoff));
        return it->second;
    };
    c->differential.resize(n_max + 1);
    for (int n = 1; n <= n_max; ++n) {
        for (const auto& label : c->labels[n]) {
            std::vector<Monomial> t;
            for (std::size_t i = 0; i < label.key.size(); i += a->nvars()) {
                Monomial m(a->nvars());
                for (std::size_t k = 0; k < a->nvars(); ++k) m[k] = static_cast<std::uint8_t>(label.key[i + k]);
                t.push_back(m);
            }
            ModuleElement d;
            d.add(Term{t.front(), lookup(n - 1, {t.begin() + 1, t.end()}), a->one()}, f.one());
            for (int i = 0; i + 1 < n; ++i) {
                const Scalar sign = f.from(i % 2 == 0 ? -1 : 1);
                for (const auto& [m, v] : a->multiply(t[i], t[i + 1]).terms()) {
                    if (reduced && m.is_unit()) continue;
                    std::vector<Monomial> t2(t.begin(), t.begin() + i);
                    t2.push_back(m);
                    t2.insert(t2.end(), t.begin() + i + 2, t.end());
                    d.add(Term{a->one(), lookup(n - 1, t2), a->one()}, sign * v);
                }
            }
            d.add(Term{a->one(), lookup(n - 1, {t.begin(), t.end() - 1}), t.back()}, f.from(n % 2 == 0 ? 1 : -1));
            c->differential[n].push_back(std::move(d));
        }
    }
    c->augmentation_images = {a->unit()};
    return ResolutionBundle{c, reduced ? Family::ReducedBar : Family::Bar, a->name() + " as a bimodule", {}, {}, {}};
}

ResolutionBundle poly_koszul(AlgebraPtr s, bool bimodule) {
    if (s->kind() != AlgebraKind::Polynomial) throw SpecMismatch("poly_koszul needs a polynomial algebra");
    auto c = koszul_shell(s, bimodule, std::string(bimodule ? "koszul" : "one-sided koszul") + "(" + s->name() + ")");
    for (int n = 1; n <= c->n_max(); ++n)
        for (const auto& label : c->labels[n]) c->differential[n].push_back(koszul_single_sum(*c, n, label.key, false));
    return ResolutionBundle{c, bimodule ? Family::PolyKoszul : Family::OneSidedKoszul,
                            bimodule ? s->name() + " as a bimodule" : "k", {}, {}, {}};
}

ResolutionBundle one_sided_koszul_kx(AlgebraPtr kx) {
    if (kx->kind() != AlgebraKind::Polynomial || kx->nvars() != 1)
        throw SpecMismatch("one_sided_koszul_kx needs k[x]");
    return poly_koszul(std::move(kx), false);
}

ResolutionBundle cyclic_periodic(AlgebraPtr g, int n_max) {
    if (g->kind() != AlgebraKind::CyclicGroup) throw SpecMismatch("cyclic_periodic needs a cyclic group algebra");
    const int p = g->order();
    if (p < 2) throw ValidationError("cyclic_periodic needs order >= 2");
    if (n_max < 0) throw ValidationError("cyclic_periodic: negative n_max");
    const Field f = g->field();
    auto c = std::make_shared<ChainComplex>();
    c->algebra = g;
    c->name = "periodic(" + g->name() + ")";
    c->labels.resize(n_max + 1);
    c->differential.resize(n_max + 1);
    auto power = [&](int e) {
        Monomial m(1);
        m[0] = static_cast<std::uint8_t>(e % p);
        return m;
    };
    for (int n = 0; n <= n_max; ++n) {
        c->labels[n].push_back(Label{{n}, 0, "e" + std::to_string(n)});
        if (n == 0) continue;
        ModuleElement d;
        if (n % 2 == 1) {  // gamma = g (x) 1 - 1 (x) g
            d.add(Term{power(1), 0, power(0)}, f.one());
            d.add(Term{power(0), 0, power(1)}, -f.one());
        } else {  // eta = sum_j g^{p-1-j} (x) g^j
            for (int j = 0; j < p; ++j) d.add(Term{power(p - 1 - j), 0, power(j)}, f.one());
        }
        c->differential[n].push_back(std::move(d));
    }
    c->augmentation_images = {g->unit()};
    return ResolutionBundle{c, Family::CyclicPeriodic, g->name() + " as a bimodule", {}, {}, {}};
}

ResolutionBundle ore_koszul(AlgebraPtr s, OreKoszulOptions options) {
    if (s->kind() != AlgebraKind::IteratedOre && s->kind() != AlgebraKind::Polynomial)
        throw SpecMismatch("ore_koszul needs an iterated Ore extension");
    auto c = koszul_shell(s, true, "ore-koszul(" + s->name() + ")");
    const Field f = s->field();
    for (int n = 1; n <= c->n_max(); ++n)
        for (const auto& label : c->labels[n]) {
            const auto& l = label.key;
            ModuleElement d = koszul_single_sum(*c, n, l, options.drop_d2_term && n == 2);
            for (std::size_t j = 1; j < l.size(); ++j) {
                const Scalar sign = f.from(j % 2 == 1 ? 1 : -1);  // (-1)^{j+1} for 0-based j
                const auto rest = without(l, j);
                for (std::size_t i = 0; i < j; ++i) {
                    const LinearForm form = s->delta_form(l[j], l[i]);
                    add_replaced(*c, n - 1, rest, i, form, sign, s->one(), d);
                }
            }
            c->differential[n].push_back(std::move(d));
        }
    return ResolutionBundle{c, Family::OreKoszul, s->name() + " as a bimodule", {}, {}, {}};
}

ResolutionBundle lift_twist(const ResolutionBundle& bundle, TwistPtr tau, LiftSide side, LiftOptions options) {
    ResolutionBundle out = bundle;
    const ComplexPtr& c = bundle.complex;
    const TwistMap& base = tau->base();
    const bool bar_family = bundle.family == Family::Bar || bundle.family == Family::ReducedBar;
    const bool reduced = bundle.family == Family::ReducedBar;
    const bool wedge_family = bundle.family == Family::PolyKoszul || bundle.family == Family::OreKoszul ||
                              bundle.family == Family::OneSidedKoszul;
    const std::string what = family_name(bundle.family) + " with " + base.description();
    if (side == LiftSide::Left) {
        if (tau->left().get() != c->algebra.get()) throw SpecMismatch("left lift: resolution is not over tau's left factor");
        std::unique_ptr<LeftLabelRule> rule;
        if (base.kind() == TwistKind::Flip)
            rule = transparent_left_rule(c);
        else if (bar_family)
            rule = bar_left_rule(c, tau, reduced);
        else if (base.kind() == TwistKind::Ore && wedge_family)
            rule = ore_label_rule(c, base.derivation().images());
        else if (base.kind() == TwistKind::SkewGroup && bundle.family == Family::CyclicPeriodic)
            rule = periodic_group_rule(c, tau);
        else
            throw OutOfScope("no explicit left lift for " + what);
        auto lift = std::make_shared<LeftLift>(c, tau, std::move(rule));
        if (options.verify) {
            LiftReport rep = check_chain_map(*lift, options.check_bound);
            rep.merge(check_compat(*lift, options.check_bound));
            if (!rep.ok()) {
                const auto& v = rep.violations.front();
                throw ChainMapFailure(v.check + " check failed in degree " + std::to_string(v.degree) + " at " + v.input +
                                      ": " + v.lhs + " != " + v.rhs);
            }
            out.lift_report = rep;
        }
        out.left_lift = lift;
    } else {
        if (tau->right().get() != c->algebra.get())
            throw SpecMismatch("right lift: resolution is not over tau's right factor");
        std::unique_ptr<RightLabelRule> rule;
        if (base.kind() == TwistKind::Flip)
            rule = transparent_right_rule(c);
        else if (bar_family)
            rule = bar_right_rule(c, tau, reduced);
        else if (base.kind() == TwistKind::Ore && wedge_family && c->algebra->nvars() == 1)
            rule = transparent_right_rule(c);
        else if (base.kind() == TwistKind::SkewGroup && bundle.family == Family::PolyKoszul)
            rule = wedge_group_rule(c, tau);
        else
            throw OutOfScope("no explicit right lift for " + what);
        auto lift = std::make_shared<RightLift>(c, tau, std::move(rule));
        if (options.verify) {
            LiftReport rep = check_chain_map(*lift, options.check_bound);
            rep.merge(check_compat(*lift, options.check_bound));
            if (!rep.ok()) {
                const auto& v = rep.violations.front();
                throw ChainMapFailure(v.check + " check failed in degree " + std::to_string(v.degree) + " at " + v.input +
                                      ": " + v.lhs + " != " + v.rhs);
            }
            out.lift_report = rep;
        }
        out.right_lift = lift;
    }
    return out;
}

namespace {

// phi(1 (x) L (x) 1) = sum_pi sgn(pi) 1 (x) x_{l_pi(1)} | ... | x_{l_pi(n)} (x) 1.
ModuleElement symmetrize(const ChainComplex& koszul, const ChainComplex& rbar, int n, const Term& t) {
    const Algebra& a = *koszul.algebra;
    const Field f = a.field();
    std::vector<int> perm = koszul.labels[n][t.label].key;
    ModuleElement out;
    std::sort(perm.begin(), perm.end());
    do {
        std::vector<int> tmp = perm;
        const int sign = wedge_sort(tmp);
        std::vector<Monomial> factors;
        for (int v : perm) factors.push_back(a.generator(v));
        const int idx = rbar.find_label(n, encode(factors));
        if (idx < 0) throw CutoffTooSmall("symmetrized label missing from bar");
        out.add(Term{t.left, idx, t.right}, f.from(sign));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace

LiftReport symmetrization_cross_check(const ResolutionBundle& koszul, int max_degree, int b_bound) {
    if (!koszul.left_lift) throw MissingLift("symmetrization cross-check needs a left lift");
    const ChainComplex& k = *koszul.complex;
    const Algebra& a = *k.algebra;
    const auto& lift = *koszul.left_lift;
    const TwistPtr& tau = lift.twist_ptr();
    const int top = std::min(max_degree, k.n_max());
    auto rbar = bar(k.algebra, top, true, top);
    if (k.side != Side::Bimodule) throw SpecMismatch("symmetrization cross-check needs a bimodule resolution");
    LeftLift bar_lift(rbar.complex, tau, bar_left_rule(rbar.complex, tau, true));
    const Algebra& b = *lift.twist().right();

    LiftReport rep;
    for (int n = 0; n <= top; ++n)
        for (std::size_t l = 0; l < k.labels[n].size(); ++l)
            for (const auto& bm : b.basis_up_to(b_bound)) {
                ++rep.checked;
                const Term g = k.generator(static_cast<int>(l));
                const LeftLiftElement via_bar = bar_lift.apply(bm, n, symmetrize(k, *rbar.complex, n, g));
                // project: read each wedge off its ascending tuple
                LeftLiftElement proj;
                for (const auto& [key, c] : via_bar) {
                    const auto& tuple = rbar.complex->labels[n][key.first.label].key;
                    std::vector<int> w;
                    bool generators = true;
                    for (std::size_t i = 0; i < tuple.size(); i += a.nvars()) {
                        int var = -1, total = 0;
                        for (std::size_t v = 0; v < a.nvars(); ++v) {
                            total += tuple[i + v];
                            if (tuple[i + v] == 1) var = static_cast<int>(v);
                        }
                        if (total != 1) generators = false;
                        w.push_back(var);
                    }
                    if (!generators) throw RestrictionFailure("bar lift leaves the symmetrized subcomplex");
                    if (!std::is_sorted(w.begin(), w.end()) || std::adjacent_find(w.begin(), w.end()) != w.end())
                        continue;
                    const int idx = k.find_label(n, w);
                    lift_add(proj, Term{key.first.left, idx, key.first.right}, key.second, c);
                }
                // the projection must reproduce the bar image exactly
                LeftLiftElement back;
                for (const auto& [key, c] : proj) {
                    ModuleElement m = symmetrize(k, *rbar.complex, n, key.first);
                    for (const auto& [t, v] : m.terms) lift_add(back, t, key.second, c * v);
                }
                if (back != via_bar) throw RestrictionFailure("bar lift of a symmetrized wedge is not symmetric");
                const LeftLiftElement& closed = lift.apply(bm, n, g);
                if (closed != proj)
                    rep.violations.push_back({"symmetrization", n, b.format(bm) + "⊗[" + k.labels[n][l].name + "]",
                                              format_lift(k, b, n, closed), format_lift(k, b, n, proj)});
            }
    return rep;
}

LiftReport bar_quotient_check(AlgebraPtr a, TwistPtr tau, int n_max, int label_cutoff, int b_bound) {
    auto full = bar(a, n_max, false, label_cutoff);
    auto red = bar(a, n_max, true, label_cutoff);
    LeftLift lf(full.complex, tau, bar_left_rule(full.complex, tau, false));
    LeftLift lr(red.complex, tau, bar_left_rule(red.complex, tau, true));
    const Algebra& b = *tau->right();
    LiftReport rep;
    for (int n = 0; n <= n_max; ++n)
        for (std::size_t l = 0; l < red.complex->labels[n].size(); ++l) {
            const int fl = full.complex->find_label(n, red.complex->labels[n][l].key);
            for (const auto& bm : b.basis_up_to(b_bound)) {
                ++rep.checked;
                LeftLiftElement q;
                for (const auto& [key, c] : lf.apply(bm, n, full.complex->generator(fl))) {
                    const int rl = red.complex->find_label(n, full.complex->labels[n][key.first.label].key);
                    if (rl < 0) continue;  // a unit middle factor: zero in the quotient
                    lift_add(q, Term{key.first.left, rl, key.first.right}, key.second, c);
                }
                const auto& r = lr.apply(bm, n, red.complex->generator(static_cast<int>(l)));
                if (q != r)
                    rep.violations.push_back({"quotient", n, b.format(bm) + "⊗[" + red.complex->labels[n][l].name + "]",
                                              format_lift(*red.complex, b, n, q), format_lift(*red.complex, b, n, r)});
            }
        }
    return rep;
}

ModuleElement SigmaDelta::apply(int n, const ModuleElement& z) const {
    const ChainComplex& c = *complex;
    ModuleElement out;
    for (const auto& [t, v] : z.terms) {
        for (const auto& [m, w] : derivation->apply(t.left).terms()) out.add(Term{m, t.label, t.right}, v * w);
        const auto& l = c.labels[n][t.label].key;
        for (std::size_t i = 0; i < l.size(); ++i) add_replaced(c, n, l, i, delta.at(l[i]), v, t.left, out);
    }
    return out;
}

SigmaDelta sigma_delta_chain_maps(const ResolutionBundle& bundle, std::vector<LinearForm> delta, int bound) {
    const ChainComplex& c = *bundle.complex;
    if (c.side != Side::Left || c.augmentation != AugmentationKind::TrivialModule)
        throw SpecMismatch("sigma/delta lifts need a one-sided resolution of k");
    for (const auto& form : delta)
        if (form.has_constant())
            throw AugmentationError("eps o delta != 0: k is not a module over the Ore extension of " + c.algebra->name());
    SigmaDelta sd{bundle.complex, delta, std::make_shared<Derivation>(c.algebra.get(), delta)};
    const Algebra& r = *c.algebra;
    for (int n = 0; n <= c.n_max(); ++n)
        for (std::size_t l = 0; l < c.labels[n].size(); ++l)
            for (const auto& m : r.basis_up_to(bound)) {
                ModuleElement z;
                z.add(Term{m, static_cast<int>(l), r.one()}, r.field().one());
                if (n == 0) {
                    // eps o delta_0 = (x acting on k) o eps = 0
                    if (!apply_augmentation(c, sd.apply(0, z)).is_zero())
                        throw ChainMapFailure("eps o delta_0 != 0 at " + c.format(0, z));
                    continue;
                }
                const ModuleElement lhs = apply_differential(c, n, sd.apply(n, z));
                const ModuleElement rhs = sd.apply(n - 1, apply_differential(c, n, z));
                if (!(lhs == rhs))
                    throw ChainMapFailure("d o delta~ != delta~ o d at " + c.format(n, z) + ": " + c.format(n - 1, lhs) +
                                          " vs " + c.format(n - 1, rhs));
            }
    return sd;
}

} // namespace twistres
