#include "twistres/lifts.hpp"

#include "twistres/errors.hpp"
#include "twistres/wedge.hpp"

namespace twistres {

void lift_add(LeftLiftElement& e, const Term& t, const Monomial& b, const Scalar& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(t, b);
    auto it = e.find(key);
    if (it == e.end()) {
        e.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) e.erase(it);
    }
}

void lift_add(RightLiftElement& e, const Monomial& a, const Term& t, const Scalar& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(a, t);
    auto it = e.find(key);
    if (it == e.end()) {
        e.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) e.erase(it);
    }
}

namespace {

// ----------------------------------------------------------- label rules

class TransparentLeft : public LeftLabelRule {
public:
    explicit TransparentLeft(ComplexPtr p) : p_(std::move(p)) {}
    LeftLiftElement cross(const Monomial& b, int, int label) const override {
        LeftLiftElement out;
        lift_add(out, p_->generator(label), b, p_->algebra->field().one());
        return out;
    }
    std::string name() const override { return "transparent"; }

private:
    ComplexPtr p_;
};

class TransparentRight : public RightLabelRule {
public:
    explicit TransparentRight(ComplexPtr q) : q_(std::move(q)) {}
    RightLiftElement cross(int, int label, const Monomial& a) const override {
        RightLiftElement out;
        lift_add(out, a, q_->generator(label), q_->algebra->field().one());
        return out;
    }
    std::string name() const override { return "transparent"; }

private:
    ComplexPtr q_;
};

class OreRule : public LeftLabelRule {
public:
    OreRule(ComplexPtr p, std::vector<LinearForm> delta) : p_(std::move(p)), delta_(std::move(delta)) {
        const Field f = p_->algebra->field();
        d_.resize(p_->labels.size());
        for (std::size_t n = 0; n < p_->labels.size(); ++n) {
            for (const auto& label : p_->labels[n]) {
                std::map<int, Scalar> img;
                for (std::size_t i = 0; i < label.key.size(); ++i) {
                    const LinearForm& form = delta_.at(label.key[i]);
                    for (std::size_t k = 0; k < form.coeff.size(); ++k) {
                        if (form.coeff[k].is_zero()) continue;
                        std::vector<int> w = label.key;
                        w[i] = static_cast<int>(k);
                        const int sign = wedge_sort(w);
                        if (sign == 0) continue;
                        const int idx = p_->find_label(static_cast<int>(n), w);
                        if (idx < 0) throw RestrictionFailure("wedge " + std::to_string(k) + " missing from resolution");
                        auto& slot = img.try_emplace(idx, f.zero()).first->second;
                        slot += form.coeff[k] * f.from(sign);
                    }
                }
                for (auto it = img.begin(); it != img.end();) it = it->second.is_zero() ? img.erase(it) : std::next(it);
                d_[n].push_back(std::move(img));
            }
        }
    }

    LeftLiftElement cross(const Monomial& b, int n, int label) const override {
        const Field f = p_->algebra->field();
        const int m = b[0];
        LeftLiftElement out;
        // v = D^{m-k}(L) for k = m, m-1, ..., 0
        std::map<int, Scalar> v{{label, f.one()}};
        for (int k = m; k >= 0; --k) {
            Monomial xk(b.size);
            xk[0] = static_cast<std::uint8_t>(k);
            const Scalar binom = binomial(m, k, f);
            for (const auto& [l, c] : v) lift_add(out, p_->generator(l), xk, binom * c);
            if (k == 0) break;
            std::map<int, Scalar> next;
            for (const auto& [l, c] : v)
                for (const auto& [l2, c2] : d_[n][l]) {
                    auto& slot = next.try_emplace(l2, f.zero()).first->second;
                    slot += c * c2;
                }
            for (auto it = next.begin(); it != next.end();) it = it->second.is_zero() ? next.erase(it) : std::next(it);
            v = std::move(next);
        }
        return out;
    }
    std::string name() const override { return "ore"; }

private:
    ComplexPtr p_;
    std::vector<LinearForm> delta_;
    std::vector<std::vector<std::map<int, Scalar>>> d_;  // D on labels, per degree
};

class PeriodicRule : public LeftLabelRule {
public:
    PeriodicRule(ComplexPtr p, TwistPtr skew) : p_(std::move(p)), skew_(std::move(skew)) {}
    LeftLiftElement cross(const Monomial& b, int n, int label) const override {
        LeftLiftElement out;
        const int c = n % 2 == 1 ? 1 : 0;
        for (const auto& [m, v] : skew_->act(-c, b).terms()) lift_add(out, p_->generator(label), m, v);
        return out;
    }
    std::string name() const override { return "periodic-group"; }

private:
    ComplexPtr p_;
    TwistPtr skew_;
};

class WedgeGroupRule : public RightLabelRule {
public:
    WedgeGroupRule(ComplexPtr q, TwistPtr skew) : q_(std::move(q)), skew_(std::move(skew)) {}
    RightLiftElement cross(int n, int label, const Monomial& a) const override {
        const Field f = q_->algebra->field();
        const auto mat = skew_->action_matrix(-static_cast<int>(a[0]));
        const auto& key = q_->labels[n][label].key;
        std::map<std::vector<int>, Scalar> acc{{{}, f.one()}};
        for (int li : key) {
            std::map<std::vector<int>, Scalar> next;
            for (const auto& [w, c] : acc)
                for (std::size_t k = 0; k < mat.size(); ++k) {
                    const Scalar& v = mat[k][li];
                    if (v.is_zero()) continue;
                    auto w2 = w;
                    w2.push_back(static_cast<int>(k));
                    auto& slot = next.try_emplace(w2, f.zero()).first->second;
                    slot += c * v;
                }
            acc = std::move(next);
        }
        RightLiftElement out;
        for (const auto& [key, c] : acc) {
            std::vector<int> w = key;
            const int sign = wedge_sort(w);
            if (sign == 0) continue;
            const int idx = q_->find_label(n, w);
            if (idx < 0) throw RestrictionFailure("wedge label missing from resolution");
            lift_add(out, a, q_->generator(idx), c * f.from(sign));
        }
        return out;
    }
    std::string name() const override { return "wedge-group"; }

private:
    ComplexPtr q_;
    TwistPtr skew_;
};

std::vector<Monomial> decode_bar(const std::vector<int>& key, std::size_t nvars) {
    std::vector<Monomial> out;
    for (std::size_t i = 0; i + nvars <= key.size(); i += nvars) {
        Monomial m(nvars);
        for (std::size_t k = 0; k < nvars; ++k) m[k] = static_cast<std::uint8_t>(key[i + k]);
        out.push_back(m);
    }
    return out;
}

std::vector<int> encode_bar(const std::vector<Monomial>& factors) {
    std::vector<int> key;
    for (const auto& m : factors)
        for (std::size_t k = 0; k < m.size; ++k) key.push_back(m[k]);
    return key;
}

int bar_label(const ChainComplex& c, int n, const std::vector<Monomial>& factors) {
    const int idx = c.find_label(n, encode_bar(factors));
    if (idx < 0) throw CutoffTooSmall("bar label of degree " + std::to_string(n) + " beyond the label cutoff");
    return idx;
}

class BarLeft : public LeftLabelRule {
public:
    BarLeft(ComplexPtr p, TwistPtr tau, bool reduced) : p_(std::move(p)), tau_(std::move(tau)), reduced_(reduced) {}
    LeftLiftElement cross(const Monomial& b, int n, int label) const override {
        const Algebra& a = *p_->algebra;
        const auto factors = decode_bar(p_->labels[n][label].key, a.nvars());
        // partial tuples paired with the B-monomial still travelling right
        std::map<std::pair<std::vector<int>, Monomial>, Scalar> acc{{{{}, b}, a.field().one()}};
        for (const auto& f : factors) {
            std::map<std::pair<std::vector<int>, Monomial>, Scalar> next;
            for (const auto& [key, c] : acc)
                for (const auto& [pr, v] : tau_->apply(key.second, f)) {
                    if (reduced_ && pr.first.is_unit()) continue;
                    auto k2 = key.first;
                    for (std::size_t i = 0; i < pr.first.size; ++i) k2.push_back(pr.first[i]);
                    auto it = next.try_emplace({k2, pr.second}, a.field().zero()).first;
                    it->second += c * v;
                }
            acc = std::move(next);
        }
        LeftLiftElement out;
        for (const auto& [key, c] : acc) {
            if (c.is_zero()) continue;
            const int idx = p_->find_label(n, key.first);
            if (idx < 0) throw CutoffTooSmall("bar label beyond the label cutoff");
            lift_add(out, p_->generator(idx), key.second, c);
        }
        return out;
    }
    std::string name() const override { return reduced_ ? "reduced-bar" : "bar"; }

private:
    ComplexPtr p_;
    TwistPtr tau_;
    bool reduced_;
};

class BarRight : public RightLabelRule {
public:
    BarRight(ComplexPtr q, TwistPtr tau, bool reduced) : q_(std::move(q)), tau_(std::move(tau)), reduced_(reduced) {}
    RightLiftElement cross(int n, int label, const Monomial& a) const override {
        const Algebra& b = *q_->algebra;
        const auto factors = decode_bar(q_->labels[n][label].key, b.nvars());
        // A-monomial travelling left paired with the finished suffix
        std::map<std::pair<Monomial, std::vector<Monomial>>, Scalar> acc{{{a, {}}, b.field().one()}};
        for (auto f = factors.rbegin(); f != factors.rend(); ++f) {
            std::map<std::pair<Monomial, std::vector<Monomial>>, Scalar> next;
            for (const auto& [key, c] : acc)
                for (const auto& [pr, v] : tau_->apply(*f, key.first)) {
                    if (reduced_ && pr.second.is_unit()) continue;
                    std::vector<Monomial> suffix{pr.second};
                    suffix.insert(suffix.end(), key.second.begin(), key.second.end());
                    auto it = next.try_emplace({pr.first, suffix}, b.field().zero()).first;
                    it->second += c * v;
                }
            acc = std::move(next);
        }
        RightLiftElement out;
        for (const auto& [key, c] : acc) {
            if (c.is_zero()) continue;
            lift_add(out, key.first, q_->generator(bar_label(*q_, n, key.second)), c);
        }
        return out;
    }
    std::string name() const override { return reduced_ ? "reduced-bar" : "bar"; }

private:
    ComplexPtr q_;
    TwistPtr tau_;
    bool reduced_;
};

} // namespace

std::unique_ptr<LeftLabelRule> transparent_left_rule(ComplexPtr p) { return std::make_unique<TransparentLeft>(std::move(p)); }
std::unique_ptr<RightLabelRule> transparent_right_rule(ComplexPtr q) {
    return std::make_unique<TransparentRight>(std::move(q));
}
std::unique_ptr<LeftLabelRule> ore_label_rule(ComplexPtr p, std::vector<LinearForm> delta) {
    return std::make_unique<OreRule>(std::move(p), std::move(delta));
}
std::unique_ptr<LeftLabelRule> periodic_group_rule(ComplexPtr p, TwistPtr skew) {
    return std::make_unique<PeriodicRule>(std::move(p), std::move(skew));
}
std::unique_ptr<RightLabelRule> wedge_group_rule(ComplexPtr q, TwistPtr skew) {
    return std::make_unique<WedgeGroupRule>(std::move(q), std::move(skew));
}
std::unique_ptr<LeftLabelRule> bar_left_rule(ComplexPtr p, TwistPtr tau, bool reduced) {
    return std::make_unique<BarLeft>(std::move(p), std::move(tau), reduced);
}
std::unique_ptr<RightLabelRule> bar_right_rule(ComplexPtr q, TwistPtr tau, bool reduced) {
    return std::make_unique<BarRight>(std::move(q), std::move(tau), reduced);
}

// ------------------------------------------------------------- engines

LeftLift::LeftLift(ComplexPtr p, TwistPtr tau, std::unique_ptr<LeftLabelRule> rule)
    : p_(std::move(p)), tau_(std::move(tau)), rule_(std::move(rule)), memo_(p_->labels.size()) {
    if (tau_->left().get() != p_->algebra.get())
        throw SpecMismatch("left lift: resolution is not over the twist's left factor");
}

const LeftLiftElement& LeftLift::apply(const Monomial& b, int n, const Term& m) const {
    const auto key = std::make_pair(b, m);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_[n].find(key);
        if (it != memo_[n].end()) return it->second;
    }
    const Algebra& a = *p_->algebra;
    const bool bimodule = p_->side == Side::Bimodule;
    LeftLiftElement out;
    for (const auto& [pr0, c0] : tau_->apply(b, m.left)) {
        for (const auto& [rt, c1] : rule_->cross(pr0.second, n, m.label)) {
            const Term& g = rt.first;
            const Element left = a.multiply(pr0.first, g.left);
            if (!bimodule) {
                for (const auto& [p, pc] : left.terms()) lift_add(out, Term{p, g.label, a.one()}, rt.second, c0 * c1 * pc);
                continue;
            }
            for (const auto& [pr2, c2] : tau_->apply(rt.second, m.right)) {
                const Element right = a.multiply(g.right, pr2.first);
                for (const auto& [p, pc] : left.terms())
                    for (const auto& [q, qc] : right.terms())
                        lift_add(out, Term{p, g.label, q}, pr2.second, c0 * c1 * c2 * pc * qc);
            }
        }
    }
    std::lock_guard<std::mutex> lock(mutex_);
    return memo_[n].emplace(key, std::move(out)).first->second;
}

LeftLiftElement LeftLift::apply(const Monomial& b, int n, const ModuleElement& m) const {
    LeftLiftElement out;
    for (const auto& [t, c] : m.terms)
        for (const auto& [k, v] : apply(b, n, t)) lift_add(out, k.first, k.second, c * v);
    return out;
}

RightLift::RightLift(ComplexPtr q, TwistPtr tau, std::unique_ptr<RightLabelRule> rule)
    : q_(std::move(q)), tau_(std::move(tau)), rule_(std::move(rule)), memo_(q_->labels.size()) {
    if (tau_->right().get() != q_->algebra.get())
        throw SpecMismatch("right lift: resolution is not over the twist's right factor");
    if (q_->side != Side::Bimodule) throw SpecMismatch("right lift needs a bimodule resolution");
}

const RightLiftElement& RightLift::apply(int n, const Term& m, const Monomial& a) const {
    const auto key = std::make_pair(m, a);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_[n].find(key);
        if (it != memo_[n].end()) return it->second;
    }
    const Algebra& b = *q_->algebra;
    RightLiftElement out;
    for (const auto& [pr1, c1] : tau_->apply(m.right, a)) {
        for (const auto& [rt, c2] : rule_->cross(n, m.label, pr1.first)) {
            const Term& g = rt.second;
            const Element right = b.multiply(g.right, pr1.second);
            for (const auto& [pr0, c3] : tau_->apply(m.left, rt.first)) {
                const Element left = b.multiply(pr0.second, g.left);
                for (const auto& [p, pc] : left.terms())
                    for (const auto& [q, qc] : right.terms())
                        lift_add(out, pr0.first, Term{p, g.label, q}, c1 * c2 * c3 * pc * qc);
            }
        }
    }
    std::lock_guard<std::mutex> lock(mutex_);
    return memo_[n].emplace(key, std::move(out)).first->second;
}

RightLiftElement RightLift::apply(int n, const ModuleElement& m, const Monomial& a) const {
    RightLiftElement out;
    for (const auto& [t, c] : m.terms)
        for (const auto& [k, v] : apply(n, t, a)) lift_add(out, k.first, k.second, c * v);
    return out;
}

std::string format_lift(const ChainComplex& p, const Algebra& b, int n, const LeftLiftElement& e) {
    if (e.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : e) {
        if (!out.empty()) out += " + ";
        ModuleElement m;
        m.add(k.first, c);
        out += "(" + p.format(n, m) + ")⊗" + b.format(k.second);
    }
    return out;
}

std::string format_lift(const ChainComplex& q, const Algebra& a, int n, const RightLiftElement& e) {
    if (e.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : e) {
        if (!out.empty()) out += " + ";
        ModuleElement m;
        m.add(k.second, c);
        out += a.format(k.first) + "⊗(" + q.format(n, m) + ")";
    }
    return out;
}

void LiftReport::merge(const LiftReport& o) {
    checked += o.checked;
    violations.insert(violations.end(), o.violations.begin(), o.violations.end());
}

// -------------------------------------------------------------- checks

namespace {

/// (d (x) 1) applied to an element of P_n (x) B.
LeftLiftElement differential_left(const ChainComplex& p, int n, const LeftLiftElement& e) {
    LeftLiftElement out;
    for (const auto& [k, c] : e) {
        ModuleElement m;
        m.add(k.first, c);
        for (const auto& [t, v] : apply_differential(p, n, m).terms) lift_add(out, t, k.second, v);
    }
    return out;
}

RightLiftElement differential_right(const ChainComplex& q, int n, const RightLiftElement& e) {
    RightLiftElement out;
    for (const auto& [k, c] : e) {
        ModuleElement m;
        m.add(k.second, c);
        for (const auto& [t, v] : apply_differential(q, n, m).terms) lift_add(out, k.first, t, v);
    }
    return out;
}

std::string term_string(const ChainComplex& c, int n, const Term& t) {
    ModuleElement m;
    m.add(t, c.algebra->field().one());
    return c.format(n, m);
}

std::vector<Term> sample_terms(const ChainComplex& c, int n, int bound) {
    std::vector<Term> out;
    const Algebra& a = *c.algebra;
    for (std::size_t l = 0; l < c.labels[n].size(); ++l)
        for (const auto& p : a.basis_up_to(bound)) {
            if (c.side == Side::Left) {
                out.push_back(Term{p, static_cast<int>(l), a.one()});
                continue;
            }
            for (const auto& q : a.basis_up_to(bound - a.degree(p))) out.push_back(Term{p, static_cast<int>(l), q});
        }
    return out;
}

} // namespace

LiftReport check_chain_map(const LeftLift& lift, int bound) {
    LiftReport rep;
    const ChainComplex& p = lift.complex();
    const Algebra& a = *p.algebra;
    const Algebra& b = *lift.twist().right();
    const auto bs = b.basis_up_to(bound);
    for (int n = 1; n <= p.n_max(); ++n)
        for (std::size_t l = 0; l < p.labels[n].size(); ++l)
            for (const auto& bm : bs) {
                ++rep.checked;
                const Term g = p.generator(static_cast<int>(l));
                const auto lhs = differential_left(p, n, lift.apply(bm, n, g));
                ModuleElement gm;
                gm.add(g, a.field().one());
                const auto rhs = lift.apply(bm, n - 1, apply_differential(p, n, gm));
                if (lhs != rhs)
                    rep.violations.push_back({"chain-map", n, b.format(bm) + "⊗[" + p.labels[n][l].name + "]",
                                              format_lift(p, b, n - 1, lhs), format_lift(p, b, n - 1, rhs)});
            }
    // augmentation square: (eps (x) 1) tau_{B,0} = tau_{B,M} (1 (x) eps)
    for (const auto& t : sample_terms(p, 0, bound))
        for (const auto& bm : bs) {
            ++rep.checked;
            TensorElement lhs, rhs;
            ModuleElement tm;
            tm.add(t, a.field().one());
            for (const auto& [k, c] : lift.apply(bm, 0, t)) {
                ModuleElement m;
                m.add(k.first, c);
                for (const auto& [am, v] : apply_augmentation(p, m).terms()) tensor_add(lhs, am, k.second, v);
            }
            const Element e = apply_augmentation(p, tm);
            if (p.augmentation == AugmentationKind::TrivialModule) {
                // B acts on k (x) N through B alone: tau_{B,k}(b (x) 1) = 1 (x) b
                for (const auto& [am, v] : e.terms()) tensor_add(rhs, am, bm, v);
            } else {
                for (const auto& [am, v] : e.terms())
                    for (const auto& [pr, w] : lift.twist().apply(bm, am)) tensor_add(rhs, pr.first, pr.second, v * w);
            }
            if (lhs != rhs)
                rep.violations.push_back({"augmentation", 0, b.format(bm) + "⊗" + term_string(p, 0, t),
                                          format_tensor(a, b, lhs), format_tensor(a, b, rhs)});
        }
    return rep;
}

LiftReport check_chain_map(const RightLift& lift, int bound) {
    LiftReport rep;
    const ChainComplex& q = lift.complex();
    const Algebra& b = *q.algebra;
    const Algebra& a = *lift.twist().left();
    const auto as = a.basis_up_to(bound);
    for (int n = 1; n <= q.n_max(); ++n)
        for (std::size_t l = 0; l < q.labels[n].size(); ++l)
            for (const auto& am : as) {
                ++rep.checked;
                const Term g = q.generator(static_cast<int>(l));
                const auto lhs = differential_right(q, n, lift.apply(n, g, am));
                ModuleElement gm;
                gm.add(g, b.field().one());
                const auto rhs = lift.apply(n - 1, apply_differential(q, n, gm), am);
                if (lhs != rhs)
                    rep.violations.push_back({"chain-map", n, "[" + q.labels[n][l].name + "]⊗" + a.format(am),
                                              format_lift(q, a, n - 1, lhs), format_lift(q, a, n - 1, rhs)});
            }
    for (const auto& t : sample_terms(q, 0, bound))
        for (const auto& am : as) {
            ++rep.checked;
            TensorElement lhs, rhs;
            ModuleElement tm;
            tm.add(t, b.field().one());
            for (const auto& [k, c] : lift.apply(0, t, am)) {
                ModuleElement m;
                m.add(k.second, c);
                for (const auto& [bm, v] : apply_augmentation(q, m).terms()) tensor_add(lhs, k.first, bm, v);
            }
            for (const auto& [bm, v] : apply_augmentation(q, tm).terms())
                for (const auto& [pr, w] : lift.twist().apply(bm, am)) tensor_add(rhs, pr.first, pr.second, v * w);
            if (lhs != rhs)
                rep.violations.push_back({"augmentation", 0, term_string(q, 0, t) + "⊗" + a.format(am),
                                          format_tensor(a, b, lhs), format_tensor(a, b, rhs)});
        }
    return rep;
}

LiftReport check_compat(const LeftLift& lift, int bound) {
    LiftReport rep;
    const ChainComplex& p = lift.complex();
    const Algebra& a = *p.algebra;
    const Algebra& b = *lift.twist().right();
    const Field f = a.field();
    const bool bimodule = p.side == Side::Bimodule;
    for (int n = 0; n <= p.n_max(); ++n) {
        const auto terms = sample_terms(p, n, bound);
        for (const auto& t : terms) {
            // unit condition
            ++rep.checked;
            LeftLiftElement unit;
            lift_add(unit, t, b.one(), f.one());
            if (lift.apply(b.one(), n, t) != unit)
                rep.violations.push_back({"unit", n, "1⊗" + term_string(p, n, t),
                                          format_lift(p, b, n, lift.apply(b.one(), n, t)), format_lift(p, b, n, unit)});
        }
        for (std::size_t l = 0; l < p.labels[n].size(); ++l) {
            const Term g = p.generator(static_cast<int>(l));
            // multiplicativity in B: tau(b b' (x) m) = (1 (x) m_B)(tau (x) 1)(1 (x) tau)
            for (const auto& b1 : b.basis_up_to(bound))
                for (const auto& b2 : b.basis_up_to(bound - b.degree(b1))) {
                    ++rep.checked;
                    LeftLiftElement lhs, rhs;
                    for (const auto& [bm, c] : b.multiply(b1, b2).terms())
                        for (const auto& [k, v] : lift.apply(bm, n, g)) lift_add(lhs, k.first, k.second, c * v);
                    for (const auto& [k, v] : lift.apply(b2, n, g))
                        for (const auto& [k2, w] : lift.apply(b1, n, k.first))
                            for (const auto& [bm, u] : b.multiply(k2.second, k.second).terms())
                                lift_add(rhs, k2.first, bm, v * w * u);
                    if (lhs != rhs)
                        rep.violations.push_back({"multiplicative", n,
                                                  b.format(b1) + "·" + b.format(b2) + "⊗[" + p.labels[n][l].name + "]",
                                                  format_lift(p, b, n, lhs), format_lift(p, b, n, rhs)});
                }
        }
        // module structure: tau(b (x) a.m) = (a . (x) 1)(1 (x) tau)(tau (x) 1)(b (x) a (x) m)
        const int half = bound / 2;
        for (const auto& t : sample_terms(p, n, half))
            for (const auto& am : a.basis_up_to(bound - half))
                for (const auto& bm : b.basis_up_to(bound)) {
                    ++rep.checked;
                    ModuleElement tm;
                    tm.add(t, f.one());
                    const auto lhs = lift.apply(bm, n, act_left(p, a.element(am), tm));
                    LeftLiftElement rhs;
                    for (const auto& [pr, c] : lift.twist().apply(bm, am))
                        for (const auto& [k, v] : lift.apply(pr.second, n, t)) {
                            ModuleElement km;
                            km.add(k.first, c * v);
                            for (const auto& [s, w] : act_left(p, a.element(pr.first), km).terms)
                                lift_add(rhs, s, k.second, w);
                        }
                    if (lhs != rhs)
                        rep.violations.push_back({"bimodule", n,
                                                  b.format(bm) + "⊗" + a.format(am) + "·" + term_string(p, n, t),
                                                  format_lift(p, b, n, lhs), format_lift(p, b, n, rhs)});
                    if (!bimodule) continue;
                    ++rep.checked;
                    const auto lhs2 = lift.apply(bm, n, act_right(p, tm, a.element(am)));
                    LeftLiftElement rhs2;
                    for (const auto& [k, v] : lift.apply(bm, n, t))
                        for (const auto& [pr, c] : lift.twist().apply(k.second, am)) {
                            ModuleElement km;
                            km.add(k.first, c * v);
                            for (const auto& [s, w] : act_right(p, km, a.element(pr.first)).terms)
                                lift_add(rhs2, s, pr.second, w);
                        }
                    if (lhs2 != rhs2)
                        rep.violations.push_back({"bimodule", n,
                                                  b.format(bm) + "⊗" + term_string(p, n, t) + "·" + a.format(am),
                                                  format_lift(p, b, n, lhs2), format_lift(p, b, n, rhs2)});
                }
    }
    return rep;
}

LiftReport check_compat(const RightLift& lift, int bound) {
    LiftReport rep;
    const ChainComplex& q = lift.complex();
    const Algebra& b = *q.algebra;
    const Algebra& a = *lift.twist().left();
    const Field f = b.field();
    for (int n = 0; n <= q.n_max(); ++n) {
        for (const auto& t : sample_terms(q, n, bound)) {
            ++rep.checked;
            RightLiftElement unit;
            lift_add(unit, a.one(), t, f.one());
            if (lift.apply(n, t, a.one()) != unit)
                rep.violations.push_back({"unit", n, term_string(q, n, t) + "⊗1",
                                          format_lift(q, a, n, lift.apply(n, t, a.one())), format_lift(q, a, n, unit)});
        }
        for (std::size_t l = 0; l < q.labels[n].size(); ++l) {
            const Term g = q.generator(static_cast<int>(l));
            // multiplicativity in A: tau(m (x) a a') = (m_A (x) 1)(1 (x) tau)(tau (x) 1)
            for (const auto& a1 : a.basis_up_to(bound))
                for (const auto& a2 : a.basis_up_to(bound - a.degree(a1))) {
                    ++rep.checked;
                    RightLiftElement lhs, rhs;
                    for (const auto& [am, c] : a.multiply(a1, a2).terms())
                        for (const auto& [k, v] : lift.apply(n, g, am)) lift_add(lhs, k.first, k.second, c * v);
                    for (const auto& [k, v] : lift.apply(n, g, a1))
                        for (const auto& [k2, w] : lift.apply(n, k.second, a2))
                            for (const auto& [am, u] : a.multiply(k.first, k2.first).terms())
                                lift_add(rhs, am, k2.second, v * w * u);
                    if (lhs != rhs)
                        rep.violations.push_back({"multiplicative", n,
                                                  "[" + q.labels[n][l].name + "]⊗" + a.format(a1) + "·" + a.format(a2),
                                                  format_lift(q, a, n, lhs), format_lift(q, a, n, rhs)});
                }
        }
        const int half = bound / 2;
        for (const auto& t : sample_terms(q, n, half))
            for (const auto& bm : b.basis_up_to(bound - half))
                for (const auto& am : a.basis_up_to(bound)) {
                    ModuleElement tm;
                    tm.add(t, f.one());
                    // (b.m) (x) a
                    ++rep.checked;
                    const auto lhs = lift.apply(n, act_left(q, b.element(bm), tm), am);
                    RightLiftElement rhs;
                    for (const auto& [k, v] : lift.apply(n, t, am))
                        for (const auto& [pr, c] : lift.twist().apply(bm, k.first)) {
                            ModuleElement km;
                            km.add(k.second, c * v);
                            for (const auto& [s, w] : act_left(q, b.element(pr.second), km).terms)
                                lift_add(rhs, pr.first, s, w);
                        }
                    if (lhs != rhs)
                        rep.violations.push_back({"bimodule", n,
                                                  b.format(bm) + "·" + term_string(q, n, t) + "⊗" + a.format(am),
                                                  format_lift(q, a, n, lhs), format_lift(q, a, n, rhs)});
                    // (m.b) (x) a
                    ++rep.checked;
                    const auto lhs2 = lift.apply(n, act_right(q, tm, b.element(bm)), am);
                    RightLiftElement rhs2;
                    for (const auto& [pr, c] : lift.twist().apply(bm, am))
                        for (const auto& [k, v] : lift.apply(n, t, pr.first)) {
                            ModuleElement km;
                            km.add(k.second, c * v);
                            for (const auto& [s, w] : act_right(q, km, b.element(pr.second)).terms)
                                lift_add(rhs2, k.first, s, w);
                        }
                    if (lhs2 != rhs2)
                        rep.violations.push_back({"bimodule", n,
                                                  term_string(q, n, t) + "·" + b.format(bm) + "⊗" + a.format(am),
                                                  format_lift(q, a, n, lhs2), format_lift(q, a, n, rhs2)});
                }
    }
    return rep;
}

} // namespace twistres
