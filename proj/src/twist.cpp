#include "twistres/twist.hpp"

#include "twistres/errors.hpp"
#include "twistres/linalg.hpp"

#include <random>

namespace twistres {

namespace {

TensorElement single(const Monomial& a, const Monomial& b, const Scalar& c) {
    TensorElement t;
    tensor_add(t, a, b, c);
    return t;
}

} // namespace

TwistPtr TwistMap::flip(AlgebraPtr a, AlgebraPtr b) {
    if (!(a->field() == b->field())) throw SpecMismatch("twist factors over different fields");
    std::shared_ptr<TwistMap> t(new TwistMap());
    t->kind_ = TwistKind::Flip;
    t->a_ = std::move(a);
    t->b_ = std::move(b);
    return t;
}

TwistPtr TwistMap::ore(AlgebraPtr a, AlgebraPtr b, std::vector<LinearForm> delta) {
    if (!(a->field() == b->field())) throw SpecMismatch("twist factors over different fields");
    if (b->kind() != AlgebraKind::Polynomial || b->nvars() != 1)
        throw ValidationError("Ore twist needs B = k[x] in one variable");
    if (a->kind() == AlgebraKind::CyclicGroup || a->kind() == AlgebraKind::TwistedProduct)
        throw ValidationError("Ore twist needs a polynomial or iterated Ore algebra A");
    if (delta.size() != a->generator_count()) throw ValidationError("derivation needs one image per generator of A");
    for (auto& f : delta) f.coeff.resize(a->nvars(), a->field().zero());
    std::shared_ptr<TwistMap> t(new TwistMap());
    t->kind_ = TwistKind::Ore;
    t->delta_ = std::make_unique<Derivation>(a.get(), std::move(delta));
    t->a_ = std::move(a);
    t->b_ = std::move(b);
    return t;
}

TwistPtr TwistMap::skew_group(AlgebraPtr a, AlgebraPtr b, std::vector<LinearForm> action) {
    if (!(a->field() == b->field())) throw SpecMismatch("twist factors over different fields");
    if (a->kind() != AlgebraKind::CyclicGroup) throw ValidationError("skew group twist needs A = kG, G cyclic");
    if (b->kind() != AlgebraKind::Polynomial) throw ValidationError("skew group twist needs a polynomial B");
    const std::size_t t = b->nvars();
    if (action.size() != t) throw ValidationError("group action needs one image per generator");
    const Field f = a->field();
    std::vector<std::vector<Scalar>> g(t, std::vector<Scalar>(t, f.zero()));
    for (std::size_t i = 0; i < t; ++i) {
        if (action[i].has_constant()) throw ValidationError("group action must be linear");
        action[i].coeff.resize(t, f.zero());
        for (std::size_t k = 0; k < t; ++k) g[k][i] = action[i].coeff[k];
    }
    std::shared_ptr<TwistMap> tw(new TwistMap());
    tw->kind_ = TwistKind::SkewGroup;
    const int n = a->order();
    std::vector<std::vector<Scalar>> cur(t, std::vector<Scalar>(t, f.zero()));
    for (std::size_t i = 0; i < t; ++i) cur[i][i] = f.one();
    for (int e = 0; e <= n; ++e) {
        tw->action_.push_back(cur);
        std::vector<std::vector<Scalar>> next(t, std::vector<Scalar>(t, f.zero()));
        for (std::size_t r = 0; r < t; ++r)
            for (std::size_t c = 0; c < t; ++c)
                for (std::size_t k = 0; k < t; ++k) next[r][c] += g[r][k] * cur[k][c];
        cur = std::move(next);
    }
    if (tw->action_[n] != tw->action_[0]) throw ValidationError("g^n does not act as the identity");
    tw->action_.pop_back();
    tw->a_ = std::move(a);
    tw->b_ = std::move(b);
    return tw;
}

TwistPtr TwistMap::custom(TwistPtr fallback, std::map<std::pair<Monomial, Monomial>, TensorElement> overrides) {
    std::shared_ptr<TwistMap> t(new TwistMap());
    t->kind_ = TwistKind::Custom;
    t->a_ = fallback->left();
    t->b_ = fallback->right();
    t->fallback_ = std::move(fallback);
    t->overrides_ = std::move(overrides);
    return t;
}

bool TwistMap::is_graded() const {
    switch (kind_) {
    case TwistKind::Flip:
    case TwistKind::SkewGroup:
        return true;
    case TwistKind::Ore:
        for (const auto& f : delta_->images())
            if (!f.is_zero()) return false;
        return true;
    case TwistKind::Custom:
        return false;
    }
    return false;
}

const Derivation& TwistMap::derivation() const {
    if (kind_ == TwistKind::Custom) return fallback_->derivation();
    if (kind_ != TwistKind::Ore) throw SpecMismatch("twist has no derivation");
    return *delta_;
}

int TwistMap::group_order() const { return a_->kind() == AlgebraKind::CyclicGroup ? a_->order() : 1; }

std::vector<std::vector<Scalar>> TwistMap::action_matrix(int e) const {
    if (kind_ == TwistKind::Custom) return fallback_->action_matrix(e);
    if (kind_ != TwistKind::SkewGroup) throw SpecMismatch("twist has no group action");
    const int n = static_cast<int>(action_.size());
    return action_[((e % n) + n) % n];
}

Element TwistMap::act(int e, const Monomial& b) const {
    if (kind_ == TwistKind::Custom) return fallback_->act(e, b);
    if (kind_ != TwistKind::SkewGroup) throw SpecMismatch("twist has no group action");
    const int n = static_cast<int>(action_.size());
    e = ((e % n) + n) % n;
    Monomial key(1);
    key[0] = static_cast<std::uint8_t>(e);
    const auto mk = std::make_pair(key, b);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = act_memo_.find(mk);
        if (it != act_memo_.end()) return it->second;
    }
    const auto& m = action_[e];
    Element out = b_->unit();
    for (std::size_t i = 0; i < b_->nvars(); ++i) {
        Element gi = b_->zero();
        for (std::size_t k = 0; k < b_->nvars(); ++k) gi.add(b_->generator(k), m[k][i]);
        for (int p = 0; p < b[i]; ++p) out = b_->multiply(out, gi);
    }
    std::lock_guard<std::mutex> lock(mutex_);
    act_memo_.emplace(mk, out);
    return out;
}

Element TwistMap::act(int e, const Element& b) const {
    Element out = b_->zero();
    for (const auto& [m, c] : b.terms()) out += act(e, m).scaled(c);
    return out;
}

TensorElement TwistMap::seed(const Monomial& b, std::size_t i) const {
    const Monomial xi = a_->generator(i);
    switch (kind_) {
    case TwistKind::Flip:
        return single(xi, b, a_->field().one());
    case TwistKind::Ore: {
        TensorElement out;
        const int m = b[0];
        Element d = a_->element(xi);
        for (int k = m; k >= 0; --k) {
            const Scalar c = binomial(m, k, a_->field());
            Monomial xk(1);
            xk[0] = static_cast<std::uint8_t>(k);
            for (const auto& [ma, v] : d.terms()) tensor_add(out, ma, xk, c * v);
            if (k > 0) d = delta_->apply(d);
        }
        return out;
    }
    case TwistKind::SkewGroup: {
        TensorElement out;
        for (const auto& [mb, v] : act(-1, b).terms()) tensor_add(out, xi, mb, v);
        return out;
    }
    case TwistKind::Custom: {
        auto it = overrides_.find({b, xi});
        if (it != overrides_.end()) return it->second;
        return fallback_->seed(b, i);
    }
    }
    return {};
}

const TensorElement& TwistMap::apply(const Monomial& b, const Monomial& a) const {
    const auto key = std::make_pair(b, a);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    TensorElement out;
    auto ov = overrides_.find(key);
    if (ov != overrides_.end()) {
        out = ov->second;
    } else if (a.is_unit() || b.is_unit()) {
        out = single(a, b, a_->field().one());
    } else {
        // split a = x_i * rest with x_i the leftmost generator
        std::size_t i = 0;
        Monomial rest = a;
        if (a_->kind() == AlgebraKind::CyclicGroup) {
            rest[0] -= 1;
        } else {
            while (a[i] == 0) ++i;
            rest[i] -= 1;
        }
        for (const auto& [p1, c1] : seed(b, i))
            for (const auto& [p2, c2] : apply(p1.second, rest)) {
                const Element prod = a_->multiply(p1.first, p2.first);
                for (const auto& [m, v] : prod.terms()) tensor_add(out, m, p2.second, c1 * c2 * v);
            }
    }
    std::lock_guard<std::mutex> lock(mutex_);
    return memo_.emplace(key, std::move(out)).first->second;
}

TensorElement TwistMap::apply(const Element& b, const Element& a) const {
    if ((b.algebra() && b.algebra() != b_.get()) || (a.algebra() && a.algebra() != a_.get()))
        throw SpecMismatch("apply_twist: elements do not belong to the twist's algebras");
    TensorElement out;
    for (const auto& [mb, cb] : b.terms())
        for (const auto& [ma, ca] : a.terms())
            for (const auto& [p, v] : apply(mb, ma)) tensor_add(out, p.first, p.second, cb * ca * v);
    return out;
}

std::string TwistMap::description() const {
    switch (kind_) {
    case TwistKind::Flip:
        return "flip " + b_->name() + "⊗" + a_->name() + " -> " + a_->name() + "⊗" + b_->name();
    case TwistKind::Ore:
        return "Ore twist of " + a_->name() + " by " + b_->name();
    case TwistKind::SkewGroup:
        return "skew group twist " + b_->name() + "⊗" + a_->name();
    case TwistKind::Custom:
        return "custom table (" + std::to_string(overrides_.size()) + " overrides) over " + fallback_->description();
    }
    return {};
}

// --------------------------------------------------------------- hexagon

namespace {

using Tensor4 = std::map<std::tuple<Monomial, Monomial, Monomial, Monomial>, Scalar>;

void add4(Tensor4& t, const Monomial& a, const Monomial& b, const Monomial& c, const Monomial& d, const Scalar& v) {
    if (v.is_zero()) return;
    auto key = std::make_tuple(a, b, c, d);
    auto it = t.find(key);
    if (it == t.end()) {
        t.emplace(key, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) t.erase(it);
    }
}

// Right-hand side of the hexagon on b1 (x) b2 (x) a1 (x) a2.
TensorElement hexagon_rhs(const TwistMap& t, const Element& b1, const Element& b2, const Element& a1,
                          const Element& a2) {
    const Algebra& A = *t.left();
    const Algebra& B = *t.right();
    // (1 tau 1): b1 (x) a' (x) b' (x) a2
    Tensor4 s1;
    for (const auto& [mb2, c2] : b2.terms())
        for (const auto& [ma1, c3] : a1.terms())
            for (const auto& [p, v] : t.apply(mb2, ma1))
                for (const auto& [mb1, c1] : b1.terms())
                    for (const auto& [ma2, c4] : a2.terms())
                        add4(s1, mb1, p.first, p.second, ma2, c1 * c2 * c3 * c4 * v);
    // (tau (x) tau): a'' (x) b'' (x) a''' (x) b'''
    Tensor4 s2;
    for (const auto& [k, v] : s1) {
        const auto& [x0, x1, x2, x3] = k;
        for (const auto& [p, u] : t.apply(x0, x1))
            for (const auto& [q, w] : t.apply(x2, x3)) add4(s2, p.first, p.second, q.first, q.second, v * u * w);
    }
    // (1 tau 1) then multiply
    TensorElement out;
    for (const auto& [k, v] : s2) {
        const auto& [y0, y1, y2, y3] = k;
        for (const auto& [p, u] : t.apply(y1, y2)) {
            const Element ea = A.multiply(y0, p.first);
            const Element eb = B.multiply(p.second, y3);
            for (const auto& [ma, ca] : ea.terms())
                for (const auto& [mb, cb] : eb.terms()) tensor_add(out, ma, mb, v * u * ca * cb);
        }
    }
    return out;
}

Element random_element(const Algebra& alg, const std::vector<Monomial>& basis, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_int_distribution<int> coef(-3, 3);
    Element e = alg.zero();
    const int n = count(rng);
    for (int k = 0; k < n; ++k) {
        int c = coef(rng);
        if (c == 0) c = 1;
        e.add(basis[pick(rng)], alg.field().from(c));
    }
    if (e.is_zero()) e = alg.unit();
    return e;
}

} // namespace

HexagonReport check_hexagon(const TwistMap& t, int degree_bound, int sample_count, std::uint64_t seed) {
    if (degree_bound < 1) throw ValidationError("degree_bound must be at least 1");
    const Algebra& A = *t.left();
    const Algebra& B = *t.right();
    const auto ba = B.basis_up_to(degree_bound);
    const auto aa = A.basis_up_to(degree_bound);
    HexagonReport report;

    for (const auto& a : aa) {
        if (t.apply(B.one(), a) != TensorElement{{{a, B.one()}, A.field().one()}})
            report.violations.push_back({"1, " + A.format(a), format_tensor(A, B, t.apply(B.one(), a)),
                                         format_tensor(A, B, {{{a, B.one()}, A.field().one()}})});
    }
    for (const auto& b : ba) {
        if (t.apply(b, A.one()) != TensorElement{{{A.one(), b}, A.field().one()}})
            report.violations.push_back({B.format(b) + ", 1", format_tensor(A, B, t.apply(b, A.one())),
                                         format_tensor(A, B, {{{A.one(), b}, A.field().one()}})});
    }

    auto check = [&](const Element& b1, const Element& b2, const Element& a1, const Element& a2) {
        const TensorElement lhs = t.apply(B.multiply(b1, b2), A.multiply(a1, a2));
        const TensorElement rhs = hexagon_rhs(t, b1, b2, a1, a2);
        if (lhs != rhs)
            report.violations.push_back({b1.to_string() + ", " + b2.to_string() + ", " + a1.to_string() + ", " +
                                             a2.to_string(),
                                         format_tensor(A, B, lhs), format_tensor(A, B, rhs)});
    };

    for (const auto& b1 : ba)
        for (const auto& b2 : ba)
            for (const auto& a1 : aa)
                for (const auto& a2 : aa) {
                    check(B.element(b1), B.element(b2), A.element(a1), A.element(a2));
                    ++report.tuples_checked;
                }
    std::mt19937_64 rng(seed);
    for (int s = 0; s < sample_count; ++s) {
        const Element b1 = random_element(B, ba, rng), b2 = random_element(B, ba, rng);
        const Element a1 = random_element(A, aa, rng), a2 = random_element(A, aa, rng);
        check(b1, b2, a1, a2);
        ++report.random_checked;
    }
    return report;
}

Element twisted_multiply(const Element& u, const Element& v) {
    const Algebra* alg = u.algebra() ? u.algebra() : v.algebra();
    if (!alg) return Element();
    if (alg->kind() != AlgebraKind::TwistedProduct) throw SpecMismatch("twisted_multiply outside a twisted product");
    return alg->multiply(u, v);
}

// --------------------------------------------------------------- inverse

const TensorElement& InverseTwist::apply(const Monomial& a, const Monomial& b) const {
    auto it = table_.find({a, b});
    if (it == table_.end()) throw CutoffTooSmall("pair outside the inverted truncation");
    return it->second;
}

InverseTwist invert_twist(const TwistMap& t, int degree_bound) {
    const Algebra& A = *t.left();
    const Algebra& B = *t.right();
    std::vector<std::pair<Monomial, Monomial>> src;  // (b, a)
    std::map<std::pair<Monomial, Monomial>, std::size_t> dst;  // (a, b) -> row
    std::vector<std::pair<Monomial, Monomial>> dst_list;
    for (const auto& b : B.basis_up_to(degree_bound))
        for (const auto& a : A.basis_up_to(degree_bound - B.degree(b))) {
            src.emplace_back(b, a);
            dst.emplace(std::make_pair(a, b), dst_list.size());
            dst_list.emplace_back(a, b);
        }
    ColumnEchelon ech(A.field());
    for (std::size_t j = 0; j < src.size(); ++j) {
        SparseVector col;
        for (const auto& [p, v] : t.apply(src[j].first, src[j].second)) {
            auto it = dst.find(p);
            if (it == dst.end())
                throw NonInvertibleTruncation("tau(" + B.format(src[j].first) + "⊗" + A.format(src[j].second) +
                                              ") leaves the degree-" + std::to_string(degree_bound) + " truncation");
            col.emplace(it->second, v);
        }
        ech.insert(j, col);
    }
    if (ech.rank() != src.size())
        throw NonInvertibleTruncation("tau has rank " + std::to_string(ech.rank()) + " < " +
                                      std::to_string(src.size()) + " on the truncation");
    InverseTwist inv;
    inv.bound_ = degree_bound;
    for (std::size_t r = 0; r < dst_list.size(); ++r) {
        SparseVector target{{r, A.field().one()}};
        auto sol = ech.solve(target);
        TensorElement out;
        for (const auto& [j, v] : *sol) tensor_add(out, src[j].first, src[j].second, v);
        inv.table_.emplace(dst_list[r], std::move(out));
    }
    return inv;
}

} // namespace twistres
