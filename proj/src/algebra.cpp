#include "twistres/algebra.hpp"

#include "twistres/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace twistres {

// ---------------------------------------------------------------- Element

void Element::add(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar Element::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    if (it != terms_.end()) return it->second;
    return algebra_ ? algebra_->field().zero() : Scalar();
}

void Element::check_same(const Element& o) const {
    if (algebra_ && o.algebra_ && algebra_ != o.algebra_)
        throw SpecMismatch("elements of different algebras");
}

Element& Element::operator+=(const Element& o) {
    check_same(o);
    if (!algebra_) algebra_ = o.algebra_;
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    check_same(o);
    if (!algebra_) algebra_ = o.algebra_;
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

Element Element::operator+(const Element& o) const {
    Element r = *this;
    r += o;
    return r;
}

Element Element::operator-(const Element& o) const {
    Element r = *this;
    r -= o;
    return r;
}

Element Element::operator*(const Element& o) const {
    check_same(o);
    const Algebra* a = algebra_ ? algebra_ : o.algebra_;
    if (!a) return Element();
    return a->multiply(*this, o);
}

Element Element::scaled(const Scalar& c) const {
    Element r(algebra_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

bool Element::operator==(const Element& o) const {
    if (terms_.empty() && o.terms_.empty()) return true;
    return algebra_ == o.algebra_ && terms_ == o.terms_;
}

namespace {

std::string coefficient_prefix(const Scalar& c, bool first, bool unit_monomial) {
    std::string s = c.to_string();
    bool negative = !s.empty() && s[0] == '-';
    if (negative) s = s.substr(1);
    std::string out;
    if (first)
        out = negative ? "-" : "";
    else
        out = negative ? " - " : " + ";
    if (unit_monomial) return out + s;
    if (s != "1") out += s + "*";
    return out;
}

// Highest degree first, then decreasing exponent vectors.
template <class Degree>
std::vector<Monomial> display_order(const std::map<Monomial, Scalar>& terms, Degree degree) {
    std::vector<Monomial> ms;
    for (const auto& [m, c] : terms) ms.push_back(m);
    std::stable_sort(ms.begin(), ms.end(), [&](const Monomial& a, const Monomial& b) {
        int da = degree(a), db = degree(b);
        if (da != db) return da > db;
        return b < a;
    });
    return ms;
}

} // namespace

std::string Element::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    auto order = display_order(terms_, [&](const Monomial& m) { return algebra_->degree(m); });
    for (const auto& m : order) {
        const Scalar& c = terms_.at(m);
        const bool unit = m.is_unit() && algebra_->kind() != AlgebraKind::TwistedProduct;
        out += coefficient_prefix(c, first, unit);
        if (!unit) out += algebra_->format(m);
        first = false;
    }
    return out;
}

// ------------------------------------------------------------- LinearForm

bool LinearForm::is_zero() const {
    if (!constant.is_zero()) return false;
    for (const auto& c : coeff)
        if (!c.is_zero()) return false;
    return true;
}

void tensor_add(TensorElement& t, const Monomial& a, const Monomial& b, const Scalar& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(a, b);
    auto it = t.find(key);
    if (it == t.end()) {
        t.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    }
}

Scalar binomial(long n, long k, const Field& field) {
    if (k < 0 || k > n) return field.zero();
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return field.from(mpq_class(b));
}

// ------------------------------------------------------------- Derivation

Derivation::Derivation(const Algebra* algebra, std::vector<LinearForm> images)
    : algebra_(algebra), images_(std::move(images)) {}

Element Derivation::on_generator(std::size_t i) const {
    Element e(algebra_);
    if (i >= images_.size()) return e;
    const LinearForm& f = images_[i];
    e.add(algebra_->one(), f.constant);
    for (std::size_t k = 0; k < f.coeff.size(); ++k) e.add(algebra_->generator(k), f.coeff[k]);
    return e;
}

bool Derivation::kills_augmentation() const {
    for (const auto& f : images_)
        if (f.has_constant()) return false;
    return true;
}

Element Derivation::apply(const Monomial& m) const {
    if (m.is_unit()) return Element(algebra_);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find(m);
        if (it != memo_.end()) return it->second;
    }
    std::size_t l = m.size;
    while (l > 0 && m[l - 1] == 0) --l;
    --l;
    Monomial rest = m;
    rest[l] -= 1;
    // d(rest * x_l) = d(rest) x_l + rest d(x_l)
    Element out = algebra_->multiply(apply(rest), algebra_->element(algebra_->generator(l)));
    out += algebra_->multiply(algebra_->element(rest), on_generator(l));
    std::lock_guard<std::mutex> lock(mutex_);
    memo_.emplace(m, out);
    return out;
}

Element Derivation::apply(const Element& e) const {
    Element out(algebra_);
    for (const auto& [m, c] : e.terms()) out += apply(m).scaled(c);
    return out;
}

Element Derivation::power(const Element& e, int power) const {
    Element out = e;
    for (int k = 0; k < power && !out.is_zero(); ++k) out = apply(out);
    return out;
}

// ---------------------------------------------------------------- Algebra

AlgebraPtr Algebra::polynomial(Field field, std::vector<std::string> names) {
    if (names.size() > Monomial::kMaxVars) throw ValidationError("too many generators");
    std::shared_ptr<Algebra> a(new Algebra());
    a->kind_ = AlgebraKind::Polynomial;
    a->field_ = field;
    a->nvars_ = names.size();
    a->names_ = std::move(names);
    a->name_ = "k[";
    for (std::size_t i = 0; i < a->names_.size(); ++i) a->name_ += (i ? "," : "") + a->names_[i];
    a->name_ += "]";
    return a;
}

AlgebraPtr Algebra::cyclic(Field field, int order, std::string generator) {
    if (order < 1) throw ValidationError("cyclic group order must be at least 1");
    if (order > 255) throw ValidationError("cyclic group order too large");
    std::shared_ptr<Algebra> a(new Algebra());
    a->kind_ = AlgebraKind::CyclicGroup;
    a->field_ = field;
    a->order_ = order;
    a->nvars_ = 1;
    a->names_ = {std::move(generator)};
    a->name_ = "kZ/" + std::to_string(order);
    return a;
}

AlgebraPtr Algebra::iterated_ore(Field field, std::vector<std::string> names,
                                 std::vector<std::vector<LinearForm>> delta) {
    const std::size_t t = names.size();
    if (t > Monomial::kMaxVars) throw ValidationError("too many generators");
    if (delta.size() < t) delta.resize(t);
    if (delta.size() > t) throw ValidationError("delta table has more rows than generators");
    for (std::size_t j = 0; j < t; ++j) {
        if (delta[j].size() > j) throw ValidationError("delta_" + names[j] + " defined on a later generator");
        delta[j].resize(j, LinearForm{field.zero(), {}});
        for (std::size_t i = 0; i < j; ++i) {
            auto& f = delta[j][i];
            if (f.constant.characteristic() != field.characteristic) f.constant = field.zero();
            f.coeff.resize(t, field.zero());
            for (std::size_t k = j; k < t; ++k)
                if (!f.coeff[k].is_zero())
                    throw ValidationError("delta_" + names[j] + "(" + names[i] + ") involves " + names[k] +
                                          ", violating the filtered condition");
        }
    }
    std::shared_ptr<Algebra> a(new Algebra());
    a->kind_ = AlgebraKind::IteratedOre;
    a->field_ = field;
    a->nvars_ = t;
    a->names_ = std::move(names);
    a->delta_table_ = std::move(delta);
    for (std::size_t j = 0; j < t; ++j) {
        std::vector<LinearForm> images(t, LinearForm{field.zero(), std::vector<Scalar>(t, field.zero())});
        for (std::size_t i = 0; i < j; ++i) images[i] = a->delta_table_[j][i];
        a->deltas_.push_back(std::make_unique<Derivation>(a.get(), std::move(images)));
    }
    a->name_ = "k<";
    for (std::size_t i = 0; i < a->names_.size(); ++i) a->name_ += (i ? "," : "") + a->names_[i];
    a->name_ += ">";
    return a;
}

AlgebraPtr Algebra::twisted_product(std::shared_ptr<const TwistRule> twist) {
    std::shared_ptr<Algebra> a(new Algebra());
    a->kind_ = AlgebraKind::TwistedProduct;
    a->left_ = twist->left();
    a->right_ = twist->right();
    if (!(a->left_->field() == a->right_->field())) throw SpecMismatch("factors over different fields");
    a->field_ = a->left_->field();
    a->nvars_ = a->left_->nvars() + a->right_->nvars();
    if (a->nvars_ > Monomial::kMaxVars) throw ValidationError("too many generators");
    a->names_ = a->left_->names();
    for (const auto& n : a->right_->names()) a->names_.push_back(n);
    a->twist_ = std::move(twist);
    a->name_ = a->left_->name() + "⊗τ" + a->right_->name();
    return a;
}

LinearForm Algebra::delta_form(std::size_t j, std::size_t i) const {
    if (kind_ == AlgebraKind::IteratedOre && i < j && j < delta_table_.size()) return delta_table_[j][i];
    return LinearForm{field_.zero(), std::vector<Scalar>(nvars_, field_.zero())};
}

const Derivation& Algebra::delta(std::size_t j) const {
    if (kind_ != AlgebraKind::IteratedOre || j >= deltas_.size()) throw SpecMismatch("no derivation delta_" + std::to_string(j));
    return *deltas_[j];
}

Monomial Algebra::one() const { return Monomial(nvars_); }

std::optional<std::size_t> Algebra::generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

Monomial Algebra::generator(std::size_t i) const {
    if (i >= names_.size()) throw UnknownGenerator("generator index " + std::to_string(i));
    switch (kind_) {
    case AlgebraKind::CyclicGroup: {
        Monomial m(1);
        m[0] = order_ > 1 ? 1 : 0;
        return m;
    }
    case AlgebraKind::TwistedProduct: {
        const std::size_t na = left_->generator_count();
        if (i < na) return combine(left_->generator(i), right_->one());
        return combine(left_->one(), right_->generator(i - na));
    }
    default: {
        Monomial m(nvars_);
        m[i] = 1;
        return m;
    }
    }
}

Monomial Algebra::combine(const Monomial& a, const Monomial& b) const { return a.concat(b); }

Monomial Algebra::left_part(const Monomial& m) const { return m.slice(0, left_->nvars()); }

Monomial Algebra::right_part(const Monomial& m) const { return m.slice(left_->nvars(), right_->nvars()); }

int Algebra::degree(const Monomial& m) const {
    switch (kind_) {
    case AlgebraKind::CyclicGroup:
        return 0;
    case AlgebraKind::TwistedProduct:
        return left_->degree(left_part(m)) + right_->degree(right_part(m));
    default:
        return m.total();
    }
}

int Algebra::filtration_degree(const Element& e) const {
    if (e.is_zero()) throw ZeroElement("filtration degree of zero");
    int d = 0;
    for (const auto& [m, c] : e.terms()) d = std::max(d, degree(m));
    return d;
}

Element Algebra::multiply(const Element& a, const Element& b) const {
    if ((a.algebra() && a.algebra() != this) || (b.algebra() && b.algebra() != this))
        throw SpecMismatch("multiply: element does not belong to " + name_);
    Element out(this);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            const Scalar c = ca * cb;
            for (const auto& [m, v] : multiply(ma, mb).terms()) out.add(m, v * c);
        }
    return out;
}

Element Algebra::multiply(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
    case AlgebraKind::Polynomial: {
        Monomial m(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) m[i] = static_cast<std::uint8_t>(a[i] + b[i]);
        return element(m);
    }
    case AlgebraKind::CyclicGroup: {
        Monomial m(1);
        m[0] = static_cast<std::uint8_t>((a[0] + b[0]) % order_);
        return element(m);
    }
    default:
        break;
    }
    if (a.is_unit()) return element(b);
    if (b.is_unit()) return element(a);
    const auto key = std::make_pair(a, b);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    Element out(this);
    if (kind_ == AlgebraKind::IteratedOre) {
        out = ore_multiply(a, b);
    } else {
        // (a0 (x) b0)(a1 (x) b1) = a0 tau(b0 (x) a1) b1
        const Monomial a0 = left_part(a), b0 = right_part(a);
        const Monomial a1 = left_part(b), b1 = right_part(b);
        for (const auto& [pair, c] : twist_->apply(b0, a1)) {
            const Element l = left_->multiply(a0, pair.first);
            const Element r = right_->multiply(pair.second, b1);
            for (const auto& [ml, cl] : l.terms())
                for (const auto& [mr, cr] : r.terms()) out.add(combine(ml, mr), c * cl * cr);
        }
    }
    std::lock_guard<std::mutex> lock(mutex_);
    memo_.emplace(key, out);
    return out;
}

Element Algebra::ore_multiply(const Monomial& a, const Monomial& b) const {
    Element acc = element(a);
    for (std::size_t i = 0; i < nvars_; ++i)
        for (int e = 0; e < b[i]; ++e) {
            Element next(this);
            for (const auto& [m, c] : acc.terms()) next += multiply_generator(m, i).scaled(c);
            acc = std::move(next);
        }
    return acc;
}

// m * x_i. With x_k the largest variable in m and k > i:
//   x_k^a x_i = sum_c C(a,c) delta_k^{a-c}(x_i) x_k^c.
Element Algebra::multiply_generator(const Monomial& m, std::size_t i) const {
    std::size_t top = nvars_;
    while (top > 0 && m[top - 1] == 0) --top;
    if (top == 0 || top - 1 <= i) {
        Monomial r = m;
        r[i] += 1;
        return element(r);
    }
    const std::size_t k = top - 1;
    const int a = m[k];
    Monomial prefix = m;
    prefix[k] = 0;
    Element out(this);
    Element d = element(generator(i));
    // d runs through delta_k^{a-c}(x_i) for c = a, a-1, ..., 0
    for (int c = a; c >= 0; --c) {
        if (!d.is_zero()) {
            const Scalar coef = binomial(a, c, field_);
            const Element left = multiply(element(prefix), d);
            for (const auto& [mm, v] : left.terms()) {
                Monomial r = mm;
                r[k] = static_cast<std::uint8_t>(c);
                out.add(r, v * coef);
            }
        }
        if (c > 0) d = deltas_[k]->apply(d);
    }
    return out;
}

Element Algebra::normalize(const std::vector<std::string>& word) const {
    Element out = unit();
    for (const auto& w : word) {
        auto idx = generator_index(w);
        if (!idx) throw UnknownGenerator("'" + w + "' is not a generator of " + name_);
        out = multiply(out, element(generator(*idx)));
    }
    return out;
}

namespace {

void enumerate_exponents(std::size_t t, int N, Monomial& cur, std::size_t pos, int used, std::vector<Monomial>& out) {
    if (pos == t) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; used + e <= N; ++e) {
        cur[pos] = static_cast<std::uint8_t>(e);
        enumerate_exponents(t, N, cur, pos + 1, used + e, out);
    }
    cur[pos] = 0;
}

} // namespace

std::vector<Monomial> Algebra::basis_up_to(int N) const {
    std::vector<Monomial> out;
    if (N < 0) return out;
    switch (kind_) {
    case AlgebraKind::CyclicGroup:
        for (int e = 0; e < order_; ++e) {
            Monomial m(1);
            m[0] = static_cast<std::uint8_t>(e);
            out.push_back(m);
        }
        return out;
    case AlgebraKind::TwistedProduct:
        for (const auto& a : left_->basis_up_to(N))
            for (const auto& b : right_->basis_up_to(N - left_->degree(a))) out.push_back(combine(a, b));
        std::stable_sort(out.begin(), out.end(),
                         [&](const Monomial& x, const Monomial& y) { return degree(x) < degree(y); });
        return out;
    default: {
        Monomial cur(nvars_);
        enumerate_exponents(nvars_, N, cur, 0, 0, out);
        std::sort(out.begin(), out.end(), [](const Monomial& x, const Monomial& y) {
            if (x.total() != y.total()) return x.total() < y.total();
            return y < x;
        });
        return out;
    }
    }
}

Scalar Algebra::augmentation(const Monomial& m) const {
    switch (kind_) {
    case AlgebraKind::CyclicGroup:
        return field_.one();
    case AlgebraKind::TwistedProduct:
        return left_->augmentation(left_part(m)) * right_->augmentation(right_part(m));
    default:
        return m.is_unit() ? field_.one() : field_.zero();
    }
}

Scalar Algebra::augmentation(const Element& e) const {
    Scalar s = field_.zero();
    for (const auto& [m, c] : e.terms()) s += c * augmentation(m);
    return s;
}

bool Algebra::is_graded() const {
    switch (kind_) {
    case AlgebraKind::Polynomial:
    case AlgebraKind::CyclicGroup:
        return true;
    case AlgebraKind::IteratedOre:
        for (const auto& row : delta_table_)
            for (const auto& f : row)
                if (!f.is_zero()) return false;
        return true;
    case AlgebraKind::TwistedProduct:
        return left_->is_graded() && right_->is_graded() && twist_->is_graded();
    }
    return false;
}

std::string Algebra::format(const Monomial& m) const {
    switch (kind_) {
    case AlgebraKind::CyclicGroup:
        if (m[0] == 0) return "1";
        if (m[0] == 1) return names_[0];
        return names_[0] + "^" + std::to_string(m[0]);
    case AlgebraKind::TwistedProduct:
        return left_->format(left_part(m)) + "⊗" + right_->format(right_part(m));
    default: {
        std::string s;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += names_[i];
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
        return s.empty() ? "1" : s;
    }
    }
}

std::string format_tensor(const Algebra& a, const Algebra& b, const TensorElement& t) {
    if (t.empty()) return "0";
    std::string out;
    bool first = true;
    std::vector<std::pair<Monomial, Monomial>> keys;
    for (const auto& [k, c] : t) keys.push_back(k);
    std::stable_sort(keys.begin(), keys.end(), [&](const auto& x, const auto& y) {
        int dx = a.degree(x.first) + b.degree(x.second), dy = a.degree(y.first) + b.degree(y.second);
        if (dx != dy) return dx > dy;
        return y < x;
    });
    for (const auto& k : keys) {
        std::string s = t.at(k).to_string();
        bool negative = s[0] == '-';
        if (negative) s = s.substr(1);
        out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
        if (s != "1") out += s + "*";
        out += a.format(k.first) + "⊗" + b.format(k.second);
        first = false;
    }
    return out;
}

// ------------------------------------------------------------------ parser

namespace {

const std::string kTensor = "\xE2\x8A\x97";   // ⊗
const std::string kMinus = "\xE2\x88\x92";    // −

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip();
        return pos_ >= s_.size();
    }
    bool eat(const std::string& tok) {
        skip();
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    bool eat_minus() { return eat("-") || eat(kMinus); }
    bool eat_tensor() { return eat(kTensor) || eat("@"); }
    bool peek_number() {
        skip();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }
    bool peek_ident() {
        skip();
        return pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_');
    }
    std::string number() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return s_.substr(start, pos_ - start);
    }
    std::string ident() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        if (start == pos_) fail("expected a generator name");
        return s_.substr(start, pos_ - start);
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " in '" + s_ + "'", 1, static_cast<int>(pos_) + 1);
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

// factor ('*' factor)* where factor is a number, a fraction p/q or name[^e].
// Stops before '⊗', '+', '-' and end of input.
std::pair<mpq_class, std::vector<std::string>> parse_product(Lexer& lx) {
    mpq_class coef = 1;
    std::vector<std::string> word;
    bool any = false;
    while (true) {
        if (lx.peek_number()) {
            mpq_class v(lx.number());
            if (lx.eat("/")) {
                mpq_class d(lx.number());
                if (d == 0) lx.fail("zero denominator");
                v /= d;
            }
            coef *= v;
        } else if (lx.peek_ident()) {
            std::string name = lx.ident();
            int power = 1;
            if (lx.eat("^")) power = std::stoi(lx.number());
            for (int k = 0; k < power; ++k) word.push_back(name);
        } else {
            lx.fail(any ? "expected a factor after '*'" : "expected a term");
        }
        any = true;
        if (!lx.eat("*")) break;
    }
    return {coef, word};
}

} // namespace

Element parse_element(const Algebra& algebra, const std::string& text) {
    Lexer lx(text);
    Element out = algebra.zero();
    if (lx.at_end()) lx.fail("empty linear combination");
    bool first = true;
    while (!lx.at_end()) {
        int sign = 1;
        if (lx.eat("+")) {
        } else if (lx.eat_minus()) {
            sign = -1;
        } else if (!first) {
            lx.fail("expected '+' or '-'");
        }
        auto [coef, word] = parse_product(lx);
        if (lx.eat_tensor()) lx.fail("unexpected tensor sign");
        out += algebra.normalize(word).scaled(algebra.field().from(mpq_class(coef * sign)));
        first = false;
    }
    return out;
}

TensorElement parse_tensor(const Algebra& a, const Algebra& b, const std::string& text) {
    Lexer lx(text);
    TensorElement out;
    if (lx.at_end()) lx.fail("empty linear combination");
    bool first = true;
    while (!lx.at_end()) {
        int sign = 1;
        if (lx.eat("+")) {
        } else if (lx.eat_minus()) {
            sign = -1;
        } else if (!first) {
            lx.fail("expected '+' or '-'");
        }
        auto [ca, wa] = parse_product(lx);
        if (!lx.eat_tensor()) lx.fail("expected '⊗'");
        auto [cb, wb] = parse_product(lx);
        const Element ea = a.normalize(wa), eb = b.normalize(wb);
        const Scalar c = a.field().from(mpq_class(ca * cb * sign));
        for (const auto& [ma, va] : ea.terms())
            for (const auto& [mb, vb] : eb.terms()) tensor_add(out, ma, mb, c * va * vb);
        first = false;
    }
    return out;
}

LinearForm parse_linear_form(const Algebra& algebra, const std::string& text) {
    const Element e = parse_element(algebra, text);
    LinearForm f{algebra.field().zero(), std::vector<Scalar>(algebra.nvars(), algebra.field().zero())};
    for (const auto& [m, c] : e.terms()) {
        if (m.is_unit()) {
            f.constant = c;
            continue;
        }
        bool matched = false;
        for (std::size_t k = 0; k < algebra.generator_count(); ++k)
            if (m == algebra.generator(k)) {
                f.coeff[k] = c;
                matched = true;
            }
        if (!matched) throw ValidationError("'" + text + "' is not in k + span of the generators");
    }
    return f;
}

} // namespace twistres
