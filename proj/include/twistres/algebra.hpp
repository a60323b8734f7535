#pragma once

// Presented algebras with a PBW normal-form basis and sparse elements.
//
// Monomials in an iterated Ore extension are ordered x_1 < ... < x_t and
// products are rewritten with x_j x_i = x_i x_j + delta_j(x_i) for i < j.
// Twisted products store a (x) b with the left factor first and route every
// crossing b a through a TwistRule.

#include "twistres/monomial.hpp"
#include "twistres/scalar.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace twistres {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

class Element {
public:
    Element() = default;
    explicit Element(const Algebra* algebra) : algebra_(algebra) {}
    Element(const Algebra* algebra, const Monomial& m, const Scalar& c) : algebra_(algebra) { add(m, c); }

    const Algebra* algebra() const { return algebra_; }
    const std::map<Monomial, Scalar>& terms() const& { return terms_; }
    // By value on temporaries so range-for over f().terms() stays valid.
    std::map<Monomial, Scalar> terms() && { return std::move(terms_); }

    void add(const Monomial& m, const Scalar& c);
    bool is_zero() const { return terms_.empty(); }
    Scalar coefficient(const Monomial& m) const;

    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Element& o) const;
    Element scaled(const Scalar& c) const;
    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void check_same(const Element& o) const;

    const Algebra* algebra_ = nullptr;
    std::map<Monomial, Scalar> terms_;
};

/// delta(x_i) = constant + sum_k coeff[k] x_k, an element of k + V.
struct LinearForm {
    Scalar constant;
    std::vector<Scalar> coeff;

    bool is_zero() const;
    bool has_constant() const { return !constant.is_zero(); }
};

/// A tensor a (x) b of basis elements, the left factor first.
using TensorElement = std::map<std::pair<Monomial, Monomial>, Scalar>;

void tensor_add(TensorElement& t, const Monomial& a, const Monomial& b, const Scalar& c);

/// Rule for moving a right-factor monomial past a left-factor monomial:
/// tau(b (x) a) in A (x) B.
class TwistRule {
public:
    virtual ~TwistRule() = default;
    virtual const AlgebraPtr& left() const = 0;   // A
    virtual const AlgebraPtr& right() const = 0;  // B
    virtual const TensorElement& apply(const Monomial& b, const Monomial& a) const = 0;
    virtual bool is_graded() const = 0;
};

/// A derivation of an algebra determined by its values on the generators,
/// each in k + span of the generators. Extended to monomials by the Leibniz
/// rule d(uv) = d(u) v + u d(v).
class Derivation {
public:
    Derivation(const Algebra* algebra, std::vector<LinearForm> images);

    const Algebra* algebra() const { return algebra_; }
    const std::vector<LinearForm>& images() const { return images_; }
    Element apply(const Monomial& m) const;
    Element apply(const Element& e) const;
    /// delta^power applied to e.
    Element power(const Element& e, int power) const;
    /// delta(x_i) as an element.
    Element on_generator(std::size_t i) const;
    /// True when no generator image has a constant term (epsilon o delta = 0).
    bool kills_augmentation() const;

private:
    const Algebra* algebra_;
    std::vector<LinearForm> images_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<Monomial, Element, MonomialHash> memo_;
};

enum class AlgebraKind { Polynomial, CyclicGroup, IteratedOre, TwistedProduct };

class Algebra : public std::enable_shared_from_this<Algebra> {
public:
    static AlgebraPtr polynomial(Field field, std::vector<std::string> names);
    static AlgebraPtr cyclic(Field field, int order, std::string generator = "g");
    /// delta[j][i] = delta_{j}(x_i) for i < j (0-based); delta[j] has j entries.
    static AlgebraPtr iterated_ore(Field field, std::vector<std::string> names,
                                   std::vector<std::vector<LinearForm>> delta);
    static AlgebraPtr twisted_product(std::shared_ptr<const TwistRule> twist);

    AlgebraKind kind() const { return kind_; }
    const Field& field() const { return field_; }
    const std::string& name() const { return name_; }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t nvars() const { return nvars_; }
    int order() const { return order_; }

    const AlgebraPtr& left_factor() const { return left_; }
    const AlgebraPtr& right_factor() const { return right_; }
    const std::shared_ptr<const TwistRule>& twist() const { return twist_; }
    /// delta_j(x_i) for an iterated Ore extension (zero form for i >= j).
    LinearForm delta_form(std::size_t j, std::size_t i) const;
    const Derivation& delta(std::size_t j) const;

    Monomial one() const;
    Element unit() const { return Element(this, one(), field_.one()); }
    Element zero() const { return Element(this); }
    Element scalar(const Scalar& c) const { return Element(this, one(), c); }
    Element element(const Monomial& m) const { return Element(this, m, field_.one()); }
    std::optional<std::size_t> generator_index(const std::string& name) const;
    /// Monomial of generator i (for a cyclic group, g itself).
    Monomial generator(std::size_t i) const;
    std::size_t generator_count() const { return names_.size(); }

    int degree(const Monomial& m) const;
    int filtration_degree(const Element& e) const;

    Element multiply(const Monomial& a, const Monomial& b) const;
    Element multiply(const Element& a, const Element& b) const;
    Element normalize(const std::vector<std::string>& word) const;

    /// Monomials of degree <= N ordered by degree, then exponent vectors in
    /// decreasing lexicographic order; the whole group for cyclic algebras.
    std::vector<Monomial> basis_up_to(int N) const;

    /// The augmentation: generators of polynomial / Ore type go to 0, group
    /// elements to 1.
    Scalar augmentation(const Monomial& m) const;
    Scalar augmentation(const Element& e) const;

    /// All structure constants homogeneous for the degree function.
    bool is_graded() const;
    /// Sum of two split factors for twisted products.
    Monomial combine(const Monomial& a, const Monomial& b) const;
    Monomial left_part(const Monomial& m) const;
    Monomial right_part(const Monomial& m) const;

    std::string format(const Monomial& m) const;

private:
    Algebra() = default;
    Element multiply_generator(const Monomial& m, std::size_t i) const;
    Element ore_multiply(const Monomial& a, const Monomial& b) const;

    AlgebraKind kind_ = AlgebraKind::Polynomial;
    Field field_;
    std::string name_;
    std::vector<std::string> names_;
    std::size_t nvars_ = 0;
    int order_ = 0;
    std::vector<std::vector<LinearForm>> delta_table_;
    std::vector<std::unique_ptr<Derivation>> deltas_;
    AlgebraPtr left_, right_;
    std::shared_ptr<const TwistRule> twist_;

    mutable std::mutex mutex_;
    mutable std::unordered_map<std::pair<Monomial, Monomial>, Element, MonomialPairHash> memo_;
};

/// Binomial coefficient as a scalar of the given field.
Scalar binomial(long n, long k, const Field& field);

/// Parses a linear combination such as "x*y - 2*y^2 + 1/2" or "-1" over the
/// generators of `algebra`; "⊗" is not allowed here.
Element parse_element(const Algebra& algebra, const std::string& text);
/// Parses "x⊗y − 1⊗1" (or "x@y - 1@1") into A (x) B.
TensorElement parse_tensor(const Algebra& a, const Algebra& b, const std::string& text);
/// Parses a form in k + V over the generators.
LinearForm parse_linear_form(const Algebra& algebra, const std::string& text);

std::string format_tensor(const Algebra& a, const Algebra& b, const TensorElement& t);

} // namespace twistres
