#pragma once

// Twisting maps tau: B (x) A -> A (x) B.
//
// Only seeds tau(b (x) x_i) on generators x_i of A are stored or computed
// from a closed rule; every other value comes from the recursion
//   tau(b (x) x_i a) = (m_A (x) 1)(1 (x) tau)(tau(b (x) x_i) (x) a),
// which is one half of the hexagon identity.

#include "twistres/algebra.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace twistres {

enum class TwistKind { Flip, Ore, SkewGroup, Custom };

class TwistMap;
using TwistPtr = std::shared_ptr<const TwistMap>;

class TwistMap : public TwistRule {
public:
    /// Plain tensor product: tau(b (x) a) = a (x) b.
    static TwistPtr flip(AlgebraPtr a, AlgebraPtr b);
    /// B = k[x], A = R, x r = r x + delta(r):
    ///   tau(x^m (x) r) = sum_k C(m,k) delta^{m-k}(r) (x) x^k.
    /// delta[i] is delta(x_i) for the generators of A.
    static TwistPtr ore(AlgebraPtr a, AlgebraPtr b, std::vector<LinearForm> delta);
    /// A = kG with G cyclic generated by g, B a polynomial algebra on which g
    /// acts linearly by action[i] = g(x_i): tau(s (x) g) = g (x) g^{-1}(s).
    static TwistPtr skew_group(AlgebraPtr a, AlgebraPtr b, std::vector<LinearForm> action);
    /// Overrides on selected (B-monomial, A-monomial) pairs on top of a
    /// fallback twist.
    static TwistPtr custom(TwistPtr fallback, std::map<std::pair<Monomial, Monomial>, TensorElement> overrides);

    TwistKind kind() const { return kind_; }
    const AlgebraPtr& left() const override { return a_; }
    const AlgebraPtr& right() const override { return b_; }
    const TensorElement& apply(const Monomial& b, const Monomial& a) const override;
    TensorElement apply(const Element& b, const Element& a) const;
    bool is_graded() const override;

    /// Ore twists: the derivation of A.
    const Derivation& derivation() const;
    /// Skew twists: g^e applied to a monomial / element of B.
    Element act(int e, const Monomial& b) const;
    Element act(int e, const Element& b) const;
    /// Skew twists: matrix of g^e on the generators, column i = g^e(x_i).
    std::vector<std::vector<Scalar>> action_matrix(int e) const;
    int group_order() const;

    const TwistPtr& fallback() const { return fallback_; }
    /// The twist whose closed rule governs seeds not overridden.
    const TwistMap& base() const { return fallback_ ? fallback_->base() : *this; }
    std::string description() const;

private:
    TwistMap() = default;
    TensorElement seed(const Monomial& b, std::size_t i) const;

    TwistKind kind_ = TwistKind::Flip;
    AlgebraPtr a_, b_;
    std::unique_ptr<Derivation> delta_;
    std::vector<std::vector<std::vector<Scalar>>> action_;  // action_[e] = matrix of g^e
    TwistPtr fallback_;
    std::map<std::pair<Monomial, Monomial>, TensorElement> overrides_;

    mutable std::mutex mutex_;
    mutable std::unordered_map<std::pair<Monomial, Monomial>, TensorElement, MonomialPairHash> memo_;
    mutable std::unordered_map<std::pair<Monomial, Monomial>, Element, MonomialPairHash> act_memo_;
};

struct HexagonViolation {
    std::string tuple;  // "b1, b2, a1, a2"
    std::string lhs;
    std::string rhs;
};

struct HexagonReport {
    std::size_t tuples_checked = 0;
    std::size_t random_checked = 0;
    std::vector<HexagonViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Verifies tau o (m_B (x) m_A) = (m_A (x) m_B)(1 tau 1)(tau (x) tau)(1 tau 1)
/// on all basis 4-tuples whose factors have degree <= degree_bound, plus
/// sample_count random tuples of sparse linear combinations; also checks the
/// unit conditions.
HexagonReport check_hexagon(const TwistMap& t, int degree_bound, int sample_count, std::uint64_t seed);

/// Multiplication in A (x)_tau B.
Element twisted_multiply(const Element& u, const Element& v);

/// tau^{-1}: A (x) B -> B (x) A as a table on basis pairs of total degree
/// <= degree_bound.
class InverseTwist {
public:
    int degree_bound() const { return bound_; }
    /// tau^{-1}(a (x) b) as a map (b', a') -> coefficient.
    const TensorElement& apply(const Monomial& a, const Monomial& b) const;
    std::size_t size() const { return table_.size(); }

private:
    friend InverseTwist invert_twist(const TwistMap& t, int degree_bound);
    int bound_ = 0;
    std::map<std::pair<Monomial, Monomial>, TensorElement> table_;
};

/// Throws NonInvertibleTruncation if tau does not restrict to a bijection
/// of the degree-<= bound pieces.
InverseTwist invert_twist(const TwistMap& t, int degree_bound);

} // namespace twistres
