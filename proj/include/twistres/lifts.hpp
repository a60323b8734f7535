#pragma once

// Lifts of a twisting map tau: B (x) A -> A (x) B to free resolutions.
//
// For a resolution P of an A-module (or bimodule) a left lift is
// tau_{B,n}: B (x) P_n -> P_n (x) B; for a resolution Q over B a right lift
// is tau_{n,A}: Q_n (x) A -> A (x) Q_n. A lift is fixed by a label rule (its
// values on generators 1 (x) L (x) 1); on a general basis element the
// compatibility equations force
//   b | a0 L a1  ->  tau(b a0), then the rule on L, then tau(. a1).

#include "twistres/complex.hpp"
#include "twistres/twist.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace twistres {

using ComplexPtr = std::shared_ptr<const ChainComplex>;

/// sum c (a0 (x) L (x) a1) (x) b  in P_n (x) B.
using LeftLiftElement = std::map<std::pair<Term, Monomial>, Scalar>;
/// sum c a (x) (b0 (x) L (x) b1)  in A (x) Q_n.
using RightLiftElement = std::map<std::pair<Monomial, Term>, Scalar>;

void lift_add(LeftLiftElement& e, const Term& t, const Monomial& b, const Scalar& c);
void lift_add(RightLiftElement& e, const Monomial& a, const Term& t, const Scalar& c);

class LeftLabelRule {
public:
    virtual ~LeftLabelRule() = default;
    /// b (x) (1 L 1) for the label L of degree n.
    virtual LeftLiftElement cross(const Monomial& b, int n, int label) const = 0;
    virtual std::string name() const = 0;
};

class RightLabelRule {
public:
    virtual ~RightLabelRule() = default;
    /// (1 L 1) (x) a for the label L of degree n.
    virtual RightLiftElement cross(int n, int label, const Monomial& a) const = 0;
    virtual std::string name() const = 0;
};

/// Labels pass through untouched: b (x) L -> L (x) b.
std::unique_ptr<LeftLabelRule> transparent_left_rule(ComplexPtr p);
std::unique_ptr<RightLabelRule> transparent_right_rule(ComplexPtr q);
/// B = k[x] over wedge labels of a Koszul-type resolution of R, with
/// x r = r x + delta(r):
///   x^m (x) L -> sum_k C(m,k) D^{m-k}(L) (x) x^k,
/// D(L) = sum_i L with slot i replaced by the linear part of delta(x_{l_i}).
std::unique_ptr<LeftLabelRule> ore_label_rule(ComplexPtr p, std::vector<LinearForm> delta);
/// B (with a cyclic group acting) over the periodic resolution of kG:
///   b (x) L_n -> L_n (x) g^{-c_n}(b),  c_n = 1 for odd n and 0 for even n.
std::unique_ptr<LeftLabelRule> periodic_group_rule(ComplexPtr p, TwistPtr skew);
/// Group elements over Koszul labels of the polynomial algebra they act on:
///   L (x) g^e -> g^e (x) g^{-e}(L), acting on each wedge factor.
std::unique_ptr<RightLabelRule> wedge_group_rule(ComplexPtr q, TwistPtr skew);
/// Bar-type labels: tau applied factor by factor through the middle tensor
/// factors; unit factors vanish in the reduced bar complex.
std::unique_ptr<LeftLabelRule> bar_left_rule(ComplexPtr p, TwistPtr tau, bool reduced);
std::unique_ptr<RightLabelRule> bar_right_rule(ComplexPtr q, TwistPtr tau, bool reduced);

class LeftLift {
public:
    LeftLift(ComplexPtr p, TwistPtr tau, std::unique_ptr<LeftLabelRule> rule);

    const ChainComplex& complex() const { return *p_; }
    const ComplexPtr& complex_ptr() const { return p_; }
    const TwistMap& twist() const { return *tau_; }
    const TwistPtr& twist_ptr() const { return tau_; }
    const LeftLabelRule& rule() const { return *rule_; }

    const LeftLiftElement& apply(const Monomial& b, int n, const Term& m) const;
    LeftLiftElement apply(const Monomial& b, int n, const ModuleElement& m) const;

private:
    ComplexPtr p_;
    TwistPtr tau_;
    std::unique_ptr<LeftLabelRule> rule_;
    mutable std::mutex mutex_;
    mutable std::vector<std::map<std::pair<Monomial, Term>, LeftLiftElement>> memo_;
};

class RightLift {
public:
    RightLift(ComplexPtr q, TwistPtr tau, std::unique_ptr<RightLabelRule> rule);

    const ChainComplex& complex() const { return *q_; }
    const ComplexPtr& complex_ptr() const { return q_; }
    const TwistMap& twist() const { return *tau_; }
    const TwistPtr& twist_ptr() const { return tau_; }
    const RightLabelRule& rule() const { return *rule_; }

    const RightLiftElement& apply(int n, const Term& m, const Monomial& a) const;
    RightLiftElement apply(int n, const ModuleElement& m, const Monomial& a) const;

private:
    ComplexPtr q_;
    TwistPtr tau_;
    std::unique_ptr<RightLabelRule> rule_;
    mutable std::mutex mutex_;
    mutable std::vector<std::map<std::pair<Term, Monomial>, RightLiftElement>> memo_;
};

std::string format_lift(const ChainComplex& p, const Algebra& b, int n, const LeftLiftElement& e);
std::string format_lift(const ChainComplex& q, const Algebra& a, int n, const RightLiftElement& e);

struct LiftViolation {
    std::string check;  // "chain-map", "augmentation", "unit", "multiplicative", "bimodule"
    int degree = 0;
    std::string input;
    std::string lhs;
    std::string rhs;
};

struct LiftReport {
    std::size_t checked = 0;
    std::vector<LiftViolation> violations;
    bool ok() const { return violations.empty(); }
    void merge(const LiftReport& o);
};

/// (d (x) 1) o tau_{B,n} = tau_{B,n-1} o (1 (x) d) on every label and every
/// B-monomial of degree <= bound, plus the augmentation square in degree 0
/// on basis elements whose coefficients have degree <= bound.
LiftReport check_chain_map(const LeftLift& lift, int bound);
LiftReport check_chain_map(const RightLift& lift, int bound);

/// Unit condition, multiplicativity in the crossing algebra and
/// compatibility with the module structure, on basis tuples of degree
/// <= bound.
LiftReport check_compat(const LeftLift& lift, int bound);
LiftReport check_compat(const RightLift& lift, int bound);

} // namespace twistres
