#pragma once

// Builders for free resolutions: bar and reduced bar, polynomial and
// iterated-Ore Koszul (bimodule and one-sided), the 2-periodic resolution of
// a cyclic group algebra, and the twist lifts on each.

#include "twistres/complex.hpp"
#include "twistres/lifts.hpp"
#include "twistres/twist.hpp"

#include <memory>
#include <string>

namespace twistres {

enum class Family { Bar, ReducedBar, PolyKoszul, CyclicPeriodic, OreKoszul, OneSidedKoszul };

std::string family_name(Family f);

struct ResolutionBundle {
    ComplexPtr complex;
    Family family = Family::Bar;
    std::string resolves;  // "A as a bimodule" or "k"
    std::shared_ptr<const LeftLift> left_lift;    // B crossing this resolution (over A)
    std::shared_ptr<const RightLift> right_lift;  // A crossing this resolution (over B)
    LiftReport lift_report;                      // checks run when the lift was attached
};

/// Bar complex through degree n_max with middle tuples of total degree <=
/// label_cutoff; the reduced variant omits unit middle factors.
ResolutionBundle bar(AlgebraPtr a, int n_max, bool reduced, int label_cutoff);

/// Koszul resolution of a polynomial algebra; bimodule S (x) L^n V (x) S or
/// the one-sided S (x) L^n V resolving k.
ResolutionBundle poly_koszul(AlgebraPtr s, bool bimodule);

/// 2-periodic resolution of kG, G cyclic of order p, through degree n_max.
ResolutionBundle cyclic_periodic(AlgebraPtr group_algebra, int n_max);

struct OreKoszulOptions {
    bool drop_d2_term = false;  // mutation: omit x_{l_1} (x) x_{l_2} (x) 1 from every d_2
};

/// Bimodule Koszul resolution of an iterated Ore extension with the
/// linear-part correction in the differential.
ResolutionBundle ore_koszul(AlgebraPtr s, OreKoszulOptions options = {});

/// 0 -> k[x] --x.--> k[x] --eps--> k -> 0.
ResolutionBundle one_sided_koszul_kx(AlgebraPtr kx);

enum class LiftSide { Left, Right };

struct LiftOptions {
    bool verify = true;    // run chain-map and compatibility checks, throw on failure
    int check_bound = 2;   // degree bound for the checks
};

/// Attaches a twist lift. Left: the bundle resolves over tau's left factor A
/// and B crosses it. Right: the bundle resolves over B and A crosses it.
/// Throws ChainMapFailure when verification fails and OutOfScope for
/// family/twist combinations without an explicit lift.
ResolutionBundle lift_twist(const ResolutionBundle& bundle, TwistPtr tau, LiftSide side, LiftOptions options = {});

/// Closed-form Koszul lift against symmetrize -> reduced-bar lift -> project
/// on labels of degree <= max_degree and B-monomials of degree <= b_bound.
/// Throws RestrictionFailure if the bar lift leaves the symmetrized image.
LiftReport symmetrization_cross_check(const ResolutionBundle& koszul, int max_degree, int b_bound);

/// Bar and reduced-bar lifts agree after passing to the quotient.
LiftReport bar_quotient_check(AlgebraPtr a, TwistPtr tau, int n_max, int label_cutoff, int b_bound);

/// delta_n on a one-sided wedge resolution of k over R:
///   r (x) L -> delta(r) (x) L + sum_i r (x) (L with slot i -> linear part of delta(x_{l_i})).
struct SigmaDelta {
    ComplexPtr complex;
    std::vector<LinearForm> delta;
    std::shared_ptr<const Derivation> derivation;

    ModuleElement sigma(int, const ModuleElement& z) const { return z; }
    ModuleElement apply(int n, const ModuleElement& z) const;
};

/// Builds (sigma~, delta~) and verifies d o delta~ = delta~ o d on basis
/// elements with coefficients of degree <= bound. Throws AugmentationError
/// when eps o delta != 0 and ChainMapFailure on a violation.
SigmaDelta sigma_delta_chain_maps(const ResolutionBundle& bundle, std::vector<LinearForm> delta, int bound = 2);

} // namespace twistres
