#include "doctest.h"

#include "twistres/errors.hpp"
#include "twistres/resolutions.hpp"

using namespace twistres;

namespace {

const Field Q{0};

LinearForm form(const Algebra& a, const std::string& s) { return parse_linear_form(a, s); }

AlgebraPtr weyl() {
    auto poly = Algebra::polynomial(Q, {"x", "y"});
    return Algebra::iterated_ore(Q, {"x", "y"}, {{}, {form(*poly, "-1")}});
}

AlgebraPtr solvable() {
    auto poly = Algebra::polynomial(Q, {"y", "x"});
    return Algebra::iterated_ore(Q, {"y", "x"}, {{}, {form(*poly, "y")}});
}

AlgebraPtr heisenberg() {
    auto poly = Algebra::polynomial(Q, {"z", "x", "y"});
    return Algebra::iterated_ore(Q, {"z", "x", "y"}, {{}, {form(*poly, "0")}, {form(*poly, "0"), form(*poly, "-z")}});
}

std::string d_of(const ResolutionBundle& b, int n, int label) {
    return b.complex->format(n - 1, b.complex->differential[n][label]);
}

bool all_zero(const ExactnessReport& r) {
    for (const auto& e : r.entries)
        if (e.dim != 0) return false;
    return true;
}

} // namespace

TEST_CASE("differential examples") {
    auto kx = Algebra::polynomial(Q, {"x"});
    auto b = bar(kx, 2, false, 3);
    const int lx = b.complex->find_label(1, {1});
    CHECK(d_of(b, 1, lx) == "-1*1⊗[1]⊗x + x⊗[1]⊗1");

    auto k2 = Algebra::cyclic(Q, 2);
    auto full = bar(k2, 2, false, 0);
    auto red = bar(k2, 2, true, 0);
    CHECK(full.complex->find_label(1, {0}) >= 0);
    CHECK(red.complex->find_label(1, {0}) < 0);
    CHECK(d_of(full, 2, full.complex->find_label(2, {1, 1})) == "-1*1⊗[1]⊗1 + 1⊗[g]⊗g + g⊗[g]⊗1");
    CHECK(d_of(red, 2, red.complex->find_label(2, {1, 1})) == "1⊗[g]⊗g + g⊗[g]⊗1");

    auto kxy = Algebra::polynomial(Q, {"x", "y"});
    auto k = poly_koszul(kxy, true);
    CHECK(d_of(k, 2, 0) == "1⊗[x]⊗y + -1*y⊗[x]⊗1 + -1*1⊗[y]⊗x + x⊗[y]⊗1");

    auto u = ore_koszul(solvable());
    // y ^ x: the linear-part correction adds + 1 (x) y (x) 1
    CHECK(d_of(u, 2, 0) == "1⊗[y]⊗1 + 1⊗[y]⊗x + -1*x⊗[y]⊗1 + -1*1⊗[x]⊗y + y⊗[x]⊗1");
    auto w = ore_koszul(weyl());
    CHECK(d_of(w, 2, 0) == d_of(poly_koszul(Algebra::polynomial(Q, {"x", "y"}), true), 2, 0));
}

TEST_CASE("compose_check on every family") {
    auto kx = Algebra::polynomial(Q, {"x"});
    CHECK(compose_check(*poly_koszul(kx, true).complex).ok());
    CHECK(compose_check(*cyclic_periodic(Algebra::cyclic(Field{3}, 3), 5).complex).ok());
    CHECK(compose_check(*cyclic_periodic(Algebra::cyclic(Q, 3), 5).complex).ok());
    CHECK(compose_check(*ore_koszul(weyl()).complex).ok());
    CHECK(compose_check(*ore_koszul(solvable()).complex).ok());
    CHECK(compose_check(*ore_koszul(heisenberg()).complex).ok());
    CHECK(compose_check(*bar(kx, 3, false, 4).complex).ok());
    CHECK(compose_check(*bar(weyl(), 3, true, 4).complex).ok());
    CHECK(compose_check(*bar(Algebra::cyclic(Q, 3), 3, false, 0).complex).ok());
    CHECK(compose_check(*poly_koszul(Algebra::polynomial(Q, {"x", "y", "z"}), false).complex).ok());

    auto broken = ore_koszul(weyl(), {true});
    auto rep = compose_check(*broken.complex);
    CHECK_FALSE(rep.ok());
    CHECK(rep.violations.front().degree == 2);
}

TEST_CASE("ore_koszul with zero derivations is the polynomial Koszul complex") {
    auto p = Algebra::polynomial(Q, {"x", "y", "z"});
    auto o = Algebra::iterated_ore(Q, {"x", "y", "z"}, {});
    auto a = poly_koszul(p, true), b = ore_koszul(o);
    for (int n = 1; n <= 3; ++n)
        for (std::size_t l = 0; l < a.complex->labels[n].size(); ++l)
            CHECK(a.complex->differential[n][l] == b.complex->differential[n][l]);
}

TEST_CASE("truncate examples") {
    auto kx = Algebra::polynomial(Q, {"x"});
    auto t = truncate(*poly_koszul(kx, true).complex, 2);
    CHECK(t.size(0) == 6);
    auto c = truncate(*cyclic_periodic(Algebra::cyclic(Q, 3), 3).complex, 5);
    for (int n = 0; n <= 3; ++n) CHECK(c.size(n) == 9);
    auto w = truncate(*ore_koszul(weyl()).complex, 1);
    CHECK(w.size(1) == 2);
    // consecutive matrices compose to zero
    auto tw = truncate(*ore_koszul(heisenberg()).complex, 3);
    for (int n = 1; n < static_cast<int>(tw.maps.size()); ++n) CHECK(tw.maps[n - 1].multiply(tw.maps[n]).is_zero());
}

TEST_CASE("truncation is deterministic") {
    auto a = truncate(*ore_koszul(solvable()).complex, 3);
    auto b = truncate(*ore_koszul(solvable()).complex, 3);
    for (std::size_t n = 0; n < a.maps.size(); ++n) {
        const auto ea = a.maps[n].entries(), eb = b.maps[n].entries();
        REQUIRE(ea.size() == eb.size());
        for (std::size_t i = 0; i < ea.size(); ++i) {
            CHECK(ea[i].row == eb[i].row);
            CHECK(ea[i].col == eb[i].col);
            CHECK(ea[i].value == eb[i].value);
        }
    }
}

TEST_CASE("a raising differential is rejected") {
    auto kx = Algebra::polynomial(Q, {"x"});
    auto b = poly_koszul(kx, true);
    auto c = std::make_shared<ChainComplex>(*b.complex);
    c->differential[1][0].add(Term{Monomial{2}, 0, Monomial{0}}, Q.one());
    CHECK_THROWS_AS(truncate(*c, 3), DegreeRaising);
}

TEST_CASE("windowed exactness") {
    auto kx = Algebra::polynomial(Q, {"x"});
    auto r = exactness_report(*poly_koszul(kx, true).complex, 4);
    CHECK(all_zero(r));
    CHECK(r.h0 == r.module_dim);
    auto c = exactness_report(*cyclic_periodic(Algebra::cyclic(Field{3}, 3), 5).complex, 2);
    CHECK(all_zero(c));
    CHECK(c.top_degree == 4);
    auto w = exactness_report(*ore_koszul(weyl()).complex, 4);
    CHECK(all_zero(w));
    CHECK(w.h0 == w.module_dim);
    auto h = exactness_report(*ore_koszul(heisenberg()).complex, 3);
    CHECK(all_zero(h));
    auto one = exactness_report(*one_sided_koszul_kx(kx).complex, 5);
    CHECK(all_zero(one));
    CHECK(one.h0 == 1);

    auto broken = exactness_report(*ore_koszul(weyl(), {true}).complex, 3);
    CHECK_FALSE(broken.exact());
}

TEST_CASE("lift examples") {
    auto kx = Algebra::polynomial(Q, {"x"});
    auto ky = Algebra::polynomial(Q, {"y"});
    auto tau = TwistMap::ore(kx, ky, {form(*kx, "-1")});
    auto p = lift_twist(ore_koszul(kx), tau, LiftSide::Left);
    const auto& e = p.left_lift->apply(Monomial{1}, 1, p.complex->generator(0));
    CHECK(format_lift(*p.complex, *ky, 1, e) == "(1⊗[x]⊗1)⊗y");

    auto r = Algebra::polynomial(Q, {"y"});
    auto ore = TwistMap::ore(r, kx, {form(*r, "y")});
    auto u = lift_twist(ore_koszul(r), ore, LiftSide::Left);
    const auto& f = u.left_lift->apply(Monomial{1}, 1, u.complex->generator(0));
    CHECK(format_lift(*u.complex, *kx, 1, f) == "(1⊗[y]⊗1)⊗1 + (1⊗[y]⊗1)⊗x");
    CHECK(u.lift_report.ok());
    CHECK(u.lift_report.checked > 0);
}

TEST_CASE("lifts are verified chain maps") {
    auto kx = Algebra::polynomial(Q, {"x"});
    auto ky = Algebra::polynomial(Q, {"y"});
    auto weyl_tau = TwistMap::ore(kx, ky, {form(*kx, "-1")});
    auto flip = TwistMap::flip(kx, ky);
    for (auto t : {weyl_tau, flip}) {
        CHECK_NOTHROW(lift_twist(poly_koszul(kx, true), t, LiftSide::Left));
        CHECK_NOTHROW(lift_twist(poly_koszul(ky, true), t, LiftSide::Right));
        CHECK_NOTHROW(lift_twist(bar(kx, 2, false, 3), t, LiftSide::Left));
        CHECK_NOTHROW(lift_twist(bar(kx, 2, true, 3), t, LiftSide::Left));
        CHECK_NOTHROW(lift_twist(bar(ky, 2, true, 3), t, LiftSide::Right));
    }

    Field f3{3};
    auto g = Algebra::cyclic(f3, 3);
    auto s = Algebra::polynomial(f3, {"x", "y"});
    auto skew = TwistMap::skew_group(g, s, {form(*s, "x"), form(*s, "x + y")});
    CHECK_NOTHROW(lift_twist(cyclic_periodic(g, 4), skew, LiftSide::Left));
    CHECK_NOTHROW(lift_twist(poly_koszul(s, true), skew, LiftSide::Right));
    CHECK_NOTHROW(lift_twist(bar(g, 2, true, 0), skew, LiftSide::Left));

    // one-sided Koszul over R with the Ore lift, including the augmentation square
    auto r = Algebra::polynomial(Q, {"y"});
    auto ore = TwistMap::ore(r, kx, {form(*r, "y")});
    CHECK_NOTHROW(lift_twist(poly_koszul(r, false), ore, LiftSide::Left));
    // eps o delta != 0: the augmentation square fails
    auto w = TwistMap::ore(r, kx, {form(*r, "-1")});
    CHECK_THROWS_AS(lift_twist(poly_koszul(r, false), w, LiftSide::Left), ChainMapFailure);

}

TEST_CASE("closed-form Koszul lift matches symmetrize-twist-project") {
    auto kx = Algebra::polynomial(Q, {"x"});
    auto r = Algebra::polynomial(Q, {"z", "x"});
    auto ky = Algebra::polynomial(Q, {"y"});
    // Heisenberg step: y x = x y - z
    auto tau = TwistMap::ore(r, ky, {form(*r, "0"), form(*r, "-z")});
    auto k = lift_twist(poly_koszul(r, true), tau, LiftSide::Left);
    auto rep = symmetrization_cross_check(k, 2, 3);
    CHECK(rep.ok());
    CHECK(rep.checked > 0);

    auto sr = solvable();
    auto ry = Algebra::polynomial(Q, {"y"});
    auto ore = TwistMap::ore(ry, kx, {form(*ry, "y")});
    CHECK(symmetrization_cross_check(lift_twist(ore_koszul(ry), ore, LiftSide::Left), 2, 3).ok());
}

TEST_CASE("bar and reduced bar lifts agree on the quotient") {
    auto kx = Algebra::polynomial(Q, {"x"});
    auto ky = Algebra::polynomial(Q, {"y"});
    auto tau = TwistMap::ore(kx, ky, {form(*kx, "-1")});
    CHECK(bar_quotient_check(kx, tau, 2, 3, 2).ok());
    Field f3{3};
    auto g = Algebra::cyclic(f3, 3);
    auto s = Algebra::polynomial(f3, {"x", "y"});
    auto skew = TwistMap::skew_group(g, s, {form(*s, "x"), form(*s, "x + y")});
    CHECK(bar_quotient_check(g, skew, 2, 0, 2).ok());
}

TEST_CASE("sigma and delta chain maps") {
    auto r = Algebra::polynomial(Q, {"y"});
    auto b = poly_koszul(r, false);
    auto sd = sigma_delta_chain_maps(b, {form(*r, "y")});
    ModuleElement z;
    z.add(b.complex->generator(0), Q.one());
    CHECK(b.complex->format(1, sd.apply(1, z)) == "1⊗[y]");
    ModuleElement r0;
    r0.add(Term{Monomial{2}, 0, Monomial{0}}, Q.one());
    CHECK(b.complex->format(0, sd.apply(0, r0)) == "2*y^2⊗[1]");
    CHECK(sd.sigma(0, r0) == r0);
    auto zero = sigma_delta_chain_maps(b, {form(*r, "0")});
    CHECK(zero.apply(1, z).is_zero());
    CHECK_THROWS_AS(sigma_delta_chain_maps(b, {form(*r, "-1")}), AugmentationError);
}
