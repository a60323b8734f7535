#include "doctest.h"

#include "twistres/homology.hpp"
#include "twistres/twistprod.hpp"

using namespace twistres;

namespace {

const Field Q{0};

LinearForm form(const Algebra& a, const std::string& s) { return parse_linear_form(a, s); }

long long binom2(int n) { return n == 1 ? 2 : 1; }

} // namespace

TEST_CASE("HH of kZ/3 in characteristic 3") {
    auto g = Algebra::cyclic(Field{3}, 3);
    auto rep = hochschild_cohomology(*cyclic_periodic(g, 5).complex, 5);
    CHECK(rep.graded);
    CHECK(rep.top == 4);
    for (int n = 0; n <= 4; ++n) CHECK(rep.total(n) == 3);
    // reduced bar oracle
    auto bar_rep = hochschild_cohomology(*bar(g, 3, true, 0).complex, 5);
    for (int n = 0; n <= 2; ++n) CHECK(bar_rep.total(n) == 3);
    // char 0: HH^n = 0 for n > 0
    auto g0 = Algebra::cyclic(Q, 3);
    auto rep0 = hochschild_cohomology(*cyclic_periodic(g0, 4).complex, 4);
    CHECK(rep0.total(0) == 3);
    for (int n = 1; n <= 3; ++n) CHECK(rep0.total(n) == 0);
}

TEST_CASE("HH of k[x,y] per internal degree") {
    auto s = Algebra::polynomial(Q, {"x", "y"});
    auto rep = hochschild_cohomology(*poly_koszul(s, true).complex, 6);
    CHECK(rep.graded);
    for (int n = 0; n <= 2; ++n)
        for (int d = 0; d <= 6; ++d) CHECK(rep.dim(n, d) == (d + 1) * binom2(n));
}

TEST_CASE("Kunneth convolution of HH(k[x]) and HH(k[y])") {
    auto kx = Algebra::polynomial(Q, {"x"});
    auto ky = Algebra::polynomial(Q, {"y"});
    auto a = hochschild_cohomology(*poly_koszul(kx, true).complex, 5);
    auto b = hochschild_cohomology(*poly_koszul(ky, true).complex, 5);
    auto tau = TwistMap::flip(kx, ky);
    auto t = bimodule_twisted_product(lift_twist(poly_koszul(kx, true), tau, LiftSide::Left),
                                      lift_twist(poly_koszul(ky, true), tau, LiftSide::Right), tau);
    auto prod = hochschild_cohomology(*t.complex, 5);
    auto conv = kunneth_convolution(a, b, 2, 5);
    for (int n = 0; n <= 2; ++n)
        for (int d = 0; d <= 5; ++d) CHECK(prod.dim(n, d) == conv[n][d]);
}

TEST_CASE("HH of the Weyl algebra is stable") {
    auto poly = Algebra::polynomial(Q, {"x", "y"});
    auto weyl = Algebra::iterated_ore(Q, {"x", "y"}, {{}, {form(*poly, "-1")}});
    auto rep = hochschild_cohomology(*ore_koszul(weyl).complex, 6);
    CHECK_FALSE(rep.graded);
    CHECK(rep.total(0) == 1);
    CHECK(rep.total(1) == 0);
    CHECK(rep.total(2) == 0);
    CHECK(rep.stable());
}

TEST_CASE("Tor and Ext over enveloping algebras") {
    auto solvable = Algebra::polynomial(Q, {"y"});
    auto u = ore_module_resolution(poly_koszul(solvable, false), {form(*solvable, "y")});
    CHECK(tor_over_augmented(*u.total.complex).dims == std::vector<long long>{1, 1, 0});
    CHECK(ext_over_augmented(*u.total.complex).dims == std::vector<long long>{1, 1, 0});

    auto ab = ore_module_resolution(poly_koszul(solvable, false), {form(*solvable, "0")});
    CHECK(tor_over_augmented(*ab.total.complex).dims == std::vector<long long>{1, 2, 1});

    auto h = Algebra::polynomial(Q, {"z", "x", "y"});
    auto heis = iterated_ore_resolution(
        Algebra::iterated_ore(Q, {"z", "x", "y"}, {{}, {form(*h, "0")}, {form(*h, "0"), form(*h, "-z")}}));
    CHECK(tor_over_augmented(*heis.complex).dims == std::vector<long long>{1, 2, 2, 1});
    CHECK(ext_over_augmented(*heis.complex).dims == std::vector<long long>{1, 2, 2, 1});

    auto kx = Algebra::polynomial(Q, {"x"});
    CHECK(ext_over_augmented(*one_sided_koszul_kx(kx).complex).dims == std::vector<long long>{1, 1});
}
