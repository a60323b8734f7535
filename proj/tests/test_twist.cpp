#include "doctest.h"

#include "twistres/errors.hpp"
#include "twistres/twist.hpp"

#include <random>

using namespace twistres;

namespace {

const Field Q{0};

struct WeylSetup {
    AlgebraPtr kx = Algebra::polynomial(Q, {"x"});
    AlgebraPtr ky = Algebra::polynomial(Q, {"y"});
    TwistPtr tau = TwistMap::ore(kx, ky, {parse_linear_form(*kx, "-1")});
};

TwistPtr skew(int p, AlgebraPtr& s) {
    Field f{static_cast<std::uint32_t>(p)};
    auto g = Algebra::cyclic(f, p);
    s = Algebra::polynomial(f, {"x", "y"});
    return TwistMap::skew_group(g, s, {parse_linear_form(*s, "x"), parse_linear_form(*s, "x + y")});
}

} // namespace

TEST_CASE("apply_twist examples") {
    WeylSetup w;
    CHECK(format_tensor(*w.kx, *w.ky, w.tau->apply(w.ky->generator(0), w.kx->generator(0))) == "x⊗y - 1⊗1");
    CHECK(format_tensor(*w.kx, *w.ky, w.tau->apply(w.ky->one(), w.kx->generator(0))) == "x⊗1");
    Monomial y2{2};
    CHECK(format_tensor(*w.kx, *w.ky, w.tau->apply(y2, w.kx->generator(0))) == "x⊗y^2 - 2*1⊗y");
    auto other = Algebra::polynomial(Q, {"x"});
    CHECK_THROWS_AS(w.tau->apply(w.ky->unit(), other->unit()), SpecMismatch);
}

TEST_CASE("hexagon suite") {
    WeylSetup w;
    CHECK(check_hexagon(*w.tau, 3, 50, 1).ok());
    auto flip = TwistMap::flip(w.kx, w.ky);
    CHECK(check_hexagon(*flip, 3, 50, 1).ok());
    AlgebraPtr s;
    CHECK(check_hexagon(*skew(2, s), 3, 50, 1).ok());
    CHECK(check_hexagon(*skew(3, s), 3, 50, 1).ok());

    std::map<std::pair<Monomial, Monomial>, TensorElement> table;
    table[{w.ky->generator(0), w.kx->generator(0)}] = parse_tensor(*w.kx, *w.ky, "x⊗y + 1⊗1");
    auto bad = TwistMap::custom(w.tau, table);
    auto report = check_hexagon(*bad, 3, 0, 1);
    CHECK_FALSE(report.ok());
    // the (y, y, x, x) tuple is among the violations
    bool found = false;
    for (const auto& v : report.violations) found |= v.tuple == "y, y, x, x";
    CHECK(found);
}

TEST_CASE("twisted_multiply examples") {
    WeylSetup w;
    auto weyl = Algebra::twisted_product(w.tau);
    auto x = weyl->element(weyl->generator(0)), y = weyl->element(weyl->generator(1));
    CHECK((y * x).to_string() == "x⊗y - 1⊗1");
    CHECK(twisted_multiply(x, y).to_string() == "x⊗y");

    Field f{0};
    auto g = Algebra::cyclic(f, 2);
    auto ks = Algebra::polynomial(f, {"s"});
    auto tau = TwistMap::skew_group(g, ks, {parse_linear_form(*ks, "-s")});
    auto lam = Algebra::twisted_product(tau);
    auto s = lam->element(lam->generator(1)), gg = lam->element(lam->generator(0));
    CHECK((s * gg).to_string() == "-g⊗s");
}

TEST_CASE("twisted multiplication is associative") {
    WeylSetup w;
    AlgebraPtr s;
    std::mt19937_64 rng(2);
    for (auto tau : {w.tau, TwistMap::flip(w.kx, w.ky), skew(3, s)}) {
        auto lam = Algebra::twisted_product(tau);
        auto basis = lam->basis_up_to(3);
        std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
        for (int t = 0; t < 30; ++t) {
            auto a = lam->element(basis[pick(rng)]) + lam->element(basis[pick(rng)]);
            auto b = lam->element(basis[pick(rng)]);
            auto c = lam->element(basis[pick(rng)]) - lam->element(basis[pick(rng)]);
            CHECK(twisted_multiply(twisted_multiply(a, b), c) == twisted_multiply(a, twisted_multiply(b, c)));
        }
    }
}

TEST_CASE("Ore twist agrees with Ore multiplication") {
    Field f{0};
    // U(g): x y = y x + y with R = k[y], B = k[x]
    auto r = Algebra::polynomial(f, {"y"});
    auto kx = Algebra::polynomial(f, {"x"});
    auto tau = TwistMap::ore(r, kx, {parse_linear_form(*r, "y")});
    auto full = Algebra::iterated_ore(f, {"y", "x"}, {{}, {parse_linear_form(*Algebra::polynomial(f, {"y", "x"}), "y")}});
    for (int n = 0; n <= 4; ++n)
        for (const auto& m : r->basis_up_to(4)) {
            const auto& t = tau->apply(Monomial{n}, m);
            Element lhs = full->zero();
            for (const auto& [p, c] : t) lhs.add(p.first.concat(p.second), c);
            CHECK(lhs == full->multiply(Monomial{0, n}, m.concat(Monomial{0})));
        }
}

TEST_CASE("invert_twist") {
    WeylSetup w;
    auto inv = invert_twist(*w.tau, 4);
    const auto& t = inv.apply(w.kx->generator(0), w.ky->generator(0));
    CHECK(format_tensor(*w.ky, *w.kx, t) == "y⊗x + 1⊗1");
    // tau^{-1} o tau = id on every pair in range
    for (const auto& b : w.ky->basis_up_to(4))
        for (const auto& a : w.kx->basis_up_to(4 - b.total())) {
            TensorElement back;
            for (const auto& [p, c] : w.tau->apply(b, a))
                for (const auto& [q, v] : inv.apply(p.first, p.second)) tensor_add(back, q.first, q.second, c * v);
            CHECK(back == TensorElement{{{b, a}, Q.one()}});
        }
    auto flip = TwistMap::flip(w.kx, w.ky);
    auto finv = invert_twist(*flip, 3);
    CHECK(format_tensor(*w.ky, *w.kx, finv.apply(Monomial{2}, Monomial{1})) == "y⊗x^2");

    AlgebraPtr s;
    auto sk = skew(3, s);
    auto sinv = invert_twist(*sk, 2);
    // tau^{-1}(g (x) y) = g(y) (x) g = (x + y) (x) g
    const auto& st = sinv.apply(Monomial{1}, Monomial{0, 1});
    CHECK(format_tensor(*s, *sk->left(), st) == "x⊗g + y⊗g");
}

TEST_CASE("strongly graded twists preserve bidegree") {
    AlgebraPtr s;
    auto sk = skew(3, s);
    for (const auto& b : s->basis_up_to(3))
        for (const auto& a : sk->left()->basis_up_to(0))
            for (const auto& [p, c] : sk->apply(b, a)) {
                CHECK(p.first == a);
                CHECK(p.second.total() == b.total());
            }
}
