#include "doctest.h"

#include "twistres/errors.hpp"
#include "twistres/linalg.hpp"

#include <random>

using namespace twistres;

namespace {

const Field Q{0};

SparseMatrix random_integer_matrix(std::size_t rows, std::size_t cols, double density, std::mt19937_64& rng,
                                   Field f, int range = 5) {
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> v(-range, range);
    SparseMatrix m(rows, cols, f);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (u(rng) < density) m.add(i, j, f.from(v(rng)));
    return m;
}

// Low-rank product so ranks are interesting.
SparseMatrix random_low_rank(std::size_t rows, std::size_t cols, std::size_t r, std::mt19937_64& rng, Field f) {
    auto a = random_integer_matrix(rows, r, 0.6, rng, f, 3);
    auto b = random_integer_matrix(r, cols, 0.6, rng, f, 3);
    return a.multiply(b);
}

} // namespace

TEST_CASE("scalar arithmetic is exact") {
    Scalar a(mpq_class(1, 3), 0), b(mpq_class(2, 3), 0);
    CHECK((a + b).is_one());
    CHECK((a * b).rational() == mpq_class(2, 9));
    Scalar c(5, 7);
    CHECK((c * c.inverse()).is_one());
    CHECK(Scalar(-1, 7).residue() == 6);
    CHECK(Scalar(mpq_class(1, 2), 7).residue() == 4);
    CHECK_THROWS_AS(Scalar(0L, 5).inverse(), ZeroElement);
    CHECK_THROWS_AS(Scalar(1, 5) + Scalar(1, 7), SpecMismatch);
    CHECK_THROWS_AS(Scalar(mpq_class(1, 7), 7), ValidationError);
}

TEST_CASE("rank examples") {
    CHECK(rank(SparseMatrix::identity(3, Q)) == 3);
    CHECK(rank(SparseMatrix::from_dense({{1, 2}, {2, 4}}, Q)) == 1);
    CHECK(rank(SparseMatrix::from_dense({{1, 1}, {1, 1}}, Field{2})) == 1);
    CHECK(rank(SparseMatrix(0, 4, Q)) == 0);
    CHECK(rank(SparseMatrix::from_dense({{1, 1}, {1, -1}}, Field{2})) == 1);
    CHECK(rank(SparseMatrix::from_dense({{1, 1}, {1, -1}}, Q)) == 2);
}

TEST_CASE("kernel_dim examples") {
    CHECK(kernel_dim(SparseMatrix(2, 5, Q)) == 5);
    CHECK(kernel_dim(SparseMatrix::identity(3, Q)) == 0);
    CHECK(kernel_dim(SparseMatrix::from_dense({{1, 2}, {2, 4}}, Q)) == 1);
}

TEST_CASE("homology_dim examples") {
    CHECK(homology_dim(SparseMatrix(1, 0, Q), SparseMatrix(0, 1, Q)) == 1);
    CHECK(homology_dim(SparseMatrix::identity(2, Q), SparseMatrix(1, 2, Q)) == 0);
    CHECK(homology_dim(SparseMatrix::from_dense({{1}, {0}}, Q), SparseMatrix::from_dense({{0, 1}}, Q)) == 0);
    CHECK_THROWS_AS(homology_dim(SparseMatrix::identity(2, Q), SparseMatrix::from_dense({{1, 0}}, Q)),
                    CompositionNonzero);
}

TEST_CASE("rank of transpose") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Field f = trial % 2 ? Field{0} : Field{101};
        auto m = random_low_rank(15 + trial, 12, 1 + trial % 7, rng, f);
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("rank over Q matches rank mod a large prime") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 15; ++trial) {
        auto q = random_low_rank(20, 18, 3 + trial % 9, rng, Q);
        SparseMatrix p(q.rows(), q.cols(), Field{1000003});
        for (const auto& e : q.entries()) p.add(e.row, e.col, Field{1000003}.from(e.value.rational()));
        CHECK(rank(q) == rank(p));
    }
}

TEST_CASE("sparse, dense and serial ranks agree") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 12; ++trial) {
        Field f = trial % 3 == 0 ? Field{0} : (trial % 3 == 1 ? Field{3} : Field{2});
        auto m = random_low_rank(30, 25, 2 + trial, rng, f);
        const auto r = rank_serial(m);
        CHECK(rank_dense(m) == r);
        CHECK(rank_sparse(m) == r);
    }
    // a matrix above the dense limit goes through the sparse path
    auto big = random_integer_matrix(kDenseLimit + 20, 40, 0.02, rng, Field{7});
    CHECK(rank(big) == rank_serial(big));
}

TEST_CASE("rationals with denominators") {
    SparseMatrix m(2, 2, Q);
    m.add(0, 0, Scalar(mpq_class(1, 2), 0));
    m.add(0, 1, Scalar(mpq_class(1, 3), 0));
    m.add(1, 0, Scalar(mpq_class(3, 2), 0));
    m.add(1, 1, Scalar(1, 0));
    CHECK(rank(m) == 1);
    CHECK(rank_sparse(m) == 1);
}

TEST_CASE("homology is additive over block sums") {
    std::mt19937_64 rng(23);
    // two exact-ish complexes V -> W -> U built as d_out * d_in = 0
    auto build = [&](std::size_t w, std::size_t r) {
        auto d_in = random_low_rank(w, 6, r, rng, Q);
        SparseMatrix d_out(2, w, Q);
        return std::make_pair(d_in, d_out);
    };
    auto [a_in, a_out] = build(8, 3);
    auto [b_in, b_out] = build(5, 2);
    SparseMatrix in(13, 12, Q), out(4, 13, Q);
    for (const auto& e : a_in.entries()) in.add(e.row, e.col, e.value);
    for (const auto& e : b_in.entries()) in.add(8 + e.row, 6 + e.col, e.value);
    CHECK(homology_dim(in, out) == homology_dim(a_in, a_out) + homology_dim(b_in, b_out));
}

TEST_CASE("column echelon solves") {
    ColumnEchelon ech(Q);
    CHECK(ech.insert(0, {{0, Scalar(1, 0)}, {1, Scalar(1, 0)}}));
    CHECK(ech.insert(1, {{1, Scalar(1, 0)}, {2, Scalar(2, 0)}}));
    CHECK_FALSE(ech.insert(2, {{0, Scalar(2, 0)}, {1, Scalar(3, 0)}, {2, Scalar(2, 0)}}));
    auto sol = ech.solve({{0, Scalar(1, 0)}, {1, Scalar(2, 0)}, {2, Scalar(2, 0)}});
    REQUIRE(sol);
    CHECK(sol->at(0) == Scalar(1, 0));
    CHECK(sol->at(1) == Scalar(1, 0));
    CHECK_FALSE(ech.solve({{2, Scalar(1, 0)}}));
}
