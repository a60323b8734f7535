// Serial reference elimination against the OpenMP kernel on random sparse
// matrices and on truncated differentials of the Weyl Koszul resolution.

#include "twistres/complex.hpp"
#include "twistres/linalg.hpp"
#include "twistres/resolutions.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>

using namespace twistres;

namespace {

SparseMatrix random_matrix(std::size_t n, double density, Field f, std::mt19937_64& rng) {
    SparseMatrix m(n, n, f);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<long> value(-9, 9);
    // rank deficiency: the last quarter of the rows are combinations of others
    const std::size_t free_rows = n - n / 4;
    for (std::size_t i = 0; i < free_rows; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (coin(rng) < density) m.add(i, j, f.from(value(rng)));
    const auto entries = m.entries();
    for (std::size_t i = free_rows; i < n; ++i) {
        const std::size_t a = i - free_rows, b = (i * 7) % free_rows;
        for (const auto& e : entries)
            if (e.row == a || e.row == b) m.add(i, e.col, e.value);
    }
    return m;
}

template <class F>
double seconds(F&& f, int repeat) {
    const auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeat; ++r) f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / repeat;
}

void compare(const char* what, const SparseMatrix& m, int repeat) {
    std::size_t rs = 0, rp = 0;
    const double ts = seconds([&] { rs = rank_serial(m); }, repeat);
    const double tp = seconds([&] { rp = rank_dense(m); }, repeat);
    std::printf("%-28s %5zux%-5zu  rank %5zu %5zu  serial %9.4fs  parallel %9.4fs  speedup %5.2f%s\n", what, m.rows(),
                m.cols(), rs, rp, ts, tp, tp > 0 ? ts / tp : 0.0, rs == rp ? "" : "  MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank kernel benchmark: serial reference vs OpenMP"};
    std::vector<std::size_t> sizes{100, 200, 400};
    std::uint64_t seed = 1;
    int repeat = 3, weyl_cutoff = 10;
    app.add_option("--sizes", sizes, "Random matrix sizes")->delimiter(',');
    app.add_option("--seed", seed, "Random seed");
    app.add_option("--repeat", repeat, "Repetitions per timing")->check(CLI::PositiveNumber);
    app.add_option("--weyl-cutoff", weyl_cutoff, "Cutoff for the Weyl Koszul differentials");
    CLI11_PARSE(app, argc, argv);

    std::printf("threads: %d\n", omp_get_max_threads());
    std::mt19937_64 rng(seed);
    for (std::uint32_t p : {0u, 32003u})
        for (std::size_t n : sizes) {
            const std::string what = "random char " + std::to_string(p);
            compare(what.c_str(), random_matrix(n, 0.05, Field{p}, rng), repeat);
        }
    const Field q{0};
    auto weyl = Algebra::iterated_ore(q, {"x", "y"}, {{}, {parse_linear_form(*Algebra::polynomial(q, {"x", "y"}), "-1")}});
    const TruncatedComplex tc = truncate(*ore_koszul(weyl).complex, weyl_cutoff);
    for (std::size_t n = 1; n < tc.maps.size(); ++n) {
        const std::string what = "weyl koszul d" + std::to_string(n);
        compare(what.c_str(), tc.maps[n], repeat);
    }
    return 0;
}
