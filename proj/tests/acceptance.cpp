// Acceptance suite: one PASS/FAIL line per criterion, with wall-clock
// budgets. All comparisons are exact integer or symbolic equalities.

#include "twistres/cli.hpp"
#include "twistres/errors.hpp"
#include "twistres/homology.hpp"
#include "twistres/twistprod.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace twistres;

namespace {

const Field Q{0};

LinearForm form(const Algebra& a, const std::string& s) { return parse_linear_form(a, s); }

struct Outcome {
    bool ok = true;
    std::vector<std::string> notes;
    void expect(bool cond, const std::string& what) {
        if (!cond) ok = false;
        notes.push_back((cond ? "" : "FAILED ") + what);
    }
};

double since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// Runs f, checks its own timing against budget_s and prints the line.
bool criterion(int n, const char* title, double budget_s, const std::function<void(Outcome&)>& f) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        f(out);
    } catch (const std::exception& e) {
        out.expect(false, std::string("exception: ") + e.what());
    }
    const double s = since(start);
    if (s > budget_s) out.expect(false, "over budget");
    std::string detail;
    for (const auto& note : out.notes) detail += (detail.empty() ? "" : "; ") + note;
    std::printf("criterion %d: %s  %s  [%.2fs / %.0fs]  %s\n", n, out.ok ? "PASS" : "FAIL", title, s, budget_s,
                detail.c_str());
    std::fflush(stdout);
    return out.ok;
}

// Twists and bundles shared by the criteria.

struct Weyl {
    AlgebraPtr kx = Algebra::polynomial(Q, {"x"});
    AlgebraPtr ky = Algebra::polynomial(Q, {"y"});
    TwistPtr tau = TwistMap::ore(kx, ky, {form(*kx, "-1")});
    AlgebraPtr algebra = Algebra::iterated_ore(Q, {"x", "y"}, {{}, {form(*Algebra::polynomial(Q, {"x", "y"}), "-1")}});
    ResolutionBundle p(LiftOptions o = {}) const { return lift_twist(ore_koszul(kx), tau, LiftSide::Left, o); }
    ResolutionBundle q(LiftOptions o = {}) const { return lift_twist(poly_koszul(ky, true), tau, LiftSide::Right, o); }
    // tau(y (x) x) = x (x) y + 1 (x) 1: the sign of delta_2(x) flipped in one seed
    TwistPtr corrupted() const {
        std::map<std::pair<Monomial, Monomial>, TensorElement> table;
        table[{ky->generator(0), kx->generator(0)}] = parse_tensor(*kx, *ky, "x⊗y + 1⊗1");
        return TwistMap::custom(tau, table);
    }
};

struct Skew {
    explicit Skew(std::uint32_t p)
        : f{p}, g(Algebra::cyclic(f, static_cast<int>(p))), s(Algebra::polynomial(f, {"x", "y"})),
          tau(TwistMap::skew_group(g, s, {form(*s, "x"), form(*s, "x + y")})) {}
    Field f;
    AlgebraPtr g, s;
    TwistPtr tau;
    ResolutionBundle p() const { return lift_twist(cyclic_periodic(g, 5), tau, LiftSide::Left); }
    ResolutionBundle q() const { return lift_twist(poly_koszul(s, true), tau, LiftSide::Right); }
};

// U(g), [x, y] = y: x y = y x + y over R = k[y].
struct Solvable {
    AlgebraPtr ry = Algebra::polynomial(Q, {"y"});
    AlgebraPtr kx = Algebra::polynomial(Q, {"x"});
    TwistPtr tau = TwistMap::ore(ry, kx, {form(*ry, "y")});
};

std::string dims(const std::vector<long long>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string exact_note(const std::string& what, const ExactnessReport& r) {
    long long positive = 0;
    for (const auto& e : r.entries)
        if (e.degree >= 1) positive += e.dim < 0 ? -e.dim : e.dim;
    return what + " N=" + std::to_string(r.cutoff) + " positive-degree homology " + std::to_string(positive) + ", H0 " +
           std::to_string(r.h0) + "/" + std::to_string(r.module_dim);
}

// ------------------------------------------------------------ criteria

void hexagons(Outcome& out) {
    Weyl w;
    Skew s2(2), s3(3);
    Solvable u;
    const std::vector<std::pair<std::string, TwistPtr>> twists = {
        {"weyl", w.tau}, {"flip", TwistMap::flip(w.kx, w.ky)}, {"skew p=2", s2.tau}, {"skew p=3", s3.tau}, {"U(g)", u.tau}};
    for (const auto& [name, t] : twists) {
        const auto start = std::chrono::steady_clock::now();
        const HexagonReport h = check_hexagon(*t, 3, 200, 1);
        const double sec = since(start);
        out.expect(h.ok() && h.random_checked == 200 && sec < 10.0,
                   name + " " + std::to_string(h.violations.size()) + " violations over " +
                       std::to_string(h.tuples_checked) + "+" + std::to_string(h.random_checked) + " tuples");
    }
    const HexagonReport bad = check_hexagon(*w.corrupted(), 3, 200, 1);
    out.expect(!bad.violations.empty(), "corrupted weyl " + std::to_string(bad.violations.size()) + " violations");
}

cli::Report preset_suite(std::uint64_t seed) {
    cli::RunOptions o;
    for (const auto& n : cli::preset_names()) o.tasks.push_back("preset:" + n);
    o.seed = seed;
    return cli::run({}, o);
}

void compose_everywhere(Outcome& out) {
    const cli::Report r = preset_suite(1);
    std::size_t resolutions = 0, totals = 0, labels = 0;
    for (const auto& preset : r["tasks"]) {
        const std::string name = preset["name"];
        if (!preset.contains("config")) continue;  // out-of-scope preset
        std::set<std::string> declared, verified;
        for (const auto& res : preset["config"]["resolutions"]) declared.insert(res["name"].get<std::string>());
        for (const auto& t : preset["tasks"]) {
            if (t["task"] != "verify-resolution" && t["task"] != "twisted-product") continue;
            bool composed = false;
            for (const auto& c : t["checks"])
                if (c["name"] == "compose") {
                    composed = c["ok"];
                    labels += c["checked"].get<std::size_t>();
                }
            const std::string what = name + "/" + t["name"].get<std::string>();
            if (!composed) out.expect(false, what + " compose");
            if (t["task"] == "verify-resolution") {
                verified.insert(t["name"].get<std::string>());
                ++resolutions;
            } else {
                ++totals;
            }
        }
        for (const auto& d : declared)
            if (!verified.count(d)) out.expect(false, name + "/" + d + " not checked");
    }
    out.expect(resolutions > 0 && totals > 0, std::to_string(resolutions) + " resolutions and " +
                                                  std::to_string(totals) + " totals, " + std::to_string(labels) +
                                                  " labels composed to zero");
}

void exactness(Outcome& out) {
    Weyl w;
    const ExactnessReport a = exactness_report(*ore_koszul(w.algebra).complex, 6);
    out.expect(a.exact(), exact_note("weyl ore_koszul", a));
    const TotalComplex t = bimodule_twisted_product(w.p(), w.q(), w.tau);
    const ExactnessReport b = exactness_report(*t.complex, 6);
    out.expect(b.exact(), exact_note("weyl total", b));
    Skew s(3);
    const TotalComplex st = bimodule_twisted_product(s.p(), s.q(), s.tau);
    const ExactnessReport c = exactness_report(*st.complex, 4);
    out.expect(c.exact(), exact_note("skew-p3 total", c));
    Solvable u;
    const OreModuleResolution m = ore_module_resolution(poly_koszul(u.ry, false), {form(*u.ry, "y")});
    const ExactnessReport d = exactness_report(*m.total.complex, 6);
    out.expect(d.exact(), exact_note("U(g) ore module", d));
}

void flip_sanity(Outcome& out) {
    Weyl w;
    const TwistPtr flip = TwistMap::flip(w.kx, w.ky);
    const TotalComplex t = bimodule_twisted_product(lift_twist(poly_koszul(w.kx, true), flip, LiftSide::Left),
                                                    lift_twist(poly_koszul(w.ky, true), flip, LiftSide::Right), flip);
    const WedgeComparison c = compare_with_wedge(t, *poly_koszul(Algebra::polynomial(Q, {"x", "y"}), true).complex);
    out.expect(c.labels_match, "labels match");
    out.expect(c.differentials_match, "differentials match (" + std::to_string(c.mismatches.size()) + " mismatches)");
}

void hochschild(Outcome& out) {
    const AlgebraPtr g = Algebra::cyclic(Field{3}, 3);
    const HochschildReport a = hochschild_cohomology(*cyclic_periodic(g, 5).complex, 5);
    std::vector<long long> ad, bd;
    for (int n = 0; n <= 4; ++n) ad.push_back(a.total(n));
    out.expect(a.graded && a.stable() && ad == std::vector<long long>(5, 3), "kZ/3 char 3 HH^0..4 " + dims(ad));
    const HochschildReport b = hochschild_cohomology(*bar(g, 3, true, 0).complex, 5);
    for (int n = 0; n <= 2; ++n) bd.push_back(b.total(n));
    out.expect(bd == std::vector<long long>(3, 3) && bd == std::vector<long long>(ad.begin(), ad.begin() + 3),
               "reduced bar oracle HH^0..2 " + dims(bd));

    const HochschildReport s = hochschild_cohomology(*poly_koszul(Algebra::polynomial(Q, {"x", "y"}), true).complex, 6);
    bool poly_ok = s.graded;
    const std::array<long long, 3> binom{1, 2, 1};
    for (int n = 0; n <= 2; ++n)
        for (int d = 0; d <= 6; ++d) poly_ok = poly_ok && s.dim(n, d) == (d + 1) * binom[n];
    out.expect(poly_ok, "k[x,y] HH^n_d = (d+1) C(2,n) for d<=6");

    Weyl w;
    const HochschildReport h = hochschild_cohomology(*ore_koszul(w.algebra).complex, 8);
    std::vector<long long> hd;
    for (int n = 0; n <= h.top; ++n) hd.push_back(h.total(n));
    out.expect(hd == std::vector<long long>{1, 0, 0} && h.stable(),
               "weyl HH " + dims(hd) + (h.stable() ? " stable N=8 vs 10" : " unstable"));
}

void lie_homology(Outcome& out) {
    Solvable u;
    auto check = [&](const std::string& name, const ChainComplex& c, const std::vector<long long>& expected) {
        const auto tor = tor_over_augmented(c).dims;
        const auto ext = ext_over_augmented(c).dims;
        out.expect(tor == expected && ext == tor, name + " Tor " + dims(tor) + " Ext " + dims(ext));
    };
    check("solvable", *ore_module_resolution(poly_koszul(u.ry, false), {form(*u.ry, "y")}).total.complex, {1, 1, 0});
    const AlgebraPtr ab = Algebra::iterated_ore(Q, {"y", "x"}, {{}, {form(*Algebra::polynomial(Q, {"y", "x"}), "0")}});
    check("abelian", *iterated_ore_resolution(ab).complex, {1, 2, 1});
    const AlgebraPtr h = Algebra::polynomial(Q, {"z", "x", "y"});
    const AlgebraPtr heis = Algebra::iterated_ore(Q, {"z", "x", "y"}, {{}, {form(*h, "0")}, {form(*h, "0"), form(*h, "-z")}});
    check("heisenberg", *iterated_ore_resolution(heis).complex, {1, 2, 2, 1});
}

void lifts(Outcome& out) {
    Weyl w;
    Skew s2(2), s3(3);
    Solvable u;
    const TwistPtr flip = TwistMap::flip(w.kx, w.ky);
    const AlgebraPtr rzx = Algebra::polynomial(Q, {"z", "x"});
    const TwistPtr heis = TwistMap::ore(rzx, w.ky, {form(*rzx, "0"), form(*rzx, "-z")});
    const LiftOptions unchecked{false, 2};
    const std::vector<std::pair<std::string, ResolutionBundle>> bundles = {
        {"weyl ore_koszul left", w.p(unchecked)},
        {"weyl koszul right", w.q(unchecked)},
        {"weyl bar left", lift_twist(bar(w.kx, 3, false, 4), w.tau, LiftSide::Left, unchecked)},
        {"weyl reduced bar left", lift_twist(bar(w.kx, 3, true, 4), w.tau, LiftSide::Left, unchecked)},
        {"weyl reduced bar right", lift_twist(bar(w.ky, 3, true, 4), w.tau, LiftSide::Right, unchecked)},
        {"flip koszul left", lift_twist(poly_koszul(w.kx, true), flip, LiftSide::Left, unchecked)},
        {"flip koszul right", lift_twist(poly_koszul(w.ky, true), flip, LiftSide::Right, unchecked)},
        {"skew p=2 periodic", lift_twist(cyclic_periodic(s2.g, 5), s2.tau, LiftSide::Left, unchecked)},
        {"skew p=2 koszul", lift_twist(poly_koszul(s2.s, true), s2.tau, LiftSide::Right, unchecked)},
        {"skew p=3 periodic", lift_twist(cyclic_periodic(s3.g, 5), s3.tau, LiftSide::Left, unchecked)},
        {"skew p=3 koszul", lift_twist(poly_koszul(s3.s, true), s3.tau, LiftSide::Right, unchecked)},
        {"U(g) ore_koszul", lift_twist(ore_koszul(u.ry), u.tau, LiftSide::Left, unchecked)},
        {"U(g) one-sided koszul", lift_twist(poly_koszul(u.ry, false), u.tau, LiftSide::Left, unchecked)},
        {"heisenberg koszul", lift_twist(poly_koszul(rzx, true), heis, LiftSide::Left, unchecked)},
    };
    std::size_t checked = 0;
    for (const auto& [name, b] : bundles) {
        LiftReport r;
        if (b.left_lift) {
            r.merge(check_chain_map(*b.left_lift, 2));
            r.merge(check_compat(*b.left_lift, 2));
        }
        if (b.right_lift) {
            r.merge(check_chain_map(*b.right_lift, 2));
            r.merge(check_compat(*b.right_lift, 2));
        }
        checked += r.checked;
        if (!r.ok() || r.checked == 0) out.expect(false, name + " (" + std::to_string(r.violations.size()) + " violations)");
    }
    out.expect(true, std::to_string(bundles.size()) + " lifts, " + std::to_string(checked) + " checks");
    for (const auto& [name, b] : {std::pair<std::string, ResolutionBundle>{"weyl", w.p()},
                                  {"U(g)", lift_twist(ore_koszul(u.ry), u.tau, LiftSide::Left)},
                                  {"heisenberg", lift_twist(poly_koszul(rzx, true), heis, LiftSide::Left)}}) {
        const LiftReport r = symmetrization_cross_check(b, 2, 3);
        out.expect(r.ok() && r.checked > 0, name + " closed form = symmetrize-twist-project (" +
                                                std::to_string(r.checked) + ")");
    }
}

// A mutation is caught when compose_check fails or the windowed exactness fails.
void mutations(Outcome& out) {
    auto caught = [](const ChainComplex& c, int N) {
        if (!compose_check(c).ok()) return std::string("caught by d^2");
        if (!exactness_report(c, N).exact()) return std::string("caught by exactness");
        return std::string();
    };
    Weyl w;
    const TotalComplex no_sign = bimodule_twisted_product(w.p(), w.q(), w.tau, {false});
    const std::string a = caught(*no_sign.complex, 6);
    out.expect(!a.empty(), "weyl total without (-1)^i " + (a.empty() ? "not caught" : a));
    const TwistPtr flip = TwistMap::flip(w.kx, w.ky);
    const TotalComplex flip_no_sign = bimodule_twisted_product(lift_twist(poly_koszul(w.kx, true), flip, LiftSide::Left),
                                                               lift_twist(poly_koszul(w.ky, true), flip, LiftSide::Right),
                                                               flip, {false});
    const std::string a2 = caught(*flip_no_sign.complex, 4);
    out.expect(!a2.empty(), "flip total without (-1)^i " + (a2.empty() ? "not caught" : a2));
    const std::string b = caught(*ore_koszul(w.algebra, {true}).complex, 6);
    out.expect(!b.empty(), "ore_koszul without a d2 term " + (b.empty() ? "not caught" : b));
    const TwistPtr bad = w.corrupted();
    const LiftOptions unchecked{false, 2};
    const TotalComplex m = bimodule_twisted_product(lift_twist(ore_koszul(w.kx), bad, LiftSide::Left, unchecked),
                                                    lift_twist(poly_koszul(w.ky, true), bad, LiftSide::Right, unchecked),
                                                    bad);
    const std::string c = caught(*m.complex, 6);
    out.expect(!c.empty(), "mis-signed weyl delta " + (c.empty() ? "not caught" : c));
}

std::string capture(const std::string& command, int& status) {
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    status = pclose(pipe);
    return out;
}

void determinism(Outcome& out) {
    std::string command = std::string(TWISTRES_CLI) + " --format json --seed 1";
    for (const auto& n : cli::preset_names()) command += " --task preset:" + n;
    int s1 = 0, s2 = 0;
    const std::string first = capture(command, s1);
    const std::string second = capture(command, s2);
    out.expect(!first.empty() && first == second && s1 == s2,
               "two CLI runs of " + std::to_string(cli::preset_names().size()) + " presets, " +
                   std::to_string(first.size()) + " bytes, identical");
    const cli::Report a = preset_suite(1), b = preset_suite(1);
    out.expect(a.dump() == b.dump(), "in-process reports identical");
}

} // namespace

int main() {
    int failed = 0;
    failed += !criterion(1, "hexagon suite", 60, hexagons);
    failed += !criterion(2, "d^2 = 0 across the preset suite", 30, compose_everywhere);
    failed += !criterion(3, "windowed exactness", 120, exactness);
    failed += !criterion(4, "flip product = Koszul(k[x,y])", 5, flip_sanity);
    failed += !criterion(5, "Hochschild dimensions", 180, hochschild);
    failed += !criterion(6, "Chevalley-Eilenberg Tor/Ext", 30, lie_homology);
    failed += !criterion(7, "chain-map lift suite", 60, lifts);
    failed += !criterion(8, "mutation sensitivity", 60, mutations);
    failed += !criterion(9, "deterministic JSON reports", 300, determinism);
    std::printf("%d of 9 criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
