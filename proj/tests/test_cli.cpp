#include "doctest.h"

#include "twistres/cli.hpp"
#include "twistres/errors.hpp"

#include <string>

using namespace twistres;
using namespace twistres::cli;

namespace {

const char* kWeyl = R"(
characteristic: 0
algebras:
  - name: weyl
    type: ore
    generators: [x, y]
    delta: {y: {x: "-1"}}
resolutions:
  - {name: K, family: ore-koszul, algebra: weyl}
tasks:
  - {task: verify-resolution, resolution: K, cutoff: 4}
  - {task: hochschild, resolution: K, cutoff: 4, expect: [1, 0, 0]}
)";

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("the Weyl preset parses to a two-generator Ore extension") {
    const ProblemConfig c = parse_config(preset_text("weyl"));
    const AlgebraDef* weyl = nullptr;
    for (const auto& a : c.algebras)
        if (a.name == "weyl") weyl = &a;
    REQUIRE(weyl != nullptr);
    CHECK(weyl->algebra->kind() == AlgebraKind::IteratedOre);
    CHECK(weyl->algebra->generator_count() == 2);
    const LinearForm d = weyl->algebra->delta_form(1, 0);
    CHECK(d.constant == Field{0}.from(-1));
    CHECK(d.coeff[0].is_zero());
    CHECK(d.coeff[1].is_zero());
}

TEST_CASE("an empty task list gives an empty report") {
    const Report r = run(parse_config("characteristic: 0\ntasks: []\n"));
    CHECK(r["tasks"].empty());
    CHECK(succeeded(r));
    CHECK(run(parse_config(""))["tasks"].empty());
}

TEST_CASE("validation errors") {
    // delta_y(x) = y leaves k + span{x}
    const std::string filtered = error_of(R"(
algebras:
  - name: bad
    type: ore
    generators: [x, y]
    delta: {y: {x: "y"}}
)");
    CHECK(filtered.find("ValidationError") != std::string::npos);
    CHECK(filtered.find("not filtered") != std::string::npos);
    CHECK(filtered.find("6:") != std::string::npos);

    CHECK(error_of("characteristic: 6\n").find("prime") != std::string::npos);
    const std::string unknown = error_of(R"(
algebras:
  - {name: a, type: ore, generators: [x, y], delta: {y: {x: "z"}}}
)");
    CHECK(unknown.find("ValidationError") != std::string::npos);
    CHECK(unknown.find("z") != std::string::npos);
    CHECK(error_of("algebras:\n  - {name: a, type: ore, generators: [x, y], delta: {x: {y: \"1\"}}}\n")
              .find("precede") != std::string::npos);
    CHECK(error_of("tasks:\n  - {task: hochschild, resolution: nope}\n").find("unknown resolution") !=
          std::string::npos);
    CHECK(error_of("cutoff: 0\n").find("at least 1") != std::string::npos);
    CHECK(error_of("tasks:\n  - preset:nope\n").find("unknown preset") != std::string::npos);
    CHECK(error_of("algebras:\n  - {name: a, type: polynomial, generators: [x], colour: red}\n")
              .find("unknown key 'colour'") != std::string::npos);
}

TEST_CASE("malformed YAML reports its position") {
    try {
        parse_config("algebras:\n  - {name: a, type: [polynomial\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() >= 2);
        CHECK(e.column() >= 1);
    }
}

TEST_CASE("running a small config") {
    const Report r = run(parse_config(kWeyl));
    REQUIRE(r["tasks"].size() == 2);
    CHECK(r["tasks"][0]["status"] == "pass");
    CHECK(r["tasks"][1]["status"] == "pass");
    CHECK(r["tasks"][1]["dims"] == Report::parse("[1, 0, 0]"));
    CHECK(status(r) == "pass");

    // --task selects by kind or name
    const Report only = run(parse_config(kWeyl), RunOptions{{"hochschild"}, {}, {}, false});
    REQUIRE(only["tasks"].size() == 1);
    CHECK(only["tasks"][0]["task"] == "hochschild");
    CHECK_THROWS_AS(run(parse_config(kWeyl), RunOptions{{"nope"}, {}, {}, false}), ValidationError);
}

TEST_CASE("a failed verification skips dependent tasks") {
    const Report r = run(parse_config(R"(
algebras:
  - {name: weyl, type: ore, generators: [x, y], delta: {y: {x: "-1"}}}
resolutions:
  - {name: K, family: ore-koszul, algebra: weyl, mutation: {drop_d2_term: true}}
tasks:
  - {task: verify-resolution, resolution: K, cutoff: 3}
  - {task: hochschild, resolution: K}
)"));
    CHECK(r["tasks"][0]["status"] == "fail");
    CHECK(r["tasks"][0]["violation_count"].get<long long>() >= 1);
    CHECK(r["tasks"][1]["status"] == "fail");
    CHECK(r["tasks"][1]["skipped"] == true);
    CHECK_FALSE(succeeded(r));
}

TEST_CASE("task errors become failed records") {
    // a periodic resolution needs a group algebra
    const Report r = run(parse_config(R"(
algebras:
  - {name: s, type: polynomial, generators: [x]}
resolutions:
  - {name: P, family: cyclic-periodic, algebra: s}
tasks:
  - {task: verify-resolution, resolution: P}
)"));
    CHECK(r["tasks"][0]["status"] == "fail");
    CHECK(r["tasks"][0].contains("message"));
}

TEST_CASE("presets") {
    const Report weyl = run({}, RunOptions{{"preset:weyl"}, {}, {}, false});
    CHECK(status(weyl) == "pass");
    const Report& tasks = weyl["tasks"][0]["tasks"];
    bool found = false;
    for (const auto& t : tasks)
        if (t["task"] == "hochschild") {
            CHECK(t["dims"] == Report::parse("[1, 0, 0]"));
            found = true;
        }
    CHECK(found);

    const Report sl2 = run({}, RunOptions{{"preset:lie-sl2-excluded"}, {}, {}, false});
    CHECK(status(sl2) == "fail");
    CHECK(sl2["tasks"][0]["message"].get<std::string>().rfind("out of scope", 0) == 0);

    const Report skew = run({}, RunOptions{{"preset:skew-p3"}, {}, {}, false});
    CHECK(status(skew) == "pass");
    for (const auto& t : skew["tasks"][0]["tasks"])
        if (t["task"] == "twisted-product") {
            bool compose = false, exact = false;
            for (const auto& c : t["checks"]) {
                if (c["name"] == "compose") compose = c["ok"];
                if (c["name"] == "exactness") exact = c["ok"];
            }
            CHECK(compose);
            CHECK(exact);
        }
    CHECK(preset_text("weyl-1") == preset_text("weyl"));
    CHECK(preset_text("cyclic-p") == preset_text("cyclic-3"));
}

TEST_CASE("reports are deterministic and both renderings carry the statuses") {
    const RunOptions o{{"preset:skew-p2", "preset:ue-solvable-2dim"}, {}, 7, false};
    const Report a = run({}, o);
    const Report b = run({}, o);
    CHECK(a.dump() == b.dump());
    const std::string text = render_text(a);
    CHECK(text.find("[pass] preset skew-p2") != std::string::npos);
    CHECK(text.find("[pass] tor-ext CE") != std::string::npos);
    CHECK(a["tasks"][0]["seed"] == 7);
}

TEST_CASE("unstable tasks keep a zero exit status") {
    Report r = Report::object();
    r["summary"]["status"] = "unstable";
    CHECK(succeeded(r));
    r["summary"]["status"] = "fail";
    CHECK_FALSE(succeeded(r));
}
