#include "twistres/cli.hpp"

#include "twistres/errors.hpp"
#include "twistres/homology.hpp"
#include "twistres/twistprod.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

namespace twistres::cli {

namespace detail {
// Generated from presets/*.yaml at configure time.
const std::vector<std::pair<std::string, std::string>>& embedded_presets();
} // namespace detail

namespace {

const std::set<std::string> kExcludedPresets = {"lie-sl2-excluded"};
const std::map<std::string, std::string> kAliases = {{"weyl-1", "weyl"}, {"weyl-n", "weyl-2"}, {"cyclic-p", "cyclic-3"}};
constexpr std::size_t kMaxViolations = 20;

// ---------------------------------------------------------------- parsing

std::string where(const YAML::Node& n) {
    const YAML::Mark m = n.Mark();
    if (m.is_null()) return "";
    return std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1) + ": ";
}

[[noreturn]] void invalid(const YAML::Node& n, std::string what) {
    const std::string prefix = "ValidationError: ";
    if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
    throw ValidationError(where(n) + what);
}

void allow_keys(const YAML::Node& n, std::initializer_list<const char*> keys) {
    if (!n.IsMap()) invalid(n, "expected a mapping");
    for (const auto& kv : n) {
        const std::string k = kv.first.as<std::string>();
        if (std::none_of(keys.begin(), keys.end(), [&](const char* s) { return k == s; }))
            invalid(kv.first, "unknown key '" + k + "'");
    }
}

std::string required(const YAML::Node& n, const char* key) {
    const YAML::Node v = n[key];
    if (!v) invalid(n, std::string("missing key '") + key + "'");
    if (!v.IsScalar()) invalid(v, std::string("'") + key + "' must be a scalar");
    return v.as<std::string>();
}

std::string optional(const YAML::Node& n, const char* key, const std::string& fallback) {
    const YAML::Node v = n[key];
    if (!v) return fallback;
    if (!v.IsScalar()) invalid(v, std::string("'") + key + "' must be a scalar");
    return v.as<std::string>();
}

int integer(const YAML::Node& n, const char* key, int fallback, int minimum) {
    const YAML::Node v = n[key];
    if (!v) return fallback;
    const int x = v.as<int>();
    if (x < minimum) invalid(v, std::string("'") + key + "' must be at least " + std::to_string(minimum));
    return x;
}

bool boolean(const YAML::Node& n, const char* key, bool fallback) {
    const YAML::Node v = n[key];
    return v ? v.as<bool>() : fallback;
}

Report to_json(const YAML::Node& n) {
    switch (n.Type()) {
    case YAML::NodeType::Map: {
        Report o = Report::object();
        for (const auto& kv : n) o[kv.first.as<std::string>()] = to_json(kv.second);
        return o;
    }
    case YAML::NodeType::Sequence: {
        Report a = Report::array();
        for (const auto& v : n) a.push_back(to_json(v));
        return a;
    }
    case YAML::NodeType::Scalar:
        return n.as<std::string>();
    default:
        return nullptr;
    }
}

bool identifier(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; });
}

std::vector<std::string> generator_names(const YAML::Node& n) {
    const YAML::Node g = n["generators"];
    if (!g || !g.IsSequence() || g.size() == 0) invalid(n, "'generators' must be a nonempty list");
    std::vector<std::string> out;
    for (const auto& v : g) {
        const std::string s = v.as<std::string>();
        if (!identifier(s)) invalid(v, "bad generator name '" + s + "'");
        if (std::find(out.begin(), out.end(), s) != out.end()) invalid(v, "duplicate generator '" + s + "'");
        out.push_back(s);
    }
    return out;
}

LinearForm form_at(const YAML::Node& v, const Algebra& a) {
    try {
        return parse_linear_form(a, v.as<std::string>());
    } catch (const Error& e) {
        invalid(v, e.what());
    }
}

std::size_t generator_at(const YAML::Node& key, const Algebra& a) {
    const std::string s = key.as<std::string>();
    const auto i = a.generator_index(s);
    if (!i) invalid(key, "unknown generator '" + s + "' of " + a.name());
    return *i;
}

LinearForm zero_form(const Algebra& a) {
    return LinearForm{a.field().zero(), std::vector<Scalar>(a.nvars(), a.field().zero())};
}

class Parser {
public:
    ProblemConfig parse(const YAML::Node& root) {
        if (root.IsNull()) return cfg_;
        allow_keys(root, {"characteristic", "seed", "cutoff", "algebras", "twists", "resolutions", "tasks"});
        const long long ch = root["characteristic"] ? root["characteristic"].as<long long>() : 0;
        if (ch < 0 || ch >= (1LL << 31) || (ch != 0 && !is_prime(static_cast<std::uint64_t>(ch))))
            invalid(root["characteristic"], "characteristic must be 0 or a prime below 2^31, got " + std::to_string(ch));
        cfg_.characteristic = static_cast<std::uint32_t>(ch);
        field_ = Field{cfg_.characteristic};
        cfg_.seed = root["seed"] ? root["seed"].as<std::uint64_t>() : 0;
        cfg_.cutoff = integer(root, "cutoff", 4, 1);
        for (const auto& n : list(root, "algebras")) algebra(n);
        for (const auto& n : list(root, "twists")) twist(n);
        for (const auto& n : list(root, "resolutions")) resolution(n);
        for (const auto& n : list(root, "tasks")) task(n);
        cfg_.echo = to_json(root);
        return cfg_;
    }

private:
    static std::vector<YAML::Node> list(const YAML::Node& root, const char* key) {
        const YAML::Node v = root[key];
        std::vector<YAML::Node> out;
        if (!v || v.IsNull()) return out;
        if (!v.IsSequence()) invalid(v, std::string("'") + key + "' must be a list");
        for (const auto& n : v) out.push_back(n);
        return out;
    }

    void fresh(const YAML::Node& n, const std::string& name, std::set<std::string>& names) {
        if (!identifier(name)) invalid(n, "bad name '" + name + "'");
        if (!names.insert(name).second) invalid(n, "duplicate name '" + name + "'");
    }

    const AlgebraDef& find_algebra(const YAML::Node& n, const char* key) {
        const std::string name = required(n, key);
        for (const auto& a : cfg_.algebras)
            if (a.name == name) return a;
        invalid(n[key], "unknown algebra '" + name + "'");
    }

    const TwistDef& find_twist(const YAML::Node& n, const std::string& name) {
        for (const auto& t : cfg_.twists)
            if (t.name == name) return t;
        invalid(n, "unknown twist '" + name + "'");
    }

    void algebra(const YAML::Node& n) {
        allow_keys(n, {"name", "type", "generators", "order", "generator", "delta"});
        AlgebraDef d;
        d.name = required(n, "name");
        fresh(n, d.name, algebra_names_);
        d.type = required(n, "type");
        if (d.type == "polynomial") {
            d.algebra = Algebra::polynomial(field_, generator_names(n));
        } else if (d.type == "cyclic") {
            const int order = integer(n, "order", 0, 1);
            if (!n["order"]) invalid(n, "missing key 'order'");
            const std::string g = optional(n, "generator", "g");
            if (!identifier(g)) invalid(n["generator"], "bad generator name '" + g + "'");
            d.algebra = Algebra::cyclic(field_, order, g);
        } else if (d.type == "ore") {
            const auto names = generator_names(n);
            const auto poly = Algebra::polynomial(field_, names);
            std::vector<std::vector<LinearForm>> delta(names.size());
            for (std::size_t j = 0; j < names.size(); ++j) delta[j].assign(j, zero_form(*poly));
            if (const YAML::Node table = n["delta"]) {
                if (!table.IsMap()) invalid(table, "'delta' must map x_j to {x_i: delta_j(x_i)}");
                for (const auto& row : table) {
                    const std::size_t j = generator_at(row.first, *poly);
                    if (!row.second.IsMap()) invalid(row.second, "delta row must be a mapping");
                    for (const auto& entry : row.second) {
                        const std::size_t i = generator_at(entry.first, *poly);
                        if (i >= j)
                            invalid(entry.first, "delta_" + names[j] + "(" + names[i] + ") needs " + names[i] +
                                                      " to precede " + names[j]);
                        const LinearForm f = form_at(entry.second, *poly);
                        for (std::size_t k = j; k < names.size(); ++k)
                            if (!f.coeff[k].is_zero())
                                invalid(entry.second, "delta_" + names[j] + "(" + names[i] + ") = " +
                                                          entry.second.as<std::string>() + " is not filtered: " +
                                                          names[k] + " does not precede " + names[j]);
                        delta[j][i] = f;
                    }
                }
            }
            d.algebra = Algebra::iterated_ore(field_, names, std::move(delta));
        } else {
            invalid(n["type"], "unknown algebra type '" + d.type + "' (polynomial, cyclic, ore)");
        }
        cfg_.algebras.push_back(std::move(d));
    }

    void twist(const YAML::Node& n) {
        allow_keys(n, {"name", "type", "left", "right", "delta", "action", "base", "overrides"});
        TwistDef t;
        t.name = required(n, "name");
        fresh(n, t.name, twist_names_);
        t.type = required(n, "type");
        if (t.type == "custom") {
            t.base = required(n, "base");
            const TwistDef& base = find_twist(n["base"], t.base);
            t.left = base.left;
            t.right = base.right;
        } else {
            t.left = find_algebra(n, "left").name;
            t.right = find_algebra(n, "right").name;
        }
        const Algebra& a = *algebra_named(t.left);
        const Algebra& b = *algebra_named(t.right);
        auto forms_over = [&](const char* key, const Algebra& over, bool identity) {
            std::vector<LinearForm> out;
            for (std::size_t i = 0; i < over.generator_count(); ++i) {
                LinearForm f = zero_form(over);
                if (identity) f.coeff[i] = over.field().one();
                out.push_back(f);
            }
            if (const YAML::Node m = n[key]) {
                if (!m.IsMap()) invalid(m, std::string("'") + key + "' must be a mapping");
                for (const auto& kv : m) out[generator_at(kv.first, over)] = form_at(kv.second, over);
            }
            return out;
        };
        if (t.type == "flip") {
        } else if (t.type == "ore") {
            if (b.kind() != AlgebraKind::Polynomial || b.generator_count() != 1)
                invalid(n["right"], "an Ore twist needs a one-generator polynomial algebra on the right");
            t.forms = forms_over("delta", a, false);
        } else if (t.type == "skew") {
            if (a.kind() != AlgebraKind::CyclicGroup) invalid(n["left"], "a skew twist needs a cyclic group on the left");
            if (b.kind() != AlgebraKind::Polynomial)
                invalid(n["right"], "a skew twist needs a polynomial algebra on the right");
            t.forms = forms_over("action", b, true);
        } else if (t.type == "custom") {
            if (const YAML::Node m = n["overrides"]) {
                if (!m.IsMap()) invalid(m, "'overrides' must map \"b|a\" to a tensor");
                for (const auto& kv : m) {
                    const std::string key = kv.first.as<std::string>();
                    const auto bar = key.find('|');
                    if (bar == std::string::npos) invalid(kv.first, "override key must read \"b|a\"");
                    const Monomial bm = monomial(kv.first, b, key.substr(0, bar));
                    const Monomial am = monomial(kv.first, a, key.substr(bar + 1));
                    try {
                        t.overrides[{bm, am}] = parse_tensor(a, b, kv.second.as<std::string>());
                    } catch (const Error& e) {
                        invalid(kv.second, e.what());
                    }
                }
            }
        } else {
            invalid(n["type"], "unknown twist type '" + t.type + "' (flip, ore, skew, custom)");
        }
        cfg_.twists.push_back(std::move(t));
    }

    static Monomial monomial(const YAML::Node& at, const Algebra& a, const std::string& text) {
        Element e;
        try {
            e = parse_element(a, text);
        } catch (const Error& err) {
            invalid(at, err.what());
        }
        if (e.terms().size() != 1 || !e.terms().begin()->second.is_one())
            invalid(at, "'" + text + "' is not a monomial of " + a.name());
        return e.terms().begin()->first;
    }

    AlgebraPtr algebra_named(const std::string& name) const {
        for (const auto& a : cfg_.algebras)
            if (a.name == name) return a.algebra;
        return nullptr;
    }

    void resolution(const YAML::Node& n) {
        allow_keys(n, {"name", "family", "algebra", "n_max", "cutoff", "bimodule", "lift", "mutation"});
        ResolutionDef r;
        r.name = required(n, "name");
        fresh(n, r.name, resolution_names_);
        r.family = required(n, "family");
        static const std::set<std::string> families = {"bar",        "reduced-bar", "poly-koszul",        "cyclic-periodic",
                                                       "ore-koszul", "koszul-kx",   "chevalley-eilenberg"};
        if (!families.count(r.family)) invalid(n["family"], "unknown family '" + r.family + "'");
        r.algebra = find_algebra(n, "algebra").name;
        r.n_max = integer(n, "n_max", r.family == "cyclic-periodic" ? 5 : 3, 1);
        r.label_cutoff = integer(n, "cutoff", 4, 1);
        r.bimodule = boolean(n, "bimodule", true);
        if (const YAML::Node m = n["mutation"]) {
            allow_keys(m, {"drop_d2_term"});
            r.drop_d2_term = boolean(m, "drop_d2_term", false);
        }
        if (const YAML::Node l = n["lift"]) {
            allow_keys(l, {"twist", "side", "verify"});
            r.lift_twist = required(l, "twist");
            find_twist(l["twist"], r.lift_twist);
            const std::string side = required(l, "side");
            if (side != "left" && side != "right") invalid(l["side"], "lift side must be left or right");
            r.lift_side = side == "left" ? LiftSide::Left : LiftSide::Right;
            r.lift_verify = boolean(l, "verify", true);
        }
        cfg_.resolutions.push_back(std::move(r));
    }

    void resolution_ref(const YAML::Node& n, const char* key, std::string& out) {
        out = required(n, key);
        if (!resolution_names_.count(out) && !outputs_.count(out))
            invalid(n[key], "unknown resolution '" + out + "'");
    }

    void task(const YAML::Node& n) {
        TaskDef t;
        if (n.IsScalar()) {
            const std::string s = n.as<std::string>();
            if (s.rfind("preset:", 0) != 0) invalid(n, "a task given as text must read preset:<name>");
            t.kind = "preset";
            t.preset = s.substr(7);
            check_preset(n, t.preset);
            cfg_.tasks.push_back(std::move(t));
            return;
        }
        allow_keys(n, {"task", "name", "preset", "twist", "resolution", "left", "right", "compare", "cutoff",
                       "degree_bound", "samples", "one_sided", "vertical_sign", "symmetrization", "expect"});
        t.kind = required(n, "task");
        t.name = optional(n, "name", "");
        if (n["cutoff"]) t.cutoff = integer(n, "cutoff", 1, 1);
        if (const YAML::Node e = n["expect"]) {
            if (!e.IsSequence()) invalid(e, "'expect' must be a list of dimensions");
            t.expect.emplace();
            for (const auto& v : e) t.expect->push_back(v.as<long long>());
        }
        if (t.kind == "check-twist") {
            t.twist = required(n, "twist");
            find_twist(n["twist"], t.twist);
            t.degree_bound = integer(n, "degree_bound", 3, 0);
            t.samples = integer(n, "samples", 200, 0);
        } else if (t.kind == "verify-resolution") {
            resolution_ref(n, "resolution", t.resolution);
            t.symmetrization = boolean(n, "symmetrization", false);
        } else if (t.kind == "twisted-product") {
            resolution_ref(n, "left", t.left);
            resolution_ref(n, "right", t.right);
            t.twist = required(n, "twist");
            find_twist(n["twist"], t.twist);
            if (n["compare"]) resolution_ref(n, "compare", t.compare);
            t.one_sided = boolean(n, "one_sided", false);
            t.vertical_sign = boolean(n, "vertical_sign", true);
            t.degree_bound = integer(n, "degree_bound", 2, 0);
            t.samples = integer(n, "samples", 50, -1);
            if (t.name.empty()) t.name = t.left + "*" + t.right;
            if (!identifier(t.name) && t.name != t.left + "*" + t.right) invalid(n["name"], "bad name '" + t.name + "'");
            if (resolution_names_.count(t.name) || !outputs_.insert(t.name).second)
                invalid(n, "duplicate resolution name '" + t.name + "'");
        } else if (t.kind == "hochschild" || t.kind == "tor-ext") {
            resolution_ref(n, "resolution", t.resolution);
        } else if (t.kind == "preset") {
            t.preset = required(n, "preset");
            check_preset(n["preset"], t.preset);
        } else {
            invalid(n["task"], "unknown task '" + t.kind +
                                   "' (check-twist, verify-resolution, twisted-product, hochschild, tor-ext, preset)");
        }
        cfg_.tasks.push_back(std::move(t));
    }

    static void check_preset(const YAML::Node& at, const std::string& name) {
        try {
            preset_text(name);
        } catch (const Error& e) {
            invalid(at, e.what());
        }
    }

    ProblemConfig cfg_;
    Field field_;
    std::set<std::string> algebra_names_, twist_names_, resolution_names_, outputs_;
};

// ---------------------------------------------------------------- running

Report check(const std::string& name, bool ok, std::size_t checked) {
    Report c = Report::object();
    c["name"] = name;
    c["ok"] = ok;
    c["checked"] = checked;
    return c;
}

class Record {
public:
    Record(std::string task, std::string name) {
        r_["task"] = std::move(task);
        r_["name"] = std::move(name);
        r_["status"] = "pass";
    }
    Report& json() { return r_; }
    void fail(const std::string& message) {
        r_["status"] = "fail";
        if (!r_.contains("message")) r_["message"] = message;
    }
    void unstable(const std::string& message) {
        if (r_["status"] == "pass") {
            r_["status"] = "unstable";
            r_["message"] = message;
        }
    }
    bool passed() const { return r_["status"] != "fail"; }
    void add_check(const std::string& name, bool ok, std::size_t checked) {
        r_["checks"].push_back(check(name, ok, checked));
        if (!ok) fail(name + " check failed");
    }
    void violation(const std::string& check, const std::string& where, const std::string& detail) {
        auto& count = r_["violation_count"];
        count = count.is_null() ? 1 : count.get<long long>() + 1;
        if (r_["violations"].size() >= kMaxViolations) return;
        Report v = Report::object();
        v["check"] = check;
        v["where"] = where;
        v["detail"] = detail;
        r_["violations"].push_back(std::move(v));
    }

private:
    Report r_ = Report::object();
};

Report ranks(const ChainComplex& c) {
    Report a = Report::array();
    for (const auto& l : c.labels) a.push_back(l.size());
    return a;
}

class Runner {
public:
    Runner(const ProblemConfig& cfg, const RunOptions& opt) : cfg_(cfg), opt_(opt) {
        cutoff_ = opt.cutoff.value_or(cfg.cutoff);
        seed_ = opt.seed.value_or(cfg.seed);
    }

    Report run(const std::vector<TaskDef>& tasks) {
        Report out = Report::array();
        for (const auto& t : tasks) {
            const auto start = std::chrono::steady_clock::now();
            Report rec = run_task(t);
            if (opt_.timings) {
                const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                rec["seconds"] = std::round(s * 1000.0) / 1000.0;
            }
            out.push_back(std::move(rec));
        }
        return out;
    }

private:
    Report run_task(const TaskDef& t) {
        if (t.kind == "preset") return preset(t.preset);
        Record rec(t.kind, subject(t));
        if (const auto why = blocked(t)) {
            rec.json()["skipped"] = true;
            rec.fail("skipped: " + *why);
            return rec.json();
        }
        try {
            if (t.kind == "check-twist") check_twist(t, rec);
            else if (t.kind == "verify-resolution") verify(t, rec);
            else if (t.kind == "twisted-product") product(t, rec);
            else if (t.kind == "hochschild") hochschild(t, rec);
            else if (t.kind == "tor-ext") tor_ext(t, rec);
        } catch (const std::exception& e) {
            rec.fail(e.what());
        }
        if (!rec.passed()) {
            if (t.kind == "check-twist") failed_["twist " + t.twist] = "check-twist " + t.twist + " failed";
            if (t.kind == "verify-resolution")
                failed_["resolution " + t.resolution] = "verify-resolution " + t.resolution + " failed";
            if (t.kind == "twisted-product") failed_["resolution " + t.name] = "twisted-product " + t.name + " failed";
        }
        return rec.json();
    }

    static std::string subject(const TaskDef& t) {
        if (!t.name.empty()) return t.name;
        if (t.kind == "check-twist") return t.twist;
        return t.resolution;
    }

    const ResolutionDef* resolution_def(const std::string& name) const {
        for (const auto& r : cfg_.resolutions)
            if (r.name == name) return &r;
        return nullptr;
    }

    const TwistDef& twist_def(const std::string& name) const {
        for (const auto& t : cfg_.twists)
            if (t.name == name) return t;
        throw ValidationError("unknown twist '" + name + "'");
    }

    void twist_deps(const std::string& name, std::vector<std::string>& out) const {
        out.push_back("twist " + name);
        const TwistDef& d = twist_def(name);
        if (!d.base.empty()) twist_deps(d.base, out);
    }

    void resolution_deps(const std::string& name, std::vector<std::string>& out) const {
        out.push_back("resolution " + name);
        if (const ResolutionDef* r = resolution_def(name); r && !r->lift_twist.empty()) twist_deps(r->lift_twist, out);
    }

    std::optional<std::string> blocked(const TaskDef& t) const {
        std::vector<std::string> deps;
        if (t.kind == "check-twist" && !twist_def(t.twist).base.empty()) twist_deps(twist_def(t.twist).base, deps);
        if (t.kind == "verify-resolution") {
            if (const ResolutionDef* r = resolution_def(t.resolution); r && !r->lift_twist.empty())
                twist_deps(r->lift_twist, deps);
        }
        if (t.kind == "twisted-product") {
            resolution_deps(t.left, deps);
            resolution_deps(t.right, deps);
            twist_deps(t.twist, deps);
            if (!t.compare.empty()) resolution_deps(t.compare, deps);
        }
        if (t.kind == "hochschild" || t.kind == "tor-ext") resolution_deps(t.resolution, deps);
        for (const auto& d : deps)
            if (auto it = failed_.find(d); it != failed_.end()) return it->second;
        return std::nullopt;
    }

    AlgebraPtr algebra(const std::string& name) const {
        for (const auto& a : cfg_.algebras)
            if (a.name == name) return a.algebra;
        throw ValidationError("unknown algebra '" + name + "'");
    }

    TwistPtr twist(const std::string& name) {
        if (auto it = twists_.find(name); it != twists_.end()) return it->second;
        const TwistDef& d = twist_def(name);
        TwistPtr t;
        if (d.type == "flip") t = TwistMap::flip(algebra(d.left), algebra(d.right));
        else if (d.type == "ore") t = TwistMap::ore(algebra(d.left), algebra(d.right), d.forms);
        else if (d.type == "skew") t = TwistMap::skew_group(algebra(d.left), algebra(d.right), d.forms);
        else t = TwistMap::custom(twist(d.base), d.overrides);
        return twists_[name] = t;
    }

    const ResolutionBundle& bundle(const std::string& name) {
        if (auto it = bundles_.find(name); it != bundles_.end()) return it->second;
        const ResolutionDef* d = resolution_def(name);
        if (!d) throw SpecMismatch("'" + name + "' is a twisted product total complex, not a resolution bundle");
        const AlgebraPtr a = algebra(d->algebra);
        ResolutionBundle b;
        if (d->family == "bar" || d->family == "reduced-bar") b = bar(a, d->n_max, d->family == "reduced-bar", d->label_cutoff);
        else if (d->family == "poly-koszul") b = poly_koszul(a, d->bimodule);
        else if (d->family == "cyclic-periodic") b = cyclic_periodic(a, d->n_max);
        else if (d->family == "ore-koszul") b = ore_koszul(a, {d->drop_d2_term});
        else if (d->family == "koszul-kx") b = one_sided_koszul_kx(a);
        else b = iterated_ore_resolution(a);
        if (!d->lift_twist.empty())
            b = lift_twist(b, twist(d->lift_twist), d->lift_side, LiftOptions{d->lift_verify, 2});
        return bundles_[name] = std::move(b);
    }

    ComplexPtr complex(const std::string& name) {
        if (auto it = totals_.find(name); it != totals_.end()) return it->second.complex;
        return bundle(name).complex;
    }

    void check_twist(const TaskDef& t, Record& rec) {
        const HexagonReport h = check_hexagon(*twist(t.twist), t.degree_bound, t.samples, seed_);
        rec.json()["twist"] = twist(t.twist)->description();
        rec.json()["degree_bound"] = t.degree_bound;
        rec.json()["random_samples"] = h.random_checked;
        rec.add_check("hexagon", h.ok(), h.tuples_checked + h.random_checked);
        for (const auto& v : h.violations) rec.violation("hexagon", v.tuple, v.lhs + " != " + v.rhs);
        try {
            const InverseTwist inv = invert_twist(*twist(t.twist), t.degree_bound);
            rec.add_check("bijective", true, inv.size());
        } catch (const NonInvertibleTruncation& e) {
            rec.add_check("bijective", false, 0);
            rec.violation("bijective", "degree <= " + std::to_string(t.degree_bound), e.what());
        }
        if (!twist(t.twist)->is_graded())
            rec.json()["note"] = "filtered twist: bijectivity is checked on each truncation, not globally";
    }

    void lift_checks(const ResolutionBundle& b, Record& rec) {
        auto add = [&](const std::string& name, const LiftReport& r) {
            rec.add_check(name, r.ok(), r.checked);
            for (const auto& v : r.violations)
                rec.violation(name, v.check + " in degree " + std::to_string(v.degree) + " at " + v.input,
                              v.lhs + " != " + v.rhs);
        };
        if (b.left_lift) {
            add("lift-chain-map", check_chain_map(*b.left_lift, 2));
            add("lift-compat", check_compat(*b.left_lift, 2));
        }
        if (b.right_lift) {
            add("lift-chain-map", check_chain_map(*b.right_lift, 2));
            add("lift-compat", check_compat(*b.right_lift, 2));
        }
    }

    void compose(const ChainComplex& c, Record& rec) {
        const ComposeReport r = compose_check(c);
        rec.add_check("compose", r.ok(), r.labels_checked);
        for (const auto& v : r.violations)
            rec.violation("compose", "degree " + std::to_string(v.degree) + " label " + v.label, v.residue);
    }

    void exactness(const ChainComplex& c, int N, Record& rec) {
        const ExactnessReport r = exactness_report(c, N);
        Report e = Report::object();
        e["cutoff"] = r.cutoff;
        e["shift"] = r.shift;
        e["h0"] = r.h0;
        e["module_dim"] = r.module_dim;
        e["composes"] = r.composes;
        for (const auto& h : r.entries) {
            Report row = Report::object();
            row["n"] = h.degree;
            row["degree"] = N;
            row["dim"] = h.dim;
            e["table"].push_back(std::move(row));
        }
        rec.json()["exactness"] = std::move(e);
        rec.add_check("exactness", r.exact(), r.entries.size());
    }

    void verify(const TaskDef& t, Record& rec) {
        const ResolutionBundle& b = bundle(t.resolution);
        rec.json()["family"] = family_name(b.family);
        rec.json()["resolves"] = b.resolves;
        rec.json()["ranks"] = ranks(*b.complex);
        compose(*b.complex, rec);
        lift_checks(b, rec);
        if (t.symmetrization) {
            const LiftReport r = symmetrization_cross_check(b, 2, 3);
            rec.add_check("symmetrization", r.ok(), r.checked);
            for (const auto& v : r.violations) rec.violation("symmetrization", v.input, v.lhs + " != " + v.rhs);
        }
        if (t.cutoff) exactness(*b.complex, *t.cutoff, rec);
    }

    void product(const TaskDef& t, Record& rec) {
        const ResolutionBundle& p = bundle(t.left);
        const ResolutionBundle& q = bundle(t.right);
        const TwistPtr tau = twist(t.twist);
        TotalComplex total = t.one_sided ? one_sided_twisted_product(p, q, tau, {t.vertical_sign})
                                         : bimodule_twisted_product(p, q, tau, {t.vertical_sign});
        rec.json()["ranks"] = ranks(*total.complex);
        compose(*total.complex, rec);
        auto add = [&](const std::string& name, const BicomplexCheck& r) {
            rec.add_check(name, r.ok(), r.checked);
            for (const auto& v : r.violations) rec.violation(name, "", v);
        };
        add("anticommute", anticommutation_check(total));
        add("action", action_check(total, t.degree_bound, t.samples, seed_));
        if (!t.compare.empty()) {
            const WedgeComparison w = compare_with_wedge(total, *complex(t.compare));
            rec.add_check("compare-" + t.compare, w.ok(), total.complex->labels.size());
            for (const auto& m : w.mismatches) rec.violation("compare-" + t.compare, "", m);
        }
        if (t.cutoff) exactness(*total.complex, *t.cutoff, rec);
        totals_[t.name] = std::move(total);
    }

    void expect(const TaskDef& t, const std::vector<long long>& got, Record& rec) {
        if (!t.expect) return;
        bool ok = t.expect->size() <= got.size();
        for (std::size_t n = 0; ok && n < t.expect->size(); ++n) ok = (*t.expect)[n] == got[n];
        Report e = Report::array();
        for (long long v : *t.expect) e.push_back(v);
        rec.json()["expected"] = std::move(e);
        rec.add_check("expected", ok, t.expect->size());
    }

    void hochschild(const TaskDef& t, Record& rec) {
        const int N = t.cutoff.value_or(cutoff_);
        const HochschildReport h = hochschild_cohomology(*complex(t.resolution), N);
        rec.json()["graded"] = h.graded;
        rec.json()["cutoff"] = N;
        Report table = Report::array();
        for (const auto& r : h.rows) {
            Report row = Report::object();
            row["n"] = r.n;
            row["degree"] = r.degree;
            row["dim"] = r.dim;
            row["stable"] = r.stable;
            table.push_back(std::move(row));
        }
        rec.json()["table"] = std::move(table);
        std::vector<long long> totals;
        Report dims = Report::array();
        for (int n = 0; n <= h.top; ++n) {
            totals.push_back(h.total(n));
            dims.push_back(totals.back());
        }
        rec.json()["dims"] = std::move(dims);
        expect(t, totals, rec);
        if (!h.stable()) rec.unstable("windowed dimensions change between cutoffs " + std::to_string(N) + " and " +
                                      std::to_string(N + 2));
    }

    void tor_ext(const TaskDef& t, Record& rec) {
        const ComplexPtr c = complex(t.resolution);
        const DerivedDims tor = tor_over_augmented(*c);
        const DerivedDims ext = ext_over_augmented(*c);
        Report table = Report::array();
        for (std::size_t n = 0; n < tor.dims.size(); ++n) {
            Report row = Report::object();
            row["n"] = n;
            row["tor"] = tor.dims[n];
            row["ext"] = ext.dims[n];
            table.push_back(std::move(row));
        }
        rec.json()["table"] = std::move(table);
        rec.add_check("tor-equals-ext", tor.dims == ext.dims, tor.dims.size());
        expect(t, tor.dims, rec);
    }

    Report preset(const std::string& name) {
        Record rec("preset", name);
        try {
            const ProblemConfig sub = parse_config(preset_text(name));
            Runner inner(sub, RunOptions{{}, opt_.cutoff, opt_.seed, opt_.timings});
            rec.json()["seed"] = inner.seed_;
            rec.json()["cutoff"] = inner.cutoff_;
            rec.json()["config"] = sub.echo;
            rec.json()["tasks"] = inner.run(sub.tasks);
            for (const auto& r : rec.json()["tasks"]) {
                if (r["status"] == "fail") rec.fail("a task failed");
                if (r["status"] == "unstable") rec.unstable("a task is unstable");
            }
        } catch (const ValidationError& e) {
            const std::string canonical = kAliases.count(name) ? kAliases.at(name) : name;
            if (kExcludedPresets.count(canonical)) rec.fail(std::string("out of scope: ") + e.what());
            else rec.fail(e.what());
        } catch (const std::exception& e) {
            rec.fail(e.what());
        }
        return rec.json();
    }

    const ProblemConfig& cfg_;
    RunOptions opt_;
    int cutoff_ = 4;
    std::uint64_t seed_ = 0;
    std::map<std::string, TwistPtr> twists_;
    std::map<std::string, ResolutionBundle> bundles_;
    std::map<std::string, TotalComplex> totals_;
    std::map<std::string, std::string> failed_;
};

std::vector<TaskDef> select_tasks(const ProblemConfig& cfg, const std::vector<std::string>& names) {
    if (names.empty()) return cfg.tasks;
    std::vector<TaskDef> out;
    for (const auto& n : names) {
        if (n.rfind("preset:", 0) == 0) {
            TaskDef t;
            t.kind = "preset";
            t.preset = n.substr(7);
            preset_text(t.preset);
            out.push_back(std::move(t));
            continue;
        }
        bool found = false;
        for (const auto& t : cfg.tasks)
            if (t.kind != "preset" && (t.name == n || t.kind == n)) {
                out.push_back(t);
                found = true;
            }
        if (!found) throw ValidationError("no task named '" + n + "' in the input");
    }
    return out;
}

// ---------------------------------------------------------------- text

std::string scalar_text(const Report& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void field(std::ostringstream& os, const std::string& key, const Report& v, int indent);

void table(std::ostringstream& os, const Report& rows, int indent) {
    std::vector<std::string> cols;
    for (const auto& r : rows)
        for (const auto& [k, _] : r.items())
            if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    std::vector<std::vector<std::string>> cells(rows.size() + 1);
    cells[0] = cols;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& c : cols) cells[i + 1].push_back(rows[i].contains(c) ? scalar_text(rows[i][c]) : "-");
    std::vector<std::size_t> width(cols.size(), 0);
    for (const auto& line : cells)
        for (std::size_t j = 0; j < line.size(); ++j) width[j] = std::max(width[j], line[j].size());
    for (const auto& line : cells) {
        os << std::string(indent, ' ');
        for (std::size_t j = 0; j < line.size(); ++j) {
            if (j + 1 < line.size()) os << std::left << std::setw(static_cast<int>(width[j])) << line[j] << "  ";
            else os << line[j];
        }
        os << "\n";
    }
}

void record(std::ostringstream& os, const Report& r, int indent) {
    os << std::string(indent, ' ') << "[" << scalar_text(r["status"]) << "] " << scalar_text(r["task"]) << " "
       << scalar_text(r["name"]) << "\n";
    for (const auto& [k, v] : r.items())
        if (k != "task" && k != "name" && k != "status" && k != "tasks") field(os, k, v, indent + 4);
    if (r.contains("tasks"))
        for (const auto& sub : r["tasks"]) record(os, sub, indent + 4);
}

void field(std::ostringstream& os, const std::string& key, const Report& v, int indent) {
    const std::string pad(indent, ' ');
    if (v.is_object()) {
        os << pad << key << ":\n";
        for (const auto& [k, x] : v.items()) field(os, k, x, indent + 4);
    } else if (v.is_array() && !v.empty() && v[0].is_object()) {
        os << pad << key << ":\n";
        table(os, v, indent + 4);
    } else if (v.is_array()) {
        os << pad << key << ": [";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
        os << "]\n";
    } else {
        os << pad << key << ": " << scalar_text(v) << "\n";
    }
}

} // namespace

ProblemConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
    }
    try {
        return Parser().parse(root);
    } catch (const YAML::Exception& e) {
        throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
    }
}

Report run(const ProblemConfig& config, const RunOptions& options) {
    const std::vector<TaskDef> tasks = select_tasks(config, options.tasks);
    Report out = Report::object();
    out["tool"] = "twistres";
    out["version"] = kVersion;
    out["seed"] = options.seed.value_or(config.seed);
    out["cutoff"] = options.cutoff.value_or(config.cutoff);
    out["config"] = config.echo.is_null() ? Report::object() : config.echo;
    Runner runner(config, options);
    out["tasks"] = runner.run(tasks);
    long long pass = 0, fail = 0, unstable = 0;
    for (const auto& r : out["tasks"]) {
        const std::string s = r["status"];
        (s == "pass" ? pass : s == "fail" ? fail : unstable) += 1;
    }
    out["summary"] = {{"status", fail ? "fail" : unstable ? "unstable" : "pass"},
                      {"pass", pass},
                      {"fail", fail},
                      {"unstable", unstable}};
    return out;
}

std::string status(const Report& report) {
    if (report.contains("summary")) return report["summary"]["status"];
    return report["status"];
}

bool succeeded(const Report& report) { return status(report) != "fail"; }

std::string render_text(const Report& report) {
    std::ostringstream os;
    os << scalar_text(report["tool"]) << " " << scalar_text(report["version"]) << "\n";
    for (const auto& [k, v] : report.items())
        if (k != "tool" && k != "version" && k != "tasks" && k != "summary") field(os, k, v, 0);
    os << "tasks:\n";
    for (const auto& r : report["tasks"]) record(os, r, 4);
    field(os, "summary", report["summary"], 0);
    return os.str();
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& [name, _] : detail::embedded_presets()) out.push_back(name);
    return out;
}

std::string preset_text(const std::string& name) {
    const std::string canonical = kAliases.count(name) ? kAliases.at(name) : name;
    for (const auto& [n, text] : detail::embedded_presets())
        if (n == canonical) return text;
    throw ValidationError("unknown preset '" + name + "'");
}

} // namespace twistres::cli
