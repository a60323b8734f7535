#pragma once

// Batch driver: a YAML problem file names algebras, twists and resolutions
// and lists tasks; run() executes them in order and returns a report that
// renders as JSON or text. The grammar is documented in README.md.

#include "twistres/algebra.hpp"
#include "twistres/resolutions.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace twistres::cli {

inline constexpr const char* kVersion = "0.1.0";

using Report = nlohmann::ordered_json;

struct AlgebraDef {
    std::string name;
    std::string type;  // polynomial | cyclic | ore
    AlgebraPtr algebra;
};

struct TwistDef {
    std::string name;
    std::string type;  // flip | ore | skew | custom
    std::string left, right, base;
    std::vector<LinearForm> forms;  // ore: delta on A's generators; skew: g on B's generators
    std::map<std::pair<Monomial, Monomial>, TensorElement> overrides;
};

struct ResolutionDef {
    std::string name;
    std::string family;  // bar | reduced-bar | poly-koszul | cyclic-periodic | ore-koszul | koszul-kx | chevalley-eilenberg
    std::string algebra;
    int n_max = 3;
    int label_cutoff = 4;
    bool bimodule = true;
    bool drop_d2_term = false;
    std::string lift_twist;
    LiftSide lift_side = LiftSide::Left;
    bool lift_verify = true;
};

struct TaskDef {
    std::string kind;  // check-twist | verify-resolution | twisted-product | hochschild | tor-ext | preset
    std::string name;
    std::string preset;
    std::string twist, resolution, left, right, compare;
    std::optional<int> cutoff;
    int degree_bound = 3;
    int samples = 200;
    bool one_sided = false;
    bool vertical_sign = true;
    bool symmetrization = false;
    std::optional<std::vector<long long>> expect;
};

struct ProblemConfig {
    std::uint32_t characteristic = 0;
    std::uint64_t seed = 0;
    int cutoff = 4;
    std::vector<AlgebraDef> algebras;
    std::vector<TwistDef> twists;
    std::vector<ResolutionDef> resolutions;
    std::vector<TaskDef> tasks;
    Report echo;  // the parsed file, normalized
};

/// Throws ParseError for malformed YAML and ValidationError (with a
/// line:column prefix) for unresolved names, unknown generators, delta
/// tables leaving k + span{x_1, ..., x_{j-1}}, composite characteristics
/// and cutoffs below 1.
ProblemConfig parse_config(const std::string& text);

struct RunOptions {
    std::vector<std::string> tasks;   // replaces the file's task list when nonempty
    std::optional<int> cutoff;        // default cutoff for tasks without their own
    std::optional<std::uint64_t> seed;
    bool timings = false;             // wall-clock seconds per task (breaks byte-identity)
};

/// Runs the tasks in order. Task errors become failed records; a task whose
/// resolution or twist failed an earlier check is skipped.
Report run(const ProblemConfig& config, const RunOptions& options = {});

/// "pass" | "fail" | "unstable" for a report or a task record.
std::string status(const Report& report);
/// Exit status contract: every task passed or is only unstable.
bool succeeded(const Report& report);

std::string render_text(const Report& report);

std::vector<std::string> preset_names();
/// The preset's YAML text, resolving the aliases weyl-1, weyl-n and cyclic-p.
/// Throws ValidationError for unknown names.
std::string preset_text(const std::string& name);

} // namespace twistres::cli
