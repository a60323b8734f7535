#include "twistres/cli.hpp"
#include "twistres/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"Free resolutions of twisted tensor products: checks and (co)homology"};
    std::string input;
    std::vector<std::string> tasks;
    std::optional<int> cutoff;
    std::optional<std::uint64_t> seed;
    std::string format = "text";
    bool timings = false, list = false;
    app.add_option("--input", input, "Problem file (YAML)")->check(CLI::ExistingFile);
    app.add_option("--task", tasks, "Task name, kind or preset:<name>; repeatable, replaces the file's task list");
    app.add_option("--cutoff", cutoff, "Default filtration cutoff N")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Seed for randomized checks");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--timings", timings, "Add wall-clock seconds per task (reports are then not reproducible)");
    app.add_flag("--list-presets", list, "Print the preset names and exit");
    CLI11_PARSE(app, argc, argv);

    namespace cli = twistres::cli;
    if (list) {
        for (const auto& n : cli::preset_names()) std::cout << n << "\n";
        return 0;
    }
    if (input.empty() && tasks.empty()) {
        std::cerr << "nothing to do: give --input or --task preset:<name>\n";
        return 2;
    }
    try {
        cli::ProblemConfig config;
        if (!input.empty()) {
            std::ifstream in(input);
            std::stringstream text;
            text << in.rdbuf();
            config = cli::parse_config(text.str());
        }
        const cli::Report report = cli::run(config, cli::RunOptions{tasks, cutoff, seed, timings});
        if (format == "json") std::cout << report.dump(2) << "\n";
        else std::cout << cli::render_text(report);
        return cli::succeeded(report) ? 0 : 1;
    } catch (const twistres::Error& e) {
        std::cerr << (input.empty() ? "" : input + ": ") << e.what() << "\n";
        return 2;
    }
}
