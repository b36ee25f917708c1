// Batch experiment runner: parses a JSON run configuration, dispatches to the
// model modules and writes CSV/JSON tables. See docs/formats.md for the
// config and output schemas.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "collapse/errors.hpp"
#include "collapse/runner.hpp"
#include "collapse/version.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string output_path;
    std::string format;
    std::int64_t seed = -1;
    std::int64_t n_trajectories = -1;
    unsigned threads = 0;
};

int run_command(const std::string& command, const CliOptions& opt) {
    using nlohmann::json;
    json doc(json::value_t::object);
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) {
            std::cerr << "error: cannot open config file " << opt.config_path
                      << "\n";
            return 2;
        }
        try {
            in >> doc;
        } catch (const json::parse_error& e) {
            std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
            return 2;
        }
    }
    if (doc.contains("command") &&
        doc.at("command").get<std::string>() != command) {
        std::cerr << "error: config command '" << doc.at("command")
                  << "' does not match subcommand '" << command << "'\n";
        return 2;
    }
    doc["command"] = command;
    if (opt.seed >= 0) doc["seed"] = static_cast<std::uint64_t>(opt.seed);
    if (opt.n_trajectories >= 0)
        doc["n_trajectories"] = static_cast<std::size_t>(opt.n_trajectories);
    if (!opt.output_path.empty()) doc["output_path"] = opt.output_path;
    if (!opt.format.empty()) doc["output_format"] = opt.format;
    if (opt.threads > 0) doc["n_threads"] = opt.threads;

    try {
        const auto cfg = collapse::runner::parse_config(doc.dump());
        const std::string content = collapse::runner::run(cfg);
        if (cfg.output_path.empty()) std::cout << content;
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const collapse::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const collapse::StepSizeError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"collapse-model calculators and trajectory ensembles"};
    app.set_version_flag("--version", collapse::version_string());
    app.require_subcommand(1);

    CliOptions opt;
    const std::vector<std::string> commands = {
        "qmupl", "measure", "grw", "csl", "gravity", "interferometer", "bounds"};
    for (const auto& name : commands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path, "JSON run configuration");
        sub->add_option("--seed", opt.seed, "master seed (overrides config)");
        sub->add_option("-n,--trajectories", opt.n_trajectories,
                        "ensemble size (overrides config)");
        sub->add_option("--out", opt.output_path, "output file path");
        sub->add_option("--format", opt.format, "csv or json");
        sub->add_option("--threads", opt.threads,
                        "worker count (default: COLLAPSE_THREADS or all cores)");
    }

    CLI11_PARSE(app, argc, argv);
    return run_command(app.get_subcommands().front()->get_name(), opt);
}
