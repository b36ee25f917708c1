#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace collapse::runner {

enum class Command { qmupl, measure, grw, csl, gravity, interferometer, bounds };

enum class OutputFormat { csv, json };

using ParamValue = std::variant<double, std::string, std::vector<double>>;

/// A fully parsed batch run: one command, its parameter map, the master seed
/// and the output destination. Unknown parameter keys are rejected at parse
/// time; missing required keys too.
struct RunConfig {
    Command command = Command::bounds;
    std::map<std::string, ParamValue> parameters;
    std::uint64_t seed = 0;
    std::size_t n_trajectories = 1;
    std::string output_path;
    OutputFormat output_format = OutputFormat::csv;
    unsigned n_threads = 0;  // 0 = default_thread_count()

    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::string text(const std::string& key) const;
    std::string text_or(const std::string& key, const std::string& fallback) const;
    std::vector<double> numbers(const std::string& key) const;
    bool has(const std::string& key) const;
};

/// Parses a JSON config document (schema in docs/formats.md). Throws
/// std::invalid_argument with a field diagnostic on malformed input.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

Command command_from_name(const std::string& name);
std::string command_name(Command c);

/// Shortest round-trip decimal representation of a double (bit-exact
/// reproducibility of the emitted tables).
std::string format_double(double v);

/// A rectangular output table plus footer summary lines.
struct OutputTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> summary;  // "key=value" footer entries
};

/// Executes the run and writes the output file. Returns the rendered file
/// content (metadata header + data section). Deterministic for a fixed
/// (config, seed) for any worker count.
std::string run(const RunConfig& config);

}  // namespace collapse::runner
