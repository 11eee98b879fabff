#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lqso::cli {

enum class Verb { iterate_atoms, density, push_interval, bounds, converge, particles, verify };
enum class Format { csv, json };

struct RunConfig {
    Verb command = Verb::verify;
    double p = 0.5;
    std::string initial = "uniform";
    std::size_t steps = 20;
    std::size_t grid = 1001;
    double tol = 1e-6;
    std::uint64_t seed = 1;
    std::optional<std::string> output;
    Format format = Format::csv;
    int threads = 1;

    // verb-specific
    double a = 0.0;
    double b = 1.0;
    std::size_t max_steps = 200;
    std::string metric = "W1";
    std::size_t particles = 100000;
    std::optional<std::string> trace;
    std::optional<std::string> summary;
};

/// Bad command line; the message names the offending flag or verb.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// args excludes the program name. Throws UsageError.
RunConfig parse_config(const std::vector<std::string>& args);

/// Runs one command. Returns the process exit status: 0 success,
/// 1 failed `verify`, 2 invalid arguments, 3 I/O failure.
int execute(const RunConfig& cfg, std::ostream& err);

std::string usage();

} // namespace lqso::cli
