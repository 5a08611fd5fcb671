#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace openup {

/// Parsed command line of the `openup` tool.
struct RunConfig {
    std::string command;  // critpts | critvals | openup | verify
    std::string input_path;
    std::string output_path;  // empty: JSON to stdout
    std::uint64_t seed = 0;
    int starts = 16;
    int workers = 1;
    std::optional<double> tol_newton;
    std::optional<double> tol_dedup;
    std::vector<std::string> emit = {"json"};
};

/// Dispatches the command, writes the requested artifacts, and prints a
/// one-line summary per solution.  Returns the process exit code: 0 success,
/// 1 validation error, 2 no solution found / verification failed, 3 internal
/// numerical failure.  Errors are reported as a JSON object on `err`.
int run(const RunConfig& config, std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace openup
