#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace merodiv::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kParseError = 2,
    kWrongForm = 3,
    kNumericalFailure = 4,
};

enum class Format { Text, Json };

struct RunConfig {
    std::string command;
    std::string expression;
    std::optional<double> r0;  // unset: 2 * joint Cauchy bound when exact, else 4
    double growth = 2.0;
    int steps = 6;
    int nodes = 64;
    int max_nodes = 65536;
    double tol = 1e-9;
    double tol_int = 1e-3;
    double decay_factor = 1.5;
    std::complex<double> center{};
    double radius = 1.0;
    Format format = Format::Text;
};

struct CommandOutput {
    int exit_code = kSuccess;
    nlohmann::json json;
    std::string text;
};

/// Executes one subcommand. Never throws for bad input; failures become exit codes.
CommandOutput run_command(const RunConfig &config);

/// Full command line handling; writes the rendered output to `out` and diagnostics to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace merodiv::cli
