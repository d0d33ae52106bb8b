#pragma once

// Command layer behind the hillpt executable. Each command takes a fully
// merged RunConfig and returns the rendered output plus an exit code:
//   0 ok, 2 invalid parameters / constraint, 3 numerical failure, 4 verification mismatch.

#include <optional>
#include <string>
#include <vector>

#include "hillpt/model.hpp"

namespace hillpt::app {

enum class ExitCode : int { ok = 0, invalid_parameters = 2, numerical_failure = 3, verification_mismatch = 4 };

enum class OutputFormat { csv, json };

/// Wavefunction output is rejected (exit 3) above this ODE residual.
inline constexpr double kWavefunctionResidualGate = 1e-6;

struct RunConfig {
    OscillatorParams params;
    SolverConfig solver{.n_trunc = 35};
    OutputFormat format = OutputFormat::csv;
    bool paper_style = false;
    std::string out;

    // spectrum / converge
    int levels = 8;
    std::vector<int> n_list{5, 6, 7, 8, 9, 10, 15, 20, 21, 22, 23, 24, 25};

    // wavefunction
    int level = 0;
    double x_min = -2.0;
    double x_max = 2.0;
    int x_points = 81;

    // asymptotics / determinants
    double energy = 3.0;
    double h0 = 1.0;
    double h1 = 0.0;
    int n_lo = 100;
    int n_hi = 400;
    int n_max = 30;

    // verify
    int verify_levels = 4;
    double fd_x_max = 6.0;
    int fd_points = 800;
    double s_alt = 3.0;
    int s_check_n = 40;
    int s_check_levels = 3;
    double cross_tolerance = 1e-3;
    double s_tolerance = 1e-5;
};

/// Flat key-value file with [params], [solver] and [run] sections, or a JSON
/// document as written by the json output format (its params and solver
/// objects are re-used). Values present in the file override `base`.
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// "5,6,7" or "5-10,15,20-25".
std::vector<int> parse_n_list(const std::string& text);

struct CommandResult {
    ExitCode code = ExitCode::ok;
    std::string content;
    /// Diagnostic for stderr (errors, warnings).
    std::string message;
};

CommandResult cmd_spectrum(const RunConfig& config);
CommandResult cmd_converge(const RunConfig& config);
CommandResult cmd_wavefunction(const RunConfig& config);
CommandResult cmd_verify(const RunConfig& config);
CommandResult cmd_asymptotics(const RunConfig& config);
CommandResult cmd_determinants(const RunConfig& config);

/// Dispatches by name and converts exceptions into exit codes.
CommandResult run_command(const std::string& name, const RunConfig& config);

}  // namespace hillpt::app
