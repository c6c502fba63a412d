#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gsbq {

/// Everything a run needs, filled from defaults, then an optional JSON config
/// file (flat object, long option names as keys), then command-line flags.
struct RunConfig {
    std::string command;
    std::string help_text;  // set when command == "help"

    // wave parameters
    double beta = -1.0;
    double c = 0.0;
    double p = 2.0;
    std::string parity = "odd";

    // grid
    double half_length = 200.0;
    std::size_t n_points = 4096;

    // io and execution
    std::string output;
    std::string config_path;
    std::uint64_t seed = 12345;
    int workers = 0;  // 0 keeps the library default
    std::string backend;

    // ground-state solver
    int max_iters = 1000;
    double increment_tol = 1e-12;
    double m_tol = 1e-10;
    bool dealias = true;
    double amp = 1.0;
    double width = 5.0;

    // kernel table
    double x_max = 20.0;
    int x_samples = 401;
    bool with_oracle = false;

    // sweeps and the atlas
    std::string segment = "s1";
    double ellipse_k = -1.0;
    int samples = 31;
    bool with_dcc = true;
    int resolution = 12;
    double dcc_step = 0.0;  // 0 picks the adaptive default

    // time evolution
    double t_final = 1.0;
    double dt = 1e-3;
    int record_every = 100;
    std::string perturb = "scale";  // scale | noise | direction-i | none
    double delta = 1e-2;
    std::string evolve_init = "solve";  // solve | exact
};

/// Parse argv (program name excluded). Throws UsageError on bad input; help
/// requests come back as command == "help" with the text filled in.
RunConfig parse_config(const std::vector<std::string>& args);

/// Execute a parsed run. Returns the process exit code for successful
/// dispatch; throws on failure.
int run_command(const RunConfig& cfg);

/// Full driver: parse, run, map errors to exit codes (0 ok, 1 computation
/// failed, 2 usage).
int cli_main(const std::vector<std::string>& args);
int cli_main(int argc, char** argv);

}  // namespace gsbq
