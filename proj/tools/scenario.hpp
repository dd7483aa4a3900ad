#ifndef FMI_TOOLS_SCENARIO_HPP
#define FMI_TOOLS_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fmi/closed_form.hpp"
#include "fmi/lattice.hpp"
#include "fmi/quadrature.hpp"

namespace fmi::cli {

enum class Mode { Exact, Lattice, KernelTrace, Audit, Scan };

struct Scenario {
    std::string id;
    Mode mode = Mode::Exact;
    std::string canonical; // serialized form used for config hashes

    MultiInterval A, B;
    bool has_A = false, has_B = false;
    int r = 1;
    std::optional<double> mu;
    Geometry geometry = Geometry::Line;

    std::vector<int> scales;
    LatticeKernel kernel = LatticeKernel::HardyCells;
    QuadratureConfig quad;
    int audit_trials = 500;
    std::uint64_t audit_seed = 20240801;
    std::vector<double> etas;
    std::vector<std::string> methods; // compare subcommand; empty = all three
};

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    bool json = false;
    std::optional<std::uint64_t> seed;
    int threads = 0; // 0 = hardware concurrency
    std::optional<double> abs_tol;
    std::optional<double> rel_tol;
};

/// Parses and validates a scenario file (one object or {"scenarios": [...]}).
/// Throws fmi::Error subclasses on invalid input.
std::vector<Scenario> load_scenarios(const Options& opts, bool for_compare);

/// Executes `run` / `compare`; returns the process exit code:
/// 0 success, 1 validation error, 2 numerical failure, 3 audit violation.
int run_command(const Options& opts);
int compare_command(const Options& opts);

} // namespace fmi::cli

#endif
