#pragma once

#include "aos/polyblock.hpp"
#include "aos/simulation.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aos {

/// A sweep aborts on the first failing row; the message names the sweep value
/// and non_convergence distinguishes a solver gap miss from other failures.
struct SweepRowError : std::runtime_error {
    bool non_convergence;
    SweepRowError(const std::string& what, bool non_convergence)
        : std::runtime_error(what), non_convergence(non_convergence) {}
};

/// Extra per-row simulation columns: each source is simulated at its solver
/// allocation and the per-source staleness means are summed.
struct SimOverlay {
    double horizon = 1e5;
    int reps = 8;
    std::uint64_t seed = 1;
};

/// One bank template with a single swept scalar parameter.
struct SweepSpec {
    SourceBank bank;
    int swept_source = 0;
    std::string swept_param = "sigma";  ///< "sigma" or "n"
    double start = 0.1;
    double stop = 3.0;
    double step = 0.1;
    PolyblockConfig solver;
    std::optional<SimOverlay> sim;
};

struct SweepRow {
    double sweep_value = 0.0;
    std::vector<double> polyblock_alloc;
    double polyblock_ub = 0.0;
    double polyblock_lb = 0.0;
    double equal_split_value = 0.0;
    std::vector<double> bf_alloc;
    std::optional<double> sim_mean;
    std::optional<double> sim_se;
};

/// Named experiment presets reproducing the two stock scenarios.
SweepSpec preset_a();  ///< two sources, n = [8, 4], sigma = [1.5, swept]
SweepSpec preset_b();  ///< three sources, n = [4, 6, 8], sigma = [0.5, swept, 0.5]

SweepSpec preset_by_name(const std::string& name);

/// Runs every sweep value in order. Each row is checked against the bound
/// sandwich lb <= ub <= equal_split + epsilon; a violation (or a solver/sim
/// failure) aborts with the offending sweep value named.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Header `sweep_value,lambda_1..K,ub,lb,equal_split_value,bf_lambda_1..K`
/// plus `,sim_mean,sim_se` when simulation columns are present; 12 significant
/// digits throughout.
void write_sweep_csv(const std::vector<SweepRow>& rows, int n_sources, std::ostream& out);

}  // namespace aos
