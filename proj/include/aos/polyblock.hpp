#pragma once

#include "aos/metrics.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace aos {

/// Box corner with its cached objective value.
struct Vertex {
    std::vector<double> coords;  ///< in [0,1]^K
    double value = 0.0;          ///< objective at coords
};

/// Coordinate-wise nonincreasing objective on [0,1]^K.
using MonotoneObjective = std::function<double(const std::vector<double>&)>;

Vertex make_vertex(std::vector<double> coords, const MonotoneObjective& objective);
Vertex make_vertex(std::vector<double> coords, const SourceBank& bank);

struct PolyblockConfig {
    double epsilon = 1e-3;           ///< terminate when ub - lb <= epsilon
    double delta = 1e-5;             ///< minimum Euclidean child displacement
    std::int64_t max_iters = 100000;
    double feas_tol = 1e-12;         ///< slack on the unit budget comparisons
    bool dominance_cleanup = false;  ///< drop vertices elementwise <= another kept vertex
    bool record_trace = false;
};

struct IterationRecord {
    std::int64_t iter;
    double lb;
    double ub;
    std::size_t n_vplus;
};

struct PolyblockResult {
    AllocationVector best_alloc;
    double ub = 0.0;
    double lb = 0.0;
    double gap = 0.0;
    std::int64_t iterations = 0;
    bool converged = false;
    std::vector<IterationRecord> trace;
};

/// Per-iteration view handed to an observer; vertex sets are sorted by
/// (value, coords) so their contents are order-deterministic.
struct IterationSnapshot {
    std::int64_t iter;
    Vertex candidate;
    Vertex projection;
    std::vector<Vertex> children;
    std::vector<Vertex> vplus;
    std::vector<Vertex> vminus;
    double lb;
    double ub;
};

using PolyblockObserver = std::function<void(const IterationSnapshot&)>;

/// Scales v onto the budget boundary: v * min(1, 1/sum(v)). A vector already
/// inside the budget is returned unchanged. Rejects the zero vector.
Vertex project(const Vertex& v, const MonotoneObjective& objective);
Vertex project(const Vertex& v, const SourceBank& bank);

/// The K remaining corners of the shaved box [v_proj, v]: corner k equals v
/// with coordinate k replaced by the projection's. No filtering here.
std::vector<Vertex> children(const Vertex& v, const Vertex& v_proj,
                             const MonotoneObjective& objective);
std::vector<Vertex> children(const Vertex& v, const Vertex& v_proj, const SourceBank& bank);

/// Monotonic-optimization search for the point of the unit-budget simplex
/// minimizing a coordinate-wise nonincreasing objective. Starts from the
/// all-ones box and iteratively shaves the enclosing polyblock; returns a
/// feasible incumbent with certified bounds. Candidate ties break toward
/// lexicographically smaller coordinates, so runs are deterministic.
PolyblockResult polyblock_minimize(int n_vars, const MonotoneObjective& objective,
                                   const PolyblockConfig& config,
                                   const PolyblockObserver& observer = {});

/// polyblock_minimize applied to the summed-staleness objective of a bank.
PolyblockResult polyblock_solve(const SourceBank& bank, const PolyblockConfig& config,
                                const PolyblockObserver& observer = {});

/// The allocation minimizing summed AoI: an even split of the budget.
AllocationVector equal_split_baseline(int n_sources);

/// Winner-takes-all benchmark: considers the K single-source allocations
/// (full budget on one source) and returns the one scoring highest on the
/// summed mismatch-fraction figure; ties break toward lexicographically
/// smallest.
AllocationVector bf_winner_baseline(const SourceBank& bank);

struct GridOracleResult {
    AllocationVector alloc;
    double value;
};

/// Exhaustive minimizer of sum_objective over the budget face at the given
/// resolution. The objective decreases coordinate-wise, so the face contains
/// an optimum; used as an independent check of the polyblock solver.
GridOracleResult grid_oracle(const SourceBank& bank, double step);

}  // namespace aos
