#pragma once

#include "aos/source_model.hpp"

#include <vector>

namespace aos {

/// Ordered collection of sources tracked by one monitor.
struct SourceBank {
    std::vector<SymmetricSourceParams> sources;

    explicit SourceBank(std::vector<SymmetricSourceParams> sources);
    int size() const { return static_cast<int>(sources.size()); }
};

/// Per-source sampling rates; every entry lies in [0, 1]. Feasibility against
/// the unit total-rate budget is a separate, tolerance-aware check.
struct AllocationVector {
    std::vector<double> lambdas;

    explicit AllocationVector(std::vector<double> lambdas);
    int size() const { return static_cast<int>(lambdas.size()); }
    double total() const;
    bool feasible(double feas_tol = 1e-12) const { return total() <= 1.0 + feas_tol; }
};

/// Long-run time-average age of staleness of the estimate. Defined for
/// lambda = 0 by continuous extension (a constant, never-updated estimate).
double aos_mean(SamplingRate lambda, const SymmetricSourceParams& params);

/// Same quantity assembled from the absorbing-chain pieces (visit counts,
/// holding moments, initial staleness) through Wald's identity. Agrees with
/// aos_mean to roundoff; kept as an independent route for cross-checking.
/// Requires lambda > 0.
double aos_mean_via_amc(SamplingRate lambda, const SymmetricSourceParams& params);

/// Long-run time-average age of information, 2 / lambda. Requires lambda > 0.
double aoi_mean(SamplingRate lambda);

/// Long-run fraction of time the estimate differs from the source state;
/// equals one minus the mean binary freshness.
double mismatch_fraction(SamplingRate lambda, const SymmetricSourceParams& params);

/// Sum of per-source mean staleness under the given rate allocation.
/// Coordinate-wise nonincreasing in the allocation.
double sum_objective(const AllocationVector& alloc, const SourceBank& bank);

}  // namespace aos
