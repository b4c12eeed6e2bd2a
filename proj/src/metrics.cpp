#include "aos/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace aos {

SourceBank::SourceBank(std::vector<SymmetricSourceParams> sources_in)
    : sources(std::move(sources_in)) {
    if (sources.empty()) throw std::invalid_argument("source bank must hold at least one source");
}

AllocationVector::AllocationVector(std::vector<double> lambdas_in)
    : lambdas(std::move(lambdas_in)) {
    if (lambdas.empty()) throw std::invalid_argument("allocation must have at least one entry");
    for (double l : lambdas)
        if (!(l >= 0.0) || !(l <= 1.0) || !std::isfinite(l))
            throw std::invalid_argument("allocation entries must lie in [0, 1]");
}

double AllocationVector::total() const {
    double s = 0.0;
    for (double l : lambdas) s += l;
    return s;
}

double aos_mean(SamplingRate lambda, const SymmetricSourceParams& params) {
    const double rho = params.return_rate();
    const double l = lambda.value;
    const double near = l + rho;
    const double far = l + rho + params.sigma;
    return (2.0 * l + rho) / (near * near) - (2.0 * l + rho + params.sigma) / (far * far);
}

double aos_mean_via_amc(SamplingRate lambda, const SymmetricSourceParams& params) {
    if (lambda.value == 0.0)
        throw std::domain_error("the renewal route needs lambda > 0; use aos_mean for the limit");
    const double rho = params.return_rate();
    const double hold_mean = 1.0 / (lambda.value + rho);          // drift-state holding time
    const double hold_second_moment = 2.0 * hold_mean * hold_mean;
    const double visits = expected_mismatch_visits(lambda, params);
    const double initial = expected_initial_staleness(lambda, params);
    return lambda.value * (0.5 * visits * hold_second_moment + initial * hold_mean);
}

double aoi_mean(SamplingRate lambda) {
    if (lambda.value == 0.0) throw std::domain_error("mean AoI diverges at lambda = 0");
    return 2.0 / lambda.value;
}

double mismatch_fraction(SamplingRate lambda, const SymmetricSourceParams& params) {
    const double rho = params.return_rate();
    const double denom = lambda.value + rho + params.sigma;
    return params.sigma * (2.0 * lambda.value + rho + params.sigma) / (denom * denom);
}

double sum_objective(const AllocationVector& alloc, const SourceBank& bank) {
    if (alloc.size() != bank.size())
        throw std::invalid_argument("allocation length does not match the source bank");
    double total = 0.0;
    for (int k = 0; k < bank.size(); ++k)
        total += aos_mean(SamplingRate(alloc.lambdas[k]), bank.sources[k]);
    return total;
}

}  // namespace aos
