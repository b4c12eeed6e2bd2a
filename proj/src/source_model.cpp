#include "aos/source_model.hpp"

#include <cmath>
#include <stdexcept>

namespace aos {

SymmetricSourceParams::SymmetricSourceParams(int n_states, double sigma)
    : n_states(n_states), sigma(sigma) {
    if (n_states < 2) throw std::invalid_argument("source needs at least 2 states");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("holding rate sigma must be positive and finite");
}

SamplingRate::SamplingRate(double value) : value(value) {
    if (!(value >= 0.0) || !std::isfinite(value))
        throw std::invalid_argument("sampling rate must be nonnegative and finite");
}

std::vector<std::vector<double>> generator_matrix(const SymmetricSourceParams& params) {
    const int n = params.n_states;
    const double off = params.return_rate();
    std::vector<std::vector<double>> q(n, std::vector<double>(n, off));
    for (int i = 0; i < n; ++i) q[i][i] = -params.sigma;
    return q;
}

std::array<double, 2> initial_probabilities(SamplingRate lambda, const SymmetricSourceParams& params) {
    const double rho = params.return_rate();
    const double denom = lambda.value + params.sigma + rho;
    return {(lambda.value + rho) / denom, params.sigma / denom};
}

Mat2 transient_subgenerator(SamplingRate lambda, const SymmetricSourceParams& params) {
    const double rho = params.return_rate();
    return {{{-params.sigma - lambda.value, params.sigma},
             {rho, -rho - lambda.value}}};
}

namespace {

void require_positive_rate(SamplingRate lambda, const char* what) {
    if (lambda.value == 0.0) throw std::domain_error(what);
}

}  // namespace

Mat2 embedded_chain(SamplingRate lambda, const SymmetricSourceParams& params) {
    require_positive_rate(lambda, "embedded chain needs lambda > 0: the transient cycle never absorbs");
    const double rho = params.return_rate();
    return {{{0.0, params.sigma / (params.sigma + lambda.value)},
             {rho / (rho + lambda.value), 0.0}}};
}

AmcModel amc_model(SamplingRate lambda, const SymmetricSourceParams& params) {
    AmcModel m;
    m.initial = initial_probabilities(lambda, params);
    m.subgenerator = transient_subgenerator(lambda, params);
    m.embedded = embedded_chain(lambda, params);
    // Closed-form inverse of I - D for the two-state cycle; the determinant
    // 1 - d01*d10 is positive whenever lambda > 0.
    const double d01 = m.embedded[0][1];
    const double d10 = m.embedded[1][0];
    const double det = 1.0 - d01 * d10;
    m.fundamental = {{{1.0 / det, d01 / det}, {d10 / det, 1.0 / det}}};
    return m;
}

double expected_mismatch_visits(SamplingRate lambda, const SymmetricSourceParams& params) {
    require_positive_rate(lambda, "expected mismatch visits diverge at lambda = 0");
    const double rho = params.return_rate();
    const double s = params.sigma;
    const double l = lambda.value;
    const double denom = l + rho + s;
    return s * (2.0 * l + rho + s) * (rho + l) / (l * denom * denom);
}

double expected_initial_staleness(SamplingRate lambda, const SymmetricSourceParams& params) {
    const double rho = params.return_rate();
    return params.sigma / ((lambda.value + params.sigma + rho) * (lambda.value + rho));
}

}  // namespace aos
