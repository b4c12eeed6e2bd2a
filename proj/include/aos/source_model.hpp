#pragma once

#include <array>
#include <vector>

namespace aos {

/// n-ary symmetric continuous-time Markov source: every state is held for an
/// Exp(sigma) duration, after which the process jumps uniformly to one of the
/// other n-1 states.
struct SymmetricSourceParams {
    int n_states;
    double sigma;

    SymmetricSourceParams(int n_states, double sigma);

    /// Rate of re-entering any one fixed other state: sigma / (n_states - 1).
    double return_rate() const { return sigma / (n_states - 1); }
};

/// Exponential update rate of the sampling channel. Zero is accepted here
/// (the analytic evaluators have finite limits at zero unless noted); the
/// simulator requires a strictly positive rate.
struct SamplingRate {
    double value;
    explicit SamplingRate(double value);
};

/// Row-major 2x2 matrix; all transient-phase quantities live in two states.
using Mat2 = std::array<std::array<double, 2>, 2>;

/// Absorbing-chain view of one sampling period. Transient state 0 ("sync")
/// means the source still equals the latest sample, transient state 1
/// ("drift") means it does not; absorption is the next delivery.
struct AmcModel {
    std::array<double, 2> initial;  ///< phase probabilities at period start
    Mat2 subgenerator;              ///< transient rates; rows leak -lambda
    Mat2 embedded;                  ///< jump chain of the transient part
    Mat2 fundamental;               ///< (I - embedded)^-1, expected visit counts
};

/// Full generator of the source chain: -sigma on the diagonal,
/// sigma/(n-1) elsewhere. Rows sum to zero.
std::vector<std::vector<double>> generator_matrix(const SymmetricSourceParams& params);

/// Probability that the source is found unchanged / changed after an
/// Exp(lambda) interval, starting from stationarity. Entries sum to one.
std::array<double, 2> initial_probabilities(SamplingRate lambda, const SymmetricSourceParams& params);

/// Transient sub-generator of the period chain; each row sums to -lambda.
Mat2 transient_subgenerator(SamplingRate lambda, const SymmetricSourceParams& params);

/// Jump chain of the transient part. Requires lambda > 0, otherwise the
/// transient cycle never absorbs and (I - D) is singular.
Mat2 embedded_chain(SamplingRate lambda, const SymmetricSourceParams& params);

/// Assembles all four absorbing-chain quantities. Requires lambda > 0.
AmcModel amc_model(SamplingRate lambda, const SymmetricSourceParams& params);

/// Expected number of drift-state visits within one period. Requires
/// lambda > 0 (the count diverges as the period length does).
double expected_mismatch_visits(SamplingRate lambda, const SymmetricSourceParams& params);

/// Expected staleness already accrued by a freshly applied sample at the
/// instant it takes effect. Finite for every lambda >= 0.
double expected_initial_staleness(SamplingRate lambda, const SymmetricSourceParams& params);

}  // namespace aos
