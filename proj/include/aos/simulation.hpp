#pragma once

#include "aos/source_model.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace aos {

/// Thrown when the horizon ends before a single delivery follows the warmup,
/// leaving nothing to measure.
struct UnderSampleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SimConfig {
    SymmetricSourceParams params;
    SamplingRate lambda;      ///< must be > 0 here; the channel has to deliver
    double horizon = 1e6;     ///< simulated time length, > 0
    std::uint64_t seed = 0;
    double warmup = 0.0;      ///< measurement starts at max(first delivery, warmup)
};

enum class EventKind { jump, delivery };

struct Event {
    double t;
    EventKind kind;
    int value;        ///< jump: new source state; delivery: applied sample value
    double gen_time;  ///< delivery only: when the sample was taken
};

/// Timestamped trajectory record, self-contained enough to replay:
/// the source starts in initial_state at t = 0 and the record covers [0, t_end].
struct EventLog {
    int n_states = 0;
    int initial_state = 0;
    double t_end = 0.0;
    std::vector<Event> events;
};

/// Exact time-averages over the measured window. The age curves are piecewise
/// linear with unit slope between breakpoints, so the integrals carry no
/// discretization error. The trailing fields summarize per-breakpoint checks
/// of the whole trajectory:
///   min_aoi_minus_aos >= 0 iff AoS(t) <= AoI(t) held at every breakpoint;
///   max_aos_aoii_gap == 0  iff the AoS and AoII curves were identical;
///   min_aos_minus_aoii is the signed counterpart of the gap.
struct MetricReport {
    double mean_aos = 0.0;
    double mean_aoii = 0.0;
    double mean_aoi = 0.0;
    double mean_bf = 0.0;
    double measured_time = 0.0;
    std::uint64_t n_deliveries = 0;
    double min_aoi_minus_aos = 0.0;
    double max_aos_aoii_gap = 0.0;
    double min_aos_minus_aoii = 0.0;
};

/// Staleness of `estimate` at time t: zero when the source currently occupies
/// it, otherwise the elapsed time since the source left it. last_visit[x] is
/// the last time the source occupied state x (the current state's entry is
/// implicitly "now"). Throws std::logic_error if the estimate was never
/// visited, which the delivery rule makes impossible in a real run.
double aos_value_at(double t, int state, int estimate, std::span<const double> last_visit);

/// Event-driven run over [0, horizon]: source jumps at rate sigma, deliveries
/// at rate lambda back-to-back, each delivery applying the sample taken at the
/// previous delivery instant. Deterministic for a given config. When `log` is
/// non-null the full event sequence is recorded.
MetricReport simulate(const SimConfig& config, EventLog* log = nullptr);

/// Replays a recorded trajectory and integrates the metrics over
/// [t0, t1] (clipped to the post-first-delivery region where the estimate
/// exists). Requires 0 <= t0 < t1 <= log.t_end.
MetricReport integrate_metrics(const EventLog& log, double t0, double t1);

struct SummaryStat {
    double mean = 0.0;
    double se = 0.0;  ///< sample standard deviation of the rep means / sqrt(reps)
};

struct ReplicationStats {
    std::vector<MetricReport> reports;  ///< by replication index
    SummaryStat aos, aoii, aoi, bf;
    double min_aoi_minus_aos = 0.0;
    double max_aos_aoii_gap = 0.0;
};

/// Independent replications with per-index decorrelated seed streams; the
/// result does not depend on scheduling. reps >= 2. threads = 0 picks the
/// hardware concurrency.
ReplicationStats replicate(const SimConfig& config, int reps, int threads = 1);

/// CSV export, header `t,kind,value,gen_time`, 12 significant digits;
/// jump rows leave gen_time empty.
void write_event_log_csv(const EventLog& log, std::ostream& out);

}  // namespace aos
