#include "aos/simulation.hpp"

#include "aos/format.hpp"
#include "aos/rng.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <thread>

namespace aos {

namespace {

constexpr double kNever = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const SimConfig& c) {
    if (c.lambda.value <= 0.0)
        throw std::invalid_argument("the simulated channel needs lambda > 0");
    if (!(c.horizon > 0.0) || !std::isfinite(c.horizon))
        throw std::invalid_argument("horizon must be positive and finite");
    if (!(c.warmup >= 0.0) || !(c.warmup < c.horizon))
        throw std::invalid_argument("warmup must lie in [0, horizon)");
}

/// Exact integrals of the metric curves plus the per-breakpoint trajectory
/// checks. Segments are constant-regime: state, estimate and the trackers do
/// not change inside them, so every age grows with slope one (or stays zero)
/// and one trapezoid per segment is exact.
class MetricAccumulator {
public:
    explicit MetricAccumulator(double t_stop) : t_stop_(t_stop) {}

    void begin_measurement(double t0) { t_start_ = t0; }
    bool measuring() const { return t_start_ < kInf; }

    void add_segment(double a, double b, int state, int estimate, double est_gen,
                     std::span<const double> last_visit, double last_sync) {
        a = std::max(a, t_start_);
        b = std::min(b, t_stop_);
        if (!(b > a)) return;
        const double d = b - a;
        const double aoi0 = a - est_gen;
        aoi_ += (aoi0 + 0.5 * d) * d;
        const double aos0 = aos_value_at(a, state, estimate, last_visit);
        double aoii0 = 0.0;
        if (state == estimate) {
            match_ += d;
        } else {
            aoii0 = a - last_sync;
            aos_ += (aos0 + 0.5 * d) * d;
            aoii_ += (aoii0 + 0.5 * d) * d;
        }
        measured_ += d;
        min_dom_ = std::min(min_dom_, aoi0 - aos0);
        max_gap_ = std::max(max_gap_, std::abs(aos0 - aoii0));
        min_signed_ = std::min(min_signed_, aos0 - aoii0);
    }

    void count_delivery(double t) {
        if (t >= t_start_ && t <= t_stop_) ++deliveries_;
    }

    MetricReport report() const {
        if (!(measured_ > 0.0))
            throw UnderSampleError("horizon ends before any delivery reaches the measurement window");
        MetricReport r;
        r.mean_aos = aos_ / measured_;
        r.mean_aoii = aoii_ / measured_;
        r.mean_aoi = aoi_ / measured_;
        r.mean_bf = match_ / measured_;
        r.measured_time = measured_;
        r.n_deliveries = deliveries_;
        r.min_aoi_minus_aos = min_dom_;
        r.max_aos_aoii_gap = max_gap_;
        r.min_aos_minus_aoii = min_signed_;
        return r;
    }

private:
    double t_start_ = kInf;
    double t_stop_;
    double aos_ = 0.0, aoii_ = 0.0, aoi_ = 0.0, match_ = 0.0, measured_ = 0.0;
    std::uint64_t deliveries_ = 0;
    double min_dom_ = kInf;
    double max_gap_ = 0.0;
    double min_signed_ = kInf;
};

/// Source / estimate bookkeeping shared by the live run and the log replay.
/// last_visit entries freeze at the exit time of each state; the current
/// state's entry is conceptually "now". last_sync freezes whenever an ongoing
/// sync interval ends (source leaves the estimate, or the estimate switches).
struct TrajectoryState {
    int state;
    std::vector<double> last_visit;
    int estimate = -1;
    double est_gen = 0.0;
    double last_sync = 0.0;

    TrajectoryState(int n, int initial_state)
        : state(initial_state), last_visit(static_cast<std::size_t>(n), kNever) {}

    void apply_jump(double t, int new_state) {
        if (estimate == state) last_sync = t;
        last_visit[static_cast<std::size_t>(state)] = t;
        state = new_state;
    }

    void apply_delivery(double t, int value) {
        // The AoII reference starts where the estimation process does.
        if (estimate < 0 || estimate == state) last_sync = t;
        estimate = value;
    }
};

}  // namespace

double aos_value_at(double t, int state, int estimate, std::span<const double> last_visit) {
    if (estimate < 0 || static_cast<std::size_t>(estimate) >= last_visit.size())
        throw std::logic_error("estimate is outside the state space");
    if (state == estimate) return 0.0;
    const double v = last_visit[static_cast<std::size_t>(estimate)];
    if (!std::isfinite(v))
        throw std::logic_error("estimate was never a visited source state");
    return t - v;
}

MetricReport simulate(const SimConfig& config, EventLog* log) {
    validate(config);
    const int n = config.params.n_states;
    const double sigma = config.params.sigma;
    const double lambda = config.lambda.value;

    Rng rng(config.seed);
    const int initial_state = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    TrajectoryState traj(n, initial_state);
    MetricAccumulator acc(config.horizon);

    if (log) {
        log->n_states = n;
        log->initial_state = initial_state;
        log->t_end = config.horizon;
        log->events.clear();
    }

    // Sample generated at the latest delivery epoch, in flight until the next.
    int pending_value = initial_state;
    double pending_gen = 0.0;

    double t = 0.0;
    for (;;) {
        const double dt_jump = rng.exponential(sigma);
        const double dt_deliver = rng.exponential(lambda);
        const bool is_jump = dt_jump < dt_deliver;
        const double t_next = t + (is_jump ? dt_jump : dt_deliver);

        if (traj.estimate >= 0)
            acc.add_segment(t, t_next, traj.state, traj.estimate, traj.est_gen,
                            traj.last_visit, traj.last_sync);
        if (t_next >= config.horizon) break;
        t = t_next;

        if (is_jump) {
            const std::uint64_t draw = rng.below(static_cast<std::uint64_t>(n - 1));
            const int target = draw < static_cast<std::uint64_t>(traj.state)
                                   ? static_cast<int>(draw)
                                   : static_cast<int>(draw) + 1;
            traj.apply_jump(t, target);
            if (log) log->events.push_back({t, EventKind::jump, target, 0.0});
        } else {
            const bool first = traj.estimate < 0;
            traj.apply_delivery(t, pending_value);
            traj.est_gen = pending_gen;
            if (log) log->events.push_back({t, EventKind::delivery, pending_value, pending_gen});
            pending_value = traj.state;
            pending_gen = t;
            if (first) acc.begin_measurement(std::max(t, config.warmup));
            acc.count_delivery(t);
        }
    }
    return acc.report();
}

MetricReport integrate_metrics(const EventLog& log, double t0, double t1) {
    if (log.n_states < 2 || log.initial_state < 0 || log.initial_state >= log.n_states)
        throw std::invalid_argument("malformed event log header");
    if (!(t0 >= 0.0) || !(t1 > t0))
        throw std::invalid_argument("integration window must satisfy 0 <= t0 < t1");
    if (t1 > log.t_end)
        throw std::invalid_argument("event log does not cover the integration window");

    TrajectoryState traj(log.n_states, log.initial_state);
    MetricAccumulator acc(t1);

    double t = 0.0;
    for (const Event& e : log.events) {
        if (e.t < t) throw std::invalid_argument("event log timestamps are not nondecreasing");
        if (e.t > t1) break;
        if (traj.estimate >= 0)
            acc.add_segment(t, e.t, traj.state, traj.estimate, traj.est_gen,
                            traj.last_visit, traj.last_sync);
        t = e.t;
        if (e.kind == EventKind::jump) {
            if (e.value < 0 || e.value >= log.n_states)
                throw std::invalid_argument("jump event leaves the state space");
            traj.apply_jump(t, e.value);
        } else {
            const bool first = traj.estimate < 0;
            traj.apply_delivery(t, e.value);
            traj.est_gen = e.gen_time;
            if (first) acc.begin_measurement(std::max(t, t0));
            acc.count_delivery(t);
        }
    }
    if (traj.estimate >= 0)
        acc.add_segment(t, t1, traj.state, traj.estimate, traj.est_gen,
                        traj.last_visit, traj.last_sync);
    return acc.report();
}

ReplicationStats replicate(const SimConfig& config, int reps, int threads) {
    validate(config);
    if (reps < 2) throw std::invalid_argument("replication needs reps >= 2");
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");

    unsigned n_workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                      : static_cast<unsigned>(threads);
    n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(reps));

    std::vector<MetricReport> reports(static_cast<std::size_t>(reps));
    auto run_slice = [&](unsigned worker) {
        for (int r = static_cast<int>(worker); r < reps; r += static_cast<int>(n_workers)) {
            SimConfig c = config;
            c.seed = replication_seed(config.seed, static_cast<std::uint64_t>(r));
            reports[static_cast<std::size_t>(r)] = simulate(c);
        }
    };
    if (n_workers <= 1) {
        run_slice(0);
    } else {
        std::vector<std::future<void>> futures;
        futures.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w)
            futures.push_back(std::async(std::launch::async, run_slice, w));
        for (auto& f : futures) f.get();  // rethrows any worker failure
    }

    auto summarize = [&](double MetricReport::*field) {
        double mean = 0.0;
        for (const auto& r : reports) mean += r.*field;
        mean /= reps;
        double ss = 0.0;
        for (const auto& r : reports) {
            const double d = r.*field - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / (reps - 1));
        return SummaryStat{mean, sd / std::sqrt(static_cast<double>(reps))};
    };

    ReplicationStats stats;
    stats.aos = summarize(&MetricReport::mean_aos);
    stats.aoii = summarize(&MetricReport::mean_aoii);
    stats.aoi = summarize(&MetricReport::mean_aoi);
    stats.bf = summarize(&MetricReport::mean_bf);
    stats.min_aoi_minus_aos = kInf;
    stats.max_aos_aoii_gap = 0.0;
    for (const auto& r : reports) {
        stats.min_aoi_minus_aos = std::min(stats.min_aoi_minus_aos, r.min_aoi_minus_aos);
        stats.max_aos_aoii_gap = std::max(stats.max_aos_aoii_gap, r.max_aos_aoii_gap);
    }
    stats.reports = std::move(reports);
    return stats;
}

void write_event_log_csv(const EventLog& log, std::ostream& out) {
    out << "t,kind,value,gen_time\n";
    for (const Event& e : log.events) {
        out << num12(e.t) << ',' << (e.kind == EventKind::jump ? "jump" : "delivery") << ','
            << e.value << ',';
        if (e.kind == EventKind::delivery) out << num12(e.gen_time);
        out << '\n';
    }
}

}  // namespace aos
