// Command-line front end: closed-form evaluation, Monte-Carlo simulation,
// budget allocation, and experiment sweeps, all emitting plot-ready CSV.
//
// Exit codes: 0 success (optimize: converged), 1 invalid input,
// 2 solver did not converge, 3 I/O failure.

#include "CLI11.hpp"
#include "json.hpp"

#include "aos/format.hpp"
#include "aos/metrics.hpp"
#include "aos/polyblock.hpp"
#include "aos/rng.hpp"
#include "aos/simulation.hpp"
#include "aos/sweep.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
    std::ofstream file(path);
    if (!file) throw std::ios_base::failure("cannot open '" + path + "' for writing");
    return file;
}

aos::SourceBank bank_from_lists(const std::vector<int>& n, const std::vector<double>& sigma) {
    if (n.size() != sigma.size() || n.empty())
        throw std::invalid_argument("--n and --sigma need the same nonzero length");
    std::vector<aos::SymmetricSourceParams> sources;
    sources.reserve(n.size());
    for (std::size_t k = 0; k < n.size(); ++k)
        sources.emplace_back(n[k], sigma[k]);
    return aos::SourceBank(std::move(sources));
}

void apply_json_overlay(aos::SweepSpec& spec, const json& j) {
    if (j.contains("bank")) {
        const auto& b = j.at("bank");
        spec.bank = bank_from_lists(b.at("n").get<std::vector<int>>(),
                                    b.at("sigma").get<std::vector<double>>());
    }
    if (j.contains("swept_source")) spec.swept_source = j.at("swept_source").get<int>();
    if (j.contains("swept_param")) spec.swept_param = j.at("swept_param").get<std::string>();
    if (j.contains("start")) spec.start = j.at("start").get<double>();
    if (j.contains("stop")) spec.stop = j.at("stop").get<double>();
    if (j.contains("step")) spec.step = j.at("step").get<double>();
    if (j.contains("solver")) {
        const auto& s = j.at("solver");
        if (s.contains("epsilon")) spec.solver.epsilon = s.at("epsilon").get<double>();
        if (s.contains("delta")) spec.solver.delta = s.at("delta").get<double>();
        if (s.contains("max_iters")) spec.solver.max_iters = s.at("max_iters").get<std::int64_t>();
        if (s.contains("feas_tol")) spec.solver.feas_tol = s.at("feas_tol").get<double>();
    }
    if (j.contains("sim")) {
        aos::SimOverlay overlay = spec.sim.value_or(aos::SimOverlay{});
        const auto& s = j.at("sim");
        if (s.contains("horizon")) overlay.horizon = s.at("horizon").get<double>();
        if (s.contains("reps")) overlay.reps = s.at("reps").get<int>();
        if (s.contains("seed")) overlay.seed = s.at("seed").get<std::uint64_t>();
        spec.sim = overlay;
    }
}

int cmd_analyze(int n, double sigma, double lambda) {
    const aos::SymmetricSourceParams params(n, sigma);
    const aos::SamplingRate rate(lambda);
    const double inf = std::numeric_limits<double>::infinity();
    std::cout << "aos_mean=" << aos::num12(aos::aos_mean(rate, params)) << '\n'
              << "aoi_mean=" << aos::num12(lambda > 0 ? aos::aoi_mean(rate) : inf) << '\n'
              << "mismatch_fraction=" << aos::num12(aos::mismatch_fraction(rate, params)) << '\n'
              << "expected_initial_staleness="
              << aos::num12(aos::expected_initial_staleness(rate, params)) << '\n'
              << "expected_mismatch_visits="
              << aos::num12(lambda > 0 ? aos::expected_mismatch_visits(rate, params) : inf)
              << '\n';
    return 0;
}

void write_simulate_csv(const aos::ReplicationStats& stats, std::ostream& out) {
    out << "rep,mean_aos,mean_aoii,mean_aoi,mean_bf\n";
    for (std::size_t r = 0; r < stats.reports.size(); ++r) {
        const aos::MetricReport& rep = stats.reports[r];
        out << r << ',' << aos::num12(rep.mean_aos) << ',' << aos::num12(rep.mean_aoii) << ','
            << aos::num12(rep.mean_aoi) << ',' << aos::num12(rep.mean_bf) << '\n';
    }
    out << "mean," << aos::num12(stats.aos.mean) << ',' << aos::num12(stats.aoii.mean) << ','
        << aos::num12(stats.aoi.mean) << ',' << aos::num12(stats.bf.mean) << '\n';
    out << "se," << aos::num12(stats.aos.se) << ',' << aos::num12(stats.aoii.se) << ','
        << aos::num12(stats.aoi.se) << ',' << aos::num12(stats.bf.se) << '\n';
}

void write_simulate_summary(const aos::SimConfig& config, const aos::ReplicationStats& stats,
                            std::ostream& out) {
    const aos::SamplingRate rate = config.lambda;
    const double ref_aos = aos::aos_mean(rate, config.params);
    const double ref_aoi = aos::aoi_mean(rate);
    const double ref_bf = 1.0 - aos::mismatch_fraction(rate, config.params);
    auto z = [](const aos::SummaryStat& s, double ref) { return (s.mean - ref) / s.se; };
    out << "aos_mean=" << aos::num12(stats.aos.mean) << '\n'
        << "aos_se=" << aos::num12(stats.aos.se) << '\n'
        << "aos_ref=" << aos::num12(ref_aos) << '\n'
        << "aos_z=" << aos::num12(z(stats.aos, ref_aos)) << '\n'
        << "aoii_mean=" << aos::num12(stats.aoii.mean) << '\n'
        << "aoii_se=" << aos::num12(stats.aoii.se) << '\n'
        << "aoi_mean=" << aos::num12(stats.aoi.mean) << '\n'
        << "aoi_se=" << aos::num12(stats.aoi.se) << '\n'
        << "aoi_ref=" << aos::num12(ref_aoi) << '\n'
        << "aoi_z=" << aos::num12(z(stats.aoi, ref_aoi)) << '\n'
        << "bf_mean=" << aos::num12(stats.bf.mean) << '\n'
        << "bf_se=" << aos::num12(stats.bf.se) << '\n'
        << "bf_ref=" << aos::num12(ref_bf) << '\n'
        << "bf_z=" << aos::num12(z(stats.bf, ref_bf)) << '\n'
        << "min_aoi_minus_aos=" << aos::num12(stats.min_aoi_minus_aos) << '\n'
        << "max_aos_aoii_gap=" << aos::num12(stats.max_aos_aoii_gap) << '\n';
}

int cmd_simulate(const aos::SimConfig& config, int reps, int threads,
                 const std::string& out_path, const std::string& event_log_path) {
    if (!event_log_path.empty()) {
        aos::SimConfig first = config;
        first.seed = aos::replication_seed(config.seed, 0);
        aos::EventLog log;
        aos::simulate(first, &log);
        auto file = open_out(event_log_path);
        aos::write_event_log_csv(log, file);
    }
    const aos::ReplicationStats stats = aos::replicate(config, reps, threads);
    if (out_path.empty()) {
        write_simulate_csv(stats, std::cout);
        write_simulate_summary(config, stats, std::cerr);
    } else {
        auto file = open_out(out_path);
        write_simulate_csv(stats, file);
        write_simulate_summary(config, stats, std::cout);
    }
    return 0;
}

int cmd_optimize(const aos::SourceBank& bank, const aos::PolyblockConfig& config,
                 const std::string& trace_path) {
    aos::PolyblockConfig cfg = config;
    cfg.record_trace = !trace_path.empty();
    const aos::PolyblockResult result = aos::polyblock_solve(bank, cfg);
    if (!trace_path.empty()) {
        auto file = open_out(trace_path);
        file << "iter,lb,ub,n_vplus\n";
        for (const aos::IterationRecord& rec : result.trace)
            file << rec.iter << ',' << aos::num12(rec.lb) << ',' << aos::num12(rec.ub) << ','
                 << rec.n_vplus << '\n';
    }
    std::cout << "best_alloc=";
    for (std::size_t k = 0; k < result.best_alloc.lambdas.size(); ++k)
        std::cout << (k ? "," : "") << aos::num12(result.best_alloc.lambdas[k]);
    std::cout << '\n'
              << "ub=" << aos::num12(result.ub) << '\n'
              << "lb=" << aos::num12(result.lb) << '\n'
              << "gap=" << aos::num12(result.gap) << '\n'
              << "iterations=" << result.iterations << '\n'
              << "converged=" << (result.converged ? "true" : "false") << '\n';
    return result.converged ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"age-of-staleness toolkit: exact metric evaluators, an event-driven "
                 "Monte-Carlo simulator, and a budget-allocation solver"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::uint64_t seed = 1;
    std::string out_path, config_path, preset;
    app.add_option("--seed", seed, "base RNG seed (simulate, sweep overlay)");
    app.add_option("--out", out_path, "write primary CSV output to this path");
    app.add_option("--config", config_path, "JSON sweep configuration file");
    app.add_option("--preset", preset, "named sweep scenario")->check(CLI::IsMember({"a", "b"}));

    auto* analyze = app.add_subcommand("analyze", "print the closed-form metrics for one source");
    int a_n = 2;
    double a_sigma = 1.0, a_lambda = 1.0;
    analyze->add_option("--n", a_n, "number of source states")->required();
    analyze->add_option("--sigma", a_sigma, "holding rate")->required();
    analyze->add_option("--lambda", a_lambda, "sampling rate")->required();

    auto* simulate = app.add_subcommand("simulate", "replicated Monte-Carlo run with CSV output");
    int s_n = 2, s_reps = 8, s_threads = 1;
    double s_sigma = 1.0, s_lambda = 1.0, s_horizon = 1e6, s_warmup = 0.0;
    std::string s_event_log;
    simulate->add_option("--n", s_n)->required();
    simulate->add_option("--sigma", s_sigma)->required();
    simulate->add_option("--lambda", s_lambda)->required();
    simulate->add_option("--horizon", s_horizon, "simulated time per replication");
    simulate->add_option("--reps", s_reps, "independent replications")->check(CLI::Range(2, 1 << 20));
    simulate->add_option("--warmup", s_warmup, "measurement start (never before the first delivery)");
    simulate->add_option("--threads", s_threads, "worker threads; 0 = hardware");
    simulate->add_option("--event-log", s_event_log, "dump replication 0's event log CSV here");

    auto* optimize = app.add_subcommand("optimize", "allocate the unit budget across sources");
    std::vector<int> o_n;
    std::vector<double> o_sigma;
    aos::PolyblockConfig o_cfg;
    std::string o_trace;
    optimize->add_option("--n", o_n, "state counts, comma separated")->required()->delimiter(',');
    optimize->add_option("--sigma", o_sigma, "holding rates, comma separated")->required()->delimiter(',');
    optimize->add_option("--epsilon", o_cfg.epsilon, "bound-gap termination tolerance");
    optimize->add_option("--delta", o_cfg.delta, "minimum child displacement");
    optimize->add_option("--max-iters", o_cfg.max_iters);
    optimize->add_option("--trace", o_trace, "write per-iteration bounds CSV here");

    auto* sweep = app.add_subcommand("sweep", "run a scenario sweep and emit one CSV row per value");
    double w_start = 0, w_stop = 0, w_step = 0, w_epsilon = 0, w_delta = 0;
    double w_sim_horizon = 0;
    int w_sim_reps = 0;
    auto* w_start_opt = sweep->add_option("--start", w_start, "sweep start value");
    auto* w_stop_opt = sweep->add_option("--stop", w_stop, "sweep stop value");
    auto* w_step_opt = sweep->add_option("--step", w_step, "sweep increment");
    auto* w_eps_opt = sweep->add_option("--epsilon", w_epsilon, "solver tolerance");
    auto* w_delta_opt = sweep->add_option("--delta", w_delta, "solver displacement filter");
    auto* w_sh_opt = sweep->add_option("--sim-horizon", w_sim_horizon, "simulation overlay horizon");
    auto* w_sr_opt = sweep->add_option("--sim-reps", w_sim_reps, "simulation overlay replications");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*analyze) return cmd_analyze(a_n, a_sigma, a_lambda);

        if (*simulate) {
            aos::SimConfig config{aos::SymmetricSourceParams(s_n, s_sigma),
                                  aos::SamplingRate(s_lambda), s_horizon, seed, s_warmup};
            return cmd_simulate(config, s_reps, s_threads, out_path, s_event_log);
        }

        if (*optimize) return cmd_optimize(bank_from_lists(o_n, o_sigma), o_cfg, o_trace);

        if (*sweep) {
            if (preset.empty() && config_path.empty())
                throw std::invalid_argument("sweep needs --preset or --config");
            aos::SweepSpec spec = preset.empty() ? aos::preset_a() : aos::preset_by_name(preset);
            if (!config_path.empty()) {
                std::ifstream file(config_path);
                if (!file) throw std::ios_base::failure("cannot open '" + config_path + "'");
                json j;
                try {
                    file >> j;
                } catch (const json::exception& e) {
                    throw std::invalid_argument(std::string("bad sweep config: ") + e.what());
                }
                if (preset.empty() && !j.contains("bank"))
                    throw std::invalid_argument("sweep config without --preset must define a bank");
                apply_json_overlay(spec, j);
            }
            if (*w_start_opt) spec.start = w_start;
            if (*w_stop_opt) spec.stop = w_stop;
            if (*w_step_opt) spec.step = w_step;
            if (*w_eps_opt) spec.solver.epsilon = w_epsilon;
            if (*w_delta_opt) spec.solver.delta = w_delta;
            if (*w_sh_opt || *w_sr_opt) {
                aos::SimOverlay overlay = spec.sim.value_or(aos::SimOverlay{});
                if (*w_sh_opt) overlay.horizon = w_sim_horizon;
                if (*w_sr_opt) overlay.reps = w_sim_reps;
                overlay.seed = seed;
                spec.sim = overlay;
            }
            const std::vector<aos::SweepRow> rows = aos::run_sweep(spec);
            if (out_path.empty()) {
                aos::write_sweep_csv(rows, spec.bank.size(), std::cout);
            } else {
                auto file = open_out(out_path);
                aos::write_sweep_csv(rows, spec.bank.size(), file);
            }
            return 0;
        }
    } catch (const aos::SweepRowError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.non_convergence ? 2 : 1;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
