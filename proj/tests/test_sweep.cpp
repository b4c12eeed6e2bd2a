#include "aos/sweep.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace aos;

TEST_CASE("presets") {
    const SweepSpec a = preset_a();
    CHECK(a.bank.size() == 2);
    CHECK(a.bank.sources[0].n_states == 8);
    CHECK(a.bank.sources[0].sigma == 1.5);
    CHECK(a.bank.sources[1].n_states == 4);
    CHECK(a.swept_source == 1);
    CHECK(a.swept_param == "sigma");
    CHECK(a.solver.epsilon == 1e-3);
    CHECK(a.solver.delta == 1e-5);

    const SweepSpec b = preset_b();
    CHECK(b.bank.size() == 3);
    CHECK(b.bank.sources[2].n_states == 8);
    CHECK(b.solver.epsilon == 1e-2);
    CHECK(b.solver.delta == 1e-4);

    CHECK(preset_by_name("a").bank.size() == 2);
    CHECK_THROWS_AS(preset_by_name("c"), std::invalid_argument);
}

TEST_CASE("spec validation") {
    SweepSpec spec = preset_a();
    spec.step = 0.0;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec = preset_a();
    spec.swept_source = 5;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec = preset_a();
    spec.swept_param = "rho";
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec = preset_a();
    spec.start = 2.0;
    spec.stop = 1.0;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("short scenario slice around the benchmark flip") {
    SweepSpec spec = preset_a();
    spec.start = 1.0;
    spec.stop = 1.2;
    spec.step = 0.1;
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 3);

    for (const SweepRow& row : rows) {
        CHECK(row.polyblock_lb <= row.polyblock_ub);
        CHECK(row.polyblock_ub <= row.equal_split_value + spec.solver.epsilon);
        CHECK(row.polyblock_alloc.size() == 2);
        const double total = row.polyblock_alloc[0] + row.polyblock_alloc[1];
        CHECK(total <= 1.0 + 1e-9);
        CHECK_FALSE(row.sim_mean.has_value());
    }
    CHECK(rows[0].sweep_value == doctest::Approx(1.0));
    CHECK(rows[2].sweep_value == doctest::Approx(1.2));
    CHECK(rows[0].bf_alloc == std::vector<double>{1.0, 0.0});
    CHECK(rows[1].bf_alloc == std::vector<double>{1.0, 0.0});
    CHECK(rows[2].bf_alloc == std::vector<double>{0.0, 1.0});
}

TEST_CASE("sweeping the state count") {
    SweepSpec spec = preset_a();
    spec.swept_source = 0;
    spec.swept_param = "n";
    spec.start = 2.0;
    spec.stop = 4.0;
    spec.step = 1.0;
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 3);
    // More states make source 0 harder to pin down, so its share grows.
    CHECK(rows[2].polyblock_alloc[0] > rows[0].polyblock_alloc[0]);
}

TEST_CASE("row failure names the sweep value") {
    SweepSpec spec = preset_a();
    spec.start = 1.3;
    spec.stop = 1.3;
    spec.step = 0.1;
    spec.solver.max_iters = 3;
    try {
        run_sweep(spec);
        FAIL("expected SweepRowError");
    } catch (const SweepRowError& e) {
        CHECK(e.non_convergence);
        CHECK(std::string(e.what()).find("1.3") != std::string::npos);
    }
}

TEST_CASE("simulation overlay adds summed-staleness columns") {
    SweepSpec spec = preset_a();
    spec.start = 1.0;
    spec.stop = 1.0;
    spec.sim = SimOverlay{5e4, 8, 3};
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].sim_mean.has_value());
    REQUIRE(rows[0].sim_se.has_value());
    CHECK(*rows[0].sim_se > 0.0);
    // The simulated sum at the chosen allocation should sit near the solver's
    // own value of that allocation.
    CHECK(std::abs(*rows[0].sim_mean - rows[0].polyblock_ub) <= 6.0 * *rows[0].sim_se + 1e-3);
}

TEST_CASE("CSV layout") {
    SweepSpec spec = preset_a();
    spec.start = 1.0;
    spec.stop = 1.1;
    spec.step = 0.1;
    const auto rows = run_sweep(spec);
    std::ostringstream out;
    write_sweep_csv(rows, spec.bank.size(), out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "sweep_value,lambda_1,lambda_2,ub,lb,equal_split_value,bf_lambda_1,bf_lambda_2");
    int data_rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++data_rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 7);
    }
    CHECK(data_rows == 2);

    SUBCASE("simulation columns extend the header") {
        auto with_sim = rows;
        with_sim[0].sim_mean = 1.0;
        with_sim[0].sim_se = 0.1;
        with_sim[1].sim_mean = 1.1;
        with_sim[1].sim_se = 0.1;
        std::ostringstream out2;
        write_sweep_csv(with_sim, 2, out2);
        std::istringstream in2(out2.str());
        std::getline(in2, header);
        CHECK(header ==
              "sweep_value,lambda_1,lambda_2,ub,lb,equal_split_value,bf_lambda_1,bf_lambda_2,"
              "sim_mean,sim_se");
    }
}
