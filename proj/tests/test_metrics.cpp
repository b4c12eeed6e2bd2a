#include "aos/metrics.hpp"

#include "aos/rng.hpp"
#include "doctest.h"

#include <cmath>
#include <stdexcept>

using namespace aos;

TEST_CASE("mean staleness closed form") {
    const SymmetricSourceParams binary(2, 1.0);
    CHECK(aos_mean(SamplingRate(1.0), binary) == doctest::Approx(11.0 / 36.0).epsilon(1e-14));
    // Constant-estimate limit: 1/rho - 1/(rho + sigma).
    CHECK(aos_mean(SamplingRate(0.0), binary) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(aos_mean(SamplingRate(0.0), SymmetricSourceParams(4, 1.0)) ==
          doctest::Approx(2.25).epsilon(1e-14));
    CHECK(aos_mean(SamplingRate(1e8), binary) == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("renewal route equals the closed form") {
    const SymmetricSourceParams binary(2, 1.0);
    // 1 * (1/2 * 8/9 * 1/2 + 1/6 * 1/2) = 11/36, composed from the pieces.
    CHECK(aos_mean_via_amc(SamplingRate(1.0), binary) ==
          doctest::Approx(11.0 / 36.0).epsilon(1e-14));
    CHECK_THROWS_AS(aos_mean_via_amc(SamplingRate(0.0), binary), std::domain_error);

    SUBCASE("path equality within 1e-10 relative on a grid") {
        for (double l : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
            for (double s : {0.1, 0.5, 1.0, 1.5, 4.0, 10.0}) {
                for (int n : {2, 3, 4, 6, 8, 12, 16}) {
                    const SymmetricSourceParams p(n, s);
                    const double direct = aos_mean(SamplingRate(l), p);
                    const double composed = aos_mean_via_amc(SamplingRate(l), p);
                    CHECK(std::abs(direct - composed) <= 1e-10 * std::abs(direct));
                }
            }
        }
    }

    SUBCASE("path equality on random parameters") {
        Rng rng(2024);
        for (int i = 0; i < 500; ++i) {
            const double l = 0.01 + 9.99 * rng.unit_open();
            const double s = 0.1 + 9.9 * rng.unit_open();
            const int n = 2 + static_cast<int>(rng.below(15));
            const SymmetricSourceParams p(n, s);
            const double direct = aos_mean(SamplingRate(l), p);
            CHECK(std::abs(direct - aos_mean_via_amc(SamplingRate(l), p)) <=
                  1e-10 * std::abs(direct));
        }
    }
}

TEST_CASE("mean age of information") {
    CHECK(aoi_mean(SamplingRate(2.0)) == 1.0);
    CHECK(aoi_mean(SamplingRate(1.0)) == 2.0);
    CHECK(aoi_mean(SamplingRate(0.5)) == 4.0);
    CHECK_THROWS_AS(aoi_mean(SamplingRate(0.0)), std::domain_error);
}

TEST_CASE("mismatch fraction") {
    CHECK(mismatch_fraction(SamplingRate(0.0), SymmetricSourceParams(2, 1.0)) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mismatch_fraction(SamplingRate(1.0), SymmetricSourceParams(4, 1.0)) ==
          doctest::Approx(30.0 / 49.0).epsilon(1e-14));
    CHECK(mismatch_fraction(SamplingRate(1e9), SymmetricSourceParams(4, 1.0)) ==
          doctest::Approx(0.0).epsilon(1e-8));

    SUBCASE("never-updated estimate misses (n-1)/n of the time") {
        for (int n : {2, 3, 8, 16}) {
            const SymmetricSourceParams p(n, 1.7);
            CHECK(mismatch_fraction(SamplingRate(0.0), p) ==
                  doctest::Approx((n - 1.0) / n).epsilon(1e-14));
        }
    }

    SUBCASE("stays inside [0, 1] and decreases in lambda") {
        for (double s : {0.1, 1.0, 10.0}) {
            for (int n : {2, 5, 16}) {
                const SymmetricSourceParams p(n, s);
                double prev = 1.0;
                for (double l = 0.0; l <= 20.0; l += 0.02) {
                    const double q = mismatch_fraction(SamplingRate(l), p);
                    CHECK(q >= 0.0);
                    CHECK(q <= 1.0);
                    CHECK(q <= prev + 1e-15);
                    prev = q;
                }
            }
        }
    }
}

TEST_CASE("staleness is nonincreasing and nonnegative in lambda") {
    for (double s : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        for (int n : {2, 3, 4, 8, 16}) {
            const SymmetricSourceParams p(n, s);
            double prev = std::numeric_limits<double>::infinity();
            for (double l = 0.0; l <= 20.0; l += 0.01) {
                const double v = aos_mean(SamplingRate(l), p);
                CHECK(v >= 0.0);
                CHECK(v <= prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("sum objective") {
    const SourceBank bank({SymmetricSourceParams(8, 1.5), SymmetricSourceParams(4, 1.5)});

    SUBCASE("single source reduces to aos_mean") {
        const SourceBank one({SymmetricSourceParams(5, 0.8)});
        CHECK(sum_objective(AllocationVector({0.37}), one) ==
              aos_mean(SamplingRate(0.37), one.sources[0]));
    }

    SUBCASE("two-source sum") {
        const double expect = aos_mean(SamplingRate(0.5), bank.sources[0]) +
                              aos_mean(SamplingRate(0.5), bank.sources[1]);
        CHECK(sum_objective(AllocationVector({0.5, 0.5}), bank) ==
              doctest::Approx(expect).epsilon(1e-15));
    }

    SUBCASE("length mismatch is rejected") {
        CHECK_THROWS_AS(sum_objective(AllocationVector({0.5}), bank), std::invalid_argument);
    }

    SUBCASE("coordinate-wise nonincreasing") {
        Rng rng(99);
        for (int i = 0; i < 200; ++i) {
            const double a = rng.unit_open(), b = rng.unit_open();
            const double bump = (1.0 - a) * rng.unit_open();
            const double lo = sum_objective(AllocationVector({a, b}), bank);
            const double hi = sum_objective(AllocationVector({a + bump, b}), bank);
            CHECK(hi <= lo + 1e-15);
        }
    }
}

TEST_CASE("allocation and bank validation") {
    CHECK_THROWS_AS(SourceBank({}), std::invalid_argument);
    CHECK_THROWS_AS(AllocationVector({}), std::invalid_argument);
    CHECK_THROWS_AS(AllocationVector({-0.1}), std::invalid_argument);
    CHECK_THROWS_AS(AllocationVector({1.1}), std::invalid_argument);
    const AllocationVector ok({0.4, 0.6});
    CHECK(ok.total() == doctest::Approx(1.0));
    CHECK(ok.feasible());
    CHECK_FALSE(AllocationVector({0.9, 0.9}).feasible());
}
