#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "elbowkit/detect.hpp"
#include "random_curves.hpp"

using namespace elbowkit;

namespace {
NormalizedCurve nc_of(std::vector<double> raw) {
    return normalize(validate(raw, 0.0));
}
}  // namespace

TEST_CASE("penalty_slope") {
    const auto nc = nc_of({10, 4, 2, 1, 0});
    CHECK(penalty_slope(Criterion::uaed(), nc) == 2.5);
    CHECK(penalty_slope(Criterion::bic(100), nc) ==
          Catch::Approx(std::log(100.0)));
    CHECK(penalty_slope(Criterion::aic(), nc) == 2.0);
    CHECK(penalty_slope(Criterion::hqic(100), nc) ==
          Catch::Approx(std::log(std::log(100.0))));
    CHECK(penalty_slope(Criterion::custom(0.7), nc) == 0.7);
    CHECK(penalty_slope(Criterion::alpha_uaed(0.5), nc) == 2.5);

    const auto flat = nc_of({5, 5, 5});
    CHECK_THROWS_AS(penalty_slope(Criterion::uaed(), flat),
                    DegenerateCurveError);
    CHECK_THROWS_AS(penalty_slope(Criterion::hqic(2), nc), InvalidNError);
    CHECK_THROWS_AS(penalty_slope(Criterion::bic(0), nc), InvalidNError);
}

TEST_CASE("cost_vector") {
    const auto nc = nc_of({10, 4, 2, 1, 0});
    CHECK(cost_vector(nc, 2.5) == std::vector<double>{10, 6.5, 7, 8.5, 10});
    CHECK(cost_vector(nc_of({8, 4, 0}), 4.0) == std::vector<double>{8, 8, 8});
    CHECK(cost_vector(nc, 0.0) == nc.values);
}

TEST_CASE("elbow examples") {
    SECTION("convex curve") {
        const auto r = elbow(nc_of({10, 4, 2, 1, 0}), Criterion::uaed());
        CHECK(r.k_star == 1);
        CHECK(r.ties == std::vector<long>{1});
        CHECK(r.costs == std::vector<double>{10, 6.5, 7, 8.5, 10});
    }
    SECTION("straight line yields the full tie set, resolved upward") {
        const auto r = elbow(nc_of({8, 4, 0}), Criterion::uaed());
        CHECK(r.ties == std::vector<long>{0, 1, 2});
        CHECK(r.k_star == 2);
    }
    SECTION("constant curve short-circuits to 0") {
        const auto r = elbow(nc_of({5, 5, 5}), Criterion::uaed());
        CHECK(r.k_star == 0);
        CHECK(std::isnan(r.lambda_used));
    }
}

TEST_CASE("elbow_on_raw invariances") {
    const auto base = elbow_on_raw(std::vector<double>{10, 4, 2, 1, 0},
                                   Criterion::uaed(), 0.0);
    SECTION("vertical shift") {
        const auto r = elbow_on_raw(std::vector<double>{12, 6, 4, 3, 2},
                                    Criterion::uaed(), 0.0);
        CHECK(r.k_star == base.k_star);
        CHECK(r.ties == base.ties);
    }
    SECTION("vertical scale") {
        const auto r = elbow_on_raw(std::vector<double>{20, 8, 4, 2, 0},
                                    Criterion::uaed(), 0.0);
        CHECK(r.k_star == 1);
    }
    SECTION("monotonicity violation propagates") {
        CHECK_THROWS_AS(
            elbow_on_raw(std::vector<double>{1, 2, 1}, Criterion::uaed(), 0.0),
            NonMonotoneError);
    }
}

TEST_CASE("alpha boundaries") {
    const auto nc = nc_of({10, 4, 2, 1, 0});
    CHECK(elbow(nc, Criterion::alpha_uaed(0.0)).k_star == 0);
    CHECK(elbow(nc, Criterion::alpha_uaed(1.0)).k_star ==
          static_cast<long>(nc.k_max));
    const auto half = elbow(nc, Criterion::alpha_uaed(0.5));
    const auto uaed = elbow(nc, Criterion::uaed());
    CHECK(half.k_star == uaed.k_star);
    CHECK(half.ties == uaed.ties);
}

TEST_CASE("properties on random curves") {
    SplitMix64 rng(0xD37EC7);
    for (int rep = 0; rep < 300; ++rep) {
        const auto raw = ektest::random_curve(rng, 2 + rng.below(80));
        const auto nc = normalize(validate(raw));
        const auto uaed = elbow(nc, Criterion::uaed());

        // k* stays in range
        CHECK(uaed.k_star >= 0);
        CHECK(uaed.k_star <= static_cast<long>(nc.k_max));

        if (nc.k_max >= 1) {
            // agreement with the equivalent fixed slope
            const auto fixed = elbow(
                nc, Criterion::custom(nc.v0 / static_cast<double>(nc.k_max)));
            CHECK(fixed.k_star == uaed.k_star);
            CHECK(fixed.ties == uaed.ties);

            // oracle agreement
            const auto oracle = ektest::brute_force_elbow(
                nc.values, nc.k_max, nc.v0 / static_cast<double>(nc.k_max));
            CHECK(oracle.k_star == uaed.k_star);
            CHECK(oracle.ties == uaed.ties);
        }

        // k*(alpha) is non-decreasing over the alpha grid
        long prev = -1;
        for (int a = 0; a <= 10; ++a) {
            const auto r = elbow(nc, Criterion::alpha_uaed(a / 10.0));
            CHECK(r.k_star >= prev);
            prev = r.k_star;
        }
    }
}

TEST_CASE("index offset is added back") {
    const auto c = validate(std::vector<double>{10, 4, 2, 1, 0}, 0.0, 5);
    const auto r = elbow(normalize(c), Criterion::uaed());
    CHECK(r.k_star == 6);
    CHECK(r.ties == std::vector<long>{6});
}
