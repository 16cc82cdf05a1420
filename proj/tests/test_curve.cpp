#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "elbowkit/curve.hpp"
#include "elbowkit/rng.hpp"
#include "random_curves.hpp"

using namespace elbowkit;

TEST_CASE("validate accepts non-increasing curves") {
    const std::vector<double> raw{10, 4, 2, 1, 0};
    const auto c = validate(raw, 0.0);
    CHECK(c.values == raw);
}

TEST_CASE("validate accepts constant curves") {
    const auto c = validate(std::vector<double>{5, 5, 5}, 0.0);
    CHECK(c.values == std::vector<double>{5, 5, 5});
}

TEST_CASE("validate rejects increasing steps") {
    CHECK_THROWS_AS(validate(std::vector<double>{1, 2, 1}, 0.0),
                    NonMonotoneError);
}

TEST_CASE("validate rejects empty and non-finite input") {
    CHECK_THROWS_AS(validate(std::vector<double>{}), EmptyCurveError);
    CHECK_THROWS_AS(
        validate(std::vector<double>{1.0, std::nan("")}, 0.0),
        NonFiniteError);
    CHECK_THROWS_AS(validate(std::vector<double>{
                        std::numeric_limits<double>::infinity(), 0.0}),
                    NonFiniteError);
}

TEST_CASE("small violations are clamped by the running minimum") {
    const std::vector<double> raw{10, 4, 4 + 1e-12, 1};
    const auto c = validate(raw, 1e-9);
    CHECK(c.values[2] == 4.0);
    for (std::size_t i = 0; i + 1 < c.values.size(); ++i)
        CHECK(c.values[i + 1] <= c.values[i]);
}

TEST_CASE("normalize basic examples") {
    SECTION("min already zero") {
        const auto nc = normalize(validate(std::vector<double>{10, 4, 2, 1, 0}, 0.0));
        CHECK(nc.values == std::vector<double>{10, 4, 2, 1, 0});
        CHECK(nc.k_max == 4);
        CHECK(nc.v0 == 10.0);
    }
    SECTION("shift by 2") {
        const auto nc = normalize(validate(std::vector<double>{12, 6, 4, 3, 2}, 0.0));
        CHECK(nc.values == std::vector<double>{10, 4, 2, 1, 0});
        CHECK(nc.k_max == 4);
        CHECK(nc.v0 == 10.0);
    }
    SECTION("trailing zeros set k_max before the end") {
        const auto nc = normalize(validate(std::vector<double>{8, 4, 0, 0, 0}, 0.0));
        CHECK(nc.k_max == 2);
        CHECK(nc.v0 == 8.0);
    }
    SECTION("constant curve") {
        const auto nc = normalize(validate(std::vector<double>{5, 5, 5}, 0.0));
        CHECK(nc.k_max == 0);
        CHECK(nc.v0 == 0.0);
    }
}

TEST_CASE("normalize properties on random curves") {
    SplitMix64 rng(0x1234);
    for (int rep = 0; rep < 200; ++rep) {
        const auto raw = ektest::random_curve(rng, 2 + rng.below(60));
        const auto nc = normalize(validate(raw));

        // shift invariance
        auto shifted = raw;
        for (auto& v : shifted) v += 3.25;
        const auto nc2 = normalize(validate(shifted));
        REQUIRE(nc2.values.size() == nc.values.size());
        for (std::size_t i = 0; i < nc.values.size(); ++i)
            CHECK(nc2.values[i] == Catch::Approx(nc.values[i]).margin(1e-12));
        CHECK(nc2.k_max == nc.k_max);

        // idempotence
        const auto nc3 = normalize(validate(nc.values));
        CHECK(nc3.values == nc.values);
        CHECK(nc3.k_max == nc.k_max);

        // positive prefix characterizes k_max
        for (std::size_t k = 0; k < nc.values.size(); ++k)
            CHECK((nc.values[k] > 0.0) == (k < nc.k_max));
    }
}

TEST_CASE("index offset is preserved") {
    const auto c = validate(std::vector<double>{4, 2, 0}, 0.0, 3);
    CHECK(normalize(c).k_offset == 3);
}
