#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include "elbowkit/curve_file.hpp"
#include "elbowkit/rng.hpp"
#include "random_curves.hpp"

using namespace elbowkit;

TEST_CASE("parse a plain curve file") {
    std::istringstream in("k,value\n0,10\n1,4\n2,2\n3,1\n4,0\n");
    const auto pc = parse_curve_file(in);
    CHECK(pc.values == std::vector<double>{10, 4, 2, 1, 0});
    CHECK(pc.k_offset == 0);
}

TEST_CASE("k_min handling") {
    SECTION("comment sets the offset") {
        std::istringstream in("# k_min=3\nk,value\n0,8\n1,4\n2,0\n");
        const auto pc = parse_curve_file(in);
        CHECK(pc.k_offset == 3);
        CHECK(pc.values.size() == 3);
    }
    SECTION("first row index sets the offset when no comment") {
        std::istringstream in("k,value\n2,8\n3,4\n4,0\n");
        CHECK(parse_curve_file(in).k_offset == 2);
    }
}

TEST_CASE("malformed input reports line numbers") {
    SECTION("garbage row") {
        std::istringstream in("k,value\n0,10\na,b\n");
        CHECK_THROWS_WITH(parse_curve_file(in),
                          Catch::Matchers::ContainsSubstring("line 3"));
    }
    SECTION("duplicate k") {
        std::istringstream in("k,value\n0,10\n0,4\n");
        CHECK_THROWS_WITH(parse_curve_file(in),
                          Catch::Matchers::ContainsSubstring("duplicate"));
    }
    SECTION("index gap") {
        std::istringstream in("k,value\n0,10\n2,4\n");
        CHECK_THROWS_AS(parse_curve_file(in), ParseError);
    }
    SECTION("missing header") {
        std::istringstream in("0,10\n1,4\n");
        CHECK_THROWS_AS(parse_curve_file(in), ParseError);
    }
    SECTION("no rows") {
        std::istringstream in("k,value\n");
        CHECK_THROWS_AS(parse_curve_file(in), ParseError);
    }
}

TEST_CASE("write/parse round trip on random curves") {
    SplitMix64 rng(0xC5F);
    for (int rep = 0; rep < 100; ++rep) {
        const auto raw = ektest::random_curve(rng, 2 + rng.below(40));
        const auto c = validate(raw, default_tolerance(raw),
                                static_cast<long>(rng.below(5)));
        std::ostringstream out;
        write_curve_file(out, c);
        std::istringstream in(out.str());
        const auto pc = parse_curve_file(in);
        CHECK(pc.values == c.values);
        CHECK(pc.k_offset == c.k_offset);
    }
}
