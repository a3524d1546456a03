#include <catch2/catch_amalgamated.hpp>

#include "multifiber/notation.hpp"
#include "test_support.hpp"

using namespace multifiber;

TEST_CASE("parsing system notation") {
    auto D = parse_system("(13,9,5)(11^2,7^2,3^2)");
    REQUIRE(D.n() == 3);
    REQUIRE(D.d == std::vector<Int>{13, 9, 5});
    REQUIRE(D.m == std::vector<Int>{11, 11, 7, 7, 3, 3});

    REQUIRE(parse_system("(1,1)(1)").r() == 1);
    REQUIRE(parse_system("(5,5,5)(3^6)").m == std::vector<Int>(6, 3));
    REQUIRE(parse_system(" ( 1 , 2 ) ( 3 ^ 2 , 1 ) ").m == std::vector<Int>{3, 3, 1});
    REQUIRE(parse_system("(2,2)()").r() == 0);
    REQUIRE(parse_system("(2)(1^0)").r() == 0);
    REQUIRE(parse_system("(1^7)(3^3)").n() == 7); // '^' works for degrees too
}

TEST_CASE("rendering system notation") {
    REQUIRE(render_system(DivisorClassY({5, 5, 5}, {3, 3, 3, 3, 3, 3})) ==
            "(5,5,5)(3^6)");
    REQUIRE(render_system(DivisorClassY({13, 9, 5}, {7, 11, 3, 11, 7, 3})) ==
            "(13,9,5)(11^2,7^2,3^2)");
    REQUIRE(render_system(DivisorClassY({1, 1}, {1})) == "(1,1)(1)");
    REQUIRE(render_system(DivisorClassY({2, 2}, {})) == "(2,2)()");
    REQUIRE(render_system(DivisorClassY({2, 1}, {2, -1})) == "(2,1)(2,-1)");
}

TEST_CASE("round trip through notation") {
    std::mt19937 rng(67);
    for (int iter = 0; iter < 200; ++iter) {
        auto D = mftest::random_class(rng, 2 + static_cast<int>(rng() % 3),
                                      static_cast<int>(rng() % 5), 0, 12);
        auto back = parse_system(render_system(D));
        std::sort(D.m.begin(), D.m.end(), std::greater<Int>());
        REQUIRE(back == D);
    }
}

TEST_CASE("parse errors carry positions") {
    REQUIRE_THROWS_AS(parse_system("(1,2"), ParseError);
    REQUIRE_THROWS_AS(parse_system("(1,2)(3)x"), ParseError);
    REQUIRE_THROWS_AS(parse_system("(-1,2)(3)"), ParseError);
    REQUIRE_THROWS_AS(parse_system("()(1)"), ParseError);
    REQUIRE_THROWS_AS(parse_system("(1)(2^99999)"), ParseError);
    REQUIRE_THROWS_AS(parse_system("1,2)(3)"), ParseError);
    try {
        parse_system("(1,a)(3)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        REQUIRE(e.position == 3);
    }
}

TEST_CASE("projective-space class notation") {
    auto X = parse_x_class("(4)(3^9)", 7);
    REQUIRE(X.n == 7);
    REQUIRE(X.d0 == 4);
    REQUIRE(X.s() == 9);
    REQUIRE(render_x_class(X) == "(4)(3^9)");
    REQUIRE_THROWS_AS(parse_x_class("(4,1)(3)", 3), ParseError);
}
