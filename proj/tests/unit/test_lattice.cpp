#include <catch2/catch_amalgamated.hpp>

#include "multifiber/lattice.hpp"
#include "test_support.hpp"

using namespace multifiber;
using mftest::random_class;

TEST_CASE("pairing on tautological basis classes") {
    auto H1 = DivisorClassY::basis_h(1, 2, 1);
    auto H2 = DivisorClassY::basis_h(2, 2, 1);
    auto E1 = DivisorClassY::basis_e(1, 2, 1);
    REQUIRE(pair_y(H1, H1) == 0);
    REQUIRE(pair_y(H1, H2) == 1);
    REQUIRE(pair_y(E1, E1) == -1);
    REQUIRE(pair_y(H1, E1) == 0);
}

TEST_CASE("canonical class") {
    auto K = canonical_y(2, 1);
    REQUIRE(K.d == std::vector<Int>{-2, -2});
    REQUIRE(K.m == std::vector<Int>{-1});

    REQUIRE(canonical_y(3, 0).d == std::vector<Int>{-2, -2, -2});
    REQUIRE(canonical_y(3, 2).m == std::vector<Int>{-2, -2});
    REQUIRE_THROWS_AS(canonical_y(1, 0), std::invalid_argument);
}

TEST_CASE("canonical self-intersection is 8 - r on surfaces") {
    // K_Y^2 for n = 2: expand (-2H1 - 2H2 + sum E)^2 = 8 - r by hand
    for (int r = 0; r <= 10; ++r) {
        auto K = canonical_y(2, r);
        REQUIRE(pair_y(K, K) == 8 - r);
    }
    REQUIRE(pair_y(canonical_y(2, 5), canonical_y(2, 5)) == 3);
}

TEST_CASE("numerical (-1)-classes") {
    for (int n = 2; n <= 5; ++n) {
        for (int j = 1; j <= 3; ++j)
            REQUIRE(is_minus_one_class(DivisorClassY::basis_e(j, n, 3)));
        for (int j = 1; j <= n; ++j) {
            auto D = DivisorClassY::basis_h(j, n, 3) - DivisorClassY::basis_e(1, n, 3);
            REQUIRE(is_minus_one_class(D));
        }
    }
    REQUIRE_FALSE(is_minus_one_class(DivisorClassY::basis_h(1, 2, 1)));
}

TEST_CASE("reflection in H1 - E1 - E2 is the (k,k,k) update") {
    DivisorClassY D({4, 7, 2}, {5, 5, 1});
    auto gens = weyl_generators(3, 3);
    const Root& R = gens[0]; // H1 - E1 - E2
    Int k = D.d[1] + D.d[2] - D.m[0] - D.m[1]; // 9 - 10 = -1
    REQUIRE(pair_y(D, R.cls) == k);
    auto refl = reflect(D, R);
    REQUIRE(refl.d == std::vector<Int>{4 + k, 7, 2});
    REQUIRE(refl.m == std::vector<Int>{5 + k, 5 + k, 1});
}

TEST_CASE("reflections are involutive isometries") {
    std::mt19937 rng(7);
    auto gens = weyl_generators(3, 5);
    for (int iter = 0; iter < 200; ++iter) {
        auto A = random_class(rng, 3, 5, -6, 6);
        auto B = random_class(rng, 3, 5, -6, 6);
        for (const auto& R : gens) {
            REQUIRE(reflect(reflect(A, R), R) == A);
            REQUIRE(pair_y(reflect(A, R), reflect(B, R)) == pair_y(A, B));
        }
    }
}

TEST_CASE("classes orthogonal to the root are fixed") {
    // m1 = m2 makes D orthogonal to E1 - E2
    DivisorClassY D({3, 2}, {4, 4, 1});
    auto gens = weyl_generators(2, 3);
    const Root& r_e = gens[2]; // E1 - E2
    REQUIRE(pair_y(D, r_e.cls) == 0);
    REQUIRE(reflect(D, r_e) == D);
}

TEST_CASE("weyl generator lists") {
    auto g22 = weyl_generators(2, 2);
    REQUIRE(g22.size() == 3);
    REQUIRE(g22[0].cls == DivisorClassY({1, 0}, {1, 1}));  // H1 - E1 - E2
    REQUIRE(g22[1].cls == DivisorClassY({1, -1}, {0, 0})); // H1 - H2
    REQUIRE(g22[2].cls == DivisorClassY({0, 0}, {-1, 1})); // E1 - E2

    REQUIRE(weyl_generators(3, 4).size() == 6);
    for (const auto& R : weyl_generators(4, 5))
        REQUIRE(pair_y(R.cls, R.cls) == -2);
    REQUIRE_THROWS_AS(weyl_generators(2, 1), std::invalid_argument);
}

TEST_CASE("root validation") {
    REQUIRE_THROWS_AS(Root(DivisorClassY({1, 0}, {0, 0})), std::invalid_argument);
}

TEST_CASE("pairing is symmetric and bilinear") {
    std::mt19937 rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        auto A = random_class(rng, 4, 3, -9, 9);
        auto A2 = random_class(rng, 4, 3, -9, 9);
        auto B = random_class(rng, 4, 3, -9, 9);
        REQUIRE(pair_y(A, B) == pair_y(B, A));
        REQUIRE(pair_y(A + A2, B) == pair_y(A, B) + pair_y(A2, B));
    }
}

TEST_CASE("pairing on the projective-space lattice") {
    DivisorClassX H(3, 1, {0, 0, 0, 0});
    DivisorClassX E1(3, 0, {-1, 0, 0, 0});
    REQUIRE(pair_x(H, H) == 2);
    REQUIRE(pair_x(H, E1) == 0);
    REQUIRE(pair_x(E1, E1) == -1);
}

TEST_CASE("shape mismatches are rejected") {
    DivisorClassY A({1, 1}, {0});
    DivisorClassY B({1, 1, 1}, {0});
    REQUIRE_THROWS_AS(pair_y(A, B), std::invalid_argument);
    DivisorClassX X1(3, 1, {0, 0});
    DivisorClassX X2(4, 1, {0, 0});
    REQUIRE_THROWS_AS(pair_x(X1, X2), std::invalid_argument);
}

TEST_CASE("overflow is detected, not wrapped") {
    const Int big = Int{1} << 62;
    DivisorClassY A({big, big}, {0});
    REQUIRE_THROWS_AS(pair_y(A, A), std::overflow_error);
}
