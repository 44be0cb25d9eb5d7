#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "toric/lattice.hpp"
#include "toric/rational.hpp"

using namespace toric;
using toric_test::random_gl2z;
using toric_test::random_intvec;

TEST_CASE("rational normalization and arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, 7).den() == 1);
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational parse and print") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-3/4") == Rational(-3, 4));
    CHECK(Rational::parse("5") == Rational(5));
    CHECK(Rational::parse("-0") == Rational(0));
    CHECK(Rational(3, 4).str() == "3/4");
    CHECK(Rational(-3, 4).str() == "-3/4");
    CHECK(Rational(5).str() == "5");
    CHECK_THROWS_AS(Rational::parse("1/-2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("a"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);

    std::mt19937 rng(7);
    std::uniform_int_distribution<std::int64_t> num(-1000, 1000), den(1, 1000);
    for (int i = 0; i < 200; ++i) {
        Rational r(num(rng), den(rng));
        CHECK(Rational::parse(r.str()) == r);
    }
}

TEST_CASE("determinant") {
    CHECK(det(IntMat2{1, 0, 0, 1}) == 1);
    CHECK(det(IntMat2{1, 1, 0, 1}) == 1);
    CHECK(det(IntMat2{2, 0, 0, 1}) == 2);
}

TEST_CASE("unimodular pair") {
    CHECK(is_unimodular_pair({1, 0}, {0, 1}));
    CHECK(is_unimodular_pair({1, 0}, {1, 1}));
    CHECK_FALSE(is_unimodular_pair({1, 0}, {0, 2}));
}

TEST_CASE("primitive") {
    CHECK(primitive({2, 4}) == IntVec2{1, 2});
    CHECK(primitive({1, 0}) == IntVec2{1, 0});
    CHECK(primitive({0, -3}) == IntVec2{0, -1});
    CHECK_THROWS_AS(primitive({0, 0}), std::domain_error);
}

TEST_CASE("primitive is idempotent and divides the input") {
    std::mt19937 rng(11);
    for (int i = 0; i < 300; ++i) {
        IntVec2 v = random_intvec(rng, 40);
        if (v.a == 0 && v.b == 0) continue;
        IntVec2 p = primitive(v);
        CHECK(primitive(p) == p);
        // p divides v componentwise with a common positive multiplier
        std::int64_t g = std::gcd(std::abs(v.a), std::abs(v.b));
        CHECK(p.a * g == v.a);
        CHECK(p.b * g == v.b);
    }
}

TEST_CASE("apply_affine") {
    AffineMapZ id;
    CHECK(apply_affine(id, {Rational(1, 2), Rational(3)}) ==
          RatVec2{Rational(1, 2), Rational(3)});

    AffineMapZ rot{{0, -1, 1, 0}, {Rational(0), Rational(1, 2)}};
    CHECK(apply_affine(rot, {Rational(0), Rational(0)}) == RatVec2{Rational(0), Rational(1, 2)});

    AffineMapZ shear{{1, 1, 0, 1}, {Rational(0), Rational(0)}};
    CHECK(apply_affine(shear, {Rational(1), Rational(1)}) == RatVec2{Rational(2), Rational(1)});
}

TEST_CASE("inverse_transpose") {
    RatMat2 id = inverse_transpose(IntMat2{1, 0, 0, 1});
    CHECK(id == RatMat2{Rational(1), Rational(0), Rational(0), Rational(1)});

    RatMat2 sh = inverse_transpose(IntMat2{1, 1, 0, 1});
    CHECK(sh == RatMat2{Rational(1), Rational(0), Rational(-1), Rational(1)});

    RatMat2 sc = inverse_transpose(IntMat2{2, 0, 0, 1});
    CHECK(sc == RatMat2{Rational(1, 2), Rational(0), Rational(0), Rational(1)});

    CHECK_THROWS_AS(inverse_transpose(IntMat2{1, 1, 1, 1}), std::domain_error);
}

TEST_CASE("inverse_transpose is an involution on GL(2,Z)") {
    std::mt19937 rng(13);
    for (int i = 0; i < 200; ++i) {
        IntMat2 m = random_gl2z(rng);
        REQUIRE(is_unimodular(m));
        RatMat2 it = inverse_transpose(m);
        Rational prod = it.det() * Rational(det(m));
        CHECK((prod == Rational(1) || prod == Rational(-1)));
        // entries are integral for unimodular input; applying twice returns m
        IntMat2 back{it.m00.num(), it.m01.num(), it.m10.num(), it.m11.num()};
        REQUIRE(it.m00.is_integer());
        REQUIRE(it.m01.is_integer());
        REQUIRE(it.m10.is_integer());
        REQUIRE(it.m11.is_integer());
        RatMat2 twice = inverse_transpose(back);
        CHECK(twice == to_rational(m));
    }
}

TEST_CASE("unimodularity is GL(2,Z)-invariant") {
    std::mt19937 rng(17);
    for (int i = 0; i < 300; ++i) {
        IntMat2 g = random_gl2z(rng);
        IntVec2 u = random_intvec(rng), v = random_intvec(rng);
        if ((u.a == 0 && u.b == 0) || (v.a == 0 && v.b == 0)) continue;
        CHECK(is_unimodular_pair(u, v) == is_unimodular_pair(g * u, g * v));
    }
}
