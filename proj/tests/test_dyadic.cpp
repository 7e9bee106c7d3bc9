#include <doctest.h>

#include "triwalsh/dyadic.hpp"

using namespace triwalsh;

TEST_CASE("dyadic addition of naturals is xor") {
    CHECK(dyadic_add(Nat(3), Nat(5)).u64() == 6);
    CHECK(dyadic_add(Nat(13), Nat(0)).u64() == 13);
    for (std::uint64_t n : {0ull, 1ull, 7ull, 1023ull, 8191ull})
        CHECK(dyadic_add(Nat(u128(n)), Nat(u128(n))).u64() == 0);
}

TEST_CASE("xor group laws, exhaustive below 2^10") {
    for (std::uint64_t a = 0; a < 1024; ++a)
        for (std::uint64_t b = 0; b < 1024; ++b) {
            Nat s = dyadic_add(Nat(u128(a)), Nat(u128(b)));
            REQUIRE(s.u64() == (a ^ b));
            REQUIRE(dyadic_add(s, Nat(u128(b))).u64() == a);  // self-inverse
        }
    // associativity on a coarser sample
    for (std::uint64_t a = 0; a < 64; ++a)
        for (std::uint64_t b = 0; b < 64; ++b)
            for (std::uint64_t c = 0; c < 64; ++c)
                REQUIRE(dyadic_add(dyadic_add(Nat(u128(a)), Nat(u128(b))), Nat(u128(c))).u64() ==
                        dyadic_add(Nat(u128(a)), dyadic_add(Nat(u128(b)), Nat(u128(c)))).u64());
}

TEST_CASE("low and high digit parts") {
    CHECK(low_part(Nat(13), 2).u64() == 5);
    CHECK(high_part(Nat(13), 2).u64() == 12);
    CHECK(low_part(Nat(13), order(Nat(13))).u64() == 13);
    CHECK(high_part(Nat(13), 0).u64() == 13);
    for (std::uint64_t n = 0; n < (1 << 12); ++n)
        for (int k = 0; k <= 12; ++k)
            REQUIRE(low_part(Nat(u128(n)), k).u64() + high_part(Nat(u128(n)), k + 1).u64() == n);
}

TEST_CASE("order of a natural") {
    CHECK(order(Nat(13)) == 3);
    CHECK(order(Nat(1)) == 0);
    for (int s = 0; s <= 20; ++s) CHECK(order(Nat(u128(1) << s)) == s);
    for (std::uint64_t n = 1; n < 4096; ++n) {
        int o = order(Nat(u128(n)));
        REQUIRE((std::uint64_t(1) << o) <= n);
        REQUIRE(n < (std::uint64_t(1) << (o + 1)));
    }
    CHECK_THROWS_AS(order(Nat(0)), std::domain_error);
}

TEST_CASE("dyadic points and digits") {
    DyadicPoint x(3, 5);  // 5/8 = .101
    CHECK(x.digit(0) == 1);
    CHECK(x.digit(1) == 0);
    CHECK(x.digit(2) == 1);
    CHECK(x.digit(7) == 0);
    CHECK_THROWS_AS(DyadicPoint(3, 8), std::domain_error);
    DyadicPoint e1 = unit_point(1, 4);
    CHECK(e1.cell == 4);  // 1/4 = .01 at resolution 4
    CHECK(e1.digit(1) == 1);
}

TEST_CASE("rademacher functions") {
    CHECK(rademacher(0, DyadicPoint(1, 1)) == -1);  // x = 1/2
    CHECK(rademacher(1, DyadicPoint(2, 1)) == -1);  // [1/4, 1/2) at resolution 2
    for (int i = 0; i < 10; ++i) CHECK(rademacher(i, DyadicPoint(4, 0)) == 1);
    // digits beyond the resolution are zero
    CHECK(rademacher(9, DyadicPoint(3, 5)) == 1);
}

TEST_CASE("walsh functions: examples") {
    for (std::uint64_t c = 0; c < 16; ++c) CHECK(walsh(Nat(0), DyadicPoint(4, c)) == 1);
    CHECK(walsh(Nat(3), DyadicPoint(2, 1)) == -1);  // x = 1/4: x0=0, x1=1
    for (int i = 0; i < 5; ++i)
        for (std::uint64_t c = 0; c < 32; ++c)
            CHECK(walsh(Nat(u128(1) << i), DyadicPoint(5, c)) == rademacher(i, DyadicPoint(5, c)));
    CHECK_THROWS_AS(walsh(Nat(4), DyadicPoint(2, 1)), std::domain_error);
}

TEST_CASE("character and dual laws, exhaustive at resolution <= 8") {
    for (int m : {4, 8}) {
        std::uint64_t cells = std::uint64_t(1) << m;
        for (std::uint64_t n = 0; n < cells; ++n)
            for (std::uint64_t x = 0; x < cells; ++x) {
                int wx = walsh_sign(n, x, m);
                for (std::uint64_t y = 0; y < cells; ++y) {
                    REQUIRE(walsh_sign(n, x ^ y, m) == wx * walsh_sign(n, y, m));
                    REQUIRE(walsh_sign(n ^ y, x, m) == wx * walsh_sign(y, x, m));
                }
            }
    }
}

TEST_CASE("walsh value is constant on the defining cell") {
    for (std::uint64_t n = 1; n < 16; ++n)
        for (std::uint64_t c = 0; c < 16; ++c)
            for (std::uint64_t sub = 0; sub < 4; ++sub)
                REQUIRE(walsh(Nat(u128(n)), DyadicPoint(4, c)) ==
                        walsh(Nat(u128(n)), DyadicPoint(6, (c << 2) | sub)));
}

TEST_CASE("dyadic interval membership") {
    DyadicInterval I2(2, DyadicPoint(4, 5));  // first two digits 0,1 -> [1/4, 1/2)
    CHECK(I2.contains(DyadicPoint(4, 4)));
    CHECK(I2.contains(DyadicPoint(4, 7)));
    CHECK(!I2.contains(DyadicPoint(4, 8)));
    CHECK(!I2.contains(DyadicPoint(4, 3)));
    DyadicInterval I0(0, DyadicPoint(1, 0));
    for (std::uint64_t c = 0; c < 2; ++c) CHECK(I0.contains(DyadicPoint(1, c)));
}

TEST_CASE("point addition is cellwise xor") {
    for (std::uint64_t a = 0; a < 32; ++a)
        for (std::uint64_t b = 0; b < 32; ++b)
            REQUIRE(dyadic_add(DyadicPoint(5, a), DyadicPoint(5, b)).cell == (a ^ b));
    CHECK_THROWS_AS(dyadic_add(DyadicPoint(3, 0), DyadicPoint(4, 0)), std::domain_error);
}

TEST_CASE("int128 string round trip") {
    for (i128 v : {i128(0), i128(-1), i128(123456789), -(i128(1) << 100)})
        CHECK(parse_i128(to_string(v)) == v);
    CHECK_THROWS_AS(parse_i128("12x"), std::invalid_argument);
}
