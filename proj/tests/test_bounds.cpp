#include <doctest.h>

#include "oracles.hpp"

#include <multex/bounds.hpp>
#include <multex/constructions.hpp>
#include <multex/errors.hpp>

#include <random>

#include <nlohmann/json.hpp>

using namespace multex;

TEST_CASE("amgm_upper examples")
{
    CHECK(amgm_upper(10, 34) == BigNat {186624});
    CHECK(amgm_upper(10, 30) == BigNat::pow(3, 10));
    CHECK(amgm_upper(21, 71) == BigNat::pow(3, 13) * BigNat::pow(4, 8));
    CHECK(amgm_upper(3, 0).is_zero());
    CHECK(amgm_upper(4, 2).is_zero());
    CHECK_THROWS_AS(amgm_upper(0, 5), InvalidParameter);
}

TEST_CASE("amgm_upper is the exact maximum")
{
    for (int m = 1; m <= 5; ++m)
        for (std::uint64_t S = 0; S <= 18; ++S)
            CHECK(amgm_upper(static_cast<std::uint64_t>(m), S) == oracle::big(oracle::max_product(m, S)));
    // Scaled-down version of the 21-pair case at a = 3.
    CHECK(amgm_upper(5, 17) == oracle::big(oracle::max_product(5, 17)));
}

TEST_CASE("amgm_upper is nondecreasing in the sum")
{
    for (std::uint64_t m = 1; m <= 12; ++m)
        for (std::uint64_t S = 0; S < 80; ++S)
            CHECK(amgm_upper(m, S) <= amgm_upper(m, S + 1));
}

TEST_CASE("amgm_upper_with_deficient examples")
{
    for (Weight a = 3; a <= 20; ++a)
        CHECK(amgm_upper_with_deficient(21, 21 * a + 8, a)
            == BigNat {a - 1} * BigNat::pow(a, 11) * BigNat::pow(a + 1, 9));
    CHECK(amgm_upper_with_deficient(3, 9, 3) == BigNat {24});
    CHECK(amgm_upper_with_deficient(2, 10, 5) == BigNat {24});
    CHECK_THROWS_AS(amgm_upper_with_deficient(3, 3 * 4 + 2, 4), InvalidParameter);
    CHECK_THROWS_AS(amgm_upper_with_deficient(1, 3, 3), InvalidParameter);
    CHECK_THROWS_AS(amgm_upper_with_deficient(3, 5, 2), InvalidParameter);
}

TEST_CASE("deficient bound is the exact pinned maximum and below the free one")
{
    for (int m = 2; m <= 5; ++m)
        for (Weight a = 1; a <= 4; ++a)
            for (int t = 0; t <= m - 2; ++t) {
                const std::uint64_t S = a * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(t);
                const auto pinned = amgm_upper_with_deficient(static_cast<std::uint64_t>(m), S, a);
                CHECK(pinned == oracle::big(oracle::max_product(m, S, static_cast<std::int64_t>(a - 1))));
                CHECK(pinned <= amgm_upper(static_cast<std::uint64_t>(m), S));
            }
}

TEST_CASE("random vectors never exceed the bounds")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10000; ++trial) {
        const int m = std::uniform_int_distribution<int>(1, 8)(rng);
        std::vector<std::uint64_t> v(static_cast<std::size_t>(m));
        std::uint64_t S = 0;
        oracle::u128 p = 1;
        for (auto& x : v) {
            x = std::uniform_int_distribution<std::uint64_t>(0, 60 / static_cast<std::uint64_t>(m))(rng);
            S += x;
            p *= x;
        }
        CHECK(oracle::big(p) <= amgm_upper(static_cast<std::uint64_t>(m), S));
    }
}

TEST_CASE("averaging_edge_bound examples")
{
    for (Weight a = 0; a <= 60; ++a) {
        CHECK(averaging_edge_bound(7, 5, 10 * a + 4) == 21 * a + 8);
        CHECK(averaging_edge_bound(6, 5, 10 * a + 4) == 15 * a + 6);
        CHECK(averaging_edge_bound(5, 5, 10 * a + 4) == 10 * a + 4);
    }
    CHECK(averaging_edge_bound(9, 2, 4) == 144);
    CHECK_THROWS_AS(averaging_edge_bound(4, 5, 10), InvalidParameter);
    CHECK_THROWS_AS(averaging_edge_bound(4, 1, 10), InvalidParameter);
}

TEST_CASE("averaging bound equals an explicit double count")
{
    for (int n = 2; n <= 9; ++n)
        for (int s = 2; s <= n; ++s)
            for (Weight q = 0; q <= 25; ++q) {
                const std::uint64_t sets = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s));
                const std::uint64_t per_pair = binomial(static_cast<std::uint64_t>(n - 2), static_cast<std::uint64_t>(s - 2));
                CHECK(averaging_edge_bound(n, s, q) == q * sets / per_pair);
            }
}

TEST_CASE("product_upper_bound examples")
{
    CHECK(product_upper_bound(6, 5, 34).product_cap == BigNat {80621568});
    CHECK(product_upper_bound(6, 5, 34).edge_cap == 51);
    CHECK(product_upper_bound(5, 5, 34).product_cap == BigNat {186624});
    for (Weight a = 3; a <= 10; ++a)
        CHECK(product_upper_bound(8, 5, 10 * a + 4).product_cap == BigNat::pow(a, 17) * BigNat::pow(a + 1, 11));
    const auto j = to_json(product_upper_bound(6, 5, 34));
    CHECK(j.dump() == R"({"n":6,"s":5,"q":34,"edge_cap":51,"product_cap":"80621568","method":"averaging+amgm"})");
}

TEST_CASE("product cap dominates every admissible construction")
{
    for (Weight a = 1; a <= 5; ++a)
        for (int r = 1; r <= 3; ++r)
            for (Weight d = 0; d < a; ++d)
                for (int s = 2; s <= 5; ++s) {
                    const Weight q = sigma_rd(a, r, d, s);
                    for (int n = s; n <= 8; ++n)
                        CHECK(pi_rd(a, r, d, n) <= product_upper_bound(n, s, q).product_cap);
                }
}
