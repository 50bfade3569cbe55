#include <doctest.h>

#include "oracles.hpp"

#include <multex/errors.hpp>
#include <multex/multigraph.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

using namespace multex;

TEST_SUITE("bignat")
{
    TEST_CASE("round trip and arithmetic")
    {
        const BigNat x = BigNat::from_decimal("123456789012345678901234567890");
        CHECK(x.to_decimal() == "123456789012345678901234567890");
        CHECK((BigNat {3} * BigNat {4}).to_decimal() == "12");
        CHECK((BigNat {0} + BigNat {7}) == BigNat {7});
        CHECK(BigNat::pow(3, 0) == BigNat {1});
        CHECK(BigNat::pow(0, 0) == BigNat {1});
        CHECK(BigNat::pow(2, 100).to_decimal() == "1267650600228229401496703205376");
        CHECK(BigNat {~std::uint64_t {0}}.to_decimal() == "18446744073709551615");
    }

    TEST_CASE("ordering agrees with fixed-width arithmetic")
    {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 500; ++i) {
            const oracle::u128 a = static_cast<oracle::u128>(rng()) * rng();
            const oracle::u128 b = static_cast<oracle::u128>(rng()) * rng();
            CHECK((oracle::big(a) < oracle::big(b)) == (a < b));
            CHECK(oracle::big(a) * oracle::big(1) == oracle::big(a));
        }
    }

    TEST_CASE("rejects malformed decimal")
    {
        CHECK_THROWS_AS(BigNat::from_decimal(""), std::invalid_argument);
        CHECK_THROWS_AS(BigNat::from_decimal("-5"), std::invalid_argument);
        CHECK_THROWS_AS(BigNat::from_decimal("12a"), std::invalid_argument);
    }

    TEST_CASE("scaled quotient and decimal ratio")
    {
        CHECK(BigNat {1}.scaled_quotient(BigNat {3}, 5) == BigNat {33333});
        CHECK(decimal_ratio(BigNat {3}, BigNat {2}, 3) == "1.500");
        CHECK(decimal_ratio(BigNat {999 * 1000}, BigNat {998 * 1001}, 6) == "1.000002");
    }
}

TEST_SUITE("multigraph")
{
    TEST_CASE("pair index is dense and lexicographic")
    {
        for (int n = 2; n <= 9; ++n) {
            std::size_t k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    CHECK(pair_index(n, i, j) == k);
                    CHECK(pair_index(n, j, i) == k);
                    ++k;
                }
            CHECK(k == choose2(static_cast<std::uint64_t>(n)));
        }
    }

    TEST_CASE("construction validates size")
    {
        CHECK_THROWS_AS(Multigraph(4, std::vector<Weight>(5)), InvalidInput);
        CHECK_NOTHROW(Multigraph(4, std::vector<Weight>(6)));
    }

    TEST_CASE("spanned_sum examples")
    {
        const Multigraph all3(5, 3);
        const std::vector<Vertex> all {0, 1, 2, 3, 4};
        CHECK(spanned_sum(all3, all) == 30);

        const Multigraph single = Multigraph(2).with_weight(0, 1, 7);
        const std::vector<Vertex> pair {0, 1};
        CHECK(spanned_sum(single, pair) == 7);

        const auto c6 = oracle::c6_graph(3);
        const std::vector<Vertex> five {0, 1, 2, 3, 4};
        CHECK(spanned_sum(c6, five) == 34);
    }

    TEST_CASE("spanned_sum rejects bad subsets")
    {
        const Multigraph g(4, 1);
        const std::vector<Vertex> outside {0, 4};
        const std::vector<Vertex> repeated {1, 1};
        const std::vector<Vertex> tiny {2};
        CHECK_THROWS_AS(spanned_sum(g, outside), InvalidInput);
        CHECK_THROWS_AS(spanned_sum(g, repeated), InvalidInput);
        CHECK_THROWS_AS(spanned_sum(g, tiny), InvalidInput);
    }

    TEST_CASE("is_sq_graph examples")
    {
        for (Weight a : {1, 3, 7}) {
            CHECK(is_sq_graph(Multigraph(5, a), {5, 10 * a + 4}));
            CHECK_FALSE(is_sq_graph(Multigraph(5, a + 1), {5, 10 * a + 4}));
        }
        CHECK(is_sq_graph(oracle::c6_graph(3), {5, 34}));
        CHECK_FALSE(is_sq_graph(oracle::c6_graph(3), {5, 33}));
        CHECK(is_sq_graph(Multigraph(3, 1000), {5, 0}));
        CHECK_THROWS_AS(validate(SQConstraint {1, 3}), InvalidParameter);
    }

    TEST_CASE("product and edge sum examples")
    {
        CHECK(product(Multigraph(5, 3)) == BigNat {59049});
        CHECK(product(Multigraph(5, 3).with_weight(1, 3, 0)).is_zero());
        CHECK(product(oracle::c6_graph(3)) == BigNat {80621568});
        CHECK(edge_sum(Multigraph(6, 3)) == 45);
        CHECK(edge_sum(oracle::c6_graph(3)) == 51);
        CHECK(edge_sum(Multigraph(3).with_weight(0, 2, 5)) == 5);
        CHECK(product(Multigraph(1)) == BigNat {1});
    }

    TEST_CASE("random graphs agree with the oracles and satisfy the invariants")
    {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 300; ++trial) {
            const int n = std::uniform_int_distribution<int>(2, 7)(rng);
            std::vector<Weight> w(choose2(static_cast<std::uint64_t>(n)));
            for (auto& x : w)
                x = std::uniform_int_distribution<Weight>(0, 6)(rng);
            const Multigraph g(n, w);

            CHECK(product(g) == oracle::big(oracle::product(g)));
            std::vector<Vertex> everyone(static_cast<std::size_t>(n));
            std::iota(everyone.begin(), everyone.end(), 0);
            CHECK(spanned_sum(g, everyone) == edge_sum(g));

            const int s = std::uniform_int_distribution<int>(2, n)(rng);
            const Weight best = oracle::max_s_sum(g, s);
            CHECK(max_spanned_sum(g, s) == best);
            CHECK(is_sq_graph(g, {s, best}));
            if (best > 0)
                CHECK_FALSE(is_sq_graph(g, {s, best - 1}));

            // Lowering a multiplicity keeps an (s,q)-graph feasible.
            const int i = std::uniform_int_distribution<int>(0, n - 2)(rng);
            const int j = std::uniform_int_distribution<int>(i + 1, n - 1)(rng);
            const Weight cur = g.weight(i, j);
            if (cur > 0)
                CHECK(is_sq_graph(g.with_weight(i, j, cur - 1), {s, best}));

            // Every multiplicity of an (s,q)-graph is at most q.
            for (auto x : g.weights())
                CHECK(x <= best);

            std::vector<Vertex> perm = everyone;
            std::shuffle(perm.begin(), perm.end(), rng);
            const Multigraph h = g.relabeled(perm);
            CHECK(product(h) == product(g));
            CHECK(edge_sum(h) == edge_sum(g));
            CHECK(max_spanned_sum(h, s) == best);
        }
    }

    TEST_CASE("edge list round trip")
    {
        const auto g = oracle::c6_graph(3).with_weight(0, 3, 0);
        const std::string text = to_edge_list(g);
        CHECK(text.rfind("6\n1 2 4\n", 0) == 0);
        CHECK(text.find("1 4 ") == std::string::npos);
        CHECK(parse_edge_list(text) == g);
        std::istringstream is(text);
        CHECK(read_edge_list(is) == g);
    }

    TEST_CASE("edge list rejects malformed input")
    {
        CHECK_THROWS_AS(parse_edge_list(""), InvalidInput);
        CHECK_THROWS_AS(parse_edge_list("3\n1 4 2\n"), InvalidInput);
        CHECK_THROWS_AS(parse_edge_list("3\n2 1 2\n"), InvalidInput);
        CHECK_THROWS_AS(parse_edge_list("3\n1 2 2\n1 2 3\n"), InvalidInput);
        CHECK_THROWS_AS(parse_edge_list("3\n1 2 x\n"), InvalidInput);
    }
}
