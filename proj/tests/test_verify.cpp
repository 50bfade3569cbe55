#include <doctest.h>

#include "oracles.hpp"

#include <multex/constructions.hpp>
#include <multex/errors.hpp>
#include <multex/verify.hpp>

#include <bit>

#include <nlohmann/json.hpp>

using namespace multex;

TEST_CASE("conjecture examples")
{
    const auto six = check_conjecture(3, 2, 2, 5, 6);
    CHECK(six.q == 34);
    CHECK(six.verdict == Verdict::refuted);
    CHECK(six.extremal.lower == BigNat {80621568});
    CHECK(six.construction_value == BigNat::pow(4, 5) * BigNat::pow(3, 10));

    const auto five = check_conjecture(3, 2, 2, 5, 5);
    CHECK(five.verdict == Verdict::verified);
    CHECK(five.construction_value == BigNat {186624});

    SearchConfig small;
    small.node_budget = 0;
    small.circulant_seeds = false;
    const auto seven = check_conjecture(3, 2, 2, 5, 7, small);
    CHECK(seven.verdict == Verdict::inconclusive);
}

TEST_CASE("conjecture hypotheses are enforced")
{
    CHECK_THROWS_WITH_AS(check_conjecture(3, 2, 2, 4, 6), doctest::Contains("s >= (r-1)(d+1)+2"), InvalidParameter);
    CHECK_THROWS_AS(check_conjecture(3, 2, 3, 5, 6), InvalidParameter);
    CHECK_THROWS_AS(check_conjecture(3, 2, 2, 5, 4), InvalidParameter);
    CHECK_THROWS_AS(check_conjecture(0, 2, 0, 5, 6), InvalidParameter);
}

TEST_CASE("verdict trichotomy")
{
    SearchResult r;
    r.lower = BigNat {10};
    r.upper = BigNat {10};
    r.status = SearchStatus::closed;
    CHECK(classify(r, BigNat {10}) == Verdict::verified);
    CHECK(classify(r, BigNat {9}) == Verdict::refuted);
    CHECK(classify(r, BigNat {11}) == Verdict::inconclusive);
    r.status = SearchStatus::budget_exhausted;
    r.upper = BigNat {20};
    CHECK(classify(r, BigNat {10}) == Verdict::inconclusive);
    CHECK(classify(r, BigNat {9}) == Verdict::refuted);
}

TEST_CASE("support enumeration")
{
    const auto tight = claim_c4_enumeration();
    CHECK(tight.supports_examined == 203490);
    CHECK(tight.valid_supports == 0);
    CHECK(tight.all_contain_c4);
    const auto relaxed = claim_c4_enumeration(5);
    CHECK(relaxed.valid_supports > 0);
    CHECK(relaxed == claim_c4_enumeration_serial(5));
    CHECK(tight == claim_c4_enumeration_serial(4));
}

TEST_CASE("support enumeration agrees with a direct vertex-set count")
{
    // Count 8-edge graphs on 7 vertices in which every 5-set spans at most
    // `cap` edges, checking 5-sets as vertex bitmasks.
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            pairs.emplace_back(i, j);
    for (int cap : {5, 6}) {
        std::uint64_t valid = 0;
        for (std::uint32_t m = 0; m < (1u << 21); ++m) {
            if (std::popcount(m) != 8)
                continue;
            bool ok = true;
            for (unsigned vs = 0; vs < 128 && ok; ++vs) {
                if (std::popcount(vs) != 5)
                    continue;
                int inside = 0;
                for (int e = 0; e < 21; ++e)
                    if ((m >> e & 1) && (vs >> pairs[static_cast<std::size_t>(e)].first & 1)
                        && (vs >> pairs[static_cast<std::size_t>(e)].second & 1))
                        ++inside;
                ok = inside <= cap;
            }
            valid += ok;
        }
        CHECK(claim_c4_enumeration(cap).valid_supports == valid);
    }
}

TEST_CASE("deep check matches between kernels")
{
    const auto par = claim_c4_enumeration(4, true);
    const auto ser = claim_c4_enumeration_serial(4, true);
    CHECK(par.deep_examined == 21 * 167960);
    CHECK(par == ser);
}

TEST_CASE("case bound table")
{
    for (Weight a = 3; a <= 40; ++a) {
        const auto t = case_bounds_n7(a);
        REQUIRE(t.rows.size() == 5);
        CHECK(t.argmax == 1);
        CHECK(t.rows[1].value == BigNat {a - 1} * BigNat::pow(a, 11) * BigNat::pow(a + 1, 9));
        CHECK(pi_rd(a, 2, 2, 7) < t.rows[1].value);
    }
    const auto t3 = case_bounds_n7(3);
    CHECK(t3.rows[1].value == BigNat {2} * BigNat::pow(3, 11) * BigNat::pow(4, 9));
    CHECK(t3.rows[4].value == BigNat::pow(3, 20) * BigNat {7});
    CHECK_THROWS_AS(case_bounds_n7(2), InvalidParameter);
}

TEST_CASE("ratio trend")
{
    const auto seven = ratio_trend(7, {3, 10, 100, 1000});
    REQUIRE(seven.size() == 4);
    CHECK(seven[3].decimal.rfind("1.000002", 0) == 0);
    CHECK(seven[3].value < 1.00001);
    for (std::size_t i = 1; i < seven.size(); ++i)
        CHECK(seven[i].scaled < seven[i - 1].scaled);

    // n = 7 ratio reduces to (a-1)a / ((a-2)(a+1)).
    for (const auto& p : seven) {
        const Weight a = p.a;
        CHECK(p.scaled == BigNat {(a - 1) * a}.scaled_quotient(BigNat {(a - 2) * (a + 1)}, ratio_digits));
    }

    const auto eight = ratio_trend(8, {3, 10, 100, 1000, 10000});
    for (std::size_t i = 1; i < eight.size(); ++i)
        CHECK(eight[i].scaled < eight[i - 1].scaled);
    for (const auto& p : eight) {
        CHECK(p.value > 1.0);
        // Within 1 + c/a for a modest c.
        CHECK((p.value - 1.0) * static_cast<double>(p.a) < 4.0);
    }
    CHECK_THROWS_AS(ratio_trend(6, {3}), InvalidParameter);
    CHECK_THROWS_AS(ratio_trend(8, {2}), InvalidParameter);
}

TEST_CASE("exhaustive reference agrees with leaf-checked enumeration")
{
    for (int n = 2; n <= 4; ++n)
        for (int s = 2; s <= n; ++s)
            for (Weight q = 0; q <= 5; ++q) {
                const auto r = brute_force_ex_pi(n, s, q);
                CHECK(r.value == oracle::big(oracle::ex_pi(n, s, q)));
                BigNat p;
                CHECK(certify_witness(r.witness, s, q, &p));
                CHECK(p == r.value);
            }
    CHECK_THROWS_AS(brute_force_ex_pi(3, 4, 2), InvalidParameter);
}

TEST_CASE("individual criteria")
{
    SuiteConfig cfg;
    CHECK(criterion_n5_exact(cfg).pass);
    CHECK(criterion_n6_refutation(cfg).pass);
    CHECK(criterion_n7_sandwich(cfg).pass);
    CHECK(criterion_averaging(cfg).pass);
    CHECK(criterion_partition_oracle(cfg).pass);
    CHECK(criterion_amgm_property(cfg).pass);
    CHECK(criterion_ratio_trend(cfg).pass);
}

TEST_CASE("negative control: a tightened q fails the exactness criteria")
{
    SuiteConfig cfg;
    cfg.q_shift = -1;
    CHECK_FALSE(criterion_n5_exact(cfg).pass);
    CHECK_FALSE(criterion_n6_refutation(cfg).pass);
}

TEST_CASE("zero budget: n = 5 and 6 close at the root, n = 7 keeps its own budget")
{
    SuiteConfig cfg;
    cfg.node_budget = 0;
    CHECK(criterion_n5_exact(cfg).pass);
    CHECK(criterion_n6_refutation(cfg).pass);
    CHECK(criterion_n7_enclosure(cfg).pass);
}

TEST_CASE("suite report JSON shape")
{
    SuiteReport rep;
    rep.criteria.push_back({3, "d", "e", "a", true, 1.5});
    const auto j = to_json(rep);
    CHECK(j.dump() == R"([{"id":3,"description":"d","expected":"e","actual":"a","pass":true,"runtime_ms":1.5}])");
    CHECK(rep.all_pass());
}
