#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include <multex/bignat.hpp>
#include <multex/search.hpp>

namespace multex {

// ---------------------------------------------------------------------------
// Conjecture classifier

enum class Verdict {
    verified,     ///< search closed at the construction value
    refuted,      ///< some (n,s,q)-graph beats the construction
    inconclusive, ///< enclosure still straddles the construction value
};

std::string to_string(Verdict v);

struct ConjectureVerdict {
    Weight a = 0;
    int r = 0;
    Weight d = 0;
    int s = 0;
    int n = 0;
    Weight q = 0;
    BigNat construction_value;
    TuranTemplate construction;
    SearchResult extremal;
    Verdict verdict = Verdict::inconclusive;
};

/// Classifies ex_Pi(n, s, Sigma_{r,d}(a,s)) against Pi_{r,d}(a,n). Throws
/// InvalidParameter naming the hypothesis when s < (r-1)(d+1)+2, n < s, or
/// the family parameters are out of range.
ConjectureVerdict check_conjecture(Weight a, int r, Weight d, int s, int n, const SearchConfig& cfg = {});

Verdict classify(const SearchResult& extremal, const BigNat& construction_value);

nlohmann::ordered_json to_json(const ConjectureVerdict& v);

// ---------------------------------------------------------------------------
// Support enumeration on 7 vertices

struct ClaimC4Report {
    int cap = 4;
    std::uint64_t supports_examined = 0;
    std::uint64_t valid_supports = 0;
    std::uint64_t valid_with_c4 = 0;
    bool all_contain_c4 = true;

    // Optional deep check: one deficient pair plus nine heavy pairs.
    bool deep = false;
    std::uint64_t deep_examined = 0;
    std::uint64_t deep_valid = 0;

    friend bool operator==(const ClaimC4Report&, const ClaimC4Report&) = default;
};

/// Every simple 8-edge graph on 7 labelled vertices; a support is valid when
/// every 5-set spans at most `cap` of its edges. With `deep`, also every
/// placement of one a-1 pair and nine a+1 pairs (the rest at a), valid when
/// no 5-set exceeds 10a+4, i.e. heavy minus deficient pairs inside <= 4.
ClaimC4Report claim_c4_enumeration(int cap = 4, bool deep = false);

/// Serial reference kernel for the same enumeration.
ClaimC4Report claim_c4_enumeration_serial(int cap = 4, bool deep = false);

nlohmann::ordered_json to_json(const ClaimC4Report& r);

// ---------------------------------------------------------------------------
// n = 7 case bounds

struct CaseBound {
    std::string label;
    BigNat value;
};

struct CaseBoundTable {
    Weight a = 0;
    std::vector<CaseBound> rows;
    std::size_t argmax = 0;
};

/// a^14(a+1)^7, (a-1)a^11(a+1)^9, a^16(a+1)^4(a+2), a^18(a+1)^2(a+3),
/// a^20(a+4) evaluated exactly, with the index of the largest. Requires a >= 3.
CaseBoundTable case_bounds_n7(Weight a);

// ---------------------------------------------------------------------------
// Bound ratio trend

struct RatioPoint {
    Weight a = 0;
    BigNat numerator;
    BigNat denominator;
    BigNat scaled;       ///< floor(numerator * 10^64 / denominator)
    std::string decimal; ///< scaled rendered with 64 fractional digits
    double value = 0;
};

inline constexpr unsigned ratio_digits = 64;

/// For n = 7: (a-1)a^11(a+1)^9 over (a-2)a^10(a+1)^10. For n >= 8: the
/// averaging product cap at q = 10a+4, s = 5 over Pi_{2,2}(a,n). Requires
/// n >= 7 and every a >= 3.
std::vector<RatioPoint> ratio_trend(int n, const std::vector<Weight>& a_grid);

// ---------------------------------------------------------------------------
// Exhaustive reference

struct BruteForceResult {
    BigNat value;
    Multigraph witness;
    std::uint64_t leaves = 0;
};

/// ex_Pi(n,s,q) by plain enumeration of F(n,s,q): no bounds, no symmetry.
/// The only shortcut is monotonicity: a pair whose s-sets are otherwise fully
/// assigned takes its largest feasible value. Requires n >= s >= 2.
BruteForceResult brute_force_ex_pi(int n, int s, Weight q);

// ---------------------------------------------------------------------------
// Acceptance suite

struct SuiteConfig {
    std::optional<std::uint64_t> node_budget; ///< for the n=5,6 searches
    std::optional<double> search_secs;        ///< for the n=5,6 searches
    double n7_secs = 60;                      ///< budget for the n=7 enclosure
    int threads = 1;
    std::int64_t q_shift = 0;                ///< added to every q; -1 is the negative control
    bool include_oracle_sweep = true;        ///< the brute-force equivalence sweep
    std::uint64_t property_samples = 10000;
    std::uint64_t seed = 20240601;
};

struct CriterionResult {
    int id = 0;
    std::string description;
    std::string expected;
    std::string actual;
    bool pass = false;
    double runtime_ms = 0;
};

struct SuiteReport {
    std::vector<CriterionResult> criteria;
    [[nodiscard]] bool all_pass() const;
};

/// Runs the acceptance criteria in id order, calling `progress` after each.
SuiteReport theorem_suite(const SuiteConfig& cfg = {},
    const std::function<void(const CriterionResult&)>& progress = {});

/// Individual criteria, usable on their own.
CriterionResult criterion_n5_exact(const SuiteConfig& cfg);
CriterionResult criterion_n6_refutation(const SuiteConfig& cfg);
CriterionResult criterion_n7_sandwich(const SuiteConfig& cfg);
CriterionResult criterion_n7_enclosure(const SuiteConfig& cfg);
CriterionResult criterion_claim_c4(const SuiteConfig& cfg);
CriterionResult criterion_averaging(const SuiteConfig& cfg);
CriterionResult criterion_partition_oracle(const SuiteConfig& cfg);
CriterionResult criterion_amgm_property(const SuiteConfig& cfg);
CriterionResult criterion_ratio_trend(const SuiteConfig& cfg);
CriterionResult criterion_oracle_equivalence(const SuiteConfig& cfg);

/// JSON array of {id, description, expected, actual, pass, runtime_ms}.
nlohmann::ordered_json to_json(const SuiteReport& r);

} // namespace multex
