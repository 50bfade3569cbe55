#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include <multex/bignat.hpp>
#include <multex/multigraph.hpp>

namespace multex {

enum class BoundMethod {
    averaging_amgm,
    amgm_with_deficient_edge,
    case_analysis,
};

std::string to_string(BoundMethod m);

struct BoundReport {
    int n = 0;
    int s = 0;
    Weight q = 0;
    Weight edge_cap = 0;
    BigNat product_cap;
    BoundMethod method = BoundMethod::averaging_amgm;
};

/// Maximum product of m nonnegative integers summing to `total`:
/// with total = b*m + t, 0 <= t < m, this is b^(m-t) (b+1)^t.
BigNat amgm_upper(std::uint64_t m, std::uint64_t total);

/// Maximum product of m nonnegative integers summing to a*m + t when one of
/// them is pinned to a-1: (a-1) a^(m-t-2) (a+1)^(t+1). Requires m >= 2 and
/// 0 <= t <= m-2; otherwise throws InvalidParameter and callers use amgm_upper.
BigNat amgm_upper_with_deficient(std::uint64_t m, std::uint64_t total, Weight a);

/// floor(q C(n,2) / C(s,2)): summing the s-set caps counts every pair
/// C(n-2, s-2) times. Requires n >= s >= 2.
Weight averaging_edge_bound(int n, int s, Weight q);

/// averaging_edge_bound chained into amgm_upper over the C(n,2) pairs.
BoundReport product_upper_bound(int n, int s, Weight q);

nlohmann::ordered_json to_json(const BoundReport& r);

} // namespace multex
