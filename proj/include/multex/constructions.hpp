#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include <multex/bignat.hpp>
#include <multex/multigraph.hpp>

namespace multex {

/// One member of the Turan-type family T_{r,d}(a,n): part V0 carries
/// multiplicity a-d inside, parts V1..V_{r-1} carry a inside, and every
/// cross pair carries a+1. Empty parts are allowed.
struct TuranTemplate {
    Weight a = 1;
    int r = 1;
    Weight d = 0;
    std::vector<int> sizes; ///< sizes[0] = |V0|

    [[nodiscard]] int vertex_count() const;

    friend bool operator==(const TuranTemplate&, const TuranTemplate&) = default;
};

/// Throws InvalidParameter for a < 1, r < 1, d > a-1, sizes.size() != r,
/// negative sizes or an empty vertex set.
void validate(const TuranTemplate& t);

/// Parts are laid out consecutively: V0 is the first sizes[0] labels, etc.
Multigraph build_construction(const TuranTemplate& t);

/// Edge sum / product of a template, evaluated in closed form per part.
Weight template_edge_sum(const TuranTemplate& t);
BigNat template_product(const TuranTemplate& t);

struct SigmaOptimum {
    Weight value = 0;
    TuranTemplate witness;
};

struct PiOptimum {
    BigNat value;
    TuranTemplate witness;
};

// Maxima over every composition of n into r nonnegative parts. V1..V_{r-1}
// are interchangeable, so only nonincreasing tails are visited. Ties go to
// the smaller |V0|, then the lexicographically smaller size vector.
SigmaOptimum sigma_rd_optimum(Weight a, int r, Weight d, int n);
PiOptimum pi_rd_optimum(Weight a, int r, Weight d, int n);
Weight sigma_rd(Weight a, int r, Weight d, int n);
BigNat pi_rd(Weight a, int r, Weight d, int n);

/// Calls fn(const TuranTemplate&) for each canonical composition.
void for_each_composition(Weight a, int r, Weight d, int n, const std::function<void(const TuranTemplate&)>& fn);

/// Product of the two-part deficient construction with |V0| = x:
/// (a-2)^C(x,2) a^C(n-x,2) (a+1)^(x(n-x)).
BigNat two_part_profile(Weight a, int n, int x);

struct PartitionOptimum {
    int x_star = 0;
    BigNat value;
    bool tied = false; ///< x_star + 1 attains the same product
};

/// The |V0| maximising two_part_profile(a, n, .), decided by exact integer
/// cross-multiplication of adjacent profile ratios. Requires a >= 3, n >= 5.
PartitionOptimum optimal_v0_size(Weight a, int n);

/// ln(1 - 3/(a+1)) / ln(1 - 1/(a+1)). Display only. Requires a >= 3.
double f_ratio(Weight a);

nlohmann::ordered_json to_json(const TuranTemplate& t);
TuranTemplate template_from_json(const nlohmann::ordered_json& j);

} // namespace multex
