#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <multex/bignat.hpp>

namespace multex {

using Weight = std::uint64_t;
using Vertex = int;

/// Index of the unordered pair {i, j} (0-based, i != j) in the dense
/// lexicographic triangular layout: (0,1), (0,2), ..., (0,n-1), (1,2), ...
constexpr std::size_t pair_index(int n, int i, int j)
{
    if (i > j) {
        const int t = i;
        i = j;
        j = t;
    }
    const auto ui = static_cast<std::size_t>(i);
    const auto un = static_cast<std::size_t>(n);
    return ui * (2 * un - ui - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

constexpr std::uint64_t choose2(std::uint64_t k) { return k * (k - (k > 0 ? 1 : 0)) / 2; }

/// Binomial coefficient; exact for the small arguments used here.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Vertex count plus one multiplicity per unordered pair. Immutable.
class Multigraph {
public:
    Multigraph() = default;

    /// All pairs set to `fill`.
    explicit Multigraph(int n, Weight fill = 0);

    /// Takes C(n,2) weights in pair_index order; throws InvalidInput on a size mismatch.
    Multigraph(int n, std::vector<Weight> weights);

    [[nodiscard]] int vertex_count() const { return n_; }
    [[nodiscard]] std::size_t pair_count() const { return weights_.size(); }
    [[nodiscard]] Weight weight(Vertex i, Vertex j) const;
    [[nodiscard]] std::span<const Weight> weights() const { return weights_; }

    /// Copy with the pair {i,j} set to w.
    [[nodiscard]] Multigraph with_weight(Vertex i, Vertex j, Weight w) const;

    /// Copy with vertex v renamed to perm[v].
    [[nodiscard]] Multigraph relabeled(std::span<const Vertex> perm) const;

    friend bool operator==(const Multigraph&, const Multigraph&) = default;
    friend auto operator<=>(const Multigraph&, const Multigraph&) = default;

private:
    int n_ = 0;
    std::vector<Weight> weights_;
};

/// The s-set edge-sum cap of an (s,q)-graph.
struct SQConstraint {
    int s = 2;
    Weight q = 0;
};

/// Throws InvalidParameter unless s >= 2.
void validate(const SQConstraint& c);

/// Sum of multiplicities over pairs inside `subset` (0-based vertices).
/// Throws InvalidInput for out-of-range or repeated vertices or |subset| < 2.
Weight spanned_sum(const Multigraph& g, std::span<const Vertex> subset);

/// True iff every s-set spans at most q; vacuously true when n < s.
bool is_sq_graph(const Multigraph& g, const SQConstraint& c);

/// Largest s-set edge sum, i.e. the smallest q for which g is an (s,q)-graph.
/// Zero when n < s.
Weight max_spanned_sum(const Multigraph& g, int s);

/// Exact product of all C(n,2) multiplicities.
BigNat product(const Multigraph& g);

/// e(G): the sum of all multiplicities.
Weight edge_sum(const Multigraph& g);

/// Calls fn(span<const Vertex>) for every k-subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(int n, int k, Fn&& fn)
{
    if (k < 0 || k > n)
        return;
    std::vector<Vertex> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        fn(std::span<const Vertex>(idx));
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i)
            --i;
        if (i < 0)
            return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// Edge-list text format: first line n, then "i j w" per positive pair
// (1-based, i < j). Absent pairs are zero.
void write_edge_list(std::ostream& os, const Multigraph& g);
std::string to_edge_list(const Multigraph& g);
Multigraph read_edge_list(std::istream& is);
Multigraph parse_edge_list(const std::string& text);

} // namespace multex
