#include <multex/multigraph.hpp>

#include <multex/errors.hpp>

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace multex {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

Multigraph::Multigraph(int n, Weight fill)
    : n_(n)
{
    if (n < 1)
        throw InvalidInput("vertex count must be positive, got " + std::to_string(n));
    weights_.assign(choose2(static_cast<std::uint64_t>(n)), fill);
}

Multigraph::Multigraph(int n, std::vector<Weight> weights)
    : n_(n)
    , weights_(std::move(weights))
{
    if (n < 1)
        throw InvalidInput("vertex count must be positive, got " + std::to_string(n));
    if (weights_.size() != choose2(static_cast<std::uint64_t>(n)))
        throw InvalidInput("expected " + std::to_string(choose2(static_cast<std::uint64_t>(n))) + " pair weights, got "
            + std::to_string(weights_.size()));
}

Weight Multigraph::weight(Vertex i, Vertex j) const
{
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j)
        throw InvalidInput("no pair {" + std::to_string(i) + "," + std::to_string(j) + "}");
    return weights_[pair_index(n_, i, j)];
}

Multigraph Multigraph::with_weight(Vertex i, Vertex j, Weight w) const
{
    (void)weight(i, j);
    auto copy = weights_;
    copy[pair_index(n_, i, j)] = w;
    return Multigraph(n_, std::move(copy));
}

Multigraph Multigraph::relabeled(std::span<const Vertex> perm) const
{
    if (perm.size() != static_cast<std::size_t>(n_))
        throw InvalidInput("permutation size mismatch");
    std::vector<Weight> out(weights_.size());
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            out[pair_index(n_, perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)])]
                = weights_[pair_index(n_, i, j)];
    return Multigraph(n_, std::move(out));
}

void validate(const SQConstraint& c)
{
    if (c.s < 2)
        throw InvalidParameter("s must be at least 2, got " + std::to_string(c.s));
}

Weight spanned_sum(const Multigraph& g, std::span<const Vertex> subset)
{
    if (subset.size() < 2)
        throw InvalidInput("subset needs at least two vertices");
    std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
    for (Vertex v : subset) {
        if (v < 0 || v >= g.vertex_count())
            throw InvalidInput("vertex " + std::to_string(v) + " outside [0," + std::to_string(g.vertex_count()) + ")");
        if (seen[static_cast<std::size_t>(v)])
            throw InvalidInput("vertex " + std::to_string(v) + " repeated in subset");
        seen[static_cast<std::size_t>(v)] = true;
    }
    Weight sum = 0;
    const int n = g.vertex_count();
    const auto w = g.weights();
    for (std::size_t x = 0; x < subset.size(); ++x)
        for (std::size_t y = x + 1; y < subset.size(); ++y)
            sum += w[pair_index(n, subset[x], subset[y])];
    return sum;
}

Weight max_spanned_sum(const Multigraph& g, int s)
{
    Weight best = 0;
    const int n = g.vertex_count();
    const auto w = g.weights();
    for_each_subset(n, s, [&](std::span<const Vertex> x) {
        Weight sum = 0;
        for (std::size_t a = 0; a < x.size(); ++a)
            for (std::size_t b = a + 1; b < x.size(); ++b)
                sum += w[pair_index(n, x[a], x[b])];
        best = std::max(best, sum);
    });
    return best;
}

bool is_sq_graph(const Multigraph& g, const SQConstraint& c)
{
    validate(c);
    if (g.vertex_count() < c.s)
        return true;
    return max_spanned_sum(g, c.s) <= c.q;
}

BigNat product(const Multigraph& g)
{
    BigNat p {1};
    for (Weight w : g.weights()) {
        if (w == 0)
            return BigNat {0};
        p *= BigNat {w};
    }
    return p;
}

Weight edge_sum(const Multigraph& g)
{
    Weight sum = 0;
    for (Weight w : g.weights())
        sum += w;
    return sum;
}

void write_edge_list(std::ostream& os, const Multigraph& g)
{
    const int n = g.vertex_count();
    os << n << '\n';
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (const Weight w = g.weight(i, j); w > 0)
                os << (i + 1) << ' ' << (j + 1) << ' ' << w << '\n';
}

std::string to_edge_list(const Multigraph& g)
{
    std::ostringstream os;
    write_edge_list(os, g);
    return os.str();
}

Multigraph read_edge_list(std::istream& is)
{
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(is, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.find_first_not_of(" \t") != std::string::npos)
                return true;
        }
        return false;
    };

    if (!next_line())
        throw InvalidInput("edge list: missing vertex count");
    long long n = 0;
    {
        std::istringstream ls(line);
        std::string rest;
        if (!(ls >> n) || (ls >> rest) || n < 1)
            throw InvalidInput("edge list line " + std::to_string(line_no) + ": expected positive vertex count");
    }
    std::vector<Weight> weights(choose2(static_cast<std::uint64_t>(n)), 0);
    std::vector<bool> set(weights.size(), false);
    while (next_line()) {
        std::istringstream ls(line);
        long long i = 0, j = 0;
        long long w = 0;
        std::string rest;
        if (!(ls >> i >> j >> w) || (ls >> rest))
            throw InvalidInput("edge list line " + std::to_string(line_no) + ": expected 'i j w'");
        if (i < 1 || j > n || i >= j)
            throw InvalidInput("edge list line " + std::to_string(line_no) + ": need 1 <= i < j <= n");
        if (w < 0)
            throw InvalidInput("edge list line " + std::to_string(line_no) + ": negative multiplicity");
        const auto idx = pair_index(static_cast<int>(n), static_cast<int>(i - 1), static_cast<int>(j - 1));
        if (set[idx])
            throw InvalidInput("edge list line " + std::to_string(line_no) + ": duplicate pair");
        set[idx] = true;
        weights[idx] = static_cast<Weight>(w);
    }
    return Multigraph(static_cast<int>(n), std::move(weights));
}

Multigraph parse_edge_list(const std::string& text)
{
    std::istringstream is(text);
    return read_edge_list(is);
}

} // namespace multex
