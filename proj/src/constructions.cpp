#include <multex/constructions.hpp>

#include <multex/errors.hpp>

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

namespace multex {

namespace {

void validate_family(Weight a, int r, Weight d, int n)
{
    if (a < 1)
        throw InvalidParameter("a must be at least 1");
    if (r < 1)
        throw InvalidParameter("r must be at least 1");
    if (d > a - 1)
        throw InvalidParameter("d must lie in [0, a-1], got d=" + std::to_string(d) + " with a=" + std::to_string(a));
    if (n < 1)
        throw InvalidParameter("n must be at least 1");
}

// Nonincreasing tails of `parts` nonnegative values summing to `total`, in
// lexicographically ascending order.
void for_each_tail(int parts, int total, int cap, std::vector<int>& tail, const std::function<void()>& fn)
{
    if (parts == 0) {
        if (total == 0)
            fn();
        return;
    }
    // the head must be large enough for the rest to fit under it
    const int lo = (total + parts - 1) / parts;
    const int hi = std::min(cap, total);
    for (int v = lo; v <= hi; ++v) {
        tail.push_back(v);
        for_each_tail(parts - 1, total - v, v, tail, fn);
        tail.pop_back();
    }
}

} // namespace

int TuranTemplate::vertex_count() const
{
    int n = 0;
    for (int x : sizes)
        n += x;
    return n;
}

void validate(const TuranTemplate& t)
{
    if (t.sizes.size() != static_cast<std::size_t>(t.r) && t.r >= 1)
        throw InvalidParameter("template lists " + std::to_string(t.sizes.size()) + " part sizes for r="
            + std::to_string(t.r));
    for (int x : t.sizes)
        if (x < 0)
            throw InvalidParameter("part sizes must be nonnegative");
    validate_family(t.a, t.r, t.d, t.vertex_count());
}

Multigraph build_construction(const TuranTemplate& t)
{
    validate(t);
    const int n = t.vertex_count();
    std::vector<int> part(static_cast<std::size_t>(n));
    int v = 0;
    for (int p = 0; p < t.r; ++p)
        for (int k = 0; k < t.sizes[static_cast<std::size_t>(p)]; ++k)
            part[static_cast<std::size_t>(v++)] = p;

    std::vector<Weight> w(choose2(static_cast<std::uint64_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const int pi = part[static_cast<std::size_t>(i)];
            const int pj = part[static_cast<std::size_t>(j)];
            Weight m = t.a + 1;
            if (pi == pj)
                m = pi == 0 ? t.a - t.d : t.a;
            w[pair_index(n, i, j)] = m;
        }
    return Multigraph(n, std::move(w));
}

namespace {

struct PairCounts {
    std::uint64_t inside_v0 = 0;
    std::uint64_t inside_rest = 0;
    std::uint64_t cross = 0;
};

PairCounts count_pairs(const TuranTemplate& t)
{
    PairCounts c;
    const auto n = static_cast<std::uint64_t>(t.vertex_count());
    c.inside_v0 = choose2(static_cast<std::uint64_t>(t.sizes[0]));
    for (std::size_t i = 1; i < t.sizes.size(); ++i)
        c.inside_rest += choose2(static_cast<std::uint64_t>(t.sizes[i]));
    c.cross = choose2(n) - c.inside_v0 - c.inside_rest;
    return c;
}

} // namespace

Weight template_edge_sum(const TuranTemplate& t)
{
    validate(t);
    const auto c = count_pairs(t);
    return (t.a - t.d) * c.inside_v0 + t.a * c.inside_rest + (t.a + 1) * c.cross;
}

BigNat template_product(const TuranTemplate& t)
{
    validate(t);
    const auto c = count_pairs(t);
    return BigNat::pow(t.a - t.d, c.inside_v0) * BigNat::pow(t.a, c.inside_rest) * BigNat::pow(t.a + 1, c.cross);
}

void for_each_composition(Weight a, int r, Weight d, int n, const std::function<void(const TuranTemplate&)>& fn)
{
    validate_family(a, r, d, n);
    TuranTemplate t {a, r, d, {}};
    if (r == 1) {
        t.sizes = {n};
        fn(t);
        return;
    }
    std::vector<int> tail;
    for (int x0 = 0; x0 <= n; ++x0)
        for_each_tail(r - 1, n - x0, n - x0, tail, [&] {
            t.sizes.assign(1, x0);
            t.sizes.insert(t.sizes.end(), tail.begin(), tail.end());
            fn(t);
        });
}

SigmaOptimum sigma_rd_optimum(Weight a, int r, Weight d, int n)
{
    SigmaOptimum best;
    bool have = false;
    for_each_composition(a, r, d, n, [&](const TuranTemplate& t) {
        const Weight e = template_edge_sum(t);
        if (!have || e > best.value) {
            best = {e, t};
            have = true;
        }
    });
    return best;
}

PiOptimum pi_rd_optimum(Weight a, int r, Weight d, int n)
{
    PiOptimum best;
    bool have = false;
    for_each_composition(a, r, d, n, [&](const TuranTemplate& t) {
        BigNat p = template_product(t);
        if (!have || p > best.value) {
            best = {std::move(p), t};
            have = true;
        }
    });
    return best;
}

Weight sigma_rd(Weight a, int r, Weight d, int n) { return sigma_rd_optimum(a, r, d, n).value; }

BigNat pi_rd(Weight a, int r, Weight d, int n) { return pi_rd_optimum(a, r, d, n).value; }

BigNat two_part_profile(Weight a, int n, int x)
{
    if (a < 2)
        throw InvalidParameter("two-part profile needs a >= 2");
    if (x < 0 || x > n)
        throw InvalidParameter("|V0| must lie in [0, n]");
    const auto ux = static_cast<std::uint64_t>(x);
    const auto rest = static_cast<std::uint64_t>(n - x);
    return BigNat::pow(a - 2, choose2(ux)) * BigNat::pow(a, choose2(rest)) * BigNat::pow(a + 1, ux * rest);
}

PartitionOptimum optimal_v0_size(Weight a, int n)
{
    if (a < 3)
        throw InvalidParameter("optimal |V0| needs a >= 3 (a-2 must be positive), got a=" + std::to_string(a));
    if (n < 5)
        throw InvalidParameter("optimal |V0| needs n >= 5, got n=" + std::to_string(n));

    // P(x-1) < P(x):  a^(n-x) (a+1)^(x-1) < (a-2)^(x-1) (a+1)^(n-x)
    auto grows_into = [&](int x) {
        const auto ux = static_cast<std::uint64_t>(x);
        const auto un = static_cast<std::uint64_t>(n);
        return BigNat::pow(a, un - ux) * BigNat::pow(a + 1, ux - 1)
            < BigNat::pow(a - 2, ux - 1) * BigNat::pow(a + 1, un - ux);
    };
    // P(x) >= P(x+1):  a^(n-x-1) (a+1)^x >= (a-2)^x (a+1)^(n-x-1), equality is a tie
    auto compare_next = [&](int x) {
        const auto ux = static_cast<std::uint64_t>(x);
        const auto un = static_cast<std::uint64_t>(n);
        return BigNat::pow(a, un - ux - 1) * BigNat::pow(a + 1, ux)
            <=> BigNat::pow(a - 2, ux) * BigNat::pow(a + 1, un - ux - 1);
    };

    for (int x = 0; x <= n; ++x) {
        const bool left_ok = x == 0 || grows_into(x);
        if (!left_ok)
            continue;
        if (x == n)
            return {x, two_part_profile(a, n, x), false};
        const auto c = compare_next(x);
        if (c >= 0)
            return {x, two_part_profile(a, n, x), c == 0};
    }
    // The profile ratio is monotone, so exactly one x passes both tests.
    throw std::logic_error("optimal_v0_size: no x satisfied the optimality system");
}

double f_ratio(Weight a)
{
    if (a < 3)
        throw InvalidParameter("F(a) needs a >= 3");
    const double inv = 1.0 / (static_cast<double>(a) + 1.0);
    return std::log1p(-3.0 * inv) / std::log1p(-inv);
}

nlohmann::ordered_json to_json(const TuranTemplate& t)
{
    nlohmann::ordered_json j;
    j["a"] = t.a;
    j["r"] = t.r;
    j["d"] = t.d;
    j["sizes"] = t.sizes;
    return j;
}

TuranTemplate template_from_json(const nlohmann::ordered_json& j)
{
    TuranTemplate t;
    try {
        t.a = j.at("a").get<Weight>();
        t.r = j.at("r").get<int>();
        t.d = j.at("d").get<Weight>();
        t.sizes = j.at("sizes").get<std::vector<int>>();
    } catch (const nlohmann::ordered_json::exception& e) {
        throw InvalidInput(std::string("template JSON: ") + e.what());
    }
    validate(t);
    return t;
}

} // namespace multex
