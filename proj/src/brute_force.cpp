#include <multex/verify.hpp>

#include <multex/errors.hpp>

#include <algorithm>
#include <cmath>

namespace multex {

namespace {

using u128 = unsigned __int128;

struct Enumerator {
    int n = 0;
    int m = 0;
    std::vector<std::vector<int>> sets_of;
    std::vector<int> order;
    std::vector<bool> closed; // by position in `order`
    std::vector<std::int64_t> slack;
    std::vector<Weight> w;
    u128 best = 0;
    bool have = false;
    std::vector<Weight> best_w;
    std::uint64_t leaves = 0;

    void run(int pos, u128 prod)
    {
        if (pos == m) {
            ++leaves;
            if (!have || prod > best) {
                best = prod;
                best_w = w;
                have = true;
            }
            return;
        }
        const auto e = static_cast<std::size_t>(order[static_cast<std::size_t>(pos)]);
        std::int64_t cap = slack[static_cast<std::size_t>(sets_of[e].front())];
        for (int x : sets_of[e])
            cap = std::min(cap, slack[static_cast<std::size_t>(x)]);
        const std::int64_t lo = closed[static_cast<std::size_t>(pos)] ? cap : 0;
        for (std::int64_t v = lo; v <= cap; ++v) {
            for (int x : sets_of[e])
                slack[static_cast<std::size_t>(x)] -= v;
            w[e] = static_cast<Weight>(v);
            run(pos + 1, prod * static_cast<u128>(v));
            for (int x : sets_of[e])
                slack[static_cast<std::size_t>(x)] += v;
        }
        w[e] = 0;
    }
};

} // namespace

BruteForceResult brute_force_ex_pi(int n, int s, Weight q)
{
    if (s < 2 || n < s)
        throw InvalidParameter("brute force needs n >= s >= 2");
    Enumerator en;
    en.n = n;
    en.m = static_cast<int>(choose2(static_cast<std::uint64_t>(n)));
    if (static_cast<double>(en.m) * std::log2(static_cast<double>(q) + 1.0) >= 127.0)
        throw InvalidParameter("brute force limited to products below 2^127");

    en.sets_of.resize(static_cast<std::size_t>(en.m));
    int set_count = 0;
    for_each_subset(n, s, [&](std::span<const Vertex> x) {
        for (std::size_t a = 0; a < x.size(); ++a)
            for (std::size_t b = a + 1; b < x.size(); ++b)
                en.sets_of[pair_index(n, x[a], x[b])].push_back(set_count);
        ++set_count;
    });

    // Two pairs interact when some s-set contains both.
    std::vector<std::vector<bool>> shares(static_cast<std::size_t>(en.m), std::vector<bool>(static_cast<std::size_t>(en.m)));
    for (int e = 0; e < en.m; ++e)
        for (int f = 0; f < en.m; ++f)
            for (int x : en.sets_of[static_cast<std::size_t>(e)])
                if (f != e
                    && std::find(en.sets_of[static_cast<std::size_t>(f)].begin(), en.sets_of[static_cast<std::size_t>(f)].end(), x)
                        != en.sets_of[static_cast<std::size_t>(f)].end())
                    shares[static_cast<std::size_t>(e)][static_cast<std::size_t>(f)] = true;

    // Greedy order: place a pair as soon as all its partners are placed (it is
    // then fixed at its maximum); otherwise place the pair that brings some
    // other pair closest to that state.
    std::vector<bool> placed(static_cast<std::size_t>(en.m), false);
    auto open_partners = [&](int f, int extra) {
        int c = 0;
        for (int g = 0; g < en.m; ++g)
            if (g != extra && !placed[static_cast<std::size_t>(g)] && shares[static_cast<std::size_t>(f)][static_cast<std::size_t>(g)])
                ++c;
        return c;
    };
    while (static_cast<int>(en.order.size()) < en.m) {
        int pick = -1;
        bool closes = false;
        for (int e = 0; e < en.m && pick < 0; ++e)
            if (!placed[static_cast<std::size_t>(e)] && open_partners(e, -1) == 0) {
                pick = e;
                closes = true;
            }
        if (pick < 0) {
            int best_score = en.m + 1;
            for (int e = 0; e < en.m; ++e) {
                if (placed[static_cast<std::size_t>(e)])
                    continue;
                int score = en.m + 1;
                for (int f = 0; f < en.m; ++f)
                    if (f != e && !placed[static_cast<std::size_t>(f)])
                        score = std::min(score, open_partners(f, e));
                if (score < best_score) {
                    best_score = score;
                    pick = e;
                }
            }
        }
        placed[static_cast<std::size_t>(pick)] = true;
        en.order.push_back(pick);
        en.closed.push_back(closes);
    }

    en.slack.assign(static_cast<std::size_t>(set_count), static_cast<std::int64_t>(q));
    en.w.assign(static_cast<std::size_t>(en.m), 0);
    en.run(0, 1);

    BruteForceResult r;
    u128 v = en.best;
    std::string digits;
    do {
        digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    } while (v);
    r.value = BigNat::from_decimal(digits);
    r.witness = Multigraph(n, en.best_w);
    r.leaves = en.leaves;
    return r;
}

} // namespace multex
