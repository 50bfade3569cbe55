#include <multex/verify.hpp>

#include <multex/multigraph.hpp>

#include <array>
#include <bit>
#include <cstdint>

#include <nlohmann/json.hpp>

namespace multex {

namespace {

constexpr int kVertices = 7;
constexpr int kPairs = 21;
constexpr int kSupportEdges = 8;
constexpr int kHeavyEdges = 9;

using Mask = std::uint32_t;

struct Tables {
    std::array<Mask, 21> five_sets {};
    std::array<Mask, 105> four_cycles {};
};

Mask edge_bit(int i, int j) { return Mask {1} << pair_index(kVertices, i, j); }

Tables build_tables()
{
    Tables t;
    std::size_t k = 0;
    for_each_subset(kVertices, 5, [&](std::span<const Vertex> x) {
        Mask m = 0;
        for (std::size_t a = 0; a < x.size(); ++a)
            for (std::size_t b = a + 1; b < x.size(); ++b)
                m |= edge_bit(x[a], x[b]);
        t.five_sets[k++] = m;
    });
    k = 0;
    for_each_subset(kVertices, 4, [&](std::span<const Vertex> x) {
        const int a = x[0], b = x[1], c = x[2], d = x[3];
        t.four_cycles[k++] = edge_bit(a, b) | edge_bit(b, c) | edge_bit(c, d) | edge_bit(d, a);
        t.four_cycles[k++] = edge_bit(a, b) | edge_bit(b, d) | edge_bit(d, c) | edge_bit(c, a);
        t.four_cycles[k++] = edge_bit(a, c) | edge_bit(c, b) | edge_bit(b, d) | edge_bit(d, a);
    });
    return t;
}

const Tables& tables()
{
    static const Tables t = build_tables();
    return t;
}

bool support_valid(Mask support, int cap)
{
    for (Mask x : tables().five_sets)
        if (std::popcount(support & x) > cap)
            return false;
    return true;
}

bool has_c4(Mask support)
{
    for (Mask c : tables().four_cycles)
        if ((support & c) == c)
            return true;
    return false;
}

bool deficient_valid(Mask heavy, Mask deficient)
{
    for (Mask x : tables().five_sets) {
        const int excess = std::popcount(heavy & x) - ((deficient & x) ? 1 : 0);
        if (excess > 4)
            return false;
    }
    return true;
}

Mask next_combination(Mask v)
{
    const Mask t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

} // namespace

ClaimC4Report claim_c4_enumeration_serial(int cap, bool deep)
{
    ClaimC4Report r;
    r.cap = cap;
    r.deep = deep;
    const Mask limit = Mask {1} << kPairs;
    for (Mask m = (Mask {1} << kSupportEdges) - 1; m < limit; m = next_combination(m)) {
        ++r.supports_examined;
        if (!support_valid(m, cap))
            continue;
        ++r.valid_supports;
        if (has_c4(m))
            ++r.valid_with_c4;
    }
    r.all_contain_c4 = r.valid_with_c4 == r.valid_supports;

    if (deep) {
        for (int e = 0; e < kPairs; ++e) {
            const Mask def = Mask {1} << e;
            for (Mask m = (Mask {1} << kHeavyEdges) - 1; m < limit; m = next_combination(m)) {
                if (m & def)
                    continue;
                ++r.deep_examined;
                if (deficient_valid(m, def))
                    ++r.deep_valid;
            }
        }
    }
    return r;
}

ClaimC4Report claim_c4_enumeration(int cap, bool deep)
{
    (void)tables();
    ClaimC4Report r;
    r.cap = cap;
    r.deep = deep;
    const long limit = long {1} << kPairs;
    std::uint64_t examined = 0, valid = 0, with_c4 = 0;
#pragma omp parallel for schedule(static) reduction(+ : examined, valid, with_c4)
    for (long raw = 0; raw < limit; ++raw) {
        const auto m = static_cast<Mask>(raw);
        if (std::popcount(m) != kSupportEdges)
            continue;
        ++examined;
        if (!support_valid(m, cap))
            continue;
        ++valid;
        if (has_c4(m))
            ++with_c4;
    }
    r.supports_examined = examined;
    r.valid_supports = valid;
    r.valid_with_c4 = with_c4;
    r.all_contain_c4 = with_c4 == valid;

    if (deep) {
        std::uint64_t deep_examined = 0, deep_valid = 0;
#pragma omp parallel for schedule(static) reduction(+ : deep_examined, deep_valid)
        for (long raw = 0; raw < limit; ++raw) {
            const auto m = static_cast<Mask>(raw);
            if (std::popcount(m) != kHeavyEdges)
                continue;
            for (int e = 0; e < kPairs; ++e) {
                const Mask def = Mask {1} << e;
                if (m & def)
                    continue;
                ++deep_examined;
                if (deficient_valid(m, def))
                    ++deep_valid;
            }
        }
        r.deep_examined = deep_examined;
        r.deep_valid = deep_valid;
    }
    return r;
}

nlohmann::ordered_json to_json(const ClaimC4Report& r)
{
    nlohmann::ordered_json j;
    j["cap"] = r.cap;
    j["supports_examined"] = r.supports_examined;
    j["valid_supports"] = r.valid_supports;
    j["valid_with_c4"] = r.valid_with_c4;
    j["all_contain_c4"] = r.all_contain_c4;
    if (r.deep) {
        j["deep_examined"] = r.deep_examined;
        j["deep_valid"] = r.deep_valid;
    }
    return j;
}

} // namespace multex
