#include <multex/bounds.hpp>

#include <multex/errors.hpp>

#include <nlohmann/json.hpp>

namespace multex {

std::string to_string(BoundMethod m)
{
    switch (m) {
    case BoundMethod::averaging_amgm:
        return "averaging+amgm";
    case BoundMethod::amgm_with_deficient_edge:
        return "amgm-with-deficient-edge";
    case BoundMethod::case_analysis:
        return "case-analysis";
    }
    return "unknown";
}

BigNat amgm_upper(std::uint64_t m, std::uint64_t total)
{
    if (m == 0)
        throw InvalidParameter("amgm_upper needs at least one factor");
    const std::uint64_t b = total / m;
    const std::uint64_t t = total % m;
    return BigNat::pow(b, m - t) * BigNat::pow(b + 1, t);
}

BigNat amgm_upper_with_deficient(std::uint64_t m, std::uint64_t total, Weight a)
{
    if (m < 2)
        throw InvalidParameter("deficient-edge bound needs m >= 2");
    if (a < 1)
        throw InvalidParameter("deficient-edge bound needs a >= 1");
    if (total < a * m || total - a * m > m - 2)
        throw InvalidParameter("deficient-edge bound needs total = a*m + t with 0 <= t <= m-2");
    const std::uint64_t t = total - a * m;
    return BigNat {a - 1} * BigNat::pow(a, m - t - 2) * BigNat::pow(a + 1, t + 1);
}

Weight averaging_edge_bound(int n, int s, Weight q)
{
    if (s < 2)
        throw InvalidParameter("s must be at least 2");
    if (n < s)
        throw InvalidParameter("averaging bound needs n >= s, got n=" + std::to_string(n) + " s=" + std::to_string(s));
    const auto pairs = static_cast<unsigned __int128>(choose2(static_cast<std::uint64_t>(n)));
    const auto per_set = static_cast<unsigned __int128>(choose2(static_cast<std::uint64_t>(s)));
    return static_cast<Weight>(static_cast<unsigned __int128>(q) * pairs / per_set);
}

BoundReport product_upper_bound(int n, int s, Weight q)
{
    BoundReport r;
    r.n = n;
    r.s = s;
    r.q = q;
    r.edge_cap = averaging_edge_bound(n, s, q);
    r.product_cap = amgm_upper(choose2(static_cast<std::uint64_t>(n)), r.edge_cap);
    r.method = BoundMethod::averaging_amgm;
    return r;
}

nlohmann::ordered_json to_json(const BoundReport& r)
{
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["s"] = r.s;
    j["q"] = r.q;
    j["edge_cap"] = r.edge_cap;
    j["product_cap"] = r.product_cap.to_decimal();
    j["method"] = to_string(r.method);
    return j;
}

} // namespace multex
