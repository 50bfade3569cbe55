#include <multex/verify.hpp>

#include <multex/bounds.hpp>
#include <multex/constructions.hpp>
#include <multex/errors.hpp>

#include <nlohmann/json.hpp>

namespace multex {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::verified:
        return "verified";
    case Verdict::refuted:
        return "refuted";
    case Verdict::inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

Verdict classify(const SearchResult& extremal, const BigNat& construction_value)
{
    if (extremal.lower > construction_value)
        return Verdict::refuted;
    if (extremal.status == SearchStatus::closed && extremal.lower == construction_value)
        return Verdict::verified;
    return Verdict::inconclusive;
}

ConjectureVerdict check_conjecture(Weight a, int r, Weight d, int s, int n, const SearchConfig& cfg)
{
    if (a < 1 || r < 1)
        throw InvalidParameter("conjecture needs a >= 1 and r >= 1");
    if (d > a - 1)
        throw InvalidParameter("conjecture needs d in [0, a-1], got d=" + std::to_string(d));
    const long long need = static_cast<long long>(r - 1) * static_cast<long long>(d + 1) + 2;
    if (s < need)
        throw InvalidParameter("conjecture hypothesis s >= (r-1)(d+1)+2 violated: s=" + std::to_string(s)
            + " < " + std::to_string(need));
    if (n < s)
        throw InvalidParameter("conjecture needs n >= s, got n=" + std::to_string(n) + " s=" + std::to_string(s));

    ConjectureVerdict v;
    v.a = a;
    v.r = r;
    v.d = d;
    v.s = s;
    v.n = n;
    v.q = sigma_rd(a, r, d, s);
    auto opt = pi_rd_optimum(a, r, d, n);
    v.construction_value = std::move(opt.value);
    v.construction = std::move(opt.witness);
    v.extremal = exact_ex_pi(n, s, v.q, cfg);
    v.verdict = classify(v.extremal, v.construction_value);
    return v;
}

nlohmann::ordered_json to_json(const ConjectureVerdict& v)
{
    nlohmann::ordered_json j;
    j["a"] = v.a;
    j["r"] = v.r;
    j["d"] = v.d;
    j["s"] = v.s;
    j["n"] = v.n;
    j["q"] = v.q;
    j["construction_value"] = v.construction_value.to_decimal();
    j["construction"] = to_json(v.construction);
    j["extremal"] = to_json(v.extremal);
    j["verdict"] = to_string(v.verdict);
    return j;
}

CaseBoundTable case_bounds_n7(Weight a)
{
    if (a < 3)
        throw InvalidParameter("case bounds need a >= 3");
    CaseBoundTable t;
    t.a = a;
    t.rows = {
        {"a^14(a+1)^7", BigNat::pow(a, 14) * BigNat::pow(a + 1, 7)},
        {"(a-1)a^11(a+1)^9", BigNat {a - 1} * BigNat::pow(a, 11) * BigNat::pow(a + 1, 9)},
        {"a^16(a+1)^4(a+2)", BigNat::pow(a, 16) * BigNat::pow(a + 1, 4) * BigNat {a + 2}},
        {"a^18(a+1)^2(a+3)", BigNat::pow(a, 18) * BigNat::pow(a + 1, 2) * BigNat {a + 3}},
        {"a^20(a+4)", BigNat::pow(a, 20) * BigNat {a + 4}},
    };
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        if (t.rows[i].value > t.rows[t.argmax].value)
            t.argmax = i;
    return t;
}

std::vector<RatioPoint> ratio_trend(int n, const std::vector<Weight>& a_grid)
{
    if (n < 7)
        throw InvalidParameter("ratio trend needs n >= 7");
    std::vector<RatioPoint> out;
    out.reserve(a_grid.size());
    for (Weight a : a_grid) {
        if (a < 3)
            throw InvalidParameter("ratio trend needs a >= 3");
        RatioPoint pt;
        pt.a = a;
        if (n == 7) {
            pt.numerator = BigNat {a - 1} * BigNat::pow(a, 11) * BigNat::pow(a + 1, 9);
            pt.denominator = BigNat {a - 2} * BigNat::pow(a, 10) * BigNat::pow(a + 1, 10);
        } else {
            pt.numerator = product_upper_bound(n, 5, 10 * a + 4).product_cap;
            pt.denominator = optimal_v0_size(a, n).value;
        }
        pt.scaled = pt.numerator.scaled_quotient(pt.denominator, ratio_digits);
        pt.decimal = decimal_ratio(pt.numerator, pt.denominator, ratio_digits);
        pt.value = std::stod(pt.decimal.substr(0, 24));
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace multex
