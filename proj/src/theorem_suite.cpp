#include <multex/verify.hpp>

#include <multex/bounds.hpp>
#include <multex/constructions.hpp>

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace multex {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Weight shifted(Weight q, std::int64_t shift)
{
    const auto v = static_cast<std::int64_t>(q) + shift;
    return v < 0 ? 0 : static_cast<Weight>(v);
}

SearchConfig search_config(const SuiteConfig& cfg)
{
    SearchConfig sc;
    sc.node_budget = cfg.node_budget;
    sc.time_budget_secs = cfg.search_secs;
    sc.threads = cfg.threads;
    return sc;
}

// a^e1 (a+1)^e2 style helper
BigNat mono(Weight a, std::uint64_t ea, std::uint64_t ea1)
{
    return BigNat::pow(a, ea) * BigNat::pow(a + 1, ea1);
}

class Log {
public:
    template <class T>
    Log& operator<<(const T& v)
    {
        os_ << v;
        return *this;
    }
    void sep()
    {
        if (!os_.str().empty())
            os_ << "; ";
    }
    [[nodiscard]] std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

} // namespace

bool SuiteReport::all_pass() const
{
    for (const auto& c : criteria)
        if (!c.pass)
            return false;
    return true;
}

CriterionResult criterion_n5_exact(const SuiteConfig& cfg)
{
    const auto t0 = Clock::now();
    CriterionResult r {1, "n=5 exactness: search 5 5 (10a+4) closes at (a+1)^4 a^6 for a in {3,4,5}, < 5 s each",
        "", "", true, 0};
    Log exp, act;
    for (Weight a : {3, 4, 5}) {
        const BigNat want = mono(a, 6, 4);
        const auto t1 = Clock::now();
        const auto res = exact_ex_pi(5, 5, shifted(10 * a + 4, cfg.q_shift), search_config(cfg));
        const double ms = ms_since(t1);
        exp.sep();
        exp << "a=" << a << ": closed " << want.to_decimal();
        act.sep();
        act << "a=" << a << ": " << to_string(res.status) << " " << res.lower.to_decimal() << " (" << ms << " ms)";
        r.pass = r.pass && res.status == SearchStatus::closed && res.lower == want && ms < 5000;
    }
    r.expected = exp.str();
    r.actual = act.str();
    r.runtime_ms = ms_since(t0);
    return r;
}

CriterionResult criterion_n6_refutation(const SuiteConfig& cfg)
{
    const auto t0 = Clock::now();
    CriterionResult r {2,
        "n=6 exactness and refutation: search closes at a^9(a+1)^6 and the conjecture is refuted, a in {3,4,5,10}",
        "", "", true, 0};
    Log exp, act;
    for (Weight a : {3, 4, 5, 10}) {
        const BigNat want = mono(a, 9, 6);
        const BigNat pi_want = a <= 4 ? mono(a, 10, 5) : BigNat {a - 2} * mono(a, 6, 8);
        const auto res = exact_ex_pi(6, 5, shifted(10 * a + 4, cfg.q_shift), search_config(cfg));
        const auto verdict = check_conjecture(a, 2, 2, 5, 6, search_config(cfg));
        exp.sep();
        exp << "a=" << a << ": closed " << want.to_decimal() << ", refuted, Pi=" << pi_want.to_decimal();
        act.sep();
        act << "a=" << a << ": " << to_string(res.status) << " " << res.lower.to_decimal() << ", "
            << to_string(verdict.verdict) << ", Pi=" << verdict.construction_value.to_decimal();
        r.pass = r.pass && res.status == SearchStatus::closed && res.lower == want
            && verdict.verdict == Verdict::refuted && verdict.construction_value == pi_want
            && verdict.construction_value < want;
    }
    r.runtime_ms = ms_since(t0);
    r.pass = r.pass && r.runtime_ms < 600000;
    r.expected = exp.str();
    r.actual = act.str();
    return r;
}

CriterionResult criterion_n7_sandwich(const SuiteConfig&)
{
    const auto t0 = Clock::now();
    CriterionResult r {3,
        "n=7 sandwich: Pi_{2,2}(a,7) = (a-2)a^10(a+1)^10 < (a-1)a^11(a+1)^9 = case-bound argmax, a in 3..20, < 1 s",
        "all 18 values match with strict inequality", "", true, 0};
    int ok = 0;
    Log act;
    for (Weight a = 3; a <= 20; ++a) {
        const BigNat lower = BigNat {a - 2} * mono(a, 10, 10);
        const BigNat upper = BigNat {a - 1} * mono(a, 11, 9);
        const BigNat pi = pi_rd(a, 2, 2, 7);
        const auto table = case_bounds_n7(a);
        const bool good = pi == lower && table.argmax == 1 && table.rows[table.argmax].value == upper && pi < upper;
        if (good)
            ++ok;
        else {
            act.sep();
            act << "a=" << a << " mismatch: Pi=" << pi.to_decimal() << " argmax=" << table.rows[table.argmax].label;
        }
    }
    r.runtime_ms = ms_since(t0);
    r.pass = ok == 18 && r.runtime_ms < 1000;
    Log head;
    head << ok << "/18 match";
    r.actual = head.str() + (act.str().empty() ? "" : "; " + act.str());
    return r;
}

CriterionResult criterion_n7_enclosure(const SuiteConfig& cfg)
{
    const auto t0 = Clock::now();
    const Weight a = 3;
    const BigNat lo_need = BigNat {a - 2} * mono(a, 10, 10);
    const BigNat hi_need = BigNat {a - 1} * mono(a, 11, 9);
    CriterionResult r {4, "n=7 enclosure at a=3 within the time budget: lower >= (a-2)a^10(a+1)^10, upper <= (a-1)a^11(a+1)^9",
        "lower >= " + lo_need.to_decimal() + ", upper <= " + hi_need.to_decimal(), "", false, 0};
    // The n=5,6 budgets do not apply here; this criterion has its own.
    SearchConfig sc;
    sc.threads = cfg.threads;
    sc.time_budget_secs = cfg.n7_secs;
    const auto res = exact_ex_pi(7, 5, shifted(10 * a + 4, cfg.q_shift), sc);
    Log act;
    act << to_string(res.status) << " [" << res.lower.to_decimal() << ", " << res.upper.to_decimal() << "] after "
        << res.stats.nodes << " nodes";
    r.actual = act.str();
    r.pass = res.lower >= lo_need && res.upper <= hi_need && res.lower <= res.upper;
    r.runtime_ms = ms_since(t0);
    return r;
}

CriterionResult criterion_claim_c4(const SuiteConfig&)
{
    const auto t0 = Clock::now();
    CriterionResult r {5, "8-edge supports on 7 vertices with every 5-set spanning <= 4: none exist; cap 5 control finds some, < 30 s",
        "examined 203490, valid 0; cap 5 valid > 0", "", false, 0};
    const auto tight = claim_c4_enumeration(4);
    const auto relaxed = claim_c4_enumeration(5);
    Log act;
    act << "examined " << tight.supports_examined << ", valid " << tight.valid_supports << "; cap 5 valid "
        << relaxed.valid_supports;
    r.actual = act.str();
    r.runtime_ms = ms_since(t0);
    r.pass = tight.supports_examined == 203490 && tight.valid_supports == 0 && tight.all_contain_c4
        && relaxed.valid_supports > 0 && r.runtime_ms < 30000;
    return r;
}

CriterionResult criterion_averaging(const SuiteConfig&)
{
    const auto t0 = Clock::now();
    CriterionResult r {6, "averaging bounds: (7,5,10a+4) -> 21a+8 and (6,5,10a+4) -> 15a+6 for a in 3..50",
        "96/96 match", "", false, 0};
    int ok = 0;
    for (Weight a = 3; a <= 50; ++a) {
        ok += averaging_edge_bound(7, 5, 10 * a + 4) == 21 * a + 8;
        ok += averaging_edge_bound(6, 5, 10 * a + 4) == 15 * a + 6;
    }
    r.actual = std::to_string(ok) + "/96 match";
    r.pass = ok == 96;
    r.runtime_ms = ms_since(t0);
    return r;
}

CriterionResult criterion_partition_oracle(const SuiteConfig&)
{
    const auto t0 = Clock::now();
    CriterionResult r {7,
        "optimal |V0| agrees with the enumerated two-part profile for 3<=a<=12, 5<=n<=12; x*(3,6)=1, x*(5,6)=2, x*(3,7)=2, < 1 s",
        "80/80 agree; spot values 1,2,2", "", false, 0};
    int ok = 0;
    Log bad;
    for (Weight a = 3; a <= 12; ++a)
        for (int n = 5; n <= 12; ++n) {
            BigNat best;
            std::vector<BigNat> profile;
            for (int x = 0; x <= n; ++x) {
                profile.push_back(product(build_construction(TuranTemplate {a, 2, 2, {x, n - x}})));
                if (profile.back() > best)
                    best = profile.back();
            }
            const auto opt = optimal_v0_size(a, n);
            const bool good = opt.value == best && profile[static_cast<std::size_t>(opt.x_star)] == best
                && pi_rd(a, 2, 2, n) == best;
            ok += good;
            if (!good) {
                bad.sep();
                bad << "(a=" << a << ",n=" << n << ")";
            }
        }
    const int s36 = optimal_v0_size(3, 6).x_star;
    const int s56 = optimal_v0_size(5, 6).x_star;
    const int s37 = optimal_v0_size(3, 7).x_star;
    r.actual = std::to_string(ok) + "/80 agree; spot values " + std::to_string(s36) + "," + std::to_string(s56) + ","
        + std::to_string(s37) + (bad.str().empty() ? "" : "; failing " + bad.str());
    r.runtime_ms = ms_since(t0);
    r.pass = ok == 80 && s36 == 1 && s56 == 2 && s37 == 2 && r.runtime_ms < 1000;
    return r;
}

CriterionResult criterion_amgm_property(const SuiteConfig& cfg)
{
    const auto t0 = Clock::now();
    CriterionResult r {8, "AM-GM property: random vectors (m<=8, S<=60) never exceed amgm_upper; pinned vectors never exceed the deficient bound, < 10 s",
        "0 violations", "", false, 0};
    std::mt19937_64 rng(cfg.seed);
    std::uint64_t violations = 0, free_checked = 0, pinned_checked = 0;

    // random composition of `total` into `parts` nonnegative integers
    auto compose = [&](std::uint64_t parts, std::uint64_t total) {
        std::vector<std::uint64_t> cuts;
        std::uniform_int_distribution<std::uint64_t> pick(0, total);
        for (std::uint64_t i = 0; i + 1 < parts; ++i)
            cuts.push_back(pick(rng));
        std::sort(cuts.begin(), cuts.end());
        std::vector<std::uint64_t> out;
        std::uint64_t prev = 0;
        for (auto c : cuts) {
            out.push_back(c - prev);
            prev = c;
        }
        out.push_back(total - prev);
        return out;
    };
    auto prod = [](const std::vector<std::uint64_t>& v) {
        BigNat p {1};
        for (auto x : v)
            p *= BigNat {x};
        return p;
    };

    for (std::uint64_t i = 0; i < cfg.property_samples; ++i) {
        const std::uint64_t m = std::uniform_int_distribution<std::uint64_t>(1, 8)(rng);
        const std::uint64_t total = std::uniform_int_distribution<std::uint64_t>(0, 60)(rng);
        const auto v = compose(m, total);
        ++free_checked;
        if (prod(v) > amgm_upper(m, total))
            ++violations;
    }
    for (std::uint64_t i = 0; i < cfg.property_samples; ++i) {
        const std::uint64_t m = std::uniform_int_distribution<std::uint64_t>(2, 8)(rng);
        const std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, m - 2)(rng);
        const std::uint64_t a_max = (60 - t) / m;
        if (a_max < 1)
            continue;
        const Weight a = std::uniform_int_distribution<std::uint64_t>(1, a_max)(rng);
        const std::uint64_t total = a * m + t;
        auto v = compose(m - 1, total - (a - 1));
        v.push_back(a - 1);
        ++pinned_checked;
        if (prod(v) > amgm_upper_with_deficient(m, total, a))
            ++violations;
    }
    r.actual = std::to_string(violations) + " violations over " + std::to_string(free_checked) + " free and "
        + std::to_string(pinned_checked) + " pinned vectors";
    r.runtime_ms = ms_since(t0);
    r.pass = violations == 0 && free_checked == cfg.property_samples && pinned_checked > 0 && r.runtime_ms < 10000;
    return r;
}

CriterionResult criterion_ratio_trend(const SuiteConfig&)
{
    const auto t0 = Clock::now();
    CriterionResult r {9, "bound ratio trend: n=7 and n=8 strictly decreasing over a in [3,10,100,1000], above 1, n=7 final < 1.00001",
        "strictly decreasing, > 1, n=7 final < 1.00001", "", false, 0};
    const std::vector<Weight> grid {3, 10, 100, 1000};
    const BigNat one = BigNat::pow(10, ratio_digits);
    const BigNat limit = BigNat {100001} * BigNat::pow(10, ratio_digits - 5);
    bool ok = true;
    Log act;
    for (int n : {7, 8}) {
        const auto pts = ratio_trend(n, grid);
        act.sep();
        act << "n=" << n << ":";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            act << " " << pts[i].decimal.substr(0, 10);
            ok = ok && pts[i].scaled > one;
            if (i > 0)
                ok = ok && pts[i].scaled < pts[i - 1].scaled;
        }
        if (n == 7)
            ok = ok && pts.back().scaled < limit;
    }
    r.actual = act.str();
    r.pass = ok;
    r.runtime_ms = ms_since(t0);
    return r;
}

CriterionResult criterion_oracle_equivalence(const SuiteConfig& cfg)
{
    const auto t0 = Clock::now();
    CriterionResult r {10, "search equals exhaustive enumeration on every (n,s,q) with n<=5, 2<=s<=n, q<=20, < 5 min",
        "", "", false, 0};
    int total = 0, ok = 0;
    Log bad;
    SearchConfig sc;
    sc.threads = cfg.threads;
    for (int n = 2; n <= 5; ++n)
        for (int s = 2; s <= n; ++s)
            for (Weight q = 0; q <= 20; ++q) {
                ++total;
                const auto oracle = brute_force_ex_pi(n, s, q);
                const auto res = exact_ex_pi(n, s, q, sc);
                if (res.status == SearchStatus::closed && res.lower == oracle.value)
                    ++ok;
                else {
                    bad.sep();
                    bad << "(" << n << "," << s << "," << q << "): search " << res.lower.to_decimal() << " oracle "
                        << oracle.value.to_decimal();
                }
            }
    r.expected = std::to_string(total) + "/" + std::to_string(total) + " agree";
    r.actual = std::to_string(ok) + "/" + std::to_string(total) + " agree" + (bad.str().empty() ? "" : "; " + bad.str());
    r.runtime_ms = ms_since(t0);
    r.pass = ok == total && r.runtime_ms < 300000;
    return r;
}

SuiteReport theorem_suite(const SuiteConfig& cfg, const std::function<void(const CriterionResult&)>& progress)
{
    using Fn = CriterionResult (*)(const SuiteConfig&);
    std::vector<Fn> all {criterion_n5_exact, criterion_n6_refutation, criterion_n7_sandwich, criterion_n7_enclosure,
        criterion_claim_c4, criterion_averaging, criterion_partition_oracle, criterion_amgm_property,
        criterion_ratio_trend};
    if (cfg.include_oracle_sweep)
        all.push_back(criterion_oracle_equivalence);
    SuiteReport report;
    for (Fn fn : all) {
        CriterionResult c;
        try {
            c = fn(cfg);
        } catch (const std::exception& e) {
            c.id = static_cast<int>(report.criteria.size()) + 1;
            c.description = "criterion raised an exception";
            c.actual = e.what();
            c.pass = false;
        }
        if (progress)
            progress(c);
        report.criteria.push_back(std::move(c));
    }
    return report;
}

nlohmann::ordered_json to_json(const SuiteReport& r)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : r.criteria) {
        nlohmann::ordered_json j;
        j["id"] = c.id;
        j["description"] = c.description;
        j["expected"] = c.expected;
        j["actual"] = c.actual;
        j["pass"] = c.pass;
        j["runtime_ms"] = c.runtime_ms;
        arr.push_back(j);
    }
    return arr;
}

} // namespace multex
