#include <multex/search.hpp>

#include <multex/bounds.hpp>
#include <multex/errors.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>

#include <nlohmann/json.hpp>

namespace multex {

std::string to_string(SearchStatus s)
{
    return s == SearchStatus::closed ? "closed" : "budget-exhausted";
}

bool certify_witness(const Multigraph& g, int s, Weight q, BigNat* product_out)
{
    if (product_out)
        *product_out = product(g);
    if (s < 2)
        return false;
    return is_sq_graph(g, SQConstraint {s, q});
}

namespace {

using u128 = unsigned __int128;
using Clock = std::chrono::steady_clock;

template <class Num>
struct NumOps;

template <>
struct NumOps<u128> {
    static u128 from(Weight w) { return w; }
    static u128 pow(Weight base, std::uint64_t e)
    {
        u128 r = 1;
        u128 b = base;
        while (e) {
            if (e & 1)
                r *= b;
            e >>= 1;
            if (e)
                b *= b;
        }
        return r;
    }
    static BigNat to_big(u128 v)
    {
        return BigNat {static_cast<std::uint64_t>(v >> 64)} * BigNat::pow(2, 64)
            + BigNat {static_cast<std::uint64_t>(v)};
    }
};

template <>
struct NumOps<BigNat> {
    static BigNat from(Weight w) { return BigNat {w}; }
    static BigNat pow(Weight base, std::uint64_t e) { return BigNat::pow(base, e); }
    static BigNat to_big(const BigNat& v) { return v; }
};

struct Problem {
    int n = 0;
    int s = 0;
    Weight q = 0;
    Weight floor = 0;
    Weight ceil = 0;
    Weight global_cap = 0;
    int m = 0;
    int set_count = 0;
    std::vector<std::pair<int, int>> ends;
    std::vector<std::vector<int>> sets_of; // pair -> s-sets containing it
    bool symmetry = true;
    int sym_k = 0;
};

Problem make_problem(int n, int s, Weight q, const SearchConfig& cfg)
{
    Problem p;
    p.n = n;
    p.s = s;
    p.q = q;
    p.floor = cfg.weight_floor;
    p.ceil = std::min(cfg.weight_ceiling.value_or(q), q);
    p.m = static_cast<int>(choose2(static_cast<std::uint64_t>(n)));
    p.global_cap = std::min<Weight>(averaging_edge_bound(n, s, q), p.ceil * static_cast<Weight>(p.m));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            p.ends.emplace_back(i, j);
    p.sets_of.resize(static_cast<std::size_t>(p.m));
    for_each_subset(n, s, [&](std::span<const Vertex> x) {
        for (std::size_t a = 0; a < x.size(); ++a)
            for (std::size_t b = a + 1; b < x.size(); ++b)
                p.sets_of[pair_index(n, x[a], x[b])].push_back(p.set_count);
        ++p.set_count;
    });
    p.symmetry = cfg.symmetry_breaking;
    p.sym_k = std::min(n, 4);
    return p;
}

template <class Num>
struct Shared {
    std::mutex mu;
    Num value {};
    long task = -1; // -1: seed
    std::vector<Weight> weights;

    std::atomic<std::uint64_t> nodes {0};
    std::atomic<bool> exhausted {false};
    std::optional<std::uint64_t> node_budget;
    std::optional<Clock::time_point> deadline;
};

template <class Num>
class Engine {
public:
    Engine(const Problem& p, Shared<Num>& shared, long task)
        : p_(p)
        , shared_(shared)
        , task_(task)
        , w_(static_cast<std::size_t>(p.m), 0)
        , slack_(static_cast<std::size_t>(p.set_count), static_cast<std::int64_t>(p.q))
        , deg_(static_cast<std::size_t>(p.n), 0)
        , hi_(static_cast<std::size_t>(p.n), 0)
        , caps_(static_cast<std::size_t>(p.m), 0)
        , prod_(static_cast<std::size_t>(p.m) + 1, NumOps<Num>::from(1))
        , sum_(static_cast<std::size_t>(p.m) + 1, 0)
    {
    }

    struct Eval {
        bool feasible = true;
        bool symmetric = true;
        Num bound {};
    };

    void apply(int k, Weight v)
    {
        const auto uk = static_cast<std::size_t>(k);
        w_[uk] = v;
        for (int x : p_.sets_of[uk])
            slack_[static_cast<std::size_t>(x)] -= static_cast<std::int64_t>(v);
        deg_[static_cast<std::size_t>(p_.ends[uk].first)] += v;
        deg_[static_cast<std::size_t>(p_.ends[uk].second)] += v;
        prod_[uk + 1] = prod_[uk] * NumOps<Num>::from(v);
        sum_[uk + 1] = sum_[uk] + v;
    }

    void undo(int k, Weight v)
    {
        const auto uk = static_cast<std::size_t>(k);
        for (int x : p_.sets_of[uk])
            slack_[static_cast<std::size_t>(x)] += static_cast<std::int64_t>(v);
        deg_[static_cast<std::size_t>(p_.ends[uk].first)] -= v;
        deg_[static_cast<std::size_t>(p_.ends[uk].second)] -= v;
        w_[uk] = 0;
    }

    /// Propagates caps for pairs k.. and bounds every completion of the
    /// first k assignments.
    Eval evaluate(int k)
    {
        Eval ev;
        const auto uk = static_cast<std::size_t>(k);
        if (sum_[uk] > p_.global_cap) {
            ev.feasible = false;
            return ev;
        }
        for (int e = k; e < p_.m; ++e) {
            std::int64_t c = static_cast<std::int64_t>(p_.ceil);
            for (int x : p_.sets_of[static_cast<std::size_t>(e)])
                c = std::min(c, slack_[static_cast<std::size_t>(x)]);
            if (c < static_cast<std::int64_t>(p_.floor)) {
                ev.feasible = false;
                return ev;
            }
            caps_[static_cast<std::size_t>(e)] = static_cast<Weight>(c);
        }

        if (p_.symmetry && !symmetric(k)) {
            ev.symmetric = false;
            return ev;
        }

        if (k == p_.m) {
            ev.bound = prod_[uk];
            return ev;
        }
        auto fill = water_fill(k, p_.global_cap - sum_[uk]);
        if (!fill) {
            ev.feasible = false;
            return ev;
        }
        ev.bound = prod_[uk] * *fill;
        return ev;
    }

    /// Largest bound over whatever part of this subtree was left unexplored,
    /// or nullopt when the subtree was exhausted.
    std::optional<Num> explore(int k)
    {
        const Eval ev = evaluate(k);
        if (!ev.feasible) {
            ++stats.pruned_infeasible;
            return std::nullopt;
        }
        if (!ev.symmetric) {
            ++stats.pruned_symmetry;
            return std::nullopt;
        }
        if (!improves(ev.bound)) {
            ++stats.pruned_bound;
            return std::nullopt;
        }
        if (k == p_.m) {
            ++stats.leaves;
            offer(prod_[static_cast<std::size_t>(k)]);
            return std::nullopt;
        }
        if (!budget_allows())
            return ev.bound;
        ++stats.nodes;

        const Weight cap = caps_[static_cast<std::size_t>(k)];
        for (Weight v = cap + 1; v-- > p_.floor;) {
            apply(k, v);
            auto frontier = explore(k + 1);
            undo(k, v);
            if (frontier) {
                for (Weight u = v; u-- > p_.floor;) {
                    apply(k, u);
                    const Eval sibling = evaluate(k + 1);
                    undo(k, u);
                    if (sibling.feasible && sibling.symmetric && sibling.bound > *frontier)
                        frontier = sibling.bound;
                }
                return frontier;
            }
        }
        return std::nullopt;
    }

    struct Prefix {
        std::vector<Weight> weights;
    };

    /// Enumerates surviving nodes at `depth` in DFS order, pruning against
    /// the seed only.
    void collect(int k, int depth, std::vector<Prefix>& out)
    {
        const Eval ev = evaluate(k);
        if (!ev.feasible) {
            ++stats.pruned_infeasible;
            return;
        }
        if (!ev.symmetric) {
            ++stats.pruned_symmetry;
            return;
        }
        if (!improves(ev.bound)) {
            ++stats.pruned_bound;
            return;
        }
        if (k == depth || k == p_.m) {
            out.push_back({std::vector<Weight>(w_.begin(), w_.begin() + k)});
            return;
        }
        ++stats.nodes;
        shared_.nodes.fetch_add(1, std::memory_order_relaxed);
        const Weight cap = caps_[static_cast<std::size_t>(k)];
        for (Weight v = cap + 1; v-- > p_.floor;) {
            apply(k, v);
            collect(k + 1, depth, out);
            undo(k, v);
        }
    }

    SearchStats stats;

private:
    bool improves(const Num& bound)
    {
        std::lock_guard lock(shared_.mu);
        return bound > shared_.value || (bound == shared_.value && shared_.task > task_);
    }

    void offer(const Num& value)
    {
        std::lock_guard lock(shared_.mu);
        if (value > shared_.value || (value == shared_.value && task_ < shared_.task)) {
            shared_.value = value;
            shared_.task = task_;
            shared_.weights = w_;
        }
    }

    bool budget_allows()
    {
        if (shared_.exhausted.load(std::memory_order_relaxed))
            return false;
        const std::uint64_t used = shared_.nodes.fetch_add(1, std::memory_order_relaxed);
        if (shared_.node_budget && used >= *shared_.node_budget) {
            shared_.exhausted = true;
            return false;
        }
        if (shared_.deadline && (used & 255) == 0 && Clock::now() >= *shared_.deadline) {
            shared_.exhausted = true;
            return false;
        }
        return true;
    }

    // The first sym_k vertices must lead a nonincreasing weighted-degree
    // order. Committed degrees are lower bounds, committed plus open caps
    // are upper bounds.
    bool symmetric(int k)
    {
        std::copy(deg_.begin(), deg_.end(), hi_.begin());
        for (int e = k; e < p_.m; ++e) {
            const Weight c = caps_[static_cast<std::size_t>(e)];
            hi_[static_cast<std::size_t>(p_.ends[static_cast<std::size_t>(e)].first)] += c;
            hi_[static_cast<std::size_t>(p_.ends[static_cast<std::size_t>(e)].second)] += c;
        }
        for (int i = 0; i + 1 < p_.sym_k; ++i)
            if (hi_[static_cast<std::size_t>(i)] < deg_[static_cast<std::size_t>(i + 1)])
                return false;
        const Weight last = hi_[static_cast<std::size_t>(p_.sym_k - 1)];
        for (int v = p_.sym_k; v < p_.n; ++v)
            if (last < deg_[static_cast<std::size_t>(v)])
                return false;
        return true;
    }

    // Maximum product of the open pairs k.. with floor <= w_e <= caps_[e] and
    // total at most `room`: raise a common level, clamping at caps, then
    // spread the remainder one unit at a time. nullopt if the floors alone
    // exceed `room`.
    std::optional<Num> water_fill(int k, Weight room)
    {
        sorted_.assign(caps_.begin() + k, caps_.end());
        std::sort(sorted_.begin(), sorted_.end());
        const std::size_t count = sorted_.size();
        if (p_.floor * count > room)
            return std::nullopt;
        Weight prefix = 0;
        Num capped = NumOps<Num>::from(1);
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint64_t rest = count - i;
            const Weight level = (room - prefix) / rest;
            if (level < sorted_[i]) {
                const std::uint64_t extra = (room - prefix) - level * rest;
                return capped * NumOps<Num>::pow(level, rest - extra) * NumOps<Num>::pow(level + 1, extra);
            }
            prefix += sorted_[i];
            capped = capped * NumOps<Num>::from(sorted_[i]);
        }
        return capped;
    }

    const Problem& p_;
    Shared<Num>& shared_;
    long task_;
    std::vector<Weight> w_;
    std::vector<std::int64_t> slack_;
    std::vector<Weight> deg_;
    std::vector<Weight> hi_;
    std::vector<Weight> caps_;
    std::vector<Num> prod_;
    std::vector<Weight> sum_;
    std::vector<Weight> sorted_;
};

void add_stats(SearchStats& into, const SearchStats& from)
{
    into.nodes += from.nodes;
    into.leaves += from.leaves;
    into.pruned_bound += from.pruned_bound;
    into.pruned_symmetry += from.pruned_symmetry;
    into.pruned_infeasible += from.pruned_infeasible;
}

template <class Num>
Num num_from_big(const BigNat& v);

template <>
u128 num_from_big<u128>(const BigNat& v)
{
    u128 r = 0;
    for (char c : v.to_decimal())
        r = r * 10 + static_cast<unsigned>(c - '0');
    return r;
}

template <>
BigNat num_from_big<BigNat>(const BigNat& v)
{
    return v;
}

template <class Num>
SearchResult run_search(const Problem& p, const SearchConfig& cfg, const Seed& seed)
{
    const auto start = Clock::now();
    Shared<Num> shared;
    shared.value = num_from_big<Num>(seed.value);
    shared.task = -1;
    shared.weights.assign(seed.graph.weights().begin(), seed.graph.weights().end());
    shared.node_budget = cfg.node_budget;
    if (cfg.time_budget_secs)
        shared.deadline = start
            + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*cfg.time_budget_secs));

    SearchResult res;
    res.n = p.n;
    res.s = p.s;
    res.q = p.q;
    res.seed_source = seed.source;
    res.seed_value = seed.value;

    std::optional<Num> frontier;
    auto widen = [&](const std::optional<Num>& f) {
        if (f && (!frontier || *f > *frontier))
            frontier = f;
    };

    const bool parallel = cfg.threads > 1 && cfg.node_budget.value_or(1) > 0;
    if (!parallel) {
        Engine<Num> engine(p, shared, 0);
        widen(engine.explore(0));
        add_stats(res.stats, engine.stats);
    } else {
        Engine<Num> root(p, shared, -1);
        std::vector<typename Engine<Num>::Prefix> tasks;
        root.collect(0, std::max(0, std::min(cfg.split_depth, p.m)), tasks);
        add_stats(res.stats, root.stats);

        std::vector<std::optional<Num>> frontiers(tasks.size());
        std::vector<SearchStats> task_stats(tasks.size());
        const auto task_count = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg.threads)
        for (long t = 0; t < task_count; ++t) {
            Engine<Num> engine(p, shared, t);
            const auto& prefix = tasks[static_cast<std::size_t>(t)].weights;
            for (std::size_t k = 0; k < prefix.size(); ++k)
                engine.apply(static_cast<int>(k), prefix[k]);
            frontiers[static_cast<std::size_t>(t)] = engine.explore(static_cast<int>(prefix.size()));
            task_stats[static_cast<std::size_t>(t)] = engine.stats;
        }
        for (std::size_t t = 0; t < tasks.size(); ++t) {
            widen(frontiers[t]);
            add_stats(res.stats, task_stats[t]);
        }
    }

    res.lower = NumOps<Num>::to_big(shared.value);
    res.witness = Multigraph(p.n, shared.weights);
    if (frontier && *frontier > shared.value) {
        res.status = SearchStatus::budget_exhausted;
        res.upper = NumOps<Num>::to_big(*frontier);
    } else {
        res.status = SearchStatus::closed;
        res.upper = res.lower;
    }
    res.stats.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return res;
}

bool within(const Multigraph& g, Weight floor, Weight ceil)
{
    return std::all_of(g.weights().begin(), g.weights().end(), [&](Weight w) { return w >= floor && w <= ceil; });
}

std::string describe(const TuranTemplate& t)
{
    std::ostringstream os;
    os << "T_{" << t.r << "," << t.d << "}(" << t.a << ") sizes (";
    for (std::size_t i = 0; i < t.sizes.size(); ++i)
        os << (i ? "," : "") << t.sizes[i];
    os << ")";
    return os.str();
}

} // namespace

Seed best_seed(int n, int s, Weight q, const SearchConfig& cfg)
{
    const Weight ceil = std::min(cfg.weight_ceiling.value_or(q), q);
    const SQConstraint c {s, q};

    Seed best {Multigraph(n, cfg.weight_floor), BigNat {}, "all-floor"};
    best.value = product(best.graph);

    auto consider = [&](const Multigraph& g, const std::string& source) {
        if (g.vertex_count() != n || !within(g, cfg.weight_floor, ceil) || !is_sq_graph(g, c))
            return;
        BigNat v = product(g);
        if (v > best.value)
            best = {g, std::move(v), source};
    };

    for (const auto& t : cfg.seed_templates)
        consider(build_construction(t), "seed " + describe(t));

    if (cfg.construction_seeds) {
        // Any admissible template has a*C(s,2) <= Sigma_{r,d}(a,s) <= q.
        const Weight per_set = choose2(static_cast<std::uint64_t>(s));
        for (Weight a = 1; a * per_set <= q; ++a)
            for (int r = 1; r <= n; ++r)
                for (Weight d = 0; d < (r == 1 ? 1 : a); ++d) {
                    if (sigma_rd(a, r, d, s) > q)
                        continue;
                    const auto opt = pi_rd_optimum(a, r, d, n);
                    if (opt.value > best.value)
                        consider(build_construction(opt.witness), describe(opt.witness));
                }
    }

    if (cfg.circulant_seeds && n <= 12) {
        // Circulant graphs: the weight of {i,j} depends only on the cyclic distance.
        const Weight base = q / choose2(static_cast<std::uint64_t>(s));
        std::vector<Weight> values;
        for (Weight v = base >= 2 ? base - 2 : 0; v <= base + 2; ++v)
            if (v >= cfg.weight_floor && v <= ceil)
                values.push_back(v);
        const int classes = n / 2;
        const double work = std::pow(static_cast<double>(values.size()), classes)
            * static_cast<double>(binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s)));
        if (!values.empty() && classes > 0 && work <= 5e7) {
            std::vector<std::size_t> pick(static_cast<std::size_t>(classes), 0);
            std::vector<Weight> w(choose2(static_cast<std::uint64_t>(n)));
            while (true) {
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j) {
                        const int dist = std::min(j - i, n - (j - i));
                        w[pair_index(n, i, j)] = values[pick[static_cast<std::size_t>(dist - 1)]];
                    }
                Multigraph g(n, w);
                if (product(g) > best.value) {
                    std::ostringstream os;
                    os << "circulant(";
                    for (int d = 0; d < classes; ++d)
                        os << (d ? "," : "") << values[pick[static_cast<std::size_t>(d)]];
                    os << ")";
                    consider(g, os.str());
                }
                int i = 0;
                while (i < classes && ++pick[static_cast<std::size_t>(i)] == values.size())
                    pick[static_cast<std::size_t>(i++)] = 0;
                if (i == classes)
                    break;
            }
        }
    }
    return best;
}

SearchResult exact_ex_pi(int n, int s, Weight q, const SearchConfig& cfg)
{
    if (s < 2)
        throw InvalidParameter("s must be at least 2, got " + std::to_string(s));
    if (n < s)
        throw UnboundedProblem("n < s: no " + std::to_string(s) + "-set exists among " + std::to_string(n)
            + " vertices, so multiplicities are unconstrained");
    if (cfg.threads < 1)
        throw InvalidParameter("threads must be at least 1");
    const Weight ceil = std::min(cfg.weight_ceiling.value_or(q), q);
    if (cfg.weight_floor > ceil)
        throw InvalidParameter("weight floor exceeds weight ceiling");
    if (cfg.weight_floor * choose2(static_cast<std::uint64_t>(s)) > q)
        throw InvalidParameter("weight floor leaves no feasible graph: floor * C(s,2) > q");
    if (cfg.time_budget_secs && *cfg.time_budget_secs < 0)
        throw InvalidParameter("time budget must be nonnegative");

    const Problem p = make_problem(n, s, q, cfg);
    const Seed seed = best_seed(n, s, q, cfg);

    // Every bound is at most ceil^m; stay in 128-bit while that fits.
    const double bits = static_cast<double>(p.m) * std::log2(static_cast<double>(ceil) + 1.0);
    SearchResult r = bits < 126.0 ? run_search<u128>(p, cfg, seed) : run_search<BigNat>(p, cfg, seed);

    BigNat witness_value;
    if (!certify_witness(r.witness, s, q, &witness_value) || witness_value != r.lower)
        throw std::logic_error("search produced an invalid witness");
    return r;
}

nlohmann::ordered_json to_json(const SearchResult& r)
{
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["s"] = r.s;
    j["q"] = r.q;
    j["status"] = to_string(r.status);
    j["lower"] = r.lower.to_decimal();
    j["upper"] = r.upper.to_decimal();
    j["witness"] = to_edge_list(r.witness);
    j["seed_source"] = r.seed_source;
    j["seed_value"] = r.seed_value.to_decimal();
    nlohmann::ordered_json st;
    st["nodes"] = r.stats.nodes;
    st["leaves"] = r.stats.leaves;
    st["pruned_bound"] = r.stats.pruned_bound;
    st["pruned_symmetry"] = r.stats.pruned_symmetry;
    st["pruned_infeasible"] = r.stats.pruned_infeasible;
    st["wall_ms"] = r.stats.wall_ms;
    j["stats"] = st;
    return j;
}

SearchResult search_result_from_json(const nlohmann::ordered_json& j)
{
    SearchResult r;
    try {
        r.n = j.at("n").get<int>();
        r.s = j.at("s").get<int>();
        r.q = j.at("q").get<Weight>();
        const auto status = j.at("status").get<std::string>();
        if (status == "closed")
            r.status = SearchStatus::closed;
        else if (status == "budget-exhausted")
            r.status = SearchStatus::budget_exhausted;
        else
            throw InvalidInput("unknown search status '" + status + "'");
        r.lower = BigNat::from_decimal(j.at("lower").get<std::string>());
        r.upper = BigNat::from_decimal(j.at("upper").get<std::string>());
        r.witness = parse_edge_list(j.at("witness").get<std::string>());
        r.seed_source = j.at("seed_source").get<std::string>();
        r.seed_value = BigNat::from_decimal(j.at("seed_value").get<std::string>());
        const auto& st = j.at("stats");
        r.stats.nodes = st.at("nodes").get<std::uint64_t>();
        r.stats.leaves = st.at("leaves").get<std::uint64_t>();
        r.stats.pruned_bound = st.at("pruned_bound").get<std::uint64_t>();
        r.stats.pruned_symmetry = st.at("pruned_symmetry").get<std::uint64_t>();
        r.stats.pruned_infeasible = st.at("pruned_infeasible").get<std::uint64_t>();
        r.stats.wall_ms = st.at("wall_ms").get<double>();
    } catch (const nlohmann::ordered_json::exception& e) {
        throw InvalidInput(std::string("search result JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InvalidInput(std::string("search result JSON: ") + e.what());
    }
    return r;
}

} // namespace multex
