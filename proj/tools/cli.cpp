#include "cli.hpp"

#include <multex/bounds.hpp>
#include <multex/constructions.hpp>
#include <multex/errors.hpp>
#include <multex/search.hpp>
#include <multex/verify.hpp>

#include <cstdlib>
#include <functional>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

namespace multex::cli {

namespace {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Output formats

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        return;
    }
    out.emplace_back(prefix, j);
}

std::string scalar_text(const Json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (const auto& x : v)
            s += (s.empty() ? "" : " ") + scalar_text(x);
        return s;
    }
    return v.dump();
}

std::string csv_cell(const Json& v)
{
    if (v.is_string() || v.is_array()) {
        std::string s = "\"";
        for (char c : scalar_text(v)) {
            if (c == '"')
                s += '"';
            s += c;
        }
        return s + "\"";
    }
    return v.dump();
}

const char* table_key(const Json& doc)
{
    for (const char* k : {"criteria", "points", "rows"})
        if (doc.contains(k) && doc[k].is_array())
            return k;
    return nullptr;
}

void emit_text(const Json& doc, std::ostream& out)
{
    std::vector<std::pair<std::string, Json>> flat;
    flatten(doc, "", flat);
    for (const auto& [k, v] : flat) {
        if (v.is_array() && !v.empty() && v.front().is_object()) {
            out << k << ":\n";
            for (const auto& row : v) {
                std::vector<std::pair<std::string, Json>> cells;
                flatten(row, "", cells);
                out << " ";
                for (const auto& [ck, cv] : cells)
                    out << " " << ck << "=" << scalar_text(cv);
                out << "\n";
            }
            continue;
        }
        const std::string text = scalar_text(v);
        if (text.find('\n') != std::string::npos) {
            out << k << ":\n";
            std::istringstream lines(text);
            for (std::string line; std::getline(lines, line);)
                out << "  " << line << "\n";
        } else {
            out << k << ": " << text << "\n";
        }
    }
}

void emit_csv(const Json& doc, std::ostream& out)
{
    std::vector<Json> rows;
    if (const char* key = table_key(doc))
        for (const auto& r : doc[key])
            rows.push_back(r);
    else
        rows.push_back(doc);
    bool header = true;
    for (const auto& r : rows) {
        std::vector<std::pair<std::string, Json>> cells;
        flatten(r, "", cells);
        if (header) {
            for (std::size_t i = 0; i < cells.size(); ++i)
                out << (i ? "," : "") << cells[i].first;
            out << "\n";
            header = false;
        }
        for (std::size_t i = 0; i < cells.size(); ++i)
            out << (i ? "," : "") << csv_cell(cells[i].second);
        out << "\n";
    }
}

void emit(Json doc, const std::string& format, std::ostream& out)
{
    doc["schema"] = schema;
    if (format == "json")
        out << doc.dump(2) << "\n";
    else if (format == "csv")
        emit_csv(doc, out);
    else
        emit_text(doc, out);
}

// ---------------------------------------------------------------------------
// Shared option groups

struct SearchFlags {
    std::optional<std::uint64_t> budget_nodes;
    std::optional<double> budget_secs;
    int threads = 1;
    int split_depth = 3;
    Weight floor = 0;
    std::optional<Weight> ceiling;
    std::vector<std::string> seed_templates;
    bool no_symmetry = false;
    bool no_construction_seeds = false;
    bool no_circulant_seeds = false;

    void attach(CLI::App* app)
    {
        app->add_option("--budget-nodes", budget_nodes, "Node expansions after the root (0: root bound only)");
        app->add_option("--budget-secs", budget_secs, "Wall-clock budget in seconds");
        app->add_option("--threads", threads, "Parallel width")->check(CLI::PositiveNumber);
        app->add_option("--split-depth", split_depth, "Tree depth at which parallel tasks are cut");
        app->add_option("--floor", floor, "Smallest multiplicity allowed on any pair");
        app->add_option("--ceiling", ceiling, "Largest multiplicity allowed on any pair");
        app->add_option("--seed-template", seed_templates, "Extra incumbent seed, as a,r,d:x0,x1,...");
        app->add_flag("--no-symmetry", no_symmetry, "Disable degree-order symmetry breaking");
        app->add_flag("--no-construction-seeds", no_construction_seeds, "Do not seed from constructions");
        app->add_flag("--no-circulant-seeds", no_circulant_seeds, "Do not seed from circulant graphs");
    }

    [[nodiscard]] SearchConfig config() const
    {
        SearchConfig c;
        c.node_budget = budget_nodes;
        c.time_budget_secs = budget_secs;
        c.threads = threads;
        c.split_depth = split_depth;
        c.weight_floor = floor;
        c.weight_ceiling = ceiling;
        c.symmetry_breaking = !no_symmetry;
        c.construction_seeds = !no_construction_seeds;
        c.circulant_seeds = !no_circulant_seeds;
        for (const auto& text : seed_templates)
            c.seed_templates.push_back(parse_template(text));
        return c;
    }

    static TuranTemplate parse_template(const std::string& text)
    {
        static const std::regex form(R"(^(\d+),(\d+),(\d+):(\d+(?:,\d+)*)$)");
        std::smatch m;
        if (!std::regex_match(text, m, form))
            throw InvalidParameter("seed template must look like a,r,d:x0,x1,... got '" + text + "'");
        TuranTemplate t;
        t.a = std::stoull(m[1]);
        t.r = std::stoi(m[2]);
        t.d = std::stoull(m[3]);
        std::istringstream parts(m[4]);
        for (std::string x; std::getline(parts, x, ',');)
            t.sizes.push_back(std::stoi(x));
        validate(t);
        return t;
    }
};

std::optional<std::filesystem::path> cache_dir()
{
    if (const char* env = std::getenv("MULTEX_CACHE_DIR"); env && *env)
        return std::filesystem::path(env);
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::filesystem::path(xdg) / "multex";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "multex";
    return std::nullopt;
}

Json ratio_doc(int n, const std::vector<Weight>& grid)
{
    Json doc;
    doc["n"] = n;
    auto points = Json::array();
    for (const auto& p : ratio_trend(n, grid)) {
        Json j;
        j["a"] = p.a;
        j["ratio"] = p.decimal;
        j["approx"] = p.value;
        points.push_back(j);
    }
    doc["points"] = points;
    return doc;
}

} // namespace

unsigned long long parse_q(const std::string& text, const unsigned long long* a)
{
    static const std::regex literal(R"(^\d+$)");
    static const std::regex a_first(R"(^a(?:\*(\d+))?(?:\+(\d+))?$)");
    static const std::regex k_first(R"(^(\d+)\*a(?:\+(\d+))?$)");
    if (std::regex_match(text, literal))
        return std::stoull(text);
    std::smatch m;
    const bool af = std::regex_match(text, m, a_first);
    if (!af && !std::regex_match(text, m, k_first))
        throw InvalidParameter("q must be an integer or of the form a*K+C, got '" + text + "'");
    if (!a)
        throw InvalidParameter("q expression '" + text + "' needs --a");
    const unsigned long long k = m[1].matched ? std::stoull(m[1]) : 1;
    const unsigned long long c = m[2].matched ? std::stoull(m[2]) : 0;
    return k * *a + c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app {"Product-Turan numbers of multigraphs: bounds, constructions and exact search"};
    app.name("multex");
    app.require_subcommand(1, 1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    bool no_cache = false;
    app.add_flag("--no-cache", no_cache, "Do not read or write the result cache");

    std::function<int()> action;
    std::optional<unsigned long long> a_value;
    auto q_option = [&](CLI::App* sub, std::string& q) {
        sub->add_option("q", q, "q, literal or a*K+C")->required();
        sub->add_option("--a", a_value, "Value of a in a q expression");
    };
    auto resolve_q = [&](const std::string& q) {
        const unsigned long long a = a_value.value_or(0);
        return static_cast<Weight>(parse_q(q, a_value ? &a : nullptr));
    };

    int n = 0, s = 0, r = 0;
    Weight a = 0, d = 0;
    std::string q_text;
    std::vector<int> sizes;
    std::vector<Weight> grid;

    // bounds n s q
    auto* bounds = app.add_subcommand("bounds", "Averaging edge cap and AM-GM product cap");
    bounds->add_option("n", n)->required();
    bounds->add_option("s", s)->required();
    q_option(bounds, q_text);
    bounds->callback([&] {
        action = [&] {
            emit(to_json(product_upper_bound(n, s, resolve_q(q_text))), format, out);
            return ok;
        };
    });

    // construct a r d sizes...
    std::optional<int> check_s;
    std::optional<Weight> check_q;
    auto* construct = app.add_subcommand("construct", "Build T_{r,d}(a,n) from part sizes");
    construct->add_option("a", a)->required();
    construct->add_option("r", r)->required();
    construct->add_option("d", d)->required();
    construct->add_option("sizes", sizes, "Part sizes x0 x1 ...")->required();
    construct->add_option("--s", check_s, "Also report the largest s-set sum");
    construct->add_option("--q", check_q, "With --s, also check the (s,q) condition");
    construct->callback([&] {
        action = [&] {
            const TuranTemplate t {a, r, d, sizes};
            const Multigraph g = build_construction(t);
            Json doc;
            doc["template"] = to_json(t);
            doc["n"] = g.vertex_count();
            doc["edge_sum"] = edge_sum(g);
            doc["product"] = product(g).to_decimal();
            if (check_s) {
                doc["max_spanned_sum"] = max_spanned_sum(g, *check_s);
                if (check_q)
                    doc["is_sq_graph"] = is_sq_graph(g, SQConstraint {*check_s, *check_q});
            }
            doc["edges"] = to_edge_list(g);
            emit(doc, format, out);
            return ok;
        };
    });

    // sigma|pi a r d n
    for (const char* which : {"sigma", "pi"}) {
        const bool is_pi = std::string(which) == "pi";
        auto* sub = app.add_subcommand(which, is_pi ? "Largest edge product over T_{r,d}(a,n)"
                                                    : "Largest edge sum over T_{r,d}(a,n)");
        sub->add_option("a", a)->required();
        sub->add_option("r", r)->required();
        sub->add_option("d", d)->required();
        sub->add_option("n", n)->required();
        sub->callback([&, is_pi] {
            action = [&, is_pi] {
                Json doc;
                if (is_pi) {
                    const auto opt = pi_rd_optimum(a, r, d, n);
                    doc["value"] = opt.value.to_decimal();
                    doc["witness"] = to_json(opt.witness);
                } else {
                    const auto opt = sigma_rd_optimum(a, r, d, n);
                    doc["value"] = opt.value;
                    doc["witness"] = to_json(opt.witness);
                }
                emit(doc, format, out);
                return ok;
            };
        });
    }

    // optimal-x a n
    auto* optx = app.add_subcommand("optimal-x", "Best |V0| for the two-part construction with d = 2");
    optx->add_option("a", a)->required();
    optx->add_option("n", n)->required();
    optx->callback([&] {
        action = [&] {
            const auto opt = optimal_v0_size(a, n);
            Json doc;
            doc["a"] = a;
            doc["n"] = n;
            doc["x_star"] = opt.x_star;
            doc["value"] = opt.value.to_decimal();
            doc["tied"] = opt.tied;
            emit(doc, format, out);
            return ok;
        };
    });

    // search n s q
    SearchFlags search_flags;
    auto* search = app.add_subcommand("search", "Exact ex_Pi(n,s,q) by branch and bound");
    search->add_option("n", n)->required();
    search->add_option("s", s)->required();
    q_option(search, q_text);
    search_flags.attach(search);
    search->callback([&] {
        action = [&] {
            const Weight q = resolve_q(q_text);
            const SearchConfig cfg = search_flags.config();
            std::optional<SearchCache> cache;
            if (!no_cache)
                if (auto dir = cache_dir())
                    cache.emplace(*dir);
            std::optional<SearchResult> hit;
            if (cache && n >= s)
                hit = cache->lookup(n, s, q, cfg);
            const SearchResult res = hit ? *hit : exact_ex_pi(n, s, q, cfg);
            if (cache && !hit && res.status == SearchStatus::closed) {
                try {
                    cache->store(cfg, res);
                } catch (const std::exception& e) {
                    err << "warning: could not write cache: " << e.what() << "\n";
                }
            }
            Json doc = to_json(res);
            doc["cache"] = !cache ? "off" : hit ? "hit" : "miss";
            emit(doc, format, out);
            return ok;
        };
    });

    // conjecture a r d s n
    SearchFlags conj_flags;
    auto* conj = app.add_subcommand("conjecture", "Compare ex_Pi(n,s,Sigma_{r,d}(a,s)) with Pi_{r,d}(a,n)");
    conj->add_option("a", a)->required();
    conj->add_option("r", r)->required();
    conj->add_option("d", d)->required();
    conj->add_option("s", s)->required();
    conj->add_option("n", n)->required();
    conj_flags.attach(conj);
    conj->callback([&] {
        action = [&] {
            emit(to_json(check_conjecture(a, r, d, s, n, conj_flags.config())), format, out);
            return ok;
        };
    });

    // claim-c4
    int cap = 4;
    bool deep = false, serial = false;
    auto* c4 = app.add_subcommand("claim-c4", "Enumerate 8-edge supports on 7 vertices");
    c4->add_option("--cap", cap, "Largest support edge count allowed in a 5-set")->check(CLI::Range(0, 10));
    c4->add_flag("--deep", deep, "Also enumerate one a-1 pair with nine a+1 pairs");
    c4->add_flag("--serial", serial, "Use the serial reference kernel");
    c4->callback([&] {
        action = [&] {
            const auto rep = serial ? claim_c4_enumeration_serial(cap, deep) : claim_c4_enumeration(cap, deep);
            emit(to_json(rep), format, out);
            return ok;
        };
    });

    // suite
    SuiteConfig suite_cfg;
    bool no_oracle = false;
    auto* suite = app.add_subcommand("suite", "Run every acceptance criterion");
    suite->add_option("--budget-nodes", suite_cfg.node_budget, "Node budget for the n=5,6 searches");
    suite->add_option("--budget-secs", suite_cfg.search_secs, "Time budget for the n=5,6 searches");
    suite->add_option("--n7-secs", suite_cfg.n7_secs, "Time budget for the n=7 enclosure");
    suite->add_option("--threads", suite_cfg.threads, "Parallel width")->check(CLI::PositiveNumber);
    suite->add_option("--q-shift", suite_cfg.q_shift, "Offset added to every q (negative control: -1)");
    suite->add_option("--samples", suite_cfg.property_samples, "Random vectors per property check");
    suite->add_option("--seed", suite_cfg.seed, "Random seed for the property checks");
    suite->add_flag("--no-oracle", no_oracle, "Skip the exhaustive-enumeration sweep");
    suite->callback([&] {
        action = [&] {
            suite_cfg.include_oracle_sweep = !no_oracle;
            const auto report = theorem_suite(suite_cfg);
            Json doc;
            doc["pass"] = report.all_pass();
            doc["criteria"] = to_json(report);
            emit(doc, format, out);
            return report.all_pass() ? ok : suite_failed;
        };
    });

    // ratio n a...
    auto* ratio = app.add_subcommand("ratio", "Upper-bound to construction ratio over a grid of a");
    ratio->add_option("n", n)->required();
    ratio->add_option("a", grid, "Values of a")->required();
    ratio->callback([&] {
        action = [&] {
            emit(ratio_doc(n, grid), format, out);
            return ok;
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : invalid_parameters;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return invalid_parameters;
    }

    try {
        return action();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::out_of_range& e) {
        err << "error: value out of range: " << e.what() << "\n";
    }
    return invalid_parameters;
}

} // namespace multex::cli
