#include <doctest.h>

#include "cli.hpp"

#include <multex/errors.hpp>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = multex::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::ordered_json json_of(const Run& r) { return nlohmann::ordered_json::parse(r.out); }

} // namespace

TEST_CASE("pi as JSON")
{
    const auto r = cli({"pi", "3", "2", "2", "5", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = json_of(r);
    CHECK(j["value"] == "186624");
    CHECK(j["schema"] == "multex/1");
    CHECK(j.begin().key() == "value");
}

TEST_CASE("bounds text output")
{
    const auto r = cli({"bounds", "6", "5", "34"});
    CHECK(r.code == 0);
    CHECK(r.out.find("edge_cap: 51\n") != std::string::npos);
    CHECK(r.out.find("product_cap: 80621568\n") != std::string::npos);
}

TEST_CASE("q expressions")
{
    CHECK(multex::cli::parse_q("34", nullptr) == 34);
    const unsigned long long a = 7;
    CHECK(multex::cli::parse_q("a*10+4", &a) == 74);
    CHECK(multex::cli::parse_q("10*a+4", &a) == 74);
    CHECK(multex::cli::parse_q("a*21", &a) == 147);
    CHECK(multex::cli::parse_q("a+1", &a) == 8);
    CHECK_THROWS_AS(multex::cli::parse_q("a*10+4", nullptr), multex::InvalidParameter);
    CHECK_THROWS_AS(multex::cli::parse_q("a*-3", &a), multex::InvalidParameter);

    const auto r = cli({"--format", "json", "bounds", "7", "5", "a*10+4", "--a", "3"});
    CHECK(r.code == 0);
    CHECK(json_of(r)["edge_cap"] == 71);
    CHECK(cli({"bounds", "7", "5", "a*10+4"}).code == 2);
}

TEST_CASE("conjecture is refuted at n = 6")
{
    const auto r = cli({"conjecture", "3", "2", "2", "5", "6", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(json_of(r)["verdict"] == "refuted");
}

TEST_CASE("invalid parameters exit 2 and name the problem")
{
    const auto hyp = cli({"conjecture", "3", "2", "2", "4", "6"});
    CHECK(hyp.code == 2);
    CHECK(hyp.err.find("s >= (r-1)(d+1)+2") != std::string::npos);
    CHECK(cli({"search", "4", "5", "10", "--no-cache"}).code == 2);
    CHECK(cli({"optimal-x", "2", "6"}).code == 2);
    CHECK(cli({"construct", "3", "2", "5", "1", "4"}).code == 2);
}

TEST_CASE("unknown flags and subcommands are errors")
{
    CHECK(cli({"search", "5", "5", "34", "--bogus"}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"bounds", "6", "5", "34", "--format", "xml"}).code == 2);
    CHECK(cli({"bounds", "6", "5", "34", "extra"}).code == 2);
}

TEST_CASE("help exits 0")
{
    const auto r = cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("search") != std::string::npos);
}

TEST_CASE("csv quotes big integers")
{
    const auto r = cli({"ratio", "7", "3", "10", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("a,ratio,approx\n3,\"1.5000", 0) == 0);
    const auto b = cli({"bounds", "6", "5", "34", "--format", "csv"});
    CHECK(b.out.find(",\"80621568\",") != std::string::npos);
}

TEST_CASE("other subcommands")
{
    CHECK(json_of(cli({"--format", "json", "sigma", "3", "2", "2", "5"}))["value"] == 34);
    CHECK(json_of(cli({"--format", "json", "optimal-x", "5", "6"}))["x_star"] == 2);
    const auto c = json_of(cli({"--format", "json", "construct", "3", "2", "2", "1", "4", "--s", "5", "--q", "34"}));
    CHECK(c["product"] == "186624");
    CHECK(c["is_sq_graph"] == true);
    const auto c4 = json_of(cli({"--format", "json", "claim-c4"}));
    CHECK(c4["supports_examined"] == 203490);
    CHECK(c4["valid_supports"] == 0);
    CHECK(json_of(cli({"--format", "json", "claim-c4", "--cap", "5", "--serial"}))["valid_supports"] > 0);
}

TEST_CASE("search uses the cache directory from the environment")
{
    std::random_device rd;
    const fs::path dir = fs::temp_directory_path() / ("multex-cli-" + std::to_string(rd()));
    ::setenv("MULTEX_CACHE_DIR", dir.c_str(), 1);
    const auto first = json_of(cli({"--format", "json", "search", "6", "5", "34"}));
    const auto second = json_of(cli({"--format", "json", "search", "6", "5", "34", "--threads", "2"}));
    const auto off = json_of(cli({"--format", "json", "--no-cache", "search", "6", "5", "34"}));
    ::unsetenv("MULTEX_CACHE_DIR");
    fs::remove_all(dir);

    CHECK(first["cache"] == "miss");
    CHECK(second["cache"] == "hit");
    CHECK(off["cache"] == "off");
    CHECK(first["lower"] == "80621568");
    CHECK(second["witness"] == first["witness"]);
}

TEST_CASE("search budget flags")
{
    const auto r = json_of(cli({"--format", "json", "--no-cache", "search", "7", "5", "34", "--budget-nodes", "0"}));
    CHECK(r["status"] == "budget-exhausted");
    CHECK(r["stats"]["nodes"] == 0);
}
