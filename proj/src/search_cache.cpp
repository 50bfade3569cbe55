#include <multex/search.hpp>

#include <multex/errors.hpp>

#include <array>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

namespace multex {

std::string sha256_hex(const std::string& bytes)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> md {};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 15]);
    }
    return out;
}

namespace {

nlohmann::ordered_json key_json(int n, int s, Weight q, const SearchConfig& cfg)
{
    nlohmann::ordered_json k;
    k["schema"] = "multex/1";
    k["n"] = n;
    k["s"] = s;
    k["q"] = q;
    k["weight_floor"] = cfg.weight_floor;
    k["weight_ceiling"] = cfg.weight_ceiling ? nlohmann::ordered_json(*cfg.weight_ceiling) : nlohmann::ordered_json(nullptr);
    k["node_budget"] = cfg.node_budget ? nlohmann::ordered_json(*cfg.node_budget) : nlohmann::ordered_json(nullptr);
    k["time_budget_secs"] = cfg.time_budget_secs ? nlohmann::ordered_json(*cfg.time_budget_secs) : nlohmann::ordered_json(nullptr);
    k["construction_seeds"] = cfg.construction_seeds;
    k["circulant_seeds"] = cfg.circulant_seeds;
    k["symmetry_breaking"] = cfg.symmetry_breaking;
    auto seeds = nlohmann::ordered_json::array();
    for (const auto& t : cfg.seed_templates)
        seeds.push_back(to_json(t));
    k["seed_templates"] = seeds;
    return k;
}

void warn(const std::filesystem::path& file, const std::string& why)
{
    std::cerr << "warning: ignoring cache entry " << file.string() << ": " << why << '\n';
}

} // namespace

SearchCache::SearchCache(std::filesystem::path dir)
    : dir_(std::move(dir))
{
}

std::string SearchCache::key_digest(int n, int s, Weight q, const SearchConfig& cfg)
{
    return sha256_hex(key_json(n, s, q, cfg).dump());
}

std::filesystem::path SearchCache::entry_path(const std::string& digest) const { return dir_ / (digest + ".json"); }

std::optional<SearchResult> SearchCache::lookup(int n, int s, Weight q, const SearchConfig& cfg) const
{
    const std::string digest = key_digest(n, s, q, cfg);
    const auto file = entry_path(digest);
    std::error_code ec;
    if (!std::filesystem::exists(file, ec))
        return std::nullopt;

    std::ifstream in(file);
    std::stringstream buf;
    buf << in.rdbuf();
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(buf.str());
    } catch (const nlohmann::ordered_json::exception& e) {
        warn(file, std::string("unparseable: ") + e.what());
        return std::nullopt;
    }
    try {
        if (j.at("key_digest").get<std::string>() != digest) {
            warn(file, "key digest mismatch");
            return std::nullopt;
        }
        if (j.at("key") != key_json(n, s, q, cfg)) {
            warn(file, "key mismatch");
            return std::nullopt;
        }
        const auto& payload = j.at("result");
        if (j.at("payload_digest").get<std::string>() != sha256_hex(payload.dump())) {
            warn(file, "payload digest mismatch");
            return std::nullopt;
        }
        SearchResult r = search_result_from_json(payload);
        BigNat p;
        if (r.n != n || r.s != s || r.q != q || !certify_witness(r.witness, s, q, &p) || p != r.lower
            || r.lower > r.upper || (r.status == SearchStatus::closed && r.lower != r.upper)) {
            warn(file, "witness or enclosure fails re-certification");
            return std::nullopt;
        }
        return r;
    } catch (const std::exception& e) {
        warn(file, e.what());
        return std::nullopt;
    }
}

void SearchCache::store(const SearchConfig& cfg, const SearchResult& r) const
{
    std::filesystem::create_directories(dir_);
    const std::string digest = key_digest(r.n, r.s, r.q, cfg);
    nlohmann::ordered_json j;
    j["schema"] = "multex/1";
    j["key_digest"] = digest;
    j["key"] = key_json(r.n, r.s, r.q, cfg);
    j["result"] = to_json(r);
    j["payload_digest"] = sha256_hex(j["result"].dump());

    const auto target = entry_path(digest);
    std::random_device rd;
    const auto tmp = dir_ / (digest + ".tmp." + std::to_string(rd()));
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write cache file " + tmp.string());
        out << j.dump(2) << '\n';
        if (!out.flush())
            throw std::runtime_error("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

} // namespace multex
