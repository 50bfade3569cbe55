#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include <multex/bignat.hpp>
#include <multex/constructions.hpp>
#include <multex/multigraph.hpp>

namespace multex {

struct SearchConfig {
    Weight weight_floor = 0;
    std::optional<Weight> weight_ceiling; ///< defaults to q

    /// Node expansions allowed after the root bound; 0 evaluates the root only.
    std::optional<std::uint64_t> node_budget;
    std::optional<double> time_budget_secs;

    /// 1 runs the serial reference search; more fans subtrees out over OpenMP.
    int threads = 1;
    /// Depth at which the tree is cut into parallel tasks.
    int split_depth = 3;

    std::vector<TuranTemplate> seed_templates;
    bool construction_seeds = true; ///< every admissible T_{r,d}(a,n) maximum
    bool circulant_seeds = true;    ///< near-balanced circulant multigraphs
    bool symmetry_breaking = true;
};

enum class SearchStatus {
    closed,
    budget_exhausted,
};

std::string to_string(SearchStatus s);

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
    std::uint64_t pruned_bound = 0;
    std::uint64_t pruned_symmetry = 0;
    std::uint64_t pruned_infeasible = 0;
    double wall_ms = 0;
};

struct SearchResult {
    int n = 0;
    int s = 0;
    Weight q = 0;
    BigNat lower;
    BigNat upper;
    SearchStatus status = SearchStatus::closed;
    Multigraph witness;
    std::string seed_source; ///< where the initial incumbent came from
    BigNat seed_value;
    SearchStats stats;
};

/// Exact ex_Pi(n, s, q) by depth-first branch and bound.
///
/// Pairs are branched in lexicographic order, values descending from the
/// propagated cap. Each node caps every open pair by the slack of the s-sets
/// containing it and bounds the open product by water-filling the capped
/// pairs under the averaging edge-sum cap. The incumbent starts from the
/// best admissible construction. With symmetry breaking on, only labelings
/// whose first min(n,4) vertices lead a nonincreasing weighted-degree order
/// are explored.
///
/// A closed result is exact; a budget-exhausted one is a certified enclosure.
/// Throws UnboundedProblem when n < s and InvalidParameter for s < 2 or an
/// inconsistent config.
SearchResult exact_ex_pi(int n, int s, Weight q, const SearchConfig& cfg = {});

/// Recomputes feasibility of a witness; `product_out` receives P(G).
bool certify_witness(const Multigraph& g, int s, Weight q, BigNat* product_out = nullptr);

/// Best admissible seed graph for (n,s,q) under cfg, with its provenance.
struct Seed {
    Multigraph graph;
    BigNat value;
    std::string source;
};
Seed best_seed(int n, int s, Weight q, const SearchConfig& cfg);

nlohmann::ordered_json to_json(const SearchResult& r);
SearchResult search_result_from_json(const nlohmann::ordered_json& j);

/// Persistent results keyed by (n, s, q, config digest). One JSON file per
/// key; thread count is not part of the key.
class SearchCache {
public:
    explicit SearchCache(std::filesystem::path dir);

    static std::string key_digest(int n, int s, Weight q, const SearchConfig& cfg);

    /// Corrupt, tampered or uncertifiable entries are reported on stderr and ignored.
    [[nodiscard]] std::optional<SearchResult> lookup(int n, int s, Weight q, const SearchConfig& cfg) const;

    /// Writes atomically through a temporary file and rename.
    void store(const SearchConfig& cfg, const SearchResult& r) const;

    [[nodiscard]] std::filesystem::path entry_path(const std::string& digest) const;
    [[nodiscard]] const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

} // namespace multex
