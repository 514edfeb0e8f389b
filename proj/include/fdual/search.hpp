#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdual/abelian.hpp"
#include "fdual/nonexistence.hpp"

namespace fdual {

struct SearchOptions {
    std::uint64_t node_budget = 1000000000ULL;
    double time_budget_seconds = 0;  // 0 means unlimited
    unsigned threads = 0;            // 0 means all cores
    bool use_filters = true;
};

struct FoundPair {
    ElementSet S, T;
    bool operator==(const FoundPair& o) const { return S == o.S && T == o.T; }
};

struct SearchResult {
    GroupSpec group;
    long long set_size = 0;
    /// One entry per equivalence class of S, S in canonical form, sorted.
    std::vector<FoundPair> classes;
    /// false when a budget stopped the search; the class list is then partial.
    bool complete = true;
    /// Parameters were ruled out before any search.
    std::vector<FilterVerdict> kills;
    std::uint64_t nodes = 0;
    /// false when canonical forms only used unit multiples, so classes may repeat.
    bool equivalence_exact = true;
};

/// All primitive formally dual sets of the given size up to equivalence, each with one
/// partner of size |G| / k. Normalized so that 0 is in S.
SearchResult search_formally_dual_sets(const GroupSpec& G, long long k, const SearchOptions& opt = {});

/// Some T with 0 in T and nu_T equal to the target, or nullopt if none exists.
/// complete is cleared when the node budget ran out first.
std::optional<ElementSet> find_set_with_differences(const GroupSpec& G, const std::vector<long long>& target,
                                                    long long tsize, std::uint64_t budget, bool* complete,
                                                    std::uint64_t* nodes = nullptr);

enum class RowStatus { exists, none, inconclusive };
std::string to_string(RowStatus s);

struct WitnessInfo {
    FoundPair pair;
    int rank = 0;
    bool rank_minimal = false;
    bool rds = false;  // an (n,n,n,1) relative difference set
};

struct ClassificationRow {
    long long order = 0, set_size = 0;
    GroupSpec group;
    RowStatus status = RowStatus::none;
    /// Rule tags joined by ", ", "computer search", or "budget exhausted".
    std::string source;
    std::vector<WitnessInfo> witnesses;
};

/// Persistent store for search results (see the io module for the file-backed one).
class SearchCache {
public:
    virtual ~SearchCache() = default;
    virtual std::optional<SearchResult> load(const GroupSpec& G, long long k) = 0;
    virtual void store(const SearchResult& r) = 0;
};

ClassificationRow classify_case(const GroupSpec& G, long long k, const SearchOptions& opt = {},
                                SearchCache* cache = nullptr);
/// Rows for every k dividing |G| with k <= sqrt(|G|) (k >= 2, or k = 1 for the trivial group).
std::vector<ClassificationRow> classify_group(const GroupSpec& G, const SearchOptions& opt = {},
                                              SearchCache* cache = nullptr);
/// Every abelian group of every non-square-free order up to max_order. Orders above 49
/// need allow_large.
std::vector<ClassificationRow> classify_range(int max_order, const SearchOptions& opt = {},
                                              SearchCache* cache = nullptr, bool allow_large = false);

struct RankCensus {
    std::map<int, int> distribution;  // rank -> number of witnesses
    int not_minimal = 0;              // witnesses whose rank is only an upper bound
    /// Rank-3 witnesses that are not (n,n,n,1)-RDSs, and witnesses of rank != 3 in nontrivial
    /// cyclic groups.
    std::vector<std::string> flags;
};

RankCensus rank_census(const std::vector<ClassificationRow>& rows);

}  // namespace fdual
