#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdual/constructions.hpp"
#include "fdual/duality.hpp"
#include "fdual/nonexistence.hpp"
#include "fdual/search.hpp"

namespace fdual::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
/// Bumped whenever the search engine can produce different results; part of the cache key.
inline constexpr const char* kEngineVersion = "search-2";

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sorted keys, no whitespace, trailing newline.
std::string canonical_dump(const json& j);

json group_to_json(const GroupSpec& G);
GroupSpec group_from_json(const json& j);

/// Element sets are written as sorted coordinate vectors.
json set_to_json(const GroupSpec& G, const ElementSet& S);
ElementSet set_from_json(const GroupSpec& G, const json& j);

json certificate_to_json(const DualityCertificate& c);
DualityCertificate certificate_from_json(const json& j);

json construction_to_json(const Construction& c);
json decomposition_to_json(const GroupSpec& G, const EvenResult& r);
json verdicts_to_json(const std::vector<FilterVerdict>& v);
json search_result_to_json(const SearchResult& r);
SearchResult search_result_from_json(const json& j);
json row_to_json(const ClassificationRow& r);
ClassificationRow row_from_json(const json& j);
json table_to_json(const std::vector<ClassificationRow>& rows);
std::vector<ClassificationRow> table_from_json(const json& j);
json cyclic_case_to_json(const CyclicCase& c, bool with_rules);

/// Wraps a payload as {"schema": version, "kind": kind, "data": payload}.
json envelope(const std::string& kind, json payload);
/// Checks version and kind, returns the payload.
json open_envelope(const json& j, const std::string& kind);

void save_json(const std::filesystem::path& p, const json& j);
json load_json(const std::filesystem::path& p);

/// Group from "2,4,4" (an empty string or "1" is the trivial group).
GroupSpec parse_group_arg(const std::string& text);
/// "0,1,5" element indices, or a JSON list of coordinate vectors "[[0,0],[1,3]]".
ElementSet parse_set_arg(const GroupSpec& G, const std::string& text);

std::string sha256_hex(const std::string& data);

/// $FDUAL_CACHE_DIR, else ./.fdual-cache.
std::filesystem::path default_cache_dir();

/**
 * One file per (group, k, engine version). Each file stores the result with a SHA-256 of its
 * canonical text; entries that fail the check are deleted and reported as misses.
 */
class FileSearchCache : public SearchCache {
public:
    explicit FileSearchCache(std::filesystem::path dir);
    std::optional<SearchResult> load(const GroupSpec& G, long long k) override;
    void store(const SearchResult& r) override;
    std::filesystem::path path_for(const GroupSpec& G, long long k) const;
    int corrupted_entries() const { return corrupted_; }

private:
    std::filesystem::path dir_;
    int corrupted_ = 0;
};

}  // namespace fdual::io
