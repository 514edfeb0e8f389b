#include "fdual/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace fdual::io {

std::string canonical_dump(const json& j) { return j.dump() + "\n"; }

json group_to_json(const GroupSpec& G) { return json{{"cyclic_factors", G.factors()}}; }

GroupSpec group_from_json(const json& j) {
    if (!j.is_object() || !j.contains("cyclic_factors")) throw FormatError("group needs cyclic_factors");
    return GroupSpec(j.at("cyclic_factors").get<std::vector<int>>());
}

namespace {

json elem_to_json(const GroupSpec& G, Elem g) { return G.coords(g); }

Elem elem_from_json(const GroupSpec& G, const json& j) {
    if (!j.is_array() || j.size() != G.factors().size()) throw FormatError("element has the wrong number of coordinates");
    std::vector<int> c = j.get<std::vector<int>>();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] < 0 || c[i] >= G.factors()[i]) throw FormatError("coordinate out of range");
    return G.index(c);
}

json opt_elem(const GroupSpec& G, const std::optional<Elem>& e) { return e ? elem_to_json(G, *e) : json(nullptr); }

std::optional<Elem> opt_elem_from(const GroupSpec& G, const json& j) {
    if (j.is_null()) return std::nullopt;
    return elem_from_json(G, j);
}

json primitivity_to_json(const GroupSpec& G, const PrimitivityReport& p) {
    json j{{"primitive", p.primitive}, {"character_witness", opt_elem(G, p.character_witness)}};
    j["stabilizer_witness"] = p.stabilizer_witness ? set_to_json(G, p.stabilizer_witness->elements) : json(nullptr);
    return j;
}

PrimitivityReport primitivity_from_json(const GroupSpec& G, const json& j) {
    PrimitivityReport p;
    p.primitive = j.at("primitive").get<bool>();
    p.character_witness = opt_elem_from(G, j.at("character_witness"));
    if (!j.at("stabilizer_witness").is_null())
        p.stabilizer_witness = subgroup_from_elements(G, set_from_json(G, j.at("stabilizer_witness")));
    return p;
}

json spectrum_to_json(const SpectrumReport& s) {
    return json{{"character", s.character}, {"difference", s.difference}, {"non_integer", s.non_integer}};
}

SpectrumReport spectrum_from_json(const json& j) {
    SpectrumReport s;
    s.character = j.at("character").get<std::vector<long long>>();
    s.difference = j.at("difference").get<std::vector<long long>>();
    s.non_integer = j.at("non_integer").get<int>();
    return s;
}

json pair_to_json(const GroupSpec& G, const FoundPair& p) {
    return json{{"S", set_to_json(G, p.S)}, {"T", set_to_json(G, p.T)}};
}

FoundPair pair_from_json(const GroupSpec& G, const json& j) {
    return FoundPair{set_from_json(G, j.at("S")), set_from_json(G, j.at("T"))};
}

RowStatus status_from_string(const std::string& s) {
    if (s == "exists") return RowStatus::exists;
    if (s == "none") return RowStatus::none;
    if (s == "inconclusive") return RowStatus::inconclusive;
    throw FormatError("unknown row status " + s);
}

template <class F>
auto wrap(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw FormatError(e.what());
    } catch (const GroupError& e) {
        throw FormatError(e.what());
    }
}

}  // namespace

json set_to_json(const GroupSpec& G, const ElementSet& S) {
    ElementSet s = S;
    std::sort(s.begin(), s.end());
    json out = json::array();
    for (Elem g : s) out.push_back(elem_to_json(G, g));
    return out;
}

ElementSet set_from_json(const GroupSpec& G, const json& j) {
    if (!j.is_array()) throw FormatError("set must be a list of coordinate vectors");
    ElementSet s;
    for (auto& e : j) s.push_back(elem_from_json(G, e));
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw FormatError("set has repeated elements");
    return s;
}

json certificate_to_json(const DualityCertificate& c) {
    const GroupSpec& G = c.group;
    json ledger = json::array();
    for (auto& r : c.ledger) {
        ledger.push_back(json{{"y", elem_to_json(G, r.y)},
                              {"chi_S", r.chi_S},
                              {"nu_T", r.nu_T},
                              {"lhs", r.lhs},
                              {"rhs", r.rhs},
                              {"chi_T", r.chi_T},
                              {"nu_S", r.nu_S},
                              {"lhs2", r.lhs2},
                              {"rhs2", r.rhs2},
                              {"ok", r.ok}});
    }
    return json{{"group", group_to_json(G)},
                {"S", set_to_json(G, c.S)},
                {"T", set_to_json(G, c.T)},
                {"verified", c.verified},
                {"primitive", c.primitive},
                {"primitivity_S", primitivity_to_json(G, c.primitivity_S)},
                {"primitivity_T", primitivity_to_json(G, c.primitivity_T)},
                {"ledger", ledger},
                {"failure_y", opt_elem(G, c.failure_y)},
                {"failure", c.failure},
                {"spectrum_S", spectrum_to_json(c.spectrum_S)},
                {"spectrum_T", spectrum_to_json(c.spectrum_T)}};
}

DualityCertificate certificate_from_json(const json& j) {
    return wrap([&] {
        DualityCertificate c;
        c.group = group_from_json(j.at("group"));
        const GroupSpec& G = c.group;
        c.S = set_from_json(G, j.at("S"));
        c.T = set_from_json(G, j.at("T"));
        c.verified = j.at("verified").get<bool>();
        c.primitive = j.at("primitive").get<bool>();
        c.primitivity_S = primitivity_from_json(G, j.at("primitivity_S"));
        c.primitivity_T = primitivity_from_json(G, j.at("primitivity_T"));
        for (auto& r : j.at("ledger")) {
            LedgerRow row;
            row.y = elem_from_json(G, r.at("y"));
            row.chi_S = r.at("chi_S");
            row.nu_T = r.at("nu_T");
            row.lhs = r.at("lhs");
            row.rhs = r.at("rhs");
            row.chi_T = r.at("chi_T");
            row.nu_S = r.at("nu_S");
            row.lhs2 = r.at("lhs2");
            row.rhs2 = r.at("rhs2");
            row.ok = r.at("ok");
            c.ledger.push_back(row);
        }
        c.failure_y = opt_elem_from(G, j.at("failure_y"));
        c.failure = j.at("failure").get<std::string>();
        c.spectrum_S = spectrum_from_json(j.at("spectrum_S"));
        c.spectrum_T = spectrum_from_json(j.at("spectrum_T"));
        return c;
    });
}

json construction_to_json(const Construction& c) {
    return json{{"family", c.family},
                {"label", c.label},
                {"group", group_to_json(c.group)},
                {"S", set_to_json(c.group, c.S)},
                {"T", set_to_json(c.group, c.T)}};
}

json decomposition_to_json(const GroupSpec& G, const EvenResult& r) {
    if (!r.decomposition) {
        const auto& w = *r.not_even;
        return json{{"even", false},
                    {"witness",
                     {{"a", elem_to_json(G, w.a)}, {"b", elem_to_json(G, w.b)}, {"value_a", w.value_a},
                      {"value_b", w.value_b}}}};
    }
    const auto& d = *r.decomposition;
    json terms = json::array();
    for (auto& t : d.terms) {
        json gens = json::array();
        for (Elem g : t.H.generators) gens.push_back(elem_to_json(G, g));
        terms.push_back(json{{"lambda", t.lambda}, {"order", t.H.size()}, {"generators", gens}});
    }
    return json{{"even", true},
                {"rank", d.rank},
                {"minimal", d.minimal},
                {"rank_lower_bound", d.rank_lower_bound},
                {"terms", terms}};
}

json verdicts_to_json(const std::vector<FilterVerdict>& v) {
    json out = json::array();
    for (auto& f : v) out.push_back(json{{"rule", f.rule}, {"reason", f.reason}});
    return out;
}

json search_result_to_json(const SearchResult& r) {
    json classes = json::array();
    for (auto& p : r.classes) classes.push_back(pair_to_json(r.group, p));
    return json{{"group", group_to_json(r.group)},
                {"set_size", r.set_size},
                {"classes", classes},
                {"complete", r.complete},
                {"kills", verdicts_to_json(r.kills)},
                {"nodes", r.nodes},
                {"equivalence_exact", r.equivalence_exact}};
}

SearchResult search_result_from_json(const json& j) {
    return wrap([&] {
        SearchResult r;
        r.group = group_from_json(j.at("group"));
        r.set_size = j.at("set_size");
        for (auto& p : j.at("classes")) r.classes.push_back(pair_from_json(r.group, p));
        r.complete = j.at("complete");
        for (auto& k : j.at("kills")) r.kills.push_back(FilterVerdict{true, k.at("rule"), k.at("reason")});
        r.nodes = j.at("nodes");
        r.equivalence_exact = j.at("equivalence_exact");
        return r;
    });
}

json row_to_json(const ClassificationRow& r) {
    json w = json::array();
    for (auto& x : r.witnesses) {
        json e = pair_to_json(r.group, x.pair);
        e["rank"] = x.rank;
        e["rank_minimal"] = x.rank_minimal;
        e["rds"] = x.rds;
        w.push_back(e);
    }
    return json{{"order", r.order},
                {"set_size", r.set_size},
                {"group", group_to_json(r.group)},
                {"name", r.group.name()},
                {"status", to_string(r.status)},
                {"source", r.source},
                {"witnesses", w}};
}

ClassificationRow row_from_json(const json& j) {
    return wrap([&] {
        ClassificationRow r;
        r.order = j.at("order");
        r.set_size = j.at("set_size");
        r.group = group_from_json(j.at("group"));
        r.status = status_from_string(j.at("status"));
        r.source = j.at("source");
        for (auto& e : j.at("witnesses")) {
            WitnessInfo w;
            w.pair = pair_from_json(r.group, e);
            w.rank = e.at("rank");
            w.rank_minimal = e.at("rank_minimal");
            w.rds = e.at("rds");
            r.witnesses.push_back(w);
        }
        return r;
    });
}

json table_to_json(const std::vector<ClassificationRow>& rows) {
    json out = json::array();
    for (auto& r : rows) out.push_back(row_to_json(r));
    return out;
}

std::vector<ClassificationRow> table_from_json(const json& j) {
    if (!j.is_array()) throw FormatError("table must be a list of rows");
    std::vector<ClassificationRow> rows;
    for (auto& r : j) rows.push_back(row_from_json(r));
    return rows;
}

json cyclic_case_to_json(const CyclicCase& c, bool with_rules) {
    json j{{"n", c.n}, {"ssize", c.ssize}, {"tsize", c.tsize}, {"survives", c.kills.empty()}};
    if (c.known) j["known_pair"] = true;
    if (with_rules) j["rules"] = verdicts_to_json(c.kills);
    return j;
}

json envelope(const std::string& kind, json payload) {
    return json{{"schema", kSchemaVersion}, {"kind", kind}, {"data", std::move(payload)}};
}

json open_envelope(const json& j, const std::string& kind) {
    if (!j.is_object() || !j.contains("schema") || !j.contains("kind") || !j.contains("data"))
        throw FormatError("not a report envelope");
    if (j.at("schema") != kSchemaVersion)
        throw FormatError("schema version " + j.at("schema").dump() + " is not " + std::to_string(kSchemaVersion));
    if (j.at("kind") != kind) throw FormatError("expected a " + kind + " report, got " + j.at("kind").dump());
    return j.at("data");
}

void save_json(const std::filesystem::path& p, const json& j) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::filesystem::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << canonical_dump(j);
    }
    std::filesystem::rename(tmp, p);
}

json load_json(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError(p.string() + ": " + e.what());
    }
}

GroupSpec parse_group_arg(const std::string& text) {
    try {
        return parse_group(text);
    } catch (const std::exception& e) {
        throw FormatError("bad group '" + text + "': " + e.what());
    }
}

ElementSet parse_set_arg(const GroupSpec& G, const std::string& text) {
    auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '[') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw FormatError(std::string("bad coordinate list: ") + e.what());
        }
        return wrap([&] { return set_from_json(G, j); });
    }
    ElementSet s;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t pos = 0;
        long long v;
        try {
            v = std::stoll(tok, &pos);
        } catch (const std::logic_error&) {
            throw FormatError("bad element index '" + tok + "'");
        }
        if (tok.find_first_not_of(" \t", pos) != std::string::npos) throw FormatError("bad element index '" + tok + "'");
        if (v < 0 || v >= G.order()) throw FormatError("element index " + tok + " outside the group");
        s.push_back(static_cast<Elem>(v));
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw FormatError("set has repeated elements");
    if (s.empty()) throw FormatError("empty set");
    return s;
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("FDUAL_CACHE_DIR"); env && *env) return env;
    return ".fdual-cache";
}

FileSearchCache::FileSearchCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path FileSearchCache::path_for(const GroupSpec& G, long long k) const {
    std::string name = "g";
    for (std::size_t i = 0; i < G.factors().size(); ++i) name += (i ? "-" : "") + std::to_string(G.factors()[i]);
    if (G.factors().empty()) name += "1";
    name += "_k" + std::to_string(k) + "_" + kEngineVersion + ".json";
    return dir_ / name;
}

std::optional<SearchResult> FileSearchCache::load(const GroupSpec& G, long long k) {
    auto p = path_for(G, k);
    if (!std::filesystem::exists(p)) return std::nullopt;
    try {
        json j = load_json(p);
        json data = open_envelope(j, "search-cache");
        if (j.value("engine", "") != kEngineVersion) throw FormatError("engine mismatch");
        if (j.value("sha256", "") != sha256_hex(canonical_dump(data))) throw FormatError("hash mismatch");
        SearchResult r = search_result_from_json(data);
        if (!(r.group == G) || r.set_size != k) throw FormatError("entry is for another job");
        return r;
    } catch (const std::exception&) {
        ++corrupted_;
        std::error_code ec;
        std::filesystem::remove(p, ec);
        return std::nullopt;
    }
}

void FileSearchCache::store(const SearchResult& r) {
    json data = search_result_to_json(r);
    json j = envelope("search-cache", data);
    j["engine"] = kEngineVersion;
    j["sha256"] = sha256_hex(canonical_dump(data));
    save_json(path_for(r.group, r.set_size), j);
}

}  // namespace fdual::io
