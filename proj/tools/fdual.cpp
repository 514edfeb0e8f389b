// Command-line front end. Exit codes: 0 ok, 1 failed or ruled out, 2 inconclusive, 3 usage.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "fdual/constructions.hpp"
#include "fdual/duality.hpp"
#include "fdual/group_ring.hpp"
#include "fdual/io.hpp"
#include "fdual/nonexistence.hpp"
#include "fdual/search.hpp"

using namespace fdual;
using io::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kInconclusive = 2, kUsage = 3 };

struct Common {
    unsigned threads = 0;
    std::string out;
};

void emit(const Common& c, const std::string& kind, const json& payload) {
    json j = io::envelope(kind, payload);
    if (c.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        io::save_json(c.out, j);
        std::cerr << "wrote " << c.out << "\n";
    }
}

std::vector<long long> parse_list(const std::string& text) {
    std::vector<long long> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t pos = 0;
            v.push_back(std::stoll(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::logic_error&) {
            throw io::FormatError("bad number '" + tok + "'");
        }
    }
    return v;
}

// {group, S, T} either at top level, inside an envelope, or as a certificate.
std::tuple<GroupSpec, ElementSet, ElementSet> pair_from_file(const std::string& path) {
    json j = io::load_json(path);
    if (j.contains("data")) j = j.at("data");
    if (!j.contains("group") || !j.contains("S") || !j.contains("T"))
        throw io::FormatError(path + " has no group/S/T");
    GroupSpec G = io::group_from_json(j.at("group"));
    return {G, io::set_from_json(G, j.at("S")), io::set_from_json(G, j.at("T"))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"formally dual sets in finite abelian groups"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--threads", common.threads, "worker threads (0 = all cores)");
    app.add_option("--out", common.out, "write the JSON report here instead of stdout");

    // verify
    std::string group_arg, s_arg, t_arg, cert_path;
    auto* verify = app.add_subcommand("verify", "check a formally dual pair");
    verify->add_option("--group", group_arg, "cyclic factors, e.g. 2,4,4");
    verify->add_option("--S", s_arg, "indices 0,1 or coordinates [[0,1],[1,0]]");
    verify->add_option("--T", t_arg);
    verify->add_option("--cert", cert_path, "re-check the pair stored in a report file");

    // construct
    std::string family;
    int p = 3, m = 1, t = 2, s = 1, q = 7, alpha = 1, beta = 2, m1 = 0;
    std::string gens_arg;
    auto* construct = app.add_subcommand("construct", "build a known pair and verify it");
    construct
        ->add_option("family", family)
        ->required()
        ->check(CLI::IsMember({"trivial", "tito", "subgroup", "rds", "teichmuller", "grds", "skew-hadamard",
                               "example-244", "z4-mix"}));
    construct->add_option("--p", p);
    construct->add_option("--m", m);
    construct->add_option("--t", t);
    construct->add_option("--s", s);
    construct->add_option("--q", q);
    construct->add_option("--alpha", alpha);
    construct->add_option("--beta", beta);
    construct->add_option("--m1", m1, "number of Z_4 factors carrying the two-element pair");
    construct->add_option("--group", group_arg, "ambient group for subgroup");
    construct->add_option("--gens", gens_arg, "subgroup generators as indices");

    // search
    long long size = 0;
    SearchOptions sopt;
    bool no_filters = false;
    std::string cache_dir;
    auto* search = app.add_subcommand("search", "all formally dual sets of one size up to equivalence");
    search->add_option("--group", group_arg)->required();
    search->add_option("--size", size)->required();
    search->add_option("--node-budget", sopt.node_budget);
    search->add_option("--time-budget", sopt.time_budget_seconds, "seconds, 0 for none");
    search->add_flag("--no-filters", no_filters, "search even if a filter rules the parameters out");

    // classify
    int max_order = 40;
    bool allow_large = false;
    auto* classify = app.add_subcommand("classify", "classification table by order");
    classify->add_option("--max-order", max_order);
    classify->add_option("--group", group_arg, "classify a single group instead");
    classify->add_option("--resume", cache_dir, "search cache directory");
    classify->add_option("--node-budget", sopt.node_budget);
    classify->add_option("--time-budget", sopt.time_budget_seconds);
    classify->add_flag("--allow-large", allow_large, "permit orders above 49");

    // scan-cyclic
    long long scan_max = 1000;
    std::string report;
    auto* scan = app.add_subcommand("scan-cyclic", "filter every cyclic case up to an order");
    scan->add_option("--max", scan_max);
    scan->add_option("--report", report)->check(CLI::IsMember({"rules"}));

    // rank
    auto* rank = app.add_subcommand("rank", "even-set decomposition of S S^(-1)");
    rank->add_option("--group", group_arg)->required();
    rank->add_option("--S", s_arg)->required();
    rank->add_option("--work-budget", sopt.node_budget, "decomposition search nodes");

    // spectra
    auto* spectra_cmd = app.add_subcommand("spectra", "character and difference spectra of a set");
    spectra_cmd->add_option("--group", group_arg)->required();
    spectra_cmd->add_option("--S", s_arg)->required();

    // filters
    std::string sizes_arg;
    auto* filters = app.add_subcommand("filters", "run the nonexistence filters");
    filters->add_option("--group", group_arg)->required();
    filters->add_option("--sizes", sizes_arg, "|S|,|T|")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    sopt.threads = common.threads;
    if (cache_dir.empty()) cache_dir = io::default_cache_dir().string();

    try {
        if (*verify) {
            GroupSpec G;
            ElementSet S, T;
            if (!cert_path.empty()) {
                std::tie(G, S, T) = pair_from_file(cert_path);
            } else {
                if (s_arg.empty() || t_arg.empty()) throw io::FormatError("verify needs --S and --T, or --cert");
                G = io::parse_group_arg(group_arg);
                S = io::parse_set_arg(G, s_arg);
                T = io::parse_set_arg(G, t_arg);
            }
            DualityCertificate c = verify_pair(G, S, T, common.threads);
            emit(common, "certificate", io::certificate_to_json(c));
            return c.verified ? kOk : kFail;
        }
        if (*construct) {
            Construction c;
            if (family == "trivial") c = build_trivial();
            else if (family == "tito") c = build_tito();
            else if (family == "subgroup") {
                GroupSpec G = io::parse_group_arg(group_arg);
                c = build_subgroup_pair(G, generated_subgroup(G, io::parse_set_arg(G, gens_arg)));
            } else if (family == "rds") c = build_rds_pair(p, m);
            else if (family == "teichmuller") c = build_teichmuller_pair(m);
            else if (family == "grds") c = build_grds_square_pair(p, t, s);
            else if (family == "skew-hadamard") c = build_skew_hadamard_pair(q, alpha, beta);
            else if (family == "example-244") c = build_example_244();
            else c = build_z4_mix(m, m1);
            DualityCertificate cert = verify_pair(c.group, c.S, c.T, common.threads);
            json j = io::construction_to_json(c);
            j["certificate"] = io::certificate_to_json(cert);
            emit(common, "construction", j);
            return cert.verified ? kOk : kFail;
        }
        if (*search) {
            GroupSpec G = io::parse_group_arg(group_arg);
            sopt.use_filters = !no_filters;
            SearchResult r = search_formally_dual_sets(G, size, sopt);
            emit(common, "search", io::search_result_to_json(r));
            if (!r.kills.empty()) return kFail;
            return r.complete ? kOk : kInconclusive;
        }
        if (*classify) {
            io::FileSearchCache cache(cache_dir);
            std::vector<ClassificationRow> rows;
            if (!group_arg.empty()) rows = classify_group(io::parse_group_arg(group_arg), sopt, &cache);
            else rows = classify_range(max_order, sopt, &cache, allow_large);
            json j{{"rows", io::table_to_json(rows)}};
            RankCensus census = rank_census(rows);
            json dist = json::object();
            for (auto& [r, n] : census.distribution) dist[std::to_string(r)] = n;
            j["rank_census"] = json{{"distribution", dist}, {"not_minimal", census.not_minimal}, {"flags", census.flags}};
            if (cache.corrupted_entries()) std::cerr << cache.corrupted_entries() << " corrupted cache entries recomputed\n";
            emit(common, "classification", j);
            for (auto& r : rows)
                if (r.status == RowStatus::inconclusive) return kInconclusive;
            return kOk;
        }
        if (*scan) {
            bool rules = report == "rules";
            auto cases = rules ? scan_cyclic_report(scan_max, common.threads) : scan_cyclic(scan_max, common.threads);
            std::ostringstream os;
            for (auto& c : cases) os << io::cyclic_case_to_json(c, rules).dump() << "\n";
            if (common.out.empty()) {
                std::cout << os.str();
            } else {
                std::ofstream f(common.out);
                f << os.str();
            }
            return kOk;
        }
        if (*rank) {
            GroupSpec G = io::parse_group_arg(group_arg);
            ElementSet S = io::parse_set_arg(G, s_arg);
            EvenOptions eo;
            if (rank->count("--work-budget")) eo.work_budget = sopt.node_budget;
            EvenResult r = even_decomposition(G, S, eo);
            json j = io::decomposition_to_json(G, r);
            j["group"] = io::group_to_json(G);
            j["S"] = io::set_to_json(G, S);
            if (auto rds = is_rds(G, S))
                j["rds"] = json{{"m", rds->m}, {"n", rds->n}, {"k", rds->k}, {"lambda", rds->lambda}};
            emit(common, "rank", j);
            return r.even() ? kOk : kFail;
        }
        if (*spectra_cmd) {
            GroupSpec G = io::parse_group_arg(group_arg);
            ElementSet S = io::parse_set_arg(G, s_arg);
            SpectrumReport r = spectra(GroupMultiset::from_set(G, S), common.threads);
            emit(common, "spectra",
                 json{{"group", io::group_to_json(G)},
                      {"S", io::set_to_json(G, S)},
                      {"character", r.character},
                      {"difference", r.difference},
                      {"non_integer", r.non_integer}});
            return kOk;
        }
        if (*filters) {
            GroupSpec G = io::parse_group_arg(group_arg);
            auto sz = parse_list(sizes_arg);
            if (sz.size() != 2) throw io::FormatError("--sizes needs two numbers");
            auto v = all_filters(PairParams{G, sz[0], sz[1]});
            emit(common, "filters",
                 json{{"group", io::group_to_json(G)},
                      {"ssize", sz[0]},
                      {"tsize", sz[1]},
                      {"ruled_out", !v.empty()},
                      {"rules", io::verdicts_to_json(v)}});
            return v.empty() ? kOk : kFail;
        }
    } catch (const io::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const GroupError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
