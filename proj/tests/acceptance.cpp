// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "fdual/constructions.hpp"
#include "fdual/duality.hpp"
#include "fdual/group_ring.hpp"
#include "fdual/nonexistence.hpp"
#include "fdual/search.hpp"
#include "support/support.hpp"

using namespace fdual;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Outcome known_pairs_verify() {
    Outcome o;
    auto t0 = Clock::now();
    for (auto& c : oracle::small_known_pairs()) {
        auto cert = verify_pair(c.group, c.S, c.T);
        if (!cert.verified) o.fail(c.label + " does not verify");
    }
    Construction e = build_example_244();
    if (e.S.size() != 4 || e.T.size() != 8) o.fail("example pair sizes are not 4 and 8");
    if (!verify_pair(e.group, e.S, e.T).primitive) o.fail("example in Z2xZ4xZ4 is not primitive");
    double s = seconds_since(t0);
    if (s >= 1) o.fail("took " + std::to_string(s) + " s");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(s) + " s";
    return o;
}

Outcome battery_verifies() {
    Outcome o;
    auto t0 = Clock::now();
    int n = 0;
    for (auto& c : oracle::construction_battery()) {
        auto cert = verify_pair(c.group, c.S, c.T, 0);
        if (!cert.verified || !cert.primitive) o.fail(c.label + " failed");
        ++n;
    }
    double s = seconds_since(t0);
    if (s >= 120) o.fail("took " + std::to_string(s) + " s");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(n) + " pairs in " + std::to_string(s) + " s";
    return o;
}

std::map<long long, int> exact_spectrum(const Construction& c) {
    std::map<long long, int> m;
    auto all = char_norm_sq_all(GroupMultiset::from_set(c.group, c.S), 0);
    for (auto& v : all) m[v ? *v : -1]++;
    return m;
}

Outcome spectrum_regression() {
    Outcome o;
    for (auto [p, m] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
        Construction c = build_rds_pair(p, m);
        long long n = c.S.size();
        auto spec = exact_spectrum(c);
        std::set<long long> values;
        for (auto& [v, k] : spec) values.insert(v);
        if (values != std::set<long long>{0, n, n * n}) o.fail(c.label + " values are not {n^2, n, 0}");
        if (spec != oracle::frozen_rds_spectrum(p, m)) o.fail(c.label + " multiplicities changed");
    }
    for (int q : {7, 11, 19, 27}) {
        Construction c = build_skew_hadamard_pair(q, 1, 2);
        auto spec = exact_spectrum(c);
        if (spec != oracle::frozen_skew_spectrum(q)) o.fail(c.label + " multiplicities changed");
        if (q == 7) {
            std::set<long long> values;
            for (auto& [v, k] : spec) values.insert(v);
            if (values != std::set<long long>{49, 14, 7, 0}) o.fail("q=7 values are not {49, 14, 7, 0}");
        }
    }
    return o;
}

Outcome even_set_duality() {
    Outcome o;
    std::vector<Construction> all = oracle::small_known_pairs();
    for (auto& c : oracle::construction_battery()) all.push_back(c);
    for (auto& c : all) {
        EvenResult r = even_decomposition(c.group, c.S);
        if (!r.even()) {
            o.fail(c.label + " is not even");
            continue;
        }
        auto pred = even_dual_transform(c.group, *r.decomposition, static_cast<long long>(c.S.size()));
        if (!pred || !(*pred == difference_multiset(c.group, c.T))) o.fail(c.label + ": transform does not give T T^(-1)");
    }
    GroupSpec Z4({4});
    auto d = even_decomposition(Z4, {0, 1}).decomposition;
    std::map<ElementSet, long long> got;
    if (d)
        for (auto& t : d->terms) got[t.H.elements] = t.lambda;
    std::map<ElementSet, long long> want{{{0}, 2}, {{0, 2}, -1}, {{0, 1, 2, 3}, 1}};
    if (got != want) o.fail("TITO decomposition is not 2{0} - {0,2} + Z_4");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(all.size()) + " pairs";
    return o;
}

Outcome rank_three_sets_are_rds(const std::vector<ClassificationRow>& rows) {
    Outcome o;
    int checked = 0, rank3 = 0;
    auto look = [&](const GroupSpec& G, const ElementSet& S, const std::string& label) {
        if (!is_primitive_subset(G, S).primitive) return;
        ++checked;
        EvenResult r = even_decomposition(G, S);
        if (!r.even() || r.decomposition->rank != 3) return;
        ++rank3;
        auto rds = is_rds(G, S);
        long long n = S.size();
        if (!rds || n <= 1 || rds->m != n || rds->n != n || rds->k != n || rds->lambda != 1)
            o.fail(label + " has rank 3 but is not an (n,n,n,1)-RDS");
    };
    std::vector<Construction> all = oracle::small_known_pairs();
    for (auto& c : oracle::construction_battery()) all.push_back(c);
    for (auto& c : oracle::known_pairs(64)) all.push_back(c);
    for (auto& c : all) {
        look(c.group, c.S, c.label);
        look(c.group, c.T, c.label + " (T)");
    }
    for (auto& row : rows)
        for (auto& w : row.witnesses) {
            look(row.group, w.pair.S, "search " + row.group.name());
            look(row.group, w.pair.T, "search " + row.group.name() + " (T)");
        }
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(checked) + " primitive sets, " + std::to_string(rank3) +
                " of rank 3";
    return o;
}

Outcome cyclic_scan() {
    Outcome o;
    auto t0 = Clock::now();
    auto s = scan_cyclic(1000);
    std::vector<CyclicCase> want{{600, 10, 60, {}}, {784, 28, 28, {}}, {900, 30, 30, {}}};
    if (s != want) {
        std::ostringstream os;
        for (auto& c : s) os << "(" << c.n << "," << c.ssize << "," << c.tsize << ")";
        o.fail("survivors " + os.str());
    }
    double sec = seconds_since(t0);
    if (sec >= 60) o.fail("took " + std::to_string(sec) + " s");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(sec) + " s";
    return o;
}

Outcome z180_kill() {
    Outcome o;
    auto v = all_filters(PairParams{GroupSpec({180}), 6, 30});
    bool hit = false;
    for (auto& f : v)
        if (f.rule == rule::char_div && f.reason.find("|chi|^2=6") != std::string::npos) {
            hit = true;
            o.detail = f.reason;
        }
    if (!hit) o.fail("no char-div kill with |chi|^2 = 6");
    return o;
}

Outcome table_reproduction(const std::vector<ClassificationRow>& rows, double sec) {
    Outcome o;
    int exists = 0;
    for (auto& r : rows) {
        int classes = oracle::table_classes(r.group, r.set_size);
        std::string where = r.group.name() + " k=" + std::to_string(r.set_size);
        if (r.status == RowStatus::inconclusive) o.fail(where + " inconclusive");
        if ((r.status == RowStatus::exists) != (classes > 0)) o.fail(where + " status " + to_string(r.status));
        if (r.status == RowStatus::exists) ++exists;
        for (auto& w : r.witnesses)
            if (!verify_pair(r.group, w.pair.S, w.pair.T).primitive) o.fail(where + " witness does not re-verify");
    }
    auto status_of = [&](std::vector<int> f, int k) {
        for (auto& r : rows)
            if (r.set_size == k && r.group.isomorphic(GroupSpec(f))) return r.status;
        return RowStatus::inconclusive;
    };
    struct Named {
        std::vector<int> f;
        int k;
        RowStatus want;
    };
    for (auto& n : std::vector<Named>{{{2, 8}, 4, RowStatus::none},
                                      {{2, 2, 4}, 4, RowStatus::none},
                                      {{4, 9}, 6, RowStatus::none},
                                      {{2, 2, 9}, 6, RowStatus::none},
                                      {{2, 2, 3, 3}, 3, RowStatus::none},
                                      {{2, 2, 3, 3}, 6, RowStatus::none},
                                      {{4, 3, 3}, 3, RowStatus::none},
                                      {{4, 3, 3}, 6, RowStatus::exists}})
        if (status_of(n.f, n.k) != n.want) o.fail(GroupSpec(n.f).name() + " k=" + std::to_string(n.k) + " wrong");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(rows.size()) + " rows, " + std::to_string(exists) +
                " exist, " + std::to_string(sec) + " s";
    return o;
}

Outcome property_suites() {
    Outcome o;
    std::uint64_t seed = 20240601;
    std::vector<std::pair<const char*, std::function<oracle::PropertyOutcome()>>> suites{
        {"fourier", [&] { return oracle::prop_fourier_round_trip(seed + 1, 1000); }},
        {"parseval", [&] { return oracle::prop_parseval(seed + 2, 1000); }},
        {"symmetry", [&] { return oracle::prop_verify_symmetry(seed + 3, 1000); }},
        {"equivalence", [&] { return oracle::prop_equivalence_invariance(seed + 4, 1000); }},
        {"orbit", [&] { return oracle::prop_orbit_constancy(seed + 5, 1000); }},
        {"naive-search", [&] { return oracle::prop_naive_search_agrees(16); }},
        {"filters", [&] { return oracle::prop_filter_soundness(seed + 7, 1000); }}};
    std::string counts;
    for (auto& [name, run] : suites) {
        auto r = run();
        if (!r.ok) o.fail(std::string(name) + ": " + r.message);
        counts += std::string(counts.empty() ? "" : " ") + name + "=" + std::to_string(r.cases);
    }
    o.detail += (o.detail.empty() ? "" : "; ") + counts;
    return o;
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const char* name, const Outcome& o) {
        std::cout << (o.ok ? "PASS" : "FAIL") << "  " << id << ". " << name;
        if (!o.detail.empty()) std::cout << "  (" << o.detail << ")";
        std::cout << std::endl;
        if (!o.ok) ++failures;
    };
    auto guarded = [&](int id, const char* name, const std::function<Outcome()>& f) {
        try {
            report(id, name, f());
        } catch (const std::exception& e) {
            Outcome o;
            o.fail(std::string("exception: ") + e.what());
            report(id, name, o);
        }
    };

    auto t0 = Clock::now();
    std::vector<ClassificationRow> rows;
    try {
        rows = classify_range(36);
    } catch (const std::exception& e) {
        std::cout << "classification failed: " << e.what() << std::endl;
    }
    double table_sec = seconds_since(t0);

    guarded(1, "known pairs verify", known_pairs_verify);
    guarded(2, "construction battery verifies primitive", battery_verifies);
    guarded(3, "spectrum regression", spectrum_regression);
    guarded(4, "even-set duality", even_set_duality);
    guarded(5, "rank-3 sets are (n,n,n,1)-RDSs", [&] { return rank_three_sets_are_rds(rows); });
    guarded(6, "cyclic scan up to 1000", cyclic_scan);
    guarded(7, "Z_180 char-div kill", z180_kill);
    guarded(8, "classification table up to order 36", [&] { return table_reproduction(rows, table_sec); });
    guarded(9, "property suites", property_suites);
    return failures;
}
