#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>

#include "fdual/duality.hpp"
#include "fdual/group_ring.hpp"
#include "fdual/nonexistence.hpp"
#include "fdual/numtheory.hpp"

namespace fdual::oracle {

namespace {

int pairing(const GroupSpec& G, Elem x, Elem y) {
    const int n = G.exponent();
    long long s = 0;
    auto cx = G.coords(x), cy = G.coords(y);
    for (std::size_t i = 0; i < cx.size(); ++i) s += static_cast<long long>(n / G.factors()[i]) * cx[i] * cy[i];
    return static_cast<int>(s % n);
}

double chi2_double(const GroupSpec& G, const ElementSet& S, Elem y) {
    std::complex<double> z = 0;
    const double n = G.exponent();
    for (Elem s : S) z += std::polar(1.0, 2 * M_PI * pairing(G, s, y) / n);
    return std::norm(z);
}

// all sorted k-subsets of {1..n-1} joined with 0
template <class F>
void for_each_set_with_zero(Elem n, std::size_t k, F&& f) {
    if (k == 0 || k > n) return;
    std::vector<Elem> cur{0};
    std::function<void(Elem)> rec = [&](Elem from) {
        if (cur.size() == k) {
            f(cur);
            return;
        }
        for (Elem x = from; x < n; ++x) {
            cur.push_back(x);
            rec(x + 1);
            cur.pop_back();
        }
    };
    rec(1);
}

Automorphism random_automorphism(std::mt19937_64& rng, const GroupSpec& G) {
    std::uniform_int_distribution<Elem> pick(0, G.order() - 1);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<Elem> imgs;
        for (int i = 0; i < G.rank(); ++i) imgs.push_back(pick(rng));
        try {
            return make_automorphism(G, imgs);
        } catch (const std::exception&) {
        }
    }
    return identity_automorphism(G);
}

struct RandomPair {
    GroupSpec G;
    ElementSet S, T;
    bool known = false;
};

// A known pair moved by a random automorphism and translations, or a random pair of sets.
RandomPair random_pair(std::mt19937_64& rng, bool known) {
    static const std::vector<Construction> pool = known_pairs(32);
    RandomPair out;
    if (known) {
        const Construction& c = pool[rng() % pool.size()];
        out.G = c.group;
        auto phi = random_automorphism(rng, c.group);
        auto [S, T] = transform_pair(c.group, phi, c.S, c.T);
        out.S = translate(c.group, S, static_cast<Elem>(rng() % c.group.order()));
        out.T = translate(c.group, T, static_cast<Elem>(rng() % c.group.order()));
        out.known = true;
    } else {
        out.G = random_group(rng, 32);
        auto divs = nt::divisors(out.G.order());
        long long k = divs[rng() % divs.size()];
        out.S = random_set(rng, out.G, k);
        out.T = random_set(rng, out.G, out.G.order() / k);
    }
    return out;
}

bool naive_dual(const GroupSpec& G, const ElementSet& S, const ElementSet& T) {
    auto nuS = naive_nu(G, S), nuT = naive_nu(G, T);
    const long long s = S.size(), t = T.size();
    for (Elem y = 0; y < G.order(); ++y) {
        double a = chi2_double(G, S, y), b = chi2_double(G, T, y);
        if (std::fabs(t * a - s * s * nuT[y]) > 1e-6) return false;
        if (std::fabs(s * b - t * t * nuS[y]) > 1e-6) return false;
    }
    return true;
}

std::string describe(const GroupSpec& G, const ElementSet& S) {
    std::ostringstream os;
    os << G.name() << " {";
    for (std::size_t i = 0; i < S.size(); ++i) os << (i ? "," : "") << S[i];
    os << "}";
    return os.str();
}

}  // namespace

long long naive_chi2(const GroupSpec& G, const ElementSet& S, Elem y) { return std::llround(chi2_double(G, S, y)); }

std::vector<long long> naive_nu(const GroupSpec& G, const ElementSet& S) {
    std::vector<long long> nu(G.order(), 0);
    for (Elem a : S)
        for (Elem b : S) nu[G.sub(a, b)]++;
    return nu;
}

std::map<long long, int> naive_spectrum(const GroupSpec& G, const ElementSet& S) {
    std::map<long long, int> m;
    for (Elem y = 0; y < G.order(); ++y) m[naive_chi2(G, S, y)]++;
    return m;
}

bool naive_primitive(const GroupSpec& G, const ElementSet& S) {
    const Elem n = G.order();
    if (n == 1) return true;
    // closure of the differences
    std::vector<char> in(n, 0);
    std::vector<Elem> list{0};
    in[0] = 1;
    for (std::size_t i = 0; i < list.size(); ++i)
        for (Elem a : S)
            for (Elem b : S) {
                Elem g = G.add(list[i], G.sub(a, b));
                if (!in[g]) {
                    in[g] = 1;
                    list.push_back(g);
                }
            }
    if (list.size() != n) return false;
    std::vector<char> mark(n, 0);
    for (Elem s : S) mark[s] = 1;
    for (Elem h = 1; h < n; ++h) {
        bool stable = true;
        for (Elem s : S)
            if (!mark[G.add(s, h)]) {
                stable = false;
                break;
            }
        if (stable) return false;
    }
    return true;
}

std::vector<ElementSet> naive_search_classes(const GroupSpec& G, long long k) {
    const Elem n = G.order();
    const long long t = n / k;
    std::map<std::vector<long long>, std::vector<ElementSet>> by_nu;
    for_each_set_with_zero(n, static_cast<std::size_t>(t), [&](const std::vector<Elem>& T) {
        by_nu[naive_nu(G, T)].push_back(T);
    });
    std::set<ElementSet> classes;
    for_each_set_with_zero(n, static_cast<std::size_t>(k), [&](const std::vector<Elem>& S) {
        if (!naive_primitive(G, S)) return;
        std::vector<long long> target(n);
        for (Elem y = 0; y < n; ++y) {
            double v = t * chi2_double(G, S, y) / static_cast<double>(k * k);
            if (std::fabs(v - std::round(v)) > 1e-6) return;
            target[y] = std::llround(v);
        }
        auto it = by_nu.find(target);
        if (it == by_nu.end()) return;
        for (auto& T : it->second) {
            if (naive_primitive(G, T)) {
                classes.insert(canonical_form(G, S).form);
                return;
            }
        }
    });
    return {classes.begin(), classes.end()};
}

const std::vector<GroupSpec>& groups_up_to(unsigned max_order) {
    static std::map<unsigned, std::vector<GroupSpec>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& v = cache[max_order];
    if (v.empty())
        for (unsigned n = 2; n <= max_order; ++n)
            for (auto& g : abelian_groups_of_order(static_cast<int>(n))) v.push_back(g);
    return v;
}

GroupSpec random_group(std::mt19937_64& rng, unsigned max_order) {
    const auto& v = groups_up_to(max_order);
    return v[rng() % v.size()];
}

ElementSet random_set(std::mt19937_64& rng, const GroupSpec& G, std::size_t k) {
    std::vector<Elem> all(G.order());
    for (Elem i = 0; i < G.order(); ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    ElementSet s(all.begin(), all.begin() + std::min<std::size_t>(k, all.size()));
    std::sort(s.begin(), s.end());
    return s;
}

std::vector<Construction> known_pairs(unsigned max_order) {
    std::vector<Construction> all{build_trivial(),
                                  build_tito(),
                                  build_rds_pair(3, 1),
                                  build_rds_pair(5, 1),
                                  build_rds_pair(7, 1),
                                  build_teichmuller_pair(1),
                                  build_teichmuller_pair(2),
                                  build_teichmuller_pair(3),
                                  build_example_244(),
                                  build_z4_mix(2, 1),
                                  build_z4_mix(2, 2),
                                  build_grds_square_pair(3, 1, 1),
                                  build_product_pair(build_tito(), build_rds_pair(3, 1))};
    for (auto f : {std::vector<int>{4}, std::vector<int>{2, 4}, std::vector<int>{2, 2}, std::vector<int>{3, 3}})
        for (auto& H : enumerate_subgroups(GroupSpec(f))) all.push_back(build_subgroup_pair(GroupSpec(f), H));
    std::vector<Construction> out;
    for (auto& c : all)
        if (c.group.order() <= max_order) out.push_back(c);
    return out;
}

std::vector<Construction> small_known_pairs() {
    std::vector<Construction> out{build_trivial(), build_tito()};
    for (auto f : {std::vector<int>{4}, std::vector<int>{2, 4}})
        for (auto& H : enumerate_subgroups(GroupSpec(f))) out.push_back(build_subgroup_pair(GroupSpec(f), H));
    out.push_back(build_example_244());
    return out;
}

std::vector<Construction> construction_battery() {
    std::vector<Construction> out;
    for (auto [p, m] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}}) out.push_back(build_rds_pair(p, m));
    for (int m : {1, 2, 3}) out.push_back(build_teichmuller_pair(m));
    for (auto [p, t, s] : {std::tuple{3, 2, 1}, {5, 2, 1}, {3, 1, 2}, {3, 3, 1}})
        out.push_back(build_grds_square_pair(p, t, s));
    for (int q : {7, 11, 19, 27}) out.push_back(build_skew_hadamard_pair(q, 1, 2));
    return out;
}

std::map<long long, int> frozen_rds_spectrum(int p, int m) {
    if (p == 3 && m == 1) return {{9, 1}, {3, 6}, {0, 2}};
    if (p == 5 && m == 1) return {{25, 1}, {5, 20}, {0, 4}};
    if (p == 7 && m == 1) return {{49, 1}, {7, 42}, {0, 6}};
    if (p == 3 && m == 2) return {{81, 1}, {9, 72}, {0, 8}};
    return {};
}

std::map<long long, int> frozen_skew_spectrum(int q) {
    switch (q) {
        case 7: return {{49, 1}, {14, 12}, {7, 18}, {0, 18}};
        case 11: return {{121, 1}, {33, 20}, {11, 50}, {0, 50}};
        case 19: return {{361, 1}, {95, 36}, {19, 162}, {0, 162}};
        case 27: return {{729, 1}, {189, 52}, {27, 338}, {0, 338}};
    }
    return {};
}

std::vector<TableEntry> table_existing_up_to_36() {
    return {{1, 1, {}, 1},           {4, 2, {4}, 1},         {9, 3, {3, 3}, 1},       {16, 4, {4, 4}, 2},
            {25, 5, {5, 5}, 1},      {32, 4, {2, 4, 4}, 1},  {36, 6, {4, 3, 3}, 1}};
}

int table_classes(const GroupSpec& G, long long k) {
    for (auto& e : table_existing_up_to_36())
        if (e.k == k && G.isomorphic(GroupSpec(e.factors))) return e.classes;
    return 0;
}

// ------------------------------------------------------------------ properties

PropertyOutcome prop_fourier_round_trip(std::uint64_t seed, int cases) {
    std::mt19937_64 rng(seed);
    PropertyOutcome out;
    for (int i = 0; i < cases && out.ok; ++i, ++out.cases) {
        GroupSpec G = random_group(rng, 32);
        int ncls = 0;
        auto cls = orbit_ids(G, &ncls);
        std::vector<long long> val(ncls);
        for (auto& v : val) v = static_cast<long long>(rng() % 7) - 3;
        GroupMultiset f(G);
        for (Elem g = 0; g < G.order(); ++g) f.coeffs[g] = val[cls[g]];
        std::vector<long long> spec(G.order());
        for (Elem y = 0; y < G.order(); ++y) {
            auto v = as_integer(character_sum(f, y));
            if (!v) {
                out.ok = false;
                out.message = "orbit-constant function has an irrational transform in " + G.name();
                break;
            }
            spec[y] = v->get_si();
        }
        if (out.ok && !(fourier_invert(G, spec) == f)) {
            out.ok = false;
            out.message = "round trip changed a function on " + G.name();
        }
    }
    return out;
}

PropertyOutcome prop_parseval(std::uint64_t seed, int cases) {
    std::mt19937_64 rng(seed);
    PropertyOutcome out;
    for (int i = 0; i < cases && out.ok; ++i, ++out.cases) {
        GroupSpec G = random_group(rng, 32);
        ElementSet S = random_set(rng, G, 1 + rng() % G.order());
        GroupMultiset a = GroupMultiset::from_set(G, S);
        CyclotomicInt total(G.exponent());
        double naive = 0;
        for (Elem y = 0; y < G.order(); ++y) {
            total += norm_sq(character_sum(a, y));
            naive += chi2_double(G, S, y);
        }
        auto v = as_integer(total);
        const long long want = static_cast<long long>(G.order()) * static_cast<long long>(S.size());
        if (!v || *v != mpz_class(static_cast<long>(want)) || std::fabs(naive - want) > 1e-6) {
            out.ok = false;
            out.message = "sum of |chi|^2 is not |G||S| for " + describe(G, S);
        }
    }
    return out;
}

PropertyOutcome prop_verify_symmetry(std::uint64_t seed, int cases) {
    std::mt19937_64 rng(seed);
    PropertyOutcome out;
    for (int i = 0; i < cases && out.ok; ++i, ++out.cases) {
        RandomPair p = random_pair(rng, i % 2 == 0);
        bool st = verify_pair(p.G, p.S, p.T).verified;
        bool ts = verify_pair(p.G, p.T, p.S).verified;
        bool naive = naive_dual(p.G, p.S, p.T);
        if (st != ts || st != naive || (p.known && !st)) {
            out.ok = false;
            out.message = "verify disagrees under swap or with the numeric check: S=" + describe(p.G, p.S) +
                          " T=" + describe(p.G, p.T);
        }
    }
    return out;
}

PropertyOutcome prop_equivalence_invariance(std::uint64_t seed, int cases) {
    std::mt19937_64 rng(seed);
    PropertyOutcome out;
    for (int i = 0; i < cases && out.ok; ++i, ++out.cases) {
        RandomPair p = random_pair(rng, i % 2 == 0);
        bool before = verify_pair(p.G, p.S, p.T).verified;
        auto phi = random_automorphism(rng, p.G);
        auto [S2, T2] = transform_pair(p.G, phi, p.S, p.T);
        S2 = translate(p.G, S2, static_cast<Elem>(rng() % p.G.order()));
        T2 = translate(p.G, T2, static_cast<Elem>(rng() % p.G.order()));
        bool after = verify_pair(p.G, S2, T2).verified;
        if (before != after) {
            out.ok = false;
            out.message = "transform_pair changed the verdict for " + describe(p.G, p.S);
        }
    }
    return out;
}

PropertyOutcome prop_orbit_constancy(std::uint64_t seed, int cases) {
    std::mt19937_64 rng(seed);
    PropertyOutcome out;
    for (int i = 0; i < cases && out.ok; ++i, ++out.cases) {
        RandomPair p = random_pair(rng, true);
        auto cls = orbit_ids(p.G);
        for (const ElementSet* X : {&p.S, &p.T}) {
            auto nu = difference_multiset(p.G, *X).coeffs;
            std::map<int, long long> seen;
            for (Elem g = 0; g < p.G.order(); ++g) {
                auto [it, fresh] = seen.emplace(cls[g], nu[g]);
                if (!fresh && it->second != nu[g]) {
                    out.ok = false;
                    out.message = "nu is not constant on an orbit for " + describe(p.G, *X);
                }
            }
        }
    }
    return out;
}

PropertyOutcome prop_naive_search_agrees(unsigned max_order) {
    PropertyOutcome out;
    std::vector<GroupSpec> groups{GroupSpec()};
    for (auto& g : groups_up_to(max_order)) groups.push_back(g);
    SearchOptions opt;
    opt.use_filters = false;
    for (auto& G : groups) {
        const long long n = G.order();
        for (long long k : nt::divisors(n)) {
            if (k * k > n || (k == 1 && n > 1)) continue;
            ++out.cases;
            auto naive = naive_search_classes(G, k);
            auto fast = search_formally_dual_sets(G, k, opt);
            std::vector<ElementSet> got;
            for (auto& c : fast.classes) got.push_back(c.S);
            if (!fast.complete || got != naive) {
                out.ok = false;
                out.message = "class lists differ for " + G.name() + " k=" + std::to_string(k) + ": naive " +
                              std::to_string(naive.size()) + ", engine " + std::to_string(got.size());
                return out;
            }
        }
    }
    return out;
}

PropertyOutcome prop_filter_soundness(std::uint64_t seed, int cases) {
    std::mt19937_64 rng(seed);
    PropertyOutcome out;
    std::vector<Construction> pool;
    for (auto& c : known_pairs(32))
        if (verify_pair(c.group, c.S, c.T).primitive) pool.push_back(c);
    for (auto& row : classify_range(32))
        for (auto& w : row.witnesses) pool.push_back(Construction{"search", "search", row.group, w.pair.S, w.pair.T});
    for (int i = 0; i < cases && out.ok; ++i, ++out.cases) {
        RandomPair p = random_pair(rng, true);
        const Construction& c = pool[rng() % pool.size()];
        if (rng() % 2) p = RandomPair{c.group, c.S, c.T, true};
        auto cert = verify_pair(p.G, p.S, p.T);
        if (!cert.verified || !cert.primitive) continue;
        long long s = p.S.size(), t = p.T.size();
        for (auto [a, b] : {std::pair{s, t}, std::pair{t, s}}) {
            auto kills = all_filters(PairParams{p.G, a, b});
            if (!kills.empty()) {
                out.ok = false;
                out.message = "rule " + kills[0].rule + " rejects the verified pair " + describe(p.G, p.S);
            }
        }
    }
    return out;
}

}  // namespace fdual::oracle
