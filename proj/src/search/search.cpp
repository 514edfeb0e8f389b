#include "fdual/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>

#include "fdual/duality.hpp"
#include "fdual/group_ring.hpp"
#include "fdual/numtheory.hpp"
#include "fdual/parallel.hpp"

namespace fdual {

std::string to_string(RowStatus s) {
    switch (s) {
        case RowStatus::exists: return "exists";
        case RowStatus::none: return "none";
        case RowStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

constexpr Elem kMaxSearchOrder = 2048;

struct Tables {
    GroupSpec G;
    Elem n = 1;
    std::vector<Elem> sub;  // sub[x * n + s] = x - s
    std::vector<int> cls;   // unit-multiple classes
    int ncls = 0;
    std::vector<int> cls_size;
    std::vector<Elem> cls_rep;

    explicit Tables(const GroupSpec& g) : G(g), n(g.order()) {
        if (n > kMaxSearchOrder) throw std::invalid_argument("search is limited to groups of order <= 2048");
        sub.resize(static_cast<std::size_t>(n) * n);
        for (Elem x = 0; x < n; ++x)
            for (Elem s = 0; s < n; ++s) sub[static_cast<std::size_t>(x) * n + s] = G.sub(x, s);
        cls = orbit_ids(G, &ncls);
        cls_size.assign(ncls, 0);
        cls_rep.assign(ncls, 0);
        for (Elem g = n; g-- > 0;) {
            cls_size[cls[g]]++;
            cls_rep[cls[g]] = g;
        }
    }
    Elem diff(Elem x, Elem s) const { return sub[static_cast<std::size_t>(x) * n + s]; }
};

struct Budget {
    std::uint64_t limit;
    std::chrono::steady_clock::time_point deadline;
    bool timed;
    std::atomic<std::uint64_t> used{0};
    std::atomic<bool> stop{false};

    Budget(std::uint64_t lim, double seconds)
        : limit(lim), timed(seconds > 0) {
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::microseconds(static_cast<long long>(seconds * 1e6));
    }
    // Called with batches of nodes; true once the search has to stop.
    bool charge(std::uint64_t k) {
        std::uint64_t u = used.fetch_add(k) + k;
        if (u > limit || (timed && std::chrono::steady_clock::now() > deadline)) stop = true;
        return stop;
    }
};

// Orbits of G under the group generated by the given automorphisms.
std::vector<int> orbits_under(const GroupSpec& G, const std::vector<Automorphism>& auts, int* count) {
    std::vector<int> id(G.order(), -1);
    int c = 0;
    for (Elem g = 0; g < G.order(); ++g) {
        if (id[g] >= 0) continue;
        std::vector<Elem> stack{g};
        id[g] = c;
        while (!stack.empty()) {
            Elem x = stack.back();
            stack.pop_back();
            for (auto& a : auts) {
                Elem y = a(x);
                if (id[y] < 0) {
                    id[y] = c;
                    stack.push_back(y);
                }
            }
        }
        ++c;
    }
    if (count) *count = c;
    return id;
}

std::vector<Automorphism> unit_multiples(const GroupSpec& G) {
    std::vector<Automorphism> out;
    const int e = G.exponent();
    for (int u = 1; u <= std::max(1, e - 1); ++u) {
        if (std::gcd(u, e) != 1) continue;
        std::vector<Elem> imgs;
        for (int i = 0; i < G.rank(); ++i) imgs.push_back(G.mul(u, G.generator(i)));
        out.push_back(make_automorphism(G, imgs));
    }
    return out;
}

// Branch representatives: one element per nonzero orbit, ranked so that orbits of
// high-order elements come first. Returns (orbit id per element, ranked representatives).
struct Branching {
    std::vector<int> orbit;
    std::vector<int> rank_of_orbit;
    std::vector<Elem> reps;  // reps[j] has rank j
};

Branching make_branching(const GroupSpec& G, const std::vector<Automorphism>& auts,
                         const std::function<bool(Elem)>& usable) {
    Branching b;
    int count = 0;
    b.orbit = orbits_under(G, auts, &count);
    std::vector<Elem> first(count, G.order());
    std::vector<int> size(count, 0);
    for (Elem g = 0; g < G.order(); ++g) {
        int o = b.orbit[g];
        first[o] = std::min(first[o], g);
        size[o]++;
    }
    std::vector<int> ids;
    for (int o = 0; o < count; ++o)
        if (first[o] != 0 && usable(first[o])) ids.push_back(o);
    std::sort(ids.begin(), ids.end(), [&](int a, int c) {
        int oa = G.element_order(first[a]), oc = G.element_order(first[c]);
        if (oa != oc) return oa > oc;
        if (size[a] != size[c]) return size[a] > size[c];
        return first[a] < first[c];
    });
    b.rank_of_orbit.assign(count, -1);
    for (std::size_t j = 0; j < ids.size(); ++j) {
        b.rank_of_orbit[ids[j]] = static_cast<int>(j);
        b.reps.push_back(first[ids[j]]);
    }
    return b;
}

/**
 * Backtracking over sets containing 0 and a fixed second element r, the rest added in
 * increasing index order. cap[y] bounds nu(y); differences in forbidden orbits are
 * rejected. With a mass table the sum over classes of |class| * (smallest admissible
 * value >= current max) must stay within k^2 - k.
 */
class Dfs {
public:
    using Leaf = std::function<bool(const std::vector<Elem>&, const std::vector<int>&)>;  // true stops

    Dfs(const Tables& T, int k, const std::vector<int>& cap, const std::vector<std::vector<int>>* roundup,
        Budget& budget, Leaf leaf)
        : T_(T), k_(k), cap_(cap), roundup_(roundup), budget_(budget), leaf_(std::move(leaf)) {
        nu_.assign(T.n, 0);
        if (roundup_) {
            cmax_.assign(T.ncls, 0);
            for (int c = 0; c < T.ncls; ++c)
                if (T.cls_rep[c] != 0) mass_ += static_cast<long long>(T.cls_size[c]) * (*roundup_)[c][0];
        }
        mass_limit_ = static_cast<long long>(k) * (k - 1);
    }

    ~Dfs() { flush(); }

    // forbidden: per element flag for this branch.
    void run(Elem r, const std::vector<char>* forbidden, std::optional<Elem> third = std::nullopt) {
        forbidden_ = forbidden;
        r_ = r;
        cur_.clear();
        cur_.push_back(0);
        if (k_ == 1) {
            finish_leaf();
            return;
        }
        if (!add(r)) return;
        if (third) {
            if (*third != r && *third != 0 && add(*third)) {
                rec(*third + 1);
                remove_last();
            }
        } else {
            rec(1);
        }
        remove_last();
    }

    bool stopped() const { return done_ || budget_.stop; }

private:
    void tick() {
        if (++local_ >= 4096) flush();
    }
    void flush() {
        if (local_) budget_.charge(local_);
        local_ = 0;
    }

    void rec(Elem next_min) {
        tick();
        if (stopped()) return;
        if (static_cast<int>(cur_.size()) == k_) {
            finish_leaf();
            return;
        }
        const Elem need = static_cast<Elem>(k_ - cur_.size());
        for (Elem x = next_min; x + need <= T_.n; ++x) {
            if (x == r_) continue;
            if (add(x)) {
                rec(x + 1);
                remove_last();
            }
            if (stopped()) return;
        }
    }

    void finish_leaf() {
        if (leaf_(cur_, nu_)) done_ = true;
    }

    struct ClassUndo {
        int c, old;
    };

    bool add(Elem x) {
        const std::size_t nu_mark = nu_log_.size(), cls_mark = cls_log_.size();
        const long long mass_mark = mass_;
        auto bump = [&](Elem e) {
            ++nu_[e];
            nu_log_.push_back(e);
            if (nu_[e] > cap_[e]) return false;
            if (roundup_) {
                int c = T_.cls[e];
                if (nu_[e] > cmax_[c]) {
                    cls_log_.push_back({c, cmax_[c]});
                    mass_ += static_cast<long long>(T_.cls_size[c]) * ((*roundup_)[c][nu_[e]] - (*roundup_)[c][cmax_[c]]);
                    cmax_[c] = nu_[e];
                }
            }
            return true;
        };
        bool ok = true;
        for (Elem s : cur_) {
            Elem d = T_.diff(x, s);
            if (forbidden_ && (*forbidden_)[d]) {
                ok = false;
                break;
            }
            if (!bump(d) || !bump(T_.diff(s, x))) {
                ok = false;
                break;
            }
        }
        if (ok && roundup_ && mass_ > mass_limit_) ok = false;
        if (!ok) {
            rollback(nu_mark, cls_mark, mass_mark);
            return false;
        }
        frames_.push_back({nu_mark, cls_mark, mass_mark});
        cur_.push_back(x);
        return true;
    }

    void remove_last() {
        Frame f = frames_.back();
        frames_.pop_back();
        cur_.pop_back();
        rollback(f.nu, f.cls, f.mass);
    }

    void rollback(std::size_t nu_mark, std::size_t cls_mark, long long mass_mark) {
        while (nu_log_.size() > nu_mark) {
            --nu_[nu_log_.back()];
            nu_log_.pop_back();
        }
        while (cls_log_.size() > cls_mark) {
            cmax_[cls_log_.back().c] = cls_log_.back().old;
            cls_log_.pop_back();
        }
        mass_ = mass_mark;
    }

    struct Frame {
        std::size_t nu, cls;
        long long mass;
    };

    const Tables& T_;
    int k_;
    const std::vector<int>& cap_;
    const std::vector<std::vector<int>>* roundup_;
    Budget& budget_;
    Leaf leaf_;
    const std::vector<char>* forbidden_ = nullptr;
    Elem r_ = 0;
    std::vector<Elem> cur_;
    std::vector<int> nu_, cmax_;
    std::vector<Elem> nu_log_;
    std::vector<ClassUndo> cls_log_;
    std::vector<Frame> frames_;
    long long mass_ = 0, mass_limit_ = 0;
    std::uint64_t local_ = 0;
    bool done_ = false;
};

std::vector<char> forbidden_below(const Branching& b, int j, Elem n) {
    std::vector<char> f(n, 0);
    for (Elem g = 0; g < n; ++g) {
        int r = b.rank_of_orbit[b.orbit[g]];
        if (r >= 0 && r < j) f[g] = 1;
    }
    return f;
}

std::optional<ElementSet> find_partner(const Tables& T, const std::vector<long long>& target, long long t,
                                       Budget& budget) {
    const GroupSpec& G = T.G;
    if (target.size() != T.n || target[0] != t) return std::nullopt;
    if (t == 1) {
        for (Elem y = 1; y < T.n; ++y)
            if (target[y] != 0) return std::nullopt;
        return ElementSet{0};
    }
    std::vector<Automorphism> keep;
    auto auts = automorphisms_within_bound(G);
    const std::vector<Automorphism> units = unit_multiples(G);
    for (auto& a : auts ? *auts : units) {
        bool ok = true;
        for (Elem y = 0; y < T.n && ok; ++y) ok = target[a(y)] == target[y];
        if (ok) keep.push_back(a);
    }
    Branching b = make_branching(G, keep, [&](Elem g) { return target[g] > 0; });
    std::vector<int> cap(T.n);
    for (Elem y = 0; y < T.n; ++y) cap[y] = static_cast<int>(target[y]);

    std::optional<ElementSet> found;
    auto leaf = [&](const std::vector<Elem>& cur, const std::vector<int>& nu) {
        for (Elem y = 1; y < T.n; ++y)
            if (nu[y] != target[y]) return false;
        ElementSet s(cur.begin(), cur.end());
        std::sort(s.begin(), s.end());
        found = s;
        return true;
    };
    for (std::size_t j = 0; j < b.reps.size() && !found && !budget.stop; ++j) {
        std::vector<char> forb = forbidden_below(b, static_cast<int>(j), T.n);
        Dfs dfs(T, static_cast<int>(t), cap, nullptr, budget, leaf);
        dfs.run(b.reps[j], &forb);
    }
    return found;
}

}  // namespace

std::optional<ElementSet> find_set_with_differences(const GroupSpec& G, const std::vector<long long>& target,
                                                    long long tsize, std::uint64_t budget, bool* complete,
                                                    std::uint64_t* nodes) {
    Tables T(G);
    Budget b(budget, 0);
    auto r = find_partner(T, target, tsize, b);
    if (complete) *complete = r.has_value() || !b.stop;
    if (nodes) *nodes = b.used;
    return r;
}

SearchResult search_formally_dual_sets(const GroupSpec& G, long long k, const SearchOptions& opt) {
    SearchResult res;
    res.group = G;
    res.set_size = k;
    const long long N = G.order();
    if (k < 1 || N % k != 0) throw std::invalid_argument("set size must divide the group order");
    const long long t = N / k;
    PairParams params{G, k, t};
    if (opt.use_filters) {
        res.kills = all_filters(params);
        if (!res.kills.empty()) return res;
    }

    Tables T(G);
    Budget budget(opt.node_budget, opt.time_budget_seconds);
    const long long a_S = params.a_S(), b_S = params.b_S(), b_T = params.b_T();

    // admissible nu_S values per class
    std::vector<std::vector<char>> allowed(T.ncls, std::vector<char>(k + 1, 0));
    std::vector<std::vector<int>> roundup(T.ncls, std::vector<int>(k + 1, 0));
    std::vector<int> cap(T.n, 0);
    for (int c = 0; c < T.ncls; ++c) {
        Elem y = T.cls_rep[c];
        if (y == 0) continue;
        int ord = G.element_order(y);
        bool prime = nt::is_prime(ord);
        for (long long v = 0; v < k; v += b_S) {
            if (prime) {
                long long num = t * t * (k - v), den = ord * k;
                if (num % den != 0 || num / den <= 0) continue;
            }
            allowed[c][v] = 1;
        }
        int next = k + 1;  // sentinel beyond any cap
        for (long long v = k; v >= 0; --v) {
            if (allowed[c][v]) next = static_cast<int>(v);
            roundup[c][v] = next;
        }
    }
    for (Elem y = 1; y < T.n; ++y) {
        int c = T.cls[y], best = -1;
        for (int v = 0; v < k; ++v)
            if (allowed[c][v]) best = v;
        cap[y] = best;  // -1 blocks every difference in an empty class
    }

    auto auts = automorphisms_within_bound(G);
    res.equivalence_exact = auts != nullptr;
    std::vector<Automorphism> units;
    if (!auts) units = unit_multiples(G);
    Branching br = make_branching(G, auts ? *auts : units, [&](Elem g) { return cap[g] >= 1; });

    struct Task {
        int j;
        std::optional<Elem> third;
    };
    std::vector<Task> tasks;
    for (std::size_t j = 0; k >= 2 && j < br.reps.size(); ++j) {
        if (k == 2) {
            tasks.push_back({static_cast<int>(j), std::nullopt});
        } else {
            for (Elem x = 1; x < T.n; ++x)
                if (x != br.reps[j]) tasks.push_back({static_cast<int>(j), x});
        }
    }
    if (k == 1) tasks.push_back({-1, std::nullopt});

    // leaf checks shared by all tasks; survivors go to per-task lists
    std::vector<std::vector<ElementSet>> found(tasks.size());
    auto leaf_check = [&](const std::vector<Elem>& cur, const std::vector<int>& nu) -> std::optional<ElementSet> {
        for (Elem y = 1; y < T.n; ++y) {
            int c = T.cls[y];
            if (nu[y] != nu[T.cls_rep[c]] || !allowed[c][nu[y]]) return std::nullopt;
        }
        ElementSet S(cur.begin(), cur.end());
        std::sort(S.begin(), S.end());
        if (generated_subgroup(G, S).size() != T.n) return std::nullopt;
        GroupMultiset d(G);
        d.coeffs[0] = k;
        for (Elem y = 1; y < T.n; ++y) d.coeffs[y] = nu[y];
        std::vector<long long> chi(T.n);
        for (Elem y = 0; y < T.n; ++y) {
            auto v = char_norm_sq_from_differences(d, y);
            if (!v || *v % a_S != 0) return std::nullopt;
            chi[y] = *v;
        }
        auto target = reconstruct_dual_spectrum(chi, k, t);
        if (!target) return std::nullopt;
        for (Elem y = 1; y < T.n; ++y)
            if ((*target)[y] % b_T != 0 || (*target)[y] >= t) return std::nullopt;
        return S;
    };

    parallel_for(tasks.size(), opt.threads, [&](std::size_t i) {
        if (budget.stop) return;
        const Task& task = tasks[i];
        std::vector<char> forb;
        if (task.j >= 0) forb = forbidden_below(br, task.j, T.n);
        Dfs dfs(T, static_cast<int>(k), cap, &roundup, budget, [&](const std::vector<Elem>& cur, const std::vector<int>& nu) {
            if (auto S = leaf_check(cur, nu)) found[i].push_back(std::move(*S));
            return false;
        });
        if (task.j < 0) {
            dfs.run(0, nullptr);
        } else {
            dfs.run(br.reps[task.j], &forb, task.third);
        }
    });

    // canonical dedup
    std::set<ElementSet> raw;
    for (auto& v : found)
        for (auto& s : v) raw.insert(s);
    std::vector<ElementSet> cand(raw.begin(), raw.end());
    std::vector<ElementSet> canon(cand.size());
    parallel_for(cand.size(), opt.threads, [&](std::size_t i) { canon[i] = canonical_form(G, cand[i]).form; });
    std::set<ElementSet> classes(canon.begin(), canon.end());

    // partner search for each class representative
    std::vector<ElementSet> reps(classes.begin(), classes.end());
    std::vector<std::optional<ElementSet>> partners(reps.size());
    parallel_for(reps.size(), opt.threads, [&](std::size_t i) {
        auto target = reconstruct_dual_spectrum(G, reps[i], t);
        if (!target) throw std::logic_error("canonical representative lost its dual spectrum");
        partners[i] = find_partner(T, *target, t, budget);
    });
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (!partners[i]) continue;
        DualityCertificate cert = verify_pair(G, reps[i], *partners[i]);
        if (!cert.verified || !cert.primitive) throw std::logic_error("search produced a pair that does not verify");
        res.classes.push_back({reps[i], *partners[i]});
    }
    res.complete = !budget.stop;
    res.nodes = budget.used;
    return res;
}

// ---------------------------------------------------------------- classification

namespace {

WitnessInfo describe(const GroupSpec& G, const FoundPair& p) {
    WitnessInfo w;
    w.pair = p;
    EvenResult ev = even_decomposition(G, p.S);
    if (ev.decomposition) {
        w.rank = ev.decomposition->rank;
        w.rank_minimal = ev.decomposition->minimal;
    }
    if (auto r = is_rds(G, p.S)) {
        long long n = static_cast<long long>(p.S.size());
        w.rds = r->m == n && r->n == n && r->k == n && r->lambda == 1;
    }
    return w;
}

}  // namespace

ClassificationRow classify_case(const GroupSpec& G, long long k, const SearchOptions& opt, SearchCache* cache) {
    ClassificationRow row;
    row.order = G.order();
    row.set_size = k;
    row.group = G;
    if (opt.use_filters) {
        auto kills = all_filters(PairParams{G, k, static_cast<long long>(G.order()) / k});
        if (!kills.empty()) {
            row.status = RowStatus::none;
            for (std::size_t i = 0; i < kills.size(); ++i) row.source += (i ? ", " : "") + kills[i].rule;
            return row;
        }
    }
    std::optional<SearchResult> r;
    if (cache) r = cache->load(G, k);
    if (!r) {
        r = search_formally_dual_sets(G, k, opt);
        if (cache && r->complete) cache->store(*r);
    }
    for (auto& p : r->classes) row.witnesses.push_back(describe(G, p));
    if (!r->classes.empty()) {
        row.status = RowStatus::exists;
        row.source = "computer search";
    } else if (r->complete) {
        row.status = RowStatus::none;
        row.source = "computer search";
    } else {
        row.status = RowStatus::inconclusive;
        row.source = "budget exhausted";
    }
    return row;
}

std::vector<ClassificationRow> classify_group(const GroupSpec& G, const SearchOptions& opt, SearchCache* cache) {
    std::vector<ClassificationRow> rows;
    const long long N = G.order();
    if (N == 1) {
        rows.push_back(classify_case(G, 1, opt, cache));
        return rows;
    }
    for (long long k : nt::divisors(N))
        if (k >= 2 && k * k <= N) rows.push_back(classify_case(G, k, opt, cache));
    return rows;
}

std::vector<ClassificationRow> classify_range(int max_order, const SearchOptions& opt, SearchCache* cache,
                                              bool allow_large) {
    if (max_order > 49 && !allow_large)
        throw std::invalid_argument("orders above 49 need the explicit large-order flag");
    std::vector<ClassificationRow> rows;
    for (int N = 1; N <= max_order; ++N) {
        if (N > 1 && nt::is_square_free(N)) continue;
        auto groups = abelian_groups_of_order(N);
        for (long long k : nt::divisors(N)) {
            bool keep = N == 1 ? k == 1 : (k >= 2 && k * k <= N);
            if (!keep) continue;
            for (auto& G : groups) rows.push_back(classify_case(G, k, opt, cache));
        }
    }
    return rows;
}

RankCensus rank_census(const std::vector<ClassificationRow>& rows) {
    RankCensus c;
    for (auto& row : rows) {
        for (auto& w : row.witnesses) {
            c.distribution[w.rank]++;
            if (!w.rank_minimal) c.not_minimal++;
            std::string where = row.group.name() + " |S|=" + std::to_string(row.set_size);
            if (w.rank == 3 && !w.rds) c.flags.push_back("rank 3 but not an (n,n,n,1)-RDS: " + where);
            if (row.group.invariant_factors().size() == 1 && w.rank != 3)
                c.flags.push_back("cyclic witness of rank " + std::to_string(w.rank) + ": " + where);
        }
    }
    return c;
}

}  // namespace fdual
