#include "fdual/duality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>

#include "fdual/numtheory.hpp"
#include "fdual/parallel.hpp"

namespace fdual {

namespace {

void check_set(const GroupSpec& G, const ElementSet& S, const char* what) {
    if (S.empty()) throw std::invalid_argument(std::string(what) + " is empty");
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (S[i] >= G.order()) throw std::invalid_argument(std::string(what) + " has an element outside the group");
        if (i > 0 && S[i] <= S[i - 1]) throw std::invalid_argument(std::string(what) + " must be sorted without repeats");
    }
}

std::vector<long long> descending(std::vector<long long> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

}  // namespace

ElementSet image_of(const Automorphism& phi, const ElementSet& S) {
    ElementSet out;
    out.reserve(S.size());
    for (Elem s : S) out.push_back(phi(s));
    std::sort(out.begin(), out.end());
    return out;
}

ElementSet translate(const GroupSpec& G, const ElementSet& S, Elem g) {
    ElementSet out;
    out.reserve(S.size());
    for (Elem s : S) out.push_back(G.add(s, g));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- verification

PrimitivityReport is_primitive_subset(const GroupSpec& G, const ElementSet& S) {
    check_set(G, S, "S");
    PrimitivityReport rep;
    Elem s0 = S.front();
    std::vector<Elem> diffs;
    for (Elem s : S) diffs.push_back(G.sub(s, s0));

    Subgroup K = generated_subgroup(G, diffs);
    if (K.size() < G.order()) {
        Subgroup ann = annihilator(G, K);
        for (Elem y : ann.elements) {
            if (y != 0) {
                rep.character_witness = y;
                break;
            }
        }
    }

    std::vector<char> in(G.order(), 0);
    for (Elem s : S) in[s] = 1;
    ElementSet stab;
    for (Elem h : diffs) {
        bool ok = true;
        for (Elem s : S) {
            if (!in[G.add(s, h)]) {
                ok = false;
                break;
            }
        }
        if (ok) stab.push_back(h);
    }
    std::sort(stab.begin(), stab.end());
    if (stab.size() > 1) rep.stabilizer_witness = subgroup_from_elements(G, stab);

    rep.primitive = !rep.character_witness && !rep.stabilizer_witness;
    return rep;
}

DualityCertificate verify_pair(const GroupSpec& G, const ElementSet& S, const ElementSet& T, unsigned threads) {
    check_set(G, S, "S");
    check_set(G, T, "T");
    DualityCertificate cert;
    cert.group = G;
    cert.S = S;
    cert.T = T;

    const long long s = static_cast<long long>(S.size());
    const long long t = static_cast<long long>(T.size());
    GroupMultiset mS = GroupMultiset::from_set(G, S);
    GroupMultiset mT = GroupMultiset::from_set(G, T);
    GroupMultiset nuS = difference_multiset(mS);
    GroupMultiset nuT = difference_multiset(mT);

    // S side through explicit character sums, T side through difference multisets.
    std::vector<std::optional<long long>> chiS(G.order());
    parallel_for(G.order(), threads, [&](std::size_t y) { chiS[y] = char_norm_sq(mS, static_cast<Elem>(y)); });
    std::vector<std::optional<long long>> chiT = char_norm_sq_all(mT, threads);

    bool first_holds = true, second_holds = true, integral = true;
    cert.ledger.resize(G.order());
    for (Elem y = 0; y < G.order(); ++y) {
        LedgerRow& row = cert.ledger[y];
        row.y = y;
        row.nu_T = nuT.coeffs[y];
        row.nu_S = nuS.coeffs[y];
        row.rhs = s * s * row.nu_T;
        row.rhs2 = t * t * row.nu_S;
        if (!chiS[y] || !chiT[y]) {
            integral = false;
            if (!cert.failure_y) {
                cert.failure_y = y;
                cert.failure = !chiS[y] ? "|chi_y(S)|^2 is not an integer" : "|chi_y(T)|^2 is not an integer";
            }
            if (chiS[y]) row.chi_S = *chiS[y], row.lhs = t * row.chi_S;
            if (chiT[y]) row.chi_T = *chiT[y], row.lhs2 = s * row.chi_T;
            row.ok = false;
            first_holds = first_holds && chiS[y] && row.lhs == row.rhs;
            second_holds = second_holds && chiT[y] && row.lhs2 == row.rhs2;
            continue;
        }
        row.chi_S = *chiS[y];
        row.chi_T = *chiT[y];
        row.lhs = t * row.chi_S;
        row.lhs2 = s * row.chi_T;
        bool a = row.lhs == row.rhs;
        bool b = row.lhs2 == row.rhs2;
        row.ok = a && b;
        first_holds = first_holds && a;
        second_holds = second_holds && b;
        if (!row.ok && !cert.failure_y) {
            cert.failure_y = y;
            cert.failure = !a ? "|T||chi_y(S)|^2 != |S|^2 nu_T(y)" : "|S||chi_y(T)|^2 != |T|^2 nu_S(y)";
        }
    }
    if (integral && first_holds != second_holds)
        throw std::logic_error("the two directions of the duality equation disagree");
    cert.verified = integral && first_holds && second_holds;

    cert.primitivity_S = is_primitive_subset(G, S);
    cert.primitivity_T = is_primitive_subset(G, T);
    cert.primitive = cert.primitivity_S.primitive && cert.primitivity_T.primitive;

    auto fill = [](SpectrumReport& r, const std::vector<std::optional<long long>>& chi, const GroupMultiset& nu) {
        for (auto& c : chi) {
            if (c) r.character.push_back(*c);
            else ++r.non_integer;
        }
        r.character = descending(std::move(r.character));
        r.difference = descending(nu.coeffs);
    };
    fill(cert.spectrum_S, chiS, nuS);
    fill(cert.spectrum_T, chiT, nuT);
    return cert;
}

std::optional<std::vector<long long>> reconstruct_dual_spectrum(const std::vector<long long>& chi, long long ssize,
                                                                long long tsize) {
    const long long ss = ssize * ssize;
    std::vector<long long> nu(chi.size());
    long long total = 0;
    for (std::size_t y = 0; y < chi.size(); ++y) {
        long long num = tsize * chi[y];
        if (num < 0 || num % ss != 0) return std::nullopt;
        nu[y] = num / ss;
        total += nu[y];
    }
    if (nu.empty() || nu[0] != tsize || total != tsize * tsize) return std::nullopt;
    return nu;
}

std::optional<std::vector<long long>> reconstruct_dual_spectrum(const GroupSpec& G, const ElementSet& S,
                                                                long long tsize, unsigned threads) {
    check_set(G, S, "S");
    if (static_cast<long long>(S.size()) * tsize != static_cast<long long>(G.order()))
        throw std::invalid_argument("|S| * tsize must equal |G|");
    auto chi = char_norm_sq_all(GroupMultiset::from_set(G, S), threads);
    std::vector<long long> vals(chi.size());
    for (std::size_t y = 0; y < chi.size(); ++y) {
        if (!chi[y]) return std::nullopt;
        vals[y] = *chi[y];
    }
    return reconstruct_dual_spectrum(vals, static_cast<long long>(S.size()), tsize);
}

// ---------------------------------------------------------------- equivalence

std::shared_ptr<const std::vector<Automorphism>> automorphisms_within_bound(const GroupSpec& G, long double bound) {
    if (automorphism_count(G) * static_cast<long double>(G.order()) > bound) return nullptr;
    static std::mutex mu;
    static std::map<std::vector<int>, std::shared_ptr<const std::vector<Automorphism>>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(G.factors());
        if (it != cache.end()) return it->second;
    }
    auto auts = std::make_shared<const std::vector<Automorphism>>(
        enumerate_automorphisms(G, std::numeric_limits<std::uint32_t>::max()));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(G.factors(), auts).first->second;
}

namespace {

std::vector<Automorphism> unit_multiples(const GroupSpec& G) {
    std::vector<Automorphism> out;
    for (int u = 1; u <= std::max(1, G.exponent() - 1); ++u) {
        if (std::gcd(u, G.exponent()) != 1) continue;
        std::vector<Elem> imgs;
        for (int i = 0; i < G.rank(); ++i) imgs.push_back(G.mul(u, G.generator(i)));
        out.push_back(make_automorphism(G, imgs));
    }
    return out;
}

void minimize_over(const GroupSpec& G, const ElementSet& S, const Automorphism& phi, ElementSet& best,
                   ElementSet& image, ElementSet& cand) {
    image.clear();
    for (Elem s : S) image.push_back(phi(s));
    for (Elem a : image) {
        cand.clear();
        for (Elem x : image) cand.push_back(G.sub(x, a));
        std::sort(cand.begin(), cand.end());
        if (best.empty() || cand < best) best = cand;
    }
}

}  // namespace

CanonicalForm canonical_form(const GroupSpec& G, const ElementSet& S, unsigned threads) {
    check_set(G, S, "S");
    auto auts = automorphisms_within_bound(G);
    std::vector<Automorphism> fallback;
    const std::vector<Automorphism>* list = auts.get();
    CanonicalForm out;
    if (!list) {
        fallback = unit_multiples(G);
        list = &fallback;
        out.exact = false;
    }
    const std::size_t chunks = std::min<std::size_t>(list->size(), 64);
    std::vector<ElementSet> best(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        ElementSet image, cand;
        for (std::size_t i = c; i < list->size(); i += chunks) minimize_over(G, S, (*list)[i], best[c], image, cand);
    });
    out.form = *std::min_element(best.begin(), best.end());
    return out;
}

Equivalence equivalent(const GroupSpec& G, const ElementSet& A, const ElementSet& B) {
    if (A.size() != B.size()) return Equivalence::inequivalent;
    SpectrumReport sa = spectra(GroupMultiset::from_set(G, A));
    SpectrumReport sb = spectra(GroupMultiset::from_set(G, B));
    if (sa.character != sb.character || sa.difference != sb.difference) return Equivalence::inequivalent;
    CanonicalForm ca = canonical_form(G, A), cb = canonical_form(G, B);
    if (ca.form == cb.form) return Equivalence::equivalent;
    return ca.exact ? Equivalence::inequivalent : Equivalence::unknown;
}

std::pair<ElementSet, ElementSet> transform_pair(const GroupSpec& G, const Automorphism& phi, const ElementSet& S,
                                                 const ElementSet& T) {
    Automorphism back = inverse(G, adjoint_of(G, phi));
    return {image_of(phi, S), image_of(back, T)};
}

// ---------------------------------------------------------------- even sets

GroupMultiset evaluate(const GroupSpec& G, const EvenDecomposition& d) {
    GroupMultiset out(G);
    for (auto& term : d.terms)
        for (Elem h : term.H.elements) out.coeffs[h] += term.lambda;
    return out;
}

namespace {

int mobius(long long n) {
    int mu = 1;
    for (auto& [p, e] : nt::factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

struct BudgetExhausted {};

// Class-indexed bitset.
struct Bits {
    std::vector<std::uint64_t> w;
    explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(std::size_t i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
    bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    Bits& operator|=(const Bits& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
        return *this;
    }
};

class RankSearch {
public:
    RankSearch(std::vector<Bits> masks, std::vector<long long> values, std::uint64_t budget)
        : masks_(std::move(masks)), val_(std::move(values)), budget_(budget) {
        m_ = val_.size();
        containing_.resize(m_);
        for (std::size_t h = 0; h < masks_.size(); ++h)
            for (std::size_t j = 0; j < m_; ++j)
                if (masks_[h].test(j)) containing_[j].push_back(static_cast<int>(h));
        for (std::size_t j = 0; j < m_; ++j)
            if (val_[j] != 0) supp_.push_back(j);
        banned_.assign(masks_.size(), 0);
        chosen_flag_.assign(masks_.size(), 0);
    }

    // Best family at exactly r terms, by (size profile, indices). Throws BudgetExhausted.
    bool run(int r, const std::vector<std::size_t>& sizes) {
        r_ = r;
        sizes_ = &sizes;
        found_ = false;
        chosen_.clear();
        std::fill(banned_.begin(), banned_.end(), 0);
        cover_(Bits(m_));
        return found_;
    }

    // Only chains H_1 < ... < H_r. Cheap source of upper bounds.
    bool run_chain(int r, const std::vector<std::size_t>& sizes) {
        r_ = r;
        sizes_ = &sizes;
        found_ = false;
        chosen_.clear();
        std::fill(banned_.begin(), banned_.end(), 0);
        chain_();
        return found_;
    }

    const std::vector<int>& best() const { return best_; }
    const std::vector<long long>& best_lambda() const { return best_lambda_; }

private:
    void tick() {
        if (++nodes_ > budget_) throw BudgetExhausted{};
    }

    void cover_(const Bits& covered) {
        tick();
        std::size_t pick = m_;
        std::size_t fewest = SIZE_MAX;
        for (std::size_t j : supp_) {
            if (covered.test(j)) continue;
            std::size_t avail = 0;
            for (int h : containing_[j])
                if (!banned_[h] && !chosen_flag_[h]) ++avail;
            if (avail < fewest) fewest = avail, pick = j;
        }
        if (pick == m_) {
            fill_(0);
            return;
        }
        if (static_cast<int>(chosen_.size()) == r_ || fewest == 0) return;
        std::vector<int> tried;
        for (int h : containing_[pick]) {
            if (banned_[h] || chosen_flag_[h]) continue;
            Bits next = covered;
            next |= masks_[h];
            chosen_.push_back(h);
            chosen_flag_[h] = 1;
            cover_(next);
            chosen_flag_[h] = 0;
            chosen_.pop_back();
            banned_[h] = 1;
            tried.push_back(h);
        }
        for (int h : tried) banned_[h] = 0;
    }

    void fill_(int start) {
        if (static_cast<int>(chosen_.size()) == r_) {
            leaf();
            return;
        }
        for (int h = start; h < static_cast<int>(masks_.size()); ++h) {
            if (banned_[h] || chosen_flag_[h]) continue;
            tick();
            chosen_.push_back(h);
            chosen_flag_[h] = 1;
            fill_(h + 1);
            chosen_flag_[h] = 0;
            chosen_.pop_back();
        }
    }

    bool inside(int a, int b) const {  // H_a strictly inside H_b
        if ((*sizes_)[a] >= (*sizes_)[b]) return false;
        for (std::size_t i = 0; i < masks_[a].w.size(); ++i)
            if (masks_[a].w[i] & ~masks_[b].w[i]) return false;
        return true;
    }

    void chain_() {
        if (static_cast<int>(chosen_.size()) == r_) {
            leaf();
            return;
        }
        for (int h = 0; h < static_cast<int>(masks_.size()); ++h) {
            if (!chosen_.empty() && !inside(chosen_.back(), h)) continue;
            tick();
            chosen_.push_back(h);
            chain_();
            chosen_.pop_back();
        }
    }

    void leaf() {
        tick();
        const int r = r_;
        std::vector<long long> sig_val(std::size_t(1) << r, 0);
        std::vector<char> sig_seen(std::size_t(1) << r, 0);
        for (std::size_t j = 0; j < m_; ++j) {
            unsigned sig = 0;
            for (int i = 0; i < r; ++i)
                if (masks_[chosen_[i]].test(j)) sig |= 1u << i;
            if (!sig_seen[sig]) {
                sig_seen[sig] = 1;
                sig_val[sig] = val_[j];
            } else if (sig_val[sig] != val_[j]) {
                return;
            }
        }
        if (sig_seen[0] && sig_val[0] != 0) return;

        // sum_{i in sig} lambda_i = value, solved numerically then checked exactly
        std::vector<std::vector<double>> rows;
        std::vector<unsigned> sigs;
        for (unsigned sig = 1; sig < sig_seen.size(); ++sig) {
            if (!sig_seen[sig]) continue;
            std::vector<double> row(r + 1);
            for (int i = 0; i < r; ++i) row[i] = (sig >> i) & 1;
            row[r] = static_cast<double>(sig_val[sig]);
            rows.push_back(std::move(row));
            sigs.push_back(sig);
        }
        std::vector<int> pivot_row(r, -1);
        std::size_t at = 0;
        for (int c = 0; c < r; ++c) {
            std::size_t best = at;
            for (std::size_t k = at; k < rows.size(); ++k)
                if (std::fabs(rows[k][c]) > std::fabs(rows[best][c])) best = k;
            if (best >= rows.size() || std::fabs(rows[best][c]) < 1e-9) return;  // dependent columns
            std::swap(rows[at], rows[best]);
            for (std::size_t k = 0; k < rows.size(); ++k) {
                if (k == at || rows[k][c] == 0) continue;
                double f = rows[k][c] / rows[at][c];
                for (int q = c; q <= r; ++q) rows[k][q] -= f * rows[at][q];
            }
            pivot_row[c] = static_cast<int>(at);
            ++at;
        }
        std::vector<long long> lambda(r);
        for (int c = 0; c < r; ++c) {
            double v = rows[pivot_row[c]][r] / rows[pivot_row[c]][c];
            lambda[c] = std::llround(v);
            if (lambda[c] == 0) return;
        }
        for (unsigned sig = 1; sig < sig_seen.size(); ++sig) {
            if (!sig_seen[sig]) continue;
            long long sum = 0;
            for (int i = 0; i < r; ++i)
                if ((sig >> i) & 1) sum += lambda[i];
            if (sum != sig_val[sig]) return;
        }

        std::vector<std::pair<int, long long>> fam;
        for (int i = 0; i < r; ++i) fam.push_back({chosen_[i], lambda[i]});
        std::sort(fam.begin(), fam.end());
        std::vector<int> idx;
        std::vector<long long> lam;
        for (auto& [h, l] : fam) idx.push_back(h), lam.push_back(l);
        if (!found_ || better(idx, best_)) {
            best_ = idx;
            best_lambda_ = lam;
            found_ = true;
        }
    }

    bool better(const std::vector<int>& a, const std::vector<int>& b) const {
        std::vector<std::size_t> pa, pb;
        for (int h : a) pa.push_back((*sizes_)[h]);
        for (int h : b) pb.push_back((*sizes_)[h]);
        if (pa != pb) return pa < pb;
        return a < b;
    }

    std::vector<Bits> masks_;
    std::vector<long long> val_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::size_t m_ = 0;
    std::vector<std::vector<int>> containing_;
    std::vector<std::size_t> supp_;
    std::vector<char> banned_, chosen_flag_;
    std::vector<int> chosen_;
    int r_ = 0;
    const std::vector<std::size_t>* sizes_ = nullptr;
    bool found_ = false;
    std::vector<int> best_;
    std::vector<long long> best_lambda_;
};

}  // namespace

EvenResult decompose_multiset(const GroupMultiset& f, EvenOptions opt) {
    const GroupSpec& G = f.group;
    EvenResult res;
    int ncls = 0;
    std::vector<int> cls = orbit_ids(G, &ncls);
    std::vector<long long> val(ncls, 0);
    std::vector<Elem> rep(ncls, 0);
    std::vector<char> seen(ncls, 0);
    for (Elem g = 0; g < G.order(); ++g) {
        int c = cls[g];
        if (!seen[c]) {
            seen[c] = 1;
            val[c] = f.coeffs[g];
            rep[c] = g;
        } else if (f.coeffs[g] != val[c]) {
            res.not_even = NotEvenWitness{rep[c], g, val[c], f.coeffs[g]};
            return res;
        }
    }

    EvenDecomposition d;
    std::vector<long long> distinct;
    std::vector<Elem> supp_reps;
    for (int c = 0; c < ncls; ++c) {
        if (val[c] == 0) continue;
        distinct.push_back(val[c]);
        supp_reps.push_back(rep[c]);
    }
    if (supp_reps.empty()) {
        d.minimal = true;
        res.decomposition = d;
        return res;
    }
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    int lower = 1;
    while ((std::size_t(1) << lower) < distinct.size() + 1) ++lower;

    // Upper bound and fallback: Moebius inversion over cyclic subgroups.
    std::map<int, long long> coef;
    for (int c = 0; c < ncls; ++c) {
        if (val[c] == 0) continue;
        Elem g = rep[c];
        int o = G.element_order(g);
        for (long long e : nt::divisors(o)) {
            int mu = mobius(e);
            if (mu != 0) coef[cls[G.mul(e, g)]] += mu * val[c];
        }
    }
    EvenDecomposition cyc;
    for (auto& [c, l] : coef)
        if (l != 0) cyc.terms.push_back({generated_subgroup(G, {rep[c]}), l});
    std::sort(cyc.terms.begin(), cyc.terms.end(), [](const EvenTerm& a, const EvenTerm& b) { return a.H < b.H; });
    cyc.rank = static_cast<int>(cyc.terms.size());

    auto finish = [&](EvenDecomposition out) {
        if (evaluate(G, out) != f) throw std::logic_error("even decomposition does not reproduce the multiset");
        res.decomposition = std::move(out);
        return res;
    };

    // Exact search over subgroups of K = <supp f>; restricting terms to K never adds any.
    Subgroup K = generated_subgroup(G, supp_reps);
    std::vector<Subgroup> subs;
    bool lattice_ok = true;
    try {
        for (auto& H : enumerate_subgroups(G, opt.lattice)) {
            bool inside = std::all_of(H.generators.begin(), H.generators.end(), [&](Elem g) { return K.contains(g); });
            if (inside) subs.push_back(std::move(H));
        }
    } catch (const GroupError&) {
        lattice_ok = false;
    }
    if (!lattice_ok) {
        cyc.minimal = cyc.rank <= lower;
        cyc.rank_lower_bound = lower;
        return finish(std::move(cyc));
    }

    std::vector<int> kcls;  // class ids inside K
    std::vector<int> local(ncls, -1);
    for (int c = 0; c < ncls; ++c) {
        if (K.contains(rep[c])) {
            local[c] = static_cast<int>(kcls.size());
            kcls.push_back(c);
        }
    }
    std::vector<long long> kval;
    for (int c : kcls) kval.push_back(val[c]);
    std::vector<Bits> masks;
    std::vector<std::size_t> sizes;
    for (auto& H : subs) {
        Bits b(kcls.size());
        for (Elem h : H.elements) b.set(local[cls[h]]);
        masks.push_back(std::move(b));
        sizes.push_back(H.size());
    }

    RankSearch search(masks, kval, opt.work_budget);
    int r = lower;
    try {
        for (; r <= cyc.rank && r < 31; ++r) {
            if (search.run(r, sizes)) {
                EvenDecomposition out;
                for (std::size_t i = 0; i < search.best().size(); ++i)
                    out.terms.push_back({subs[search.best()[i]], search.best_lambda()[i]});
                out.rank = r;
                out.minimal = true;
                out.rank_lower_bound = r;
                return finish(std::move(out));
            }
        }
    } catch (const BudgetExhausted&) {
    }
    // Every family of fewer than r terms has been ruled out.
    const int proved = std::max(lower, r);
    RankSearch chains(std::move(masks), std::move(kval), opt.work_budget);
    try {
        for (int c = proved; c < cyc.rank && c < 31; ++c) {
            if (chains.run_chain(c, sizes)) {
                EvenDecomposition out;
                for (std::size_t i = 0; i < chains.best().size(); ++i)
                    out.terms.push_back({subs[chains.best()[i]], chains.best_lambda()[i]});
                out.rank = c;
                out.rank_lower_bound = proved;
                out.minimal = c <= proved;
                return finish(std::move(out));
            }
        }
    } catch (const BudgetExhausted&) {
    }
    cyc.rank_lower_bound = proved;
    cyc.minimal = cyc.rank <= proved;
    return finish(std::move(cyc));
}

EvenResult even_decomposition(const GroupSpec& G, const ElementSet& S, EvenOptions opt) {
    check_set(G, S, "S");
    return decompose_multiset(difference_multiset(G, S), opt);
}

std::optional<GroupMultiset> even_dual_transform(const GroupSpec& G, const EvenDecomposition& d, long long ssize) {
    if (ssize <= 0) throw std::invalid_argument("set size must be positive");
    std::vector<long long> acc(G.order(), 0);
    for (auto& term : d.terms) {
        long long w = term.lambda * static_cast<long long>(G.order()) * static_cast<long long>(term.H.size());
        for (Elem y : annihilator(G, term.H).elements) acc[y] += w;
    }
    const long long cube = ssize * ssize * ssize;
    GroupMultiset out(G);
    for (Elem y = 0; y < G.order(); ++y) {
        if (acc[y] % cube != 0) return std::nullopt;
        out.coeffs[y] = acc[y] / cube;
    }
    return out;
}

bool even_dual_terms_integral(const GroupSpec& G, const EvenDecomposition& d, long long ssize) {
    const long long cube = ssize * ssize * ssize;
    for (auto& term : d.terms) {
        long long w = term.lambda * static_cast<long long>(G.order()) * static_cast<long long>(term.H.size());
        if (w % cube != 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------- RDS / GRDS

std::optional<RdsParams> is_rds(const GroupSpec& G, const ElementSet& S) {
    check_set(G, S, "S");
    if (S.size() <= 1) return std::nullopt;
    GroupMultiset nu = difference_multiset(G, S);
    ElementSet zero{0};
    long long lambda = -1;
    for (Elem y = 1; y < G.order(); ++y) {
        long long v = nu.coeffs[y];
        if (v == 0) {
            zero.push_back(y);
        } else if (lambda < 0) {
            lambda = v;
        } else if (v != lambda) {
            return std::nullopt;
        }
    }
    if (zero.size() == 1 || lambda < 0) return std::nullopt;  // N trivial or N = G
    Subgroup N;
    try {
        N = subgroup_from_elements(G, zero);
    } catch (const GroupError&) {
        return std::nullopt;
    }
    RdsParams out;
    out.n = static_cast<long long>(N.size());
    out.m = static_cast<long long>(G.order()) / out.n;
    out.k = static_cast<long long>(S.size());
    out.lambda = lambda;
    out.N = std::move(N);
    return out;
}

bool is_grds(const GroupSpec& G, const ElementSet& S, const GaloisRing& R, GrdsOrientation o) {
    check_set(G, S, "S");
    std::vector<int> want(2 * R.s(), static_cast<int>(R.char_modulus()));
    if (G.factors() != want) throw std::invalid_argument("ambient group must be the additive group of R x R");
    const Elem rs = R.size();
    std::vector<int> v(rs);
    for (Elem i = 0; i < rs; ++i) v[i] = R.valuation(R.element(i));
    const long long p = R.p();
    const int s = R.s(), t = R.t();

    GroupMultiset mS = GroupMultiset::from_set(G, S);
    GroupMultiset nu = difference_multiset(mS);
    auto chi = char_norm_sq_all(mS);
    bool by_nu = true, by_chi = true;
    for (Elem g = 0; g < G.order(); ++g) {
        int va = v[g / rs], vb = v[g % rs];
        long long want_nu, want_chi;
        if (o == GrdsOrientation::first) {
            want_nu = va <= vb ? nt::ipow(p, va * s) : 0;
            want_chi = va >= vb ? nt::ipow(p, (t + vb) * s) : 0;
        } else {
            want_nu = vb <= va ? nt::ipow(p, vb * s) : 0;
            want_chi = va <= vb ? nt::ipow(p, (t + va) * s) : 0;
        }
        if (nu.coeffs[g] != want_nu) by_nu = false;
        if (!chi[g] || *chi[g] != want_chi) by_chi = false;
    }
    if (by_nu != by_chi) throw std::logic_error("GRDS valuation and character tests disagree");
    return by_nu;
}

}  // namespace fdual
