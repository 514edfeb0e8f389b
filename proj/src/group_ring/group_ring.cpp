#include "fdual/group_ring.hpp"

#include <algorithm>
#include <functional>

#include "fdual/parallel.hpp"

namespace fdual {

GroupMultiset::GroupMultiset(GroupSpec g, std::vector<long long> c) : group(std::move(g)), coeffs(std::move(c)) {
    if (coeffs.size() != group.order()) throw std::invalid_argument("multiset length differs from group order");
}

GroupMultiset GroupMultiset::from_set(const GroupSpec& g, const ElementSet& s) {
    GroupMultiset m(g);
    for (Elem x : s) {
        if (x >= g.order()) throw std::out_of_range("element index outside the group");
        m.coeffs[x] += 1;
    }
    return m;
}

long long GroupMultiset::mass() const {
    long long s = 0;
    for (long long c : coeffs) s += c;
    return s;
}

bool GroupMultiset::is_set() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](long long c) { return c == 0 || c == 1; });
}

ElementSet GroupMultiset::support() const {
    ElementSet s;
    for (Elem g = 0; g < coeffs.size(); ++g)
        if (coeffs[g]) s.push_back(g);
    return s;
}

GroupMultiset difference_multiset(const GroupMultiset& a) {
    const GroupSpec& G = a.group;
    GroupMultiset d(G);
    std::vector<Elem> supp;
    for (Elem g = 0; g < G.order(); ++g) {
        if (a.coeffs[g] < 0) throw std::invalid_argument("difference_multiset needs nonnegative coefficients");
        if (a.coeffs[g]) supp.push_back(g);
    }
    for (Elem x : supp)
        for (Elem y : supp) {
            long long prod;
            Elem diff = G.sub(x, y);
            if (__builtin_mul_overflow(a.coeffs[x], a.coeffs[y], &prod) ||
                __builtin_add_overflow(d.coeffs[diff], prod, &d.coeffs[diff]))
                throw std::overflow_error("difference multiset overflow");
        }
    return d;
}

GroupMultiset difference_multiset(const GroupSpec& g, const ElementSet& s) {
    return difference_multiset(GroupMultiset::from_set(g, s));
}

GroupMultiset power_map(const GroupMultiset& a, long long i) {
    GroupMultiset r(a.group);
    for (Elem g = 0; g < a.group.order(); ++g)
        if (a.coeffs[g]) r.coeffs[a.group.mul(i, g)] += a.coeffs[g];
    return r;
}

namespace {

int pairing(const GroupSpec& G, Elem x, Elem y) { return G.trivial() ? 0 : G.inner(x, y); }

}  // namespace

CyclotomicInt character_sum(const GroupMultiset& a, Elem y) {
    const GroupSpec& G = a.group;
    CyclotomicInt r(G.exponent());
    for (Elem g = 0; g < G.order(); ++g)
        if (a.coeffs[g]) r[pairing(G, g, y)] += static_cast<long>(a.coeffs[g]);
    return r;
}

std::optional<long long> char_norm_sq(const GroupMultiset& a, Elem y) {
    auto v = as_integer(norm_sq(character_sum(a, y)));
    if (!v) return std::nullopt;
    if (!v->fits_slong_p()) throw std::overflow_error("character value exceeds machine range");
    return v->get_si();
}

std::optional<long long> char_norm_sq_from_differences(const GroupMultiset& nu, Elem y) {
    const GroupSpec& G = nu.group;
    std::vector<long long> h(G.exponent(), 0);
    for (Elem d = 0; d < G.order(); ++d)
        if (nu.coeffs[d]) h[pairing(G, d, y)] += nu.coeffs[d];
    return exponent_sum_integer(h, G.exponent());
}

std::vector<std::optional<long long>> char_norm_sq_all(const GroupMultiset& a, unsigned threads) {
    const GroupSpec& G = a.group;
    GroupMultiset nu = difference_multiset(a);
    std::vector<Elem> supp = nu.support();
    std::vector<std::optional<long long>> out(G.order());
    parallel_for(G.order(), threads, [&](std::size_t yi) {
        Elem y = static_cast<Elem>(yi);
        std::vector<long long> h(G.exponent(), 0);
        for (Elem d : supp) h[pairing(G, d, y)] += nu.coeffs[d];
        out[yi] = exponent_sum_integer(h, G.exponent());
    });
    return out;
}

GroupMultiset fourier_invert(const GroupSpec& G, const std::vector<long long>& values) {
    if (values.size() != G.order()) throw std::invalid_argument("spectrum length differs from group order");
    GroupMultiset r(G);
    int n = G.exponent();
    for (Elem g = 0; g < G.order(); ++g) {
        std::vector<long long> h(n, 0);
        for (Elem y = 0; y < G.order(); ++y) {
            if (!values[y]) continue;
            int k = pairing(G, g, y);
            h[k == 0 ? 0 : n - k] += values[y];
        }
        auto v = exponent_sum_integer(h, n);
        if (!v || *v % static_cast<long long>(G.order()) != 0)
            throw InconsistentSpectrum("spectrum does not invert to an integer multiset");
        r.coeffs[g] = *v / static_cast<long long>(G.order());
    }
    return r;
}

SpectrumReport spectra(const GroupMultiset& a, unsigned threads) {
    SpectrumReport rep;
    for (auto& v : char_norm_sq_all(a, threads)) {
        if (v)
            rep.character.push_back(*v);
        else
            ++rep.non_integer;
    }
    rep.difference = difference_multiset(a).coeffs;
    std::sort(rep.character.rbegin(), rep.character.rend());
    std::sort(rep.difference.rbegin(), rep.difference.rend());
    return rep;
}

}  // namespace fdual
