#include "fdual/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "fdual/duality.hpp"
#include "fdual/group_ring.hpp"
#include "fdual/numtheory.hpp"

namespace fdual {

namespace {

ElementSet sorted_unique(ElementSet v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

GroupSpec square_of(const GroupSpec& H) {
    std::vector<int> f = H.factors();
    f.insert(f.end(), H.factors().begin(), H.factors().end());
    return GroupSpec(f);
}

Elem pair_index(const GroupSpec& H, Elem a, Elem b) { return a * H.order() + b; }

}  // namespace

Construction build_trivial() {
    Construction c{"trivial", "trivial", GroupSpec(), {0}, {0}};
    return c;
}

Construction build_tito() {
    Construction c{"tito", "tito", GroupSpec({4}), {0, 1}, {0, 1}};
    return c;
}

Construction build_subgroup_pair(const GroupSpec& G, const Subgroup& H) {
    for (Elem h : H.elements)
        if (h >= G.order()) throw ConstructionError("subgroup element outside the group");
    Construction c;
    c.family = "subgroup";
    c.label = "subgroup of order " + std::to_string(H.size()) + " in " + G.name();
    c.group = G;
    c.S = H.elements;
    c.T = annihilator(G, H).elements;
    return c;
}

Construction build_rds_pair(int p, int m, std::optional<std::vector<Elem>> f1, std::optional<std::vector<Elem>> f2) {
    if (p == 2 || !nt::is_prime(p)) throw ConstructionError("p must be an odd prime");
    if (m < 1) throw ConstructionError("m must be positive");
    GaloisRing F = finite_field(p, m);
    if (!f1) f1 = squaring_map(F);
    if (!f2) f2 = squaring_map(F);
    if (f1->size() != F.size() || f2->size() != F.size()) throw ConstructionError("planar table has the wrong length");
    if (!is_planar(F, *f1) || !is_planar(F, *f2)) throw ConstructionError("map is not planar");
    GroupSpec H = F.additive_group();
    Construction c;
    c.family = "rds_planar";
    c.label = "rds p=" + std::to_string(p) + " m=" + std::to_string(m);
    c.group = square_of(H);
    for (Elem x = 0; x < F.size(); ++x) {
        c.S.push_back(pair_index(H, x, (*f1)[x]));
        c.T.push_back(pair_index(H, (*f2)[x], x));
    }
    c.S = sorted_unique(c.S);
    c.T = sorted_unique(c.T);
    return c;
}

Construction build_teichmuller_pair(int m) {
    if (m < 1) throw ConstructionError("m must be positive");
    GaloisRing R(2, 2, m);
    Construction c;
    c.family = "teichmuller";
    c.label = "teichmuller m=" + std::to_string(m);
    c.group = R.additive_group();
    c.S = R.teichmuller_set();
    c.T = c.S;
    return c;
}

Construction build_grds_square_pair(int p, int t, int s) {
    if (p == 2) throw ConstructionError("the square construction needs an odd prime");
    if (!nt::is_prime(p)) throw ConstructionError("p must be prime");
    if (t < 1 || s < 1) throw ConstructionError("t and s must be positive");
    GaloisRing R(p, t, s);
    GroupSpec H = R.additive_group();
    const long long q = R.char_modulus();

    // trace form basis change: a -> (Tr(a xi^j))_j
    std::vector<GaloisRing::Element> basis;
    for (int j = 0; j < s; ++j) {
        GaloisRing::Element e = R.zero();
        e[j] = 1;
        basis.push_back(e);
    }
    auto L = [&](const GaloisRing::Element& a) {
        GaloisRing::Element out(s);
        for (int j = 0; j < s; ++j) out[j] = nt::mod(R.trace(R.mul(a, basis[j])), q);
        return R.index(out);
    };

    Construction c;
    c.family = "grds_square";
    c.label = "grds p=" + std::to_string(p) + " t=" + std::to_string(t) + " s=" + std::to_string(s);
    c.group = square_of(H);
    for (Elem xi = 0; xi < R.size(); ++xi) {
        auto x = R.element(xi);
        auto x2 = R.mul(x, x);
        c.S.push_back(pair_index(H, xi, R.index(x2)));
        c.T.push_back(pair_index(H, L(x2), L(x)));
    }
    c.S = sorted_unique(c.S);
    c.T = sorted_unique(c.T);
    return c;
}

bool is_skew_hadamard(const GaloisRing& F, const ElementSet& D) {
    if (!F.is_field() || F.size() % 4 != 3) return false;
    GroupSpec G = F.additive_group();
    std::vector<int> mark(G.order(), 0);
    for (Elem d : D) {
        if (d >= G.order() || d == 0) return false;
        if (mark[d]++) return false;
    }
    for (Elem d : D) {
        if (mark[G.neg(d)]) return false;
    }
    if (D.size() * 2 + 1 != G.order()) return false;
    GroupMultiset nu = difference_multiset(G, sorted_unique(D));
    long long lambda = (static_cast<long long>(G.order()) - 3) / 4;
    for (Elem y = 1; y < G.order(); ++y)
        if (nu.coeffs[y] != lambda) return false;
    return true;
}

ElementSet dual_set(const GaloisRing& F, const ElementSet& D) {
    if (!is_skew_hadamard(F, D)) throw ConstructionError("D is not a skew Hadamard difference set");
    GroupSpec G = F.additive_group();
    const int p = F.p();
    const long long q = G.order();
    GroupMultiset mD = GroupMultiset::from_set(G, sorted_unique(D));
    CyclotomicInt target = CyclotomicInt::constant(p, -q);
    ElementSet out;
    for (Elem a = 1; a < G.order(); ++a) {
        CyclotomicInt chi = character_sum(mD, a);
        CyclotomicInt w = chi * 2 + CyclotomicInt::constant(p, 1);
        if (!(w * w == target)) throw std::logic_error("character value of a skew Hadamard set is not (-1 +- sqrt(-q))/2");
        long double err = 0;
        std::complex<long double> z = w.embed(&err);
        // w = +- sqrt(-q), so |Im w| = sqrt(q) is far above the rounding bound
        if (std::fabs(z.imag()) <= err) throw std::logic_error("sign of the character value could not be certified");
        if (z.imag() > 0) out.push_back(a);
    }
    if (!is_skew_hadamard(F, out)) throw std::logic_error("dual set is not skew Hadamard");
    return out;
}

Construction build_skew_hadamard_pair(int q, int alpha, int beta, std::optional<ElementSet> D) {
    auto [p, m] = nt::prime_power(q);
    if (p == 0 || q % 4 != 3) throw ConstructionError("q must be a prime power congruent to 3 mod 4");
    alpha = static_cast<int>(nt::mod(alpha, p));
    beta = static_cast<int>(nt::mod(beta, p));
    if (alpha == 0 || beta == 0 || alpha == beta) throw ConstructionError("alpha and beta must be distinct and nonzero mod p");
    GaloisRing F = finite_field(static_cast<int>(p), m);
    if (!D) D = quadratic_residues(F);
    ElementSet Dset = sorted_unique(*D);
    ElementSet Dstar = dual_set(F, Dset);
    GroupSpec H = F.additive_group();

    const long long diff_inv = nt::inverse_mod(alpha - beta, p);  // 1/(alpha - beta)
    const long long c1 = nt::mod(alpha * diff_inv, p);
    const long long c2 = nt::mod(beta * diff_inv, p);
    const long long c3 = nt::mod(-diff_inv, p);  // 1/(beta - alpha)

    Construction c;
    c.family = "skew_hadamard";
    c.label = "skew hadamard q=" + std::to_string(q) + " alpha=" + std::to_string(alpha) + " beta=" +
              std::to_string(beta);
    c.group = square_of(H);
    c.S.push_back(0);
    c.T.push_back(0);
    for (Elem x : Dset) {
        c.S.push_back(pair_index(H, x, H.mul(alpha, x)));
        Elem nx = H.neg(x);
        c.S.push_back(pair_index(H, nx, H.mul(beta, nx)));
    }
    for (Elem x : Dstar) {
        c.T.push_back(pair_index(H, H.mul(c1, x), H.mul(c3, x)));
        Elem nx = H.neg(x);
        c.T.push_back(pair_index(H, H.mul(c2, nx), H.mul(c3, nx)));
    }
    c.S = sorted_unique(c.S);
    c.T = sorted_unique(c.T);
    if (c.S.size() != static_cast<std::size_t>(q) || c.T.size() != static_cast<std::size_t>(q))
        throw std::logic_error("skew Hadamard pair has the wrong size");
    return c;
}

Construction build_product_pair(const Construction& a, const Construction& b) {
    if (!verify_pair(a.group, a.S, a.T).verified || !verify_pair(b.group, b.S, b.T).verified)
        throw ConstructionError("product operands must be formally dual pairs");
    std::vector<int> f = a.group.factors();
    f.insert(f.end(), b.group.factors().begin(), b.group.factors().end());
    Construction c;
    c.family = "product";
    c.label = "(" + a.label + ") x (" + b.label + ")";
    c.group = GroupSpec(f);
    const Elem w = b.group.order();
    for (Elem x : a.S)
        for (Elem y : b.S) c.S.push_back(x * w + y);
    for (Elem x : a.T)
        for (Elem y : b.T) c.T.push_back(x * w + y);
    c.S = sorted_unique(c.S);
    c.T = sorted_unique(c.T);
    return c;
}

Construction build_example_244() {
    GroupSpec G({2, 4, 4});
    auto at = [&](int a, int b, int c) { return G.index({a, b, c}); };
    Construction c;
    c.family = "example_244";
    c.label = "example in Z2xZ4xZ4";
    c.group = G;
    c.S = sorted_unique({at(0, 0, 0), at(0, 0, 1), at(0, 1, 0), at(1, 1, 1)});
    c.T = sorted_unique({at(0, 0, 0), at(0, 0, 1), at(0, 1, 0), at(0, 1, 1), at(1, 0, 0), at(1, 0, 3), at(1, 3, 0),
                         at(1, 3, 3)});
    return c;
}

Construction build_z4_mix(int m, int m1) {
    if (m < 1 || m1 < 0 || m1 > m) throw ConstructionError("need 0 <= m1 <= m");
    Construction c = m1 < m ? build_teichmuller_pair(m - m1) : build_trivial();
    for (int i = 0; i < m1; ++i) c = build_product_pair(build_tito(), c);
    c.family = "product";
    c.label = "tito^" + std::to_string(m1) + " x teichmuller m=" + std::to_string(m - m1);
    return c;
}

}  // namespace fdual
