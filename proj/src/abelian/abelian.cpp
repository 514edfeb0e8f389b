#include "fdual/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "fdual/numtheory.hpp"

namespace fdual {

GroupSpec::GroupSpec(std::vector<int> factors) : factors_(std::move(factors)) { init(); }

void GroupSpec::init() {
    std::uint64_t ord = 1;
    long long ex = 1;
    for (int n : factors_) {
        if (n < 2) throw GroupError("cyclic factor orders must be at least 2");
        ord *= static_cast<std::uint64_t>(n);
        if (ord > (1u << 30)) throw GroupError("group too large");
        ex = nt::lcm(ex, n);
    }
    order_ = static_cast<std::uint32_t>(ord);
    exponent_ = static_cast<int>(ex);
    stride_.assign(factors_.size(), 1);
    for (int i = rank() - 2; i >= 0; --i) stride_[i] = stride_[i + 1] * factors_[i + 1];
    weight_.clear();
    for (int n : factors_) weight_.push_back(exponent_ / n);
}

std::vector<int> GroupSpec::coords(Elem g) const {
    std::vector<int> c(factors_.size());
    for (int i = 0; i < rank(); ++i) c[i] = coord(g, i);
    return c;
}

Elem GroupSpec::index(const std::vector<int>& c) const {
    if (c.size() != factors_.size()) throw GroupError("coordinate length mismatch");
    Elem r = 0;
    for (int i = 0; i < rank(); ++i) r += static_cast<Elem>(nt::mod(c[i], factors_[i])) * stride_[i];
    return r;
}

Elem GroupSpec::add(Elem a, Elem b) const {
    Elem r = 0;
    for (int i = 0; i < rank(); ++i) {
        int s = coord(a, i) + coord(b, i);
        if (s >= factors_[i]) s -= factors_[i];
        r += s * stride_[i];
    }
    return r;
}

Elem GroupSpec::neg(Elem a) const {
    Elem r = 0;
    for (int i = 0; i < rank(); ++i) {
        int c = coord(a, i);
        r += (c == 0 ? 0 : factors_[i] - c) * stride_[i];
    }
    return r;
}

Elem GroupSpec::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem GroupSpec::mul(long long k, Elem a) const {
    Elem r = 0;
    for (int i = 0; i < rank(); ++i)
        r += static_cast<Elem>(nt::mod(k % factors_[i] * coord(a, i), factors_[i])) * stride_[i];
    return r;
}

int GroupSpec::element_order(Elem g) const {
    long long l = 1;
    for (int i = 0; i < rank(); ++i) l = nt::lcm(l, factors_[i] / nt::gcd(factors_[i], coord(g, i)));
    return static_cast<int>(l);
}

int GroupSpec::inner(Elem x, Elem y) const {
    if (trivial()) throw GroupError("inner product undefined on the trivial group");
    long long s = 0;
    for (int i = 0; i < rank(); ++i) s += static_cast<long long>(weight_[i]) * coord(x, i) * coord(y, i);
    return static_cast<int>(s % exponent_);
}

std::string GroupSpec::name() const {
    if (factors_.empty()) return "Z1";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += "x";
        s += "Z" + std::to_string(factors_[i]);
    }
    return s;
}

std::map<int, std::vector<int>> GroupSpec::primary_parts() const {
    std::map<int, std::vector<int>> parts;
    for (int n : factors_)
        for (auto [p, e] : nt::factorize(n)) parts[static_cast<int>(p)].push_back(e);
    for (auto& [p, v] : parts) std::sort(v.begin(), v.end());
    return parts;
}

std::vector<int> GroupSpec::invariant_factors() const {
    auto parts = primary_parts();
    std::size_t len = 0;
    for (auto& [p, v] : parts) len = std::max(len, v.size());
    // d_1 | d_2 | ... built from the largest primary factors downward
    std::vector<int> inv(len, 1);
    for (auto& [p, v] : parts)
        for (std::size_t j = 0; j < v.size(); ++j)
            inv[len - v.size() + j] *= static_cast<int>(nt::ipow(p, v[j]));
    return inv;
}

bool GroupSpec::sylow_cyclic(int p) const {
    auto parts = primary_parts();
    auto it = parts.find(p);
    return it == parts.end() || it->second.size() <= 1;
}

GroupSpec parse_group(const std::string& text) {
    std::vector<int> f;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size() && tok.find_first_not_of(" \t", pos) != std::string::npos)
            throw GroupError("bad group factor: " + tok);
        if (v == 1) continue;
        f.push_back(v);
    }
    return GroupSpec(f);
}

// ---------------------------------------------------------------------------
// subgroups

bool Subgroup::contains(Elem g) const { return std::binary_search(elements.begin(), elements.end(), g); }

bool Subgroup::operator<(const Subgroup& o) const {
    if (elements.size() != o.elements.size()) return elements.size() < o.elements.size();
    return elements < o.elements;
}

namespace {

// Closure of the subgroup generated by base (closed) and g, written into mark/out.
ElementSet join_with(const GroupSpec& G, const ElementSet& base, Elem g, std::vector<char>& mark) {
    ElementSet out;
    Elem mult = 0;
    while (true) {
        bool fresh = false;
        for (Elem h : base) {
            Elem x = G.add(h, mult);
            if (!mark[x]) {
                mark[x] = 1;
                out.push_back(x);
                fresh = true;
            }
        }
        if (!fresh) break;
        mult = G.add(mult, g);
    }
    for (Elem x : out) mark[x] = 0;
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Subgroup generated_subgroup(const GroupSpec& G, const std::vector<Elem>& gens) {
    std::vector<char> mark(G.order(), 0);
    ElementSet cur{0};
    std::vector<Elem> used;
    for (Elem g : gens) {
        if (std::binary_search(cur.begin(), cur.end(), g)) continue;
        cur = join_with(G, cur, g, mark);
        used.push_back(g);
    }
    return Subgroup{cur, used};
}

Subgroup subgroup_from_elements(const GroupSpec& G, ElementSet elements) {
    std::sort(elements.begin(), elements.end());
    std::vector<char> mark(G.order(), 0);
    ElementSet cur{0};
    std::vector<Elem> gens;
    // prefer high-order generators so the generating set stays short
    std::vector<Elem> byorder(elements.begin(), elements.end());
    std::stable_sort(byorder.begin(), byorder.end(),
                     [&](Elem a, Elem b) { return G.element_order(a) > G.element_order(b); });
    for (Elem g : byorder) {
        if (cur.size() == elements.size()) break;
        if (std::binary_search(cur.begin(), cur.end(), g)) continue;
        cur = join_with(G, cur, g, mark);
        gens.push_back(g);
    }
    if (cur != elements) throw GroupError("element list is not a subgroup");
    return Subgroup{std::move(elements), std::move(gens)};
}

Subgroup whole_group(const GroupSpec& G) {
    ElementSet all(G.order());
    std::iota(all.begin(), all.end(), 0);
    std::vector<Elem> gens;
    for (int i = 0; i < G.rank(); ++i) gens.push_back(G.generator(i));
    return Subgroup{all, gens};
}

Subgroup trivial_subgroup(const GroupSpec&) { return Subgroup{{0}, {}}; }

std::vector<Subgroup> cyclic_subgroups(const GroupSpec& G) {
    std::vector<int> ids;
    int count = 0;
    ids = orbit_ids(G, &count);
    std::vector<char> seen(count, 0);
    std::vector<Subgroup> out;
    for (Elem g = 0; g < G.order(); ++g) {
        if (seen[ids[g]]) continue;
        seen[ids[g]] = 1;
        out.push_back(generated_subgroup(G, {g}));
        if (g == 0) out.back().generators.clear();
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Subgroup> enumerate_subgroups(const GroupSpec& G, LatticeLimits lim) {
    if (G.order() > lim.max_order) throw GroupError("subgroup enumeration bound exceeded");
    auto cyc = cyclic_subgroups(G);
    std::set<ElementSet> seen;
    std::vector<Subgroup> all;
    std::deque<std::size_t> queue;
    for (auto& c : cyc) {
        seen.insert(c.elements);
        all.push_back(c);
        queue.push_back(all.size() - 1);
    }
    std::vector<char> mark(G.order(), 0);
    while (!queue.empty()) {
        std::size_t idx = queue.front();
        queue.pop_front();
        for (const auto& c : cyc) {
            if (c.generators.empty()) continue;
            Elem g = c.generators[0];
            if (all[idx].contains(g)) continue;
            ElementSet j = join_with(G, all[idx].elements, g, mark);
            if (seen.insert(j).second) {
                auto gens = all[idx].generators;
                gens.push_back(g);
                all.push_back(Subgroup{std::move(j), std::move(gens)});
                queue.push_back(all.size() - 1);
                if (all.size() > lim.max_count) throw GroupError("subgroup count bound exceeded");
            }
        }
    }
    std::sort(all.begin(), all.end());
    return all;
}

Subgroup annihilator(const GroupSpec& G, const Subgroup& N) {
    if (G.trivial()) return trivial_subgroup(G);
    ElementSet out;
    std::vector<Elem> gens = N.generators;
    if (gens.empty())
        for (Elem h : N.elements)
            if (h) gens.push_back(h);
    for (Elem y = 0; y < G.order(); ++y) {
        bool ok = true;
        for (Elem h : gens)
            if (G.inner(h, y) != 0) {
                ok = false;
                break;
            }
        if (ok) out.push_back(y);
    }
    return subgroup_from_elements(G, std::move(out));
}

// ---------------------------------------------------------------------------
// orbits

ElementSet orbit_of(const GroupSpec& G, Elem y) {
    int l = G.element_order(y);
    ElementSet out;
    for (int k = 1; k <= l; ++k)
        if (nt::gcd(k, l) == 1) out.push_back(G.mul(k, y));
    if (l == 1) out = {y};
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> orbit_ids(const GroupSpec& G, int* count) {
    std::vector<int> id(G.order(), -1);
    int next = 0;
    for (Elem g = 0; g < G.order(); ++g) {
        if (id[g] >= 0) continue;
        for (Elem x : orbit_of(G, g)) id[x] = next;
        ++next;
    }
    if (count) *count = next;
    return id;
}

// ---------------------------------------------------------------------------
// automorphisms

namespace {

std::vector<Elem> hom_table(const GroupSpec& G, const std::vector<Elem>& images) {
    std::vector<Elem> table(G.order());
    for (Elem x = 0; x < G.order(); ++x) {
        Elem r = 0;
        for (int i = 0; i < G.rank(); ++i) r = G.add(r, G.mul(G.coord(x, i), images[i]));
        table[x] = r;
    }
    return table;
}

}  // namespace

Automorphism make_automorphism(const GroupSpec& G, std::vector<Elem> images) {
    if (static_cast<int>(images.size()) != G.rank()) throw GroupError("wrong number of generator images");
    for (int i = 0; i < G.rank(); ++i)
        if (G.factors()[i] % G.element_order(images[i]) != 0) throw GroupError("image order does not divide factor");
    auto table = hom_table(G, images);
    std::vector<char> hit(G.order(), 0);
    for (Elem v : table) {
        if (hit[v]) throw GroupError("map is not injective");
        hit[v] = 1;
    }
    return Automorphism{std::move(images), std::move(table)};
}

Automorphism identity_automorphism(const GroupSpec& G) {
    std::vector<Elem> imgs;
    for (int i = 0; i < G.rank(); ++i) imgs.push_back(G.generator(i));
    return make_automorphism(G, imgs);
}

Automorphism compose(const GroupSpec& G, const Automorphism& f, const Automorphism& g) {
    std::vector<Elem> imgs;
    for (Elem e : g.images) imgs.push_back(f(e));
    return make_automorphism(G, imgs);
}

Automorphism inverse(const GroupSpec& G, const Automorphism& f) {
    std::vector<Elem> inv(G.order());
    for (Elem x = 0; x < G.order(); ++x) inv[f(x)] = x;
    std::vector<Elem> imgs;
    for (int i = 0; i < G.rank(); ++i) imgs.push_back(inv[G.generator(i)]);
    return Automorphism{imgs, inv};
}

std::vector<Automorphism> enumerate_automorphisms(const GroupSpec& G, std::uint32_t max_order) {
    if (G.order() > max_order) throw GroupError("automorphism enumeration bound exceeded");
    std::vector<Automorphism> out;
    if (G.trivial()) {
        out.push_back(Automorphism{{}, {0}});
        return out;
    }
    std::vector<int> ord(G.order());
    for (Elem g = 0; g < G.order(); ++g) ord[g] = G.element_order(g);
    std::vector<char> mark(G.order(), 0);
    std::vector<Elem> imgs(G.rank());
    // span[i] is the subgroup generated by the first i images
    std::vector<ElementSet> span(G.rank() + 1);
    span[0] = {0};
    auto rec = [&](auto&& self, int i) -> void {
        if (i == G.rank()) {
            out.push_back(Automorphism{imgs, hom_table(G, imgs)});
            return;
        }
        int n = G.factors()[i];
        for (Elem g = 0; g < G.order(); ++g) {
            if (ord[g] != n) continue;  // injective on <e_i> forces order exactly n_i
            if (std::binary_search(span[i].begin(), span[i].end(), g)) continue;
            ElementSet j = join_with(G, span[i], g, mark);
            if (j.size() != span[i].size() * static_cast<std::size_t>(n)) continue;
            span[i + 1] = std::move(j);
            imgs[i] = g;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

long double automorphism_count(const GroupSpec& G) {
    long double total = 1;
    for (auto& [p, e] : G.primary_parts()) {
        int n = static_cast<int>(e.size());
        long double prod = 1;
        for (int k = 1; k <= n; ++k) {
            int dk = k, ck = k;
            while (dk < n && e[dk] == e[k - 1]) ++dk;
            while (ck > 1 && e[ck - 2] == e[k - 1]) --ck;
            prod *= std::pow((long double)p, dk) - std::pow((long double)p, k - 1);
            prod *= std::pow(std::pow((long double)p, e[k - 1]), n - dk);
            prod *= std::pow(std::pow((long double)p, e[k - 1] - 1), n - ck + 1);
        }
        total *= prod;
    }
    return total;
}

Automorphism adjoint_of(const GroupSpec& G, const Automorphism& phi) {
    if (G.trivial()) return identity_automorphism(G);
    int n = G.exponent();
    auto star = [&](Elem y) {
        std::vector<int> z(G.rank());
        for (int i = 0; i < G.rank(); ++i) {
            int ni = G.factors()[i];
            int v = G.inner(phi.images[i], y);
            z[i] = (v / (n / ni)) % ni;
        }
        return G.index(z);
    };
    std::vector<Elem> imgs;
    for (int j = 0; j < G.rank(); ++j) imgs.push_back(star(G.generator(j)));
    return make_automorphism(G, imgs);
}

int project_along(const GroupSpec& G, Elem y, Elem g) {
    if (y == 0) throw GroupError("projection along the identity");
    int l = G.element_order(y);
    return (G.inner(g, y) / (G.exponent() / l)) % l;
}

// ---------------------------------------------------------------------------

namespace {

void partitions(int n, int maxpart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(n, maxpart); k >= 1; --k) {
        cur.push_back(k);
        partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<GroupSpec> abelian_groups_of_order(int order) {
    if (order == 1) return {GroupSpec()};
    std::vector<std::vector<std::vector<int>>> per_prime;  // list of factor lists per prime
    for (auto [p, a] : nt::factorize(order)) {
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        partitions(a, a, cur, parts);
        std::vector<std::vector<int>> lists;
        for (auto& part : parts) {
            std::vector<int> f;
            for (auto it = part.rbegin(); it != part.rend(); ++it) f.push_back(static_cast<int>(nt::ipow(p, *it)));
            lists.push_back(f);
        }
        per_prime.push_back(lists);
    }
    std::vector<GroupSpec> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == per_prime.size()) {
            out.emplace_back(cur);
            return;
        }
        for (auto& l : per_prime[i]) {
            auto save = cur.size();
            cur.insert(cur.end(), l.begin(), l.end());
            self(self, i + 1);
            cur.resize(save);
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace fdual
