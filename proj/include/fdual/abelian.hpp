#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdual {

/// Mixed-radix index of a group element. The last factor is the fastest digit.
using Elem = std::uint32_t;

/// Sorted list of element indices without repeats.
using ElementSet = std::vector<Elem>;

struct GroupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Finite abelian group Z_{n_1} x ... x Z_{n_t}, kept in the factor order the
 * caller supplied. An empty factor list is the trivial group.
 */
class GroupSpec {
public:
    GroupSpec() { init(); }
    explicit GroupSpec(std::vector<int> factors);

    const std::vector<int>& factors() const { return factors_; }
    int rank() const { return static_cast<int>(factors_.size()); }
    std::uint32_t order() const { return order_; }
    int exponent() const { return exponent_; }
    bool trivial() const { return order_ == 1; }

    std::vector<int> coords(Elem g) const;
    int coord(Elem g, int i) const { return static_cast<int>((g / stride_[i]) % factors_[i]); }
    Elem index(const std::vector<int>& c) const;
    Elem generator(int i) const { return stride_[i]; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(long long k, Elem a) const;

    int element_order(Elem g) const;
    /// <x,y> = sum (n/n_i) x_i y_i mod n, n = exponent. Undefined on the trivial group.
    int inner(Elem x, Elem y) const;

    /// Name such as "Z2xZ4xZ4"; "Z1" for the trivial group.
    std::string name() const;
    std::vector<int> invariant_factors() const;
    /// prime -> exponents of the cyclic factors of the Sylow subgroup, ascending.
    std::map<int, std::vector<int>> primary_parts() const;
    bool sylow_cyclic(int p) const;
    /// Minimal number of generators (number of invariant factors).
    int min_generators() const { return static_cast<int>(invariant_factors().size()); }
    bool isomorphic(const GroupSpec& o) const { return invariant_factors() == o.invariant_factors(); }

    bool operator==(const GroupSpec& o) const { return factors_ == o.factors_; }
    bool operator!=(const GroupSpec& o) const { return !(*this == o); }

private:
    void init();
    std::vector<int> factors_;
    std::vector<std::uint32_t> stride_;
    std::vector<int> weight_;  // n / n_i
    std::uint32_t order_ = 1;
    int exponent_ = 1;
};

/// Parse "2,4,4" (or "4") into a group. An empty string or "1" is the trivial group.
GroupSpec parse_group(const std::string& text);

/** A subgroup given by its sorted element list and a generating set. */
struct Subgroup {
    ElementSet elements;
    std::vector<Elem> generators;

    std::size_t size() const { return elements.size(); }
    bool contains(Elem g) const;
    bool operator==(const Subgroup& o) const { return elements == o.elements; }
    bool operator<(const Subgroup& o) const;
};

Subgroup generated_subgroup(const GroupSpec& G, const std::vector<Elem>& gens);
/// Builds a Subgroup from a closed element list, choosing generators greedily.
Subgroup subgroup_from_elements(const GroupSpec& G, ElementSet elements);
Subgroup whole_group(const GroupSpec& G);
Subgroup trivial_subgroup(const GroupSpec& G);

struct LatticeLimits {
    std::uint32_t max_order = 4096;
    std::size_t max_count = 200000;
};

/// All subgroups sorted by (size, membership). Throws GroupError past the limits.
std::vector<Subgroup> enumerate_subgroups(const GroupSpec& G, LatticeLimits lim = {});
/// Cyclic subgroups only, one per orbit class, same ordering.
std::vector<Subgroup> cyclic_subgroups(const GroupSpec& G);

Subgroup annihilator(const GroupSpec& G, const Subgroup& N);

/// Elements of <y> with the same order as y.
ElementSet orbit_of(const GroupSpec& G, Elem y);
/// orbit id per element; ids are assigned in order of first (smallest) member.
std::vector<int> orbit_ids(const GroupSpec& G, int* count = nullptr);

/** Automorphism stored as images of the canonical generators plus a full lookup table. */
struct Automorphism {
    std::vector<Elem> images;
    std::vector<Elem> table;

    Elem operator()(Elem x) const { return table[x]; }
    bool operator==(const Automorphism& o) const { return images == o.images; }
};

/// Builds the homomorphism sending e_i to images[i]; throws unless it is an automorphism.
Automorphism make_automorphism(const GroupSpec& G, std::vector<Elem> images);
Automorphism identity_automorphism(const GroupSpec& G);
Automorphism compose(const GroupSpec& G, const Automorphism& f, const Automorphism& g);  // f after g
Automorphism inverse(const GroupSpec& G, const Automorphism& f);

/// Complete Aut(G) by backtracking over generator images. Throws past max_order.
std::vector<Automorphism> enumerate_automorphisms(const GroupSpec& G, std::uint32_t max_order = 256);
/// |Aut(G)| from the standard formula for abelian p-groups, without enumeration.
long double automorphism_count(const GroupSpec& G);

Automorphism adjoint_of(const GroupSpec& G, const Automorphism& phi);

/// rho_y(g) = <g,y> / (n/l) mod l where l is the order of y.
int project_along(const GroupSpec& G, Elem y, Elem g);

/// Every abelian group of the given order up to isomorphism, primes ascending and
/// exponents ascending inside each Sylow part (e.g. 24 -> [8,3], [2,4,3], [2,2,2,3]).
std::vector<GroupSpec> abelian_groups_of_order(int order);

}  // namespace fdual
