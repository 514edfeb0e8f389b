#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fdual/abelian.hpp"
#include "fdual/algebra.hpp"
#include "fdual/group_ring.hpp"

namespace fdual {

/// One character y of the duality check, both directions with denominators cleared.
struct LedgerRow {
    Elem y = 0;
    long long chi_S = 0;  // |chi_y(S)|^2, character-sum route
    long long nu_T = 0;
    long long lhs = 0;    // |T| |chi_y(S)|^2
    long long rhs = 0;    // |S|^2 nu_T(y)
    long long chi_T = 0;  // |chi_y(T)|^2, difference route
    long long nu_S = 0;
    long long lhs2 = 0;   // |S| |chi_y(T)|^2
    long long rhs2 = 0;   // |T|^2 nu_S(y)
    bool ok = false;
};

struct PrimitivityReport {
    bool primitive = true;
    /// Nonprincipal y with |chi_y(S)|^2 = |S|^2, i.e. S lies in a coset of ker chi_y.
    std::optional<Elem> character_witness;
    /// Nontrivial H with S + H = S.
    std::optional<Subgroup> stabilizer_witness;
};

struct DualityCertificate {
    GroupSpec group;
    ElementSet S, T;
    bool verified = false;
    bool primitive = false;
    PrimitivityReport primitivity_S, primitivity_T;
    std::vector<LedgerRow> ledger;
    std::optional<Elem> failure_y;
    std::string failure;
    SpectrumReport spectrum_S, spectrum_T;
};

/// Throws std::invalid_argument on empty sets or out-of-range elements.
DualityCertificate verify_pair(const GroupSpec& G, const ElementSet& S, const ElementSet& T,
                               unsigned threads = 1);

PrimitivityReport is_primitive_subset(const GroupSpec& G, const ElementSet& S);

/// nu_T(y) = tsize |chi_y(S)|^2 / |S|^2 for every y, or nullopt when that is not a valid
/// weight enumerator. Throws std::invalid_argument unless |S| tsize = |G|.
std::optional<std::vector<long long>> reconstruct_dual_spectrum(const GroupSpec& G, const ElementSet& S,
                                                                long long tsize, unsigned threads = 1);
/// Same, from precomputed |chi_y(S)|^2 values.
std::optional<std::vector<long long>> reconstruct_dual_spectrum(const std::vector<long long>& chi,
                                                                long long ssize, long long tsize);

// ---- equivalence ----

/// Aut(G) when |Aut(G)| |G| stays within the bound, otherwise null. Cached per group.
std::shared_ptr<const std::vector<Automorphism>> automorphisms_within_bound(const GroupSpec& G,
                                                                           long double bound = 1e7);

struct CanonicalForm {
    ElementSet form;
    /// false when only unit multiples were used in place of Aut(G).
    bool exact = true;
};

/// Lexicographically smallest sorted list among g + phi(S).
CanonicalForm canonical_form(const GroupSpec& G, const ElementSet& S, unsigned threads = 1);

enum class Equivalence { equivalent, inequivalent, unknown };
Equivalence equivalent(const GroupSpec& G, const ElementSet& A, const ElementSet& B);

/// (phi(S), (phi*)^{-1}(T)).
std::pair<ElementSet, ElementSet> transform_pair(const GroupSpec& G, const Automorphism& phi,
                                                 const ElementSet& S, const ElementSet& T);

ElementSet image_of(const Automorphism& phi, const ElementSet& S);
ElementSet translate(const GroupSpec& G, const ElementSet& S, Elem g);

// ---- even sets ----

struct EvenTerm {
    Subgroup H;
    long long lambda = 0;
};

struct EvenDecomposition {
    std::vector<EvenTerm> terms;  // ascending by subgroup
    int rank = 0;
    /// rank is proved minimal; otherwise rank_lower_bound is what the search established.
    bool minimal = false;
    int rank_lower_bound = 0;
};

struct NotEvenWitness {
    Elem a = 0, b = 0;  // same cyclic subgroup generator class, different values
    long long value_a = 0, value_b = 0;
};

struct EvenResult {
    std::optional<EvenDecomposition> decomposition;
    std::optional<NotEvenWitness> not_even;
    bool even() const { return decomposition.has_value(); }
};

struct EvenOptions {
    LatticeLimits lattice{4096, 6000};
    /// Search nodes allowed before falling back to the cyclic-subgroup decomposition.
    std::uint64_t work_budget = 20000000;
};

/// Decomposes nu_S = S S^(-1).
EvenResult even_decomposition(const GroupSpec& G, const ElementSet& S, EvenOptions opt = {});
/// Decomposes an arbitrary integer function on G into subgroup indicators.
EvenResult decompose_multiset(const GroupMultiset& f, EvenOptions opt = {});

GroupMultiset evaluate(const GroupSpec& G, const EvenDecomposition& d);

/// sum_i lambda_i |G| |H_i| 1_{N(H_i)} / |S|^3, the predicted T T^(-1). The division is done
/// per element of the aggregate, nullopt when some entry is not an integer.
std::optional<GroupMultiset> even_dual_transform(const GroupSpec& G, const EvenDecomposition& d,
                                                 long long ssize);
/// Whether every single term lambda_i |G| |H_i| is divisible by |S|^3.
bool even_dual_terms_integral(const GroupSpec& G, const EvenDecomposition& d, long long ssize);

// ---- RDS / GRDS ----

struct RdsParams {
    long long m = 0, n = 0, k = 0, lambda = 0;
    Subgroup N;
};

/// Nontrivial proper N with nu_S = k at 0, 0 on N \ {0}, lambda on G \ N.
std::optional<RdsParams> is_rds(const GroupSpec& G, const ElementSet& S);

enum class GrdsOrientation { first, second };

/// S in (Z_{p^t}^s)^2 = additive R x R. The valuation pattern of nu_S is checked and then
/// cross-checked against the character pattern. Throws std::invalid_argument on a
/// mismatched ambient group.
bool is_grds(const GroupSpec& G, const ElementSet& S, const GaloisRing& R, GrdsOrientation o);

}  // namespace fdual
