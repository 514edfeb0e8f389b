#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fdual/constructions.hpp"
#include "fdual/search.hpp"

namespace fdual::oracle {

/// |chi_y(S)|^2 by floating point summation, rounded. Independent of the exact routes.
long long naive_chi2(const GroupSpec& G, const ElementSet& S, Elem y);
/// nu_S by the double loop.
std::vector<long long> naive_nu(const GroupSpec& G, const ElementSet& S);
/// value -> number of y, computed with naive_chi2.
std::map<long long, int> naive_spectrum(const GroupSpec& G, const ElementSet& S);

/// Not contained in a coset of a proper subgroup and not a union of cosets, both by brute force.
bool naive_primitive(const GroupSpec& G, const ElementSet& S);

/// Canonical S of every primitive formally dual set of size k (0 in S), found by trying
/// every k-subset and every |G|/k-subset. Only for tiny groups.
std::vector<ElementSet> naive_search_classes(const GroupSpec& G, long long k);

/// Every abelian group of order 2..max_order, in a fixed order.
const std::vector<GroupSpec>& groups_up_to(unsigned max_order);
GroupSpec random_group(std::mt19937_64& rng, unsigned max_order);
ElementSet random_set(std::mt19937_64& rng, const GroupSpec& G, std::size_t k);

/// Verified pairs from the constructions, with |G| <= max_order.
std::vector<Construction> known_pairs(unsigned max_order);

/// The acceptance battery: criteria 1 and 2.
std::vector<Construction> small_known_pairs();
std::vector<Construction> construction_battery();

/// Character spectrum multiplicities from the standalone Python oracle, frozen.
std::map<long long, int> frozen_rds_spectrum(int p, int m);
std::map<long long, int> frozen_skew_spectrum(int q);

/// Classification table entries with order <= 36: whether a primitive formally dual set of
/// size k exists in G, and how many inequivalent ones are listed.
struct TableEntry {
    int order, k;
    std::vector<int> factors;
    int classes;  // 0 means none
};
std::vector<TableEntry> table_existing_up_to_36();
/// Number of listed classes for (G, k), 0 for rows marked none.
int table_classes(const GroupSpec& G, long long k);

struct PropertyOutcome {
    bool ok = true;
    int cases = 0;
    std::string message;
};

PropertyOutcome prop_fourier_round_trip(std::uint64_t seed, int cases);
PropertyOutcome prop_parseval(std::uint64_t seed, int cases);
PropertyOutcome prop_verify_symmetry(std::uint64_t seed, int cases);
PropertyOutcome prop_equivalence_invariance(std::uint64_t seed, int cases);
PropertyOutcome prop_orbit_constancy(std::uint64_t seed, int cases);
PropertyOutcome prop_naive_search_agrees(unsigned max_order);
PropertyOutcome prop_filter_soundness(std::uint64_t seed, int cases);

}  // namespace fdual::oracle
