#pragma once

#include <string>
#include <vector>

#include "fdual/abelian.hpp"

namespace fdual {

/// Group and the two set sizes of a hypothetical primitive pair.
struct PairParams {
    GroupSpec group;
    long long ssize = 0, tsize = 0;

    long long a_S() const;  // |S|^2 / (|S|^2, |T|)
    long long a_T() const;
    long long b_S() const;  // |S| / (|S|, |T|^2)
    long long b_T() const;
};

struct FilterVerdict {
    bool ruled_out = false;
    std::string rule;
    std::string reason;
};

/// Rule tags, in the order all_filters reports them.
namespace rule {
inline constexpr const char* size_product = "size-product";
inline constexpr const char* common_factor = "common-factor";
inline constexpr const char* generators = "generators";
inline constexpr const char* exponent_bound = "exponent-bound";
inline constexpr const char* size_two = "size-two";
inline constexpr const char* prime_size = "prime-size";
inline constexpr const char* cyclic_prime_power = "cyclic-prime-power";
inline constexpr const char* cyclic_pq = "cyclic-p^a*q";
inline constexpr const char* cyclic_p2q2 = "cyclic-p^2*q^2";
inline constexpr const char* cyclic_paq2 = "cyclic-p^a*q^2";
inline constexpr const char* order_floor = "order-floor";
inline constexpr const char* weight = "weight";
inline constexpr const char* char_div = "char-div";
inline constexpr const char* generator_mass = "generator-mass";
inline constexpr const char* self_conjugate = "self-conjugate";
}  // namespace rule

/// Some power of p is -1 modulo the p-free part of n (true when that part is 1).
bool self_conjugate(long long p, long long n);

/// Size, gcd, generator, exponent and small-size rules plus the cyclic-order rules.
/// Returns only the violated rules.
std::vector<FilterVerdict> basic_filter_pipeline(const PairParams& P);

FilterVerdict thm_order_filter(const PairParams& P);
FilterVerdict thm_weight_filter(const PairParams& P);
FilterVerdict char_div_filter(const PairParams& P);
/// Cyclic Z_N with two prime divisors: a generator g has nu(g) >= 1, so its phi(N) conjugates
/// carry at least phi(N) b_X of the |X|^2 - |X| off-diagonal mass.
FilterVerdict generator_mass_filter(const PairParams& P);
FilterVerdict selfconj_filter(const PairParams& P);

/// Every violated rule, basic pipeline first. Empty means the parameters survive.
std::vector<FilterVerdict> all_filters(const PairParams& P);
inline bool ruled_out(const PairParams& P) { return !all_filters(P).empty(); }

struct CyclicCase {
    long long n = 0, ssize = 0, tsize = 0;
    std::vector<FilterVerdict> kills;
    /// Parameters realized by a known pair (Z_4 with |S| = |T| = 2), so not an open case.
    bool known = false;
    bool operator==(const CyclicCase& o) const { return n == o.n && ssize == o.ssize && tsize == o.tsize; }
};

/// Every (N, |S|, |T|) with N <= n_max not square-free, |S| |T| = N, |S| <= |T|, with its kills.
std::vector<CyclicCase> scan_cyclic_report(long long n_max, unsigned threads = 0);
/// Only the survivors that no known pair realizes.
std::vector<CyclicCase> scan_cyclic(long long n_max, unsigned threads = 0);

}  // namespace fdual
