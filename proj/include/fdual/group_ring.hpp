#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fdual/abelian.hpp"
#include "fdual/cyclotomic.hpp"

namespace fdual {

/** Integer-valued function on a group, i.e. an element of Z[G]. */
struct GroupMultiset {
    GroupSpec group;
    std::vector<long long> coeffs;

    GroupMultiset() = default;
    GroupMultiset(GroupSpec g, std::vector<long long> c);
    explicit GroupMultiset(const GroupSpec& g) : group(g), coeffs(g.order(), 0) {}
    static GroupMultiset from_set(const GroupSpec& g, const ElementSet& s);
    static GroupMultiset indicator(const GroupSpec& g, const ElementSet& s) { return from_set(g, s); }

    long long mass() const;
    bool is_set() const;
    ElementSet support() const;
    bool operator==(const GroupMultiset& o) const { return group == o.group && coeffs == o.coeffs; }
};

struct InconsistentSpectrum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A A^(-1); the value at y is the weight enumerator nu_A(y).
GroupMultiset difference_multiset(const GroupMultiset& a);
GroupMultiset difference_multiset(const GroupSpec& g, const ElementSet& s);

/// Transports coefficients along g -> i*g.
GroupMultiset power_map(const GroupMultiset& a, long long i);

/// sum_g [A]_g zeta_n^{<g,y>} with n = exp(G); the trivial group uses n = 1.
CyclotomicInt character_sum(const GroupMultiset& a, Elem y);

/// |chi_y(A)|^2 through norm_sq of the character sum.
std::optional<long long> char_norm_sq(const GroupMultiset& a, Elem y);
/// |chi_y(A)|^2 through sum_d nu_A(d) zeta^{<d,y>}, given nu = difference_multiset(A).
std::optional<long long> char_norm_sq_from_differences(const GroupMultiset& nu, Elem y);
/// The second route for every y at once, optionally on several threads.
std::vector<std::optional<long long>> char_norm_sq_all(const GroupMultiset& a, unsigned threads = 1);

/// Inverse transform of a real integer spectrum: a_g = (1/|G|) sum_y v_y zeta^{-<g,y>}.
GroupMultiset fourier_invert(const GroupSpec& g, const std::vector<long long>& values);

struct SpectrumReport {
    std::vector<long long> character;   // descending
    std::vector<long long> difference;  // descending
    int non_integer = 0;                // characters whose |chi|^2 was not rational
};

SpectrumReport spectra(const GroupMultiset& a, unsigned threads = 1);

}  // namespace fdual
