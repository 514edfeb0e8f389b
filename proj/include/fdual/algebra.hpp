#pragma once

#include <vector>

#include "fdual/abelian.hpp"
#include "fdual/cyclotomic.hpp"

namespace fdual {

/// Monic irreducible of degree m over Z_p, the first one when polynomials are ordered by
/// the integer sum c_i p^i of their non-leading coefficients. Constant term first.
IntPoly find_irreducible(int p, int m);
bool is_irreducible_mod_p(const IntPoly& f, int p);

/**
 * Galois ring GR(p^t, s) = Z_{p^t}[x]/(f). Elements are coefficient vectors of length s,
 * constant term first. With t = 1 this is the field F_{p^s}.
 */
class GaloisRing {
public:
    using Element = std::vector<long long>;

    /// An empty modulus selects the coefficientwise lift of find_irreducible(p, s).
    GaloisRing(int p, int t, int s, IntPoly modulus = {});

    int p() const { return p_; }
    int t() const { return t_; }
    int s() const { return s_; }
    long long char_modulus() const { return q_; }  // p^t
    Elem size() const { return size_; }
    bool is_field() const { return t_ == 1; }
    const IntPoly& modulus() const { return f_; }

    Element element(Elem idx) const;
    Elem index(const Element& a) const;
    Element zero() const { return Element(s_, 0); }
    Element one() const { return from_int(1); }
    Element from_int(long long v) const;
    /// Residue class of x (requires s >= 2 to differ from a constant).
    Element xbar() const;

    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element mul(const Element& a, const Element& b) const;
    Element scale(long long k, const Element& a) const;
    Element pow(Element a, unsigned long long e) const;
    /// Multiplicative inverse of a unit.
    Element inverse(const Element& a) const;

    /// Largest i with a in (p^i); t for zero.
    int valuation(const Element& a) const;

    /// Teichmuller representatives as sorted element indices (p^s of them).
    const ElementSet& teichmuller_set() const { return teich_sorted_; }
    /// Teichmuller representative congruent to a modulo p.
    Element teichmuller_of(const Element& a) const;
    /// a = sum_{i<t} p^i x_i with Teichmuller digits x_i.
    std::vector<Element> digits(const Element& a) const;
    Element frobenius(const Element& a) const;
    /// Tr(a) = sum_{i<s} sigma^i(a), as a residue mod p^t.
    long long trace(const Element& a) const;

    /// Additive group Z_{p^t}^s; element indices coincide with index().
    GroupSpec additive_group() const;

private:
    int p_, t_, s_;
    long long q_;
    Elem size_;
    IntPoly f_;
    std::vector<Elem> teich_by_residue_;  // residue index (mod p digits) -> representative index
    ElementSet teich_sorted_;
};

inline GaloisRing finite_field(int p, int m) { return GaloisRing(p, 1, m); }

/// Nonzero squares of an odd-order field, as element indices.
ElementSet quadratic_residues(const GaloisRing& F);
/// x -> f(a+x) - f(x) is a bijection for every a != 0. f is a table of element indices.
bool is_planar(const GaloisRing& F, const std::vector<Elem>& f);
/// The table of x -> x^2.
std::vector<Elem> squaring_map(const GaloisRing& F);

}  // namespace fdual
