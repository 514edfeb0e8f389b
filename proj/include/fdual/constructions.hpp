#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdual/abelian.hpp"
#include "fdual/algebra.hpp"

namespace fdual {

struct ConstructionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A candidate pair (S, T) in G with a short label of where it came from.
struct Construction {
    std::string family;
    std::string label;
    GroupSpec group;
    ElementSet S, T;
};

Construction build_trivial();
Construction build_tito();
/// S = H, T = its annihilator.
Construction build_subgroup_pair(const GroupSpec& G, const Subgroup& H);

/**
 * G = F_q x F_q with q = p^m, S = {(x, f1(x))}, T = {(f2(x), x)}. Planar maps are tables of
 * field element indices; both default to squaring.
 */
Construction build_rds_pair(int p, int m, std::optional<std::vector<Elem>> f1 = std::nullopt,
                            std::optional<std::vector<Elem>> f2 = std::nullopt);

/// S = T = Teichmuller set of GR(4, m) inside Z_4^m.
Construction build_teichmuller_pair(int m);

/**
 * R = GR(p^t, s), G = R x R as Z_{p^t}^{2s}. S = {(x, x^2)}; T is {(x^2, x)} moved by the
 * coordinate map (a, b) -> ((Tr(a xi^j))_j, (Tr(b xi^j))_j), which converts the trace pairing
 * into the coordinate pairing used for characters.
 */
Construction build_grds_square_pair(int p, int t, int s);

/// Checks that {0}, D, -D partition F and that D is a difference set.
bool is_skew_hadamard(const GaloisRing& F, const ElementSet& D);

/// {a : chi_a(D) = (-1 + sqrt(-q)) / 2} with the root of positive imaginary part.
ElementSet dual_set(const GaloisRing& F, const ElementSet& D);

/// q = p^m = 3 mod 4, alpha != beta nonzero in Z_p. D defaults to the quadratic residues.
Construction build_skew_hadamard_pair(int q, int alpha, int beta, std::optional<ElementSet> D = std::nullopt);

/// Direct product; both operands must verify.
Construction build_product_pair(const Construction& a, const Construction& b);

/// |S| = 4, |T| = 8 in Z_2 x Z_4 x Z_4.
Construction build_example_244();

/// Z_4^m as the product of m1 copies of the rank-one Teichmuller pair and the Teichmuller
/// pair of GR(4, m - m1), for the product-family comparisons.
Construction build_z4_mix(int m, int m1);

}  // namespace fdual
