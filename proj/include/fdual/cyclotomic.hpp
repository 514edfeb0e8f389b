#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fdual {

/// Integer polynomial, constant term first.
using IntPoly = std::vector<long long>;

/// Phi_n by exact division of x^n - 1 by Phi_d for the proper divisors d. Memoized, thread safe.
const IntPoly& cyclotomic_polynomial(int n);

/**
 * Element sum c_k zeta_n^k of Z[zeta_n], stored redundantly modulo x^n - 1.
 * Comparisons reduce modulo Phi_n first.
 */
class CyclotomicInt {
public:
    explicit CyclotomicInt(int n = 1);
    static CyclotomicInt constant(int n, long long v);
    static CyclotomicInt zeta_power(int n, long long k);

    int n() const { return n_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    mpz_class& operator[](int k) { return c_[k]; }
    const mpz_class& operator[](int k) const { return c_[k]; }

    CyclotomicInt operator+(const CyclotomicInt& o) const;
    CyclotomicInt operator-(const CyclotomicInt& o) const;
    CyclotomicInt operator*(const CyclotomicInt& o) const;
    CyclotomicInt operator*(long long k) const;
    CyclotomicInt& operator+=(const CyclotomicInt& o);
    CyclotomicInt conj() const;
    /// Same value viewed in Z[zeta_m] for a multiple m of n.
    CyclotomicInt lift(int m) const;

    /// Coefficients of the canonical residue modulo Phi_n (length phi(n)).
    std::vector<mpz_class> reduced() const;
    bool is_zero() const;
    bool operator==(const CyclotomicInt& o) const;

    /// Numeric value under zeta_n = exp(2 pi i / n) and a rigorous bound on the rounding error.
    std::complex<long double> embed(long double* error_bound = nullptr) const;
    std::string debug_string() const;

private:
    int n_;
    std::vector<mpz_class> c_;
};

CyclotomicInt norm_sq(const CyclotomicInt& a);
/// The rational integer a equals, if any.
std::optional<mpz_class> as_integer(const CyclotomicInt& a);

/**
 * Fast path: sum_k h[k] zeta_n^k with machine-word coefficients. Returns the integer value,
 * std::nullopt when the sum is not rational. Falls back to GMP on overflow.
 */
std::optional<long long> exponent_sum_integer(const std::vector<long long>& h, int n);

}  // namespace fdual
