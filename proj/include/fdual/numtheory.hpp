#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace fdual::nt {

inline long long gcd(long long a, long long b) { return std::gcd(a, b); }
inline long long lcm(long long a, long long b) { return std::lcm(a, b); }

bool is_prime(long long n);
/// prime -> multiplicity
std::map<long long, int> factorize(long long n);
std::vector<long long> divisors(long long n);
long long euler_phi(long long n);
long long ipow(long long b, int e);
/// p-adic valuation of n (n != 0).
int vp(long long n, long long p);
long long powmod(long long b, long long e, long long m);
/// True iff a generates the unit group mod m (m with a cyclic unit group).
bool is_primitive_root(long long a, long long m);
bool is_square_free(long long n);
/// If n = p^k for a prime p, returns {p, k}; otherwise {0, 0}.
std::pair<long long, int> prime_power(long long n);
long long mod(long long a, long long m);
long long inverse_mod(long long a, long long m);

}  // namespace fdual::nt
