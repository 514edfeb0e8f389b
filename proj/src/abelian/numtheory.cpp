#include "fdual/numtheory.hpp"

#include <stdexcept>
#include <tuple>

namespace fdual::nt {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::map<long long, int> factorize(long long n) {
    std::map<long long, int> f;
    for (long long d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            ++f[d];
            n /= d;
        }
    if (n > 1) ++f[n];
    return f;
}

std::vector<long long> divisors(long long n) {
    std::vector<long long> lo, hi;
    for (long long d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d) hi.push_back(n / d);
        }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

long long euler_phi(long long n) {
    long long r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

int vp(long long n, long long p) {
    if (n == 0) throw std::invalid_argument("vp(0)");
    int c = 0;
    while (n % p == 0) {
        n /= p;
        ++c;
    }
    return c;
}

long long powmod(long long b, long long e, long long m) {
    if (m == 1) return 0;
    __int128 r = 1, x = mod(b, m);
    while (e > 0) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<long long>(r);
}

bool is_primitive_root(long long a, long long m) {
    if (m <= 2) return gcd(a, m) == 1;
    if (gcd(a, m) != 1) return false;
    long long ph = euler_phi(m);
    for (auto [r, e] : factorize(ph))
        if (powmod(a, ph / r, m) == 1) return false;
    // a has order phi(m); this only happens when the unit group is cyclic
    return true;
}

bool is_square_free(long long n) {
    for (auto [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

std::pair<long long, int> prime_power(long long n) {
    auto f = factorize(n);
    if (f.size() != 1) return {0, 0};
    return *f.begin();
}

long long mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

long long inverse_mod(long long a, long long m) {
    long long g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1 != 0) {
        long long q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw std::domain_error("not invertible");
    return mod(x, m);
}

}  // namespace fdual::nt
