#include "fdual/cyclotomic.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fdual/numtheory.hpp"

namespace fdual {

namespace {

std::mutex phi_mutex;
std::map<int, std::unique_ptr<IntPoly>> phi_cache;

// Exact division of a monic-divisor polynomial; throws on a nonzero remainder.
std::vector<mpz_class> divide_exact(std::vector<mpz_class> num, const IntPoly& den) {
    int dn = static_cast<int>(den.size()) - 1;
    int nn = static_cast<int>(num.size()) - 1;
    std::vector<mpz_class> q(nn - dn + 1);
    for (int k = nn; k >= dn; --k) {
        mpz_class lead = num[k];
        q[k - dn] = lead;
        if (lead == 0) continue;
        for (int j = 0; j <= dn; ++j) num[k - dn + j] -= lead * static_cast<long>(den[j]);
    }
    for (int k = 0; k < dn; ++k)
        if (num[k] != 0) throw std::logic_error("cyclotomic division left a remainder");
    return q;
}

IntPoly compute_phi(int n) {
    std::vector<mpz_class> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (long long d : nt::divisors(n)) {
        if (d == n) continue;
        num = divide_exact(num, cyclotomic_polynomial(static_cast<int>(d)));
    }
    IntPoly out;
    for (auto& c : num) {
        if (!c.fits_slong_p()) throw std::overflow_error("cyclotomic coefficient too large");
        out.push_back(c.get_si());
    }
    return out;
}

}  // namespace

const IntPoly& cyclotomic_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
    {
        std::lock_guard<std::mutex> lock(phi_mutex);
        auto it = phi_cache.find(n);
        if (it != phi_cache.end()) return *it->second;
    }
    IntPoly p = compute_phi(n);  // recursion takes the lock itself
    std::lock_guard<std::mutex> lock(phi_mutex);
    auto& slot = phi_cache[n];
    if (!slot) slot = std::make_unique<IntPoly>(std::move(p));
    return *slot;
}

CyclotomicInt::CyclotomicInt(int n) : n_(n), c_(n, 0) {
    if (n < 1) throw std::invalid_argument("CyclotomicInt: n must be positive");
}

CyclotomicInt CyclotomicInt::constant(int n, long long v) {
    CyclotomicInt r(n);
    r.c_[0] = static_cast<long>(v);
    return r;
}

CyclotomicInt CyclotomicInt::zeta_power(int n, long long k) {
    CyclotomicInt r(n);
    r.c_[nt::mod(k, n)] = 1;
    return r;
}

CyclotomicInt CyclotomicInt::operator+(const CyclotomicInt& o) const {
    CyclotomicInt r = *this;
    r += o;
    return r;
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
    if (o.n_ != n_) throw std::invalid_argument("CyclotomicInt: mismatched orders");
    for (int k = 0; k < n_; ++k) c_[k] += o.c_[k];
    return *this;
}

CyclotomicInt CyclotomicInt::operator-(const CyclotomicInt& o) const {
    if (o.n_ != n_) throw std::invalid_argument("CyclotomicInt: mismatched orders");
    CyclotomicInt r = *this;
    for (int k = 0; k < n_; ++k) r.c_[k] -= o.c_[k];
    return r;
}

CyclotomicInt CyclotomicInt::operator*(const CyclotomicInt& o) const {
    if (o.n_ != n_) throw std::invalid_argument("CyclotomicInt: mismatched orders");
    CyclotomicInt r(n_);
    for (int i = 0; i < n_; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < n_; ++j) {
            if (o.c_[j] == 0) continue;
            int k = i + j;
            if (k >= n_) k -= n_;
            r.c_[k] += c_[i] * o.c_[j];
        }
    }
    return r;
}

CyclotomicInt CyclotomicInt::operator*(long long k) const {
    CyclotomicInt r = *this;
    for (auto& c : r.c_) c *= static_cast<long>(k);
    return r;
}

CyclotomicInt CyclotomicInt::conj() const {
    CyclotomicInt r(n_);
    for (int k = 0; k < n_; ++k) r.c_[k == 0 ? 0 : n_ - k] = c_[k];
    return r;
}

CyclotomicInt CyclotomicInt::lift(int m) const {
    if (m % n_ != 0) throw std::invalid_argument("lift: target order must be a multiple");
    CyclotomicInt r(m);
    int f = m / n_;
    for (int k = 0; k < n_; ++k) r.c_[k * f] = c_[k];
    return r;
}

std::vector<mpz_class> CyclotomicInt::reduced() const {
    const IntPoly& phi = cyclotomic_polynomial(n_);
    int d = static_cast<int>(phi.size()) - 1;
    std::vector<mpz_class> a = c_;
    for (int k = n_ - 1; k >= d; --k) {
        if (a[k] == 0) continue;
        mpz_class lead = a[k];
        for (int j = 0; j <= d; ++j)
            if (phi[j]) a[k - d + j] -= lead * static_cast<long>(phi[j]);
    }
    a.resize(d);
    return a;
}

bool CyclotomicInt::is_zero() const {
    for (auto& c : reduced())
        if (c != 0) return false;
    return true;
}

bool CyclotomicInt::operator==(const CyclotomicInt& o) const {
    if (o.n_ != n_) {
        int m = static_cast<int>(nt::lcm(n_, o.n_));
        return lift(m) == o.lift(m);
    }
    return (*this - o).is_zero();
}

std::complex<long double> CyclotomicInt::embed(long double* error_bound) const {
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    std::complex<long double> z = 0;
    long double mass = 0;
    for (int k = 0; k < n_; ++k) {
        if (c_[k] == 0) continue;
        long double c = c_[k].get_d();
        long double ang = two_pi * k / n_;
        z += c * std::complex<long double>(std::cos(ang), std::sin(ang));
        mass += std::fabs(c);
    }
    if (error_bound) {
        // per-term error of cos/sin plus accumulation, with a generous safety factor
        long double eps = std::numeric_limits<long double>::epsilon();
        *error_bound = 64.0L * (n_ + 4) * eps * (mass + 1);
    }
    return z;
}

std::string CyclotomicInt::debug_string() const {
    std::ostringstream os;
    os << "[";
    for (int k = 0; k < n_; ++k) os << (k ? "," : "") << c_[k].get_str();
    os << "]";
    return os.str();
}

CyclotomicInt norm_sq(const CyclotomicInt& a) { return a * a.conj(); }

std::optional<mpz_class> as_integer(const CyclotomicInt& a) {
    auto r = a.reduced();
    for (std::size_t k = 1; k < r.size(); ++k)
        if (r[k] != 0) return std::nullopt;
    return r.empty() ? mpz_class(0) : r[0];
}

std::optional<long long> exponent_sum_integer(const std::vector<long long>& h, int n) {
    const IntPoly& phi = cyclotomic_polynomial(n);
    int d = static_cast<int>(phi.size()) - 1;
    std::vector<long long> a(h.begin(), h.end());
    bool overflow = false;
    for (int k = n - 1; k >= d && !overflow; --k) {
        long long lead = a[k];
        if (lead == 0) continue;
        for (int j = 0; j <= d; ++j) {
            if (!phi[j]) continue;
            long long prod;
            if (__builtin_mul_overflow(lead, phi[j], &prod) || __builtin_sub_overflow(a[k - d + j], prod, &a[k - d + j])) {
                overflow = true;
                break;
            }
        }
    }
    if (overflow) {
        CyclotomicInt c(n);
        for (int k = 0; k < n; ++k) c[k] = static_cast<long>(h[k]);
        auto v = as_integer(c);
        if (!v) return std::nullopt;
        if (!v->fits_slong_p()) throw std::overflow_error("character value exceeds machine range");
        return v->get_si();
    }
    for (int k = 1; k < d; ++k)
        if (a[k] != 0) return std::nullopt;
    return d == 0 ? 0 : a[0];
}

}  // namespace fdual
