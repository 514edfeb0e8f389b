#include "fdual/algebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "fdual/numtheory.hpp"

namespace fdual {

namespace {

using Poly = std::vector<long long>;  // over Z_p, constant first, trimmed

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmod(Poly a, const Poly& b, long long p) {
    trim(a);
    long long inv = nt::inverse_mod(b.back(), p);
    int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        long long c = a.back() * inv % p;
        int shift = static_cast<int>(a.size()) - 1 - db;
        for (int j = 0; j <= db; ++j) a[shift + j] = nt::mod(a[shift + j] - c * b[j], p);
        trim(a);
    }
    return a;
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, long long p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return pmod(r, f, p);
}

Poly pgcd(Poly a, Poly b, long long p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

bool is_irreducible_mod_p(const IntPoly& f0, int p) {
    Poly f(f0.begin(), f0.end());
    for (auto& c : f) c = nt::mod(c, p);
    trim(f);
    int m = static_cast<int>(f.size()) - 1;
    if (m < 1) return false;
    if (m == 1) return true;
    // no factor of degree k <= m/2  <=>  gcd(x^{p^k} - x, f) = 1 for all such k
    Poly xp = {0, 1};
    for (int k = 1; k <= m / 2; ++k) {
        Poly acc = {1};
        Poly base = xp;
        for (long long e = p; e > 0; e >>= 1) {
            if (e & 1) acc = pmulmod(acc, base, f, p);
            base = pmulmod(base, base, f, p);
        }
        xp = acc;  // x^{p^k} mod f
        Poly h = xp;
        if (h.size() < 2) h.resize(2, 0);
        h[1] = nt::mod(h[1] - 1, p);
        trim(h);
        Poly g = pgcd(f, h, p);
        if (g.size() > 1) return false;
    }
    return true;
}

IntPoly find_irreducible(int p, int m) {
    if (!nt::is_prime(p) || m < 1) throw std::invalid_argument("find_irreducible: need prime p and m >= 1");
    long long count = nt::ipow(p, m);
    for (long long v = 0; v < count; ++v) {
        IntPoly f(m + 1, 0);
        long long x = v;
        for (int i = 0; i < m; ++i) {
            f[i] = x % p;
            x /= p;
        }
        f[m] = 1;
        if (is_irreducible_mod_p(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

// ---------------------------------------------------------------------------

GaloisRing::GaloisRing(int p, int t, int s, IntPoly modulus) : p_(p), t_(t), s_(s) {
    if (!nt::is_prime(p) || t < 1 || s < 1) throw std::invalid_argument("GaloisRing: need prime p, t >= 1, s >= 1");
    q_ = nt::ipow(p, t);
    long long sz = nt::ipow(q_, s);
    if (sz > (1LL << 26)) throw std::invalid_argument("GaloisRing too large");
    size_ = static_cast<Elem>(sz);
    f_ = modulus.empty() ? find_irreducible(p, s) : modulus;
    if (static_cast<int>(f_.size()) != s + 1 || nt::mod(f_.back(), q_) != 1)
        throw std::invalid_argument("GaloisRing: modulus must be monic of degree s");
    for (auto& c : f_) c = nt::mod(c, q_);
    if (!is_irreducible_mod_p(f_, p)) throw std::invalid_argument("GaloisRing: modulus not irreducible mod p");

    // Teichmuller representatives: iterate a -> a^{p^s} from the lift of each residue.
    long long ps = nt::ipow(p, s);
    teich_by_residue_.resize(ps);
    for (long long r = 0; r < ps; ++r) {
        Element a(s, 0);
        long long x = r;
        for (int i = s - 1; i >= 0; --i) {
            a[i] = x % p;
            x /= p;
        }
        int steps = 0;
        while (true) {
            Element b = pow(a, static_cast<unsigned long long>(ps));
            if (b == a) break;
            a = std::move(b);
            if (++steps > t * s + 4) throw std::logic_error("Teichmuller iteration did not stabilize");
        }
        teich_by_residue_[r] = index(a);
    }
    teich_sorted_.assign(teich_by_residue_.begin(), teich_by_residue_.end());
    std::sort(teich_sorted_.begin(), teich_sorted_.end());
}

GaloisRing::Element GaloisRing::element(Elem idx) const {
    Element a(s_);
    for (int i = s_ - 1; i >= 0; --i) {
        a[i] = idx % q_;
        idx /= static_cast<Elem>(q_);
    }
    return a;
}

Elem GaloisRing::index(const Element& a) const {
    long long r = 0;
    for (int i = 0; i < s_; ++i) r = r * q_ + nt::mod(a[i], q_);
    return static_cast<Elem>(r);
}

GaloisRing::Element GaloisRing::from_int(long long v) const {
    Element a(s_, 0);
    a[0] = nt::mod(v, q_);
    return a;
}

GaloisRing::Element GaloisRing::xbar() const {
    if (s_ < 2) throw std::logic_error("xbar needs s >= 2");
    Element a(s_, 0);
    a[1] = 1;
    return a;
}

GaloisRing::Element GaloisRing::add(const Element& a, const Element& b) const {
    Element r(s_);
    for (int i = 0; i < s_; ++i) r[i] = (a[i] + b[i]) % q_;
    return r;
}

GaloisRing::Element GaloisRing::sub(const Element& a, const Element& b) const {
    Element r(s_);
    for (int i = 0; i < s_; ++i) r[i] = nt::mod(a[i] - b[i], q_);
    return r;
}

GaloisRing::Element GaloisRing::neg(const Element& a) const {
    Element r(s_);
    for (int i = 0; i < s_; ++i) r[i] = nt::mod(-a[i], q_);
    return r;
}

GaloisRing::Element GaloisRing::scale(long long k, const Element& a) const {
    Element r(s_);
    long long km = nt::mod(k, q_);
    for (int i = 0; i < s_; ++i) r[i] = static_cast<long long>(static_cast<__int128>(km) * a[i] % q_);
    return r;
}

GaloisRing::Element GaloisRing::mul(const Element& a, const Element& b) const {
    std::vector<__int128> r(2 * s_ - 1, 0);
    for (int i = 0; i < s_; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < s_; ++j) r[i + j] = (r[i + j] + static_cast<__int128>(a[i]) * b[j]) % q_;
    }
    // reduce by the monic modulus
    for (int k = 2 * s_ - 2; k >= s_; --k) {
        __int128 c = r[k] % q_;
        if (!c) continue;
        for (int j = 0; j <= s_; ++j) r[k - s_ + j] = (r[k - s_ + j] - c * f_[j]) % q_;
    }
    Element out(s_);
    for (int i = 0; i < s_; ++i) out[i] = nt::mod(static_cast<long long>(r[i] % q_), q_);
    return out;
}

GaloisRing::Element GaloisRing::pow(Element a, unsigned long long e) const {
    Element r = one();
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

GaloisRing::Element GaloisRing::inverse(const Element& a) const {
    if (valuation(a) != 0) throw std::domain_error("inverse of a non-unit");
    unsigned long long units = static_cast<unsigned long long>(nt::ipow(p_, (t_ - 1) * s_)) *
                               static_cast<unsigned long long>(nt::ipow(p_, s_) - 1);
    return pow(a, units - 1);
}

int GaloisRing::valuation(const Element& a) const {
    int v = t_;
    for (long long c : a)
        if (c) v = std::min(v, nt::vp(c, p_));
    return v;
}

GaloisRing::Element GaloisRing::teichmuller_of(const Element& a) const {
    long long r = 0;
    for (int i = 0; i < s_; ++i) r = r * p_ + nt::mod(a[i], p_);
    return element(teich_by_residue_[r]);
}

std::vector<GaloisRing::Element> GaloisRing::digits(const Element& a) const {
    std::vector<Element> out;
    Element r = a;
    for (int i = 0; i < t_; ++i) {
        Element x = teichmuller_of(r);
        out.push_back(x);
        Element d = sub(r, x);
        for (auto& c : d) c /= p_;  // every coefficient is divisible by p here
        r = d;
    }
    return out;
}

GaloisRing::Element GaloisRing::frobenius(const Element& a) const {
    auto xs = digits(a);
    Element r = zero();
    long long pi = 1;
    for (int i = 0; i < t_; ++i) {
        r = add(r, scale(pi, pow(xs[i], static_cast<unsigned long long>(p_))));
        pi *= p_;
    }
    return r;
}

long long GaloisRing::trace(const Element& a) const {
    Element acc = zero(), cur = a;
    for (int i = 0; i < s_; ++i) {
        acc = add(acc, cur);
        cur = frobenius(cur);
    }
    for (int i = 1; i < s_; ++i)
        if (acc[i] != 0) throw std::logic_error("trace left the base ring");
    return acc[0];
}

GroupSpec GaloisRing::additive_group() const {
    if (q_ == 1) return GroupSpec();
    return GroupSpec(std::vector<int>(s_, static_cast<int>(q_)));
}

// ---------------------------------------------------------------------------

ElementSet quadratic_residues(const GaloisRing& F) {
    if (!F.is_field() || F.p() == 2) throw std::invalid_argument("quadratic residues need a field of odd order");
    ElementSet out;
    for (Elem i = 1; i < F.size(); ++i) {
        auto x = F.element(i);
        out.push_back(F.index(F.mul(x, x)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_planar(const GaloisRing& F, const std::vector<Elem>& f) {
    if (f.size() != F.size()) throw std::invalid_argument("planar table has the wrong length");
    std::vector<char> hit(F.size());
    for (Elem a = 1; a < F.size(); ++a) {
        std::fill(hit.begin(), hit.end(), 0);
        auto ea = F.element(a);
        for (Elem x = 0; x < F.size(); ++x) {
            auto ex = F.element(x);
            Elem ax = F.index(F.add(ea, ex));
            Elem d = F.index(F.sub(F.element(f[ax]), F.element(f[x])));
            if (hit[d]) return false;
            hit[d] = 1;
        }
    }
    return true;
}

std::vector<Elem> squaring_map(const GaloisRing& F) {
    std::vector<Elem> f(F.size());
    for (Elem x = 0; x < F.size(); ++x) {
        auto e = F.element(x);
        f[x] = F.index(F.mul(e, e));
    }
    return f;
}

}  // namespace fdual
