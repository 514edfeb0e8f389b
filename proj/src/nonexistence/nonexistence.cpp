#include "fdual/nonexistence.hpp"

#include <algorithm>
#include <sstream>

#include "fdual/numtheory.hpp"
#include "fdual/parallel.hpp"

namespace fdual {

using nt::gcd;

long long PairParams::a_S() const { return ssize * ssize / gcd(ssize * ssize, tsize); }
long long PairParams::a_T() const { return tsize * tsize / gcd(tsize * tsize, ssize); }
long long PairParams::b_S() const { return ssize / gcd(ssize, tsize * tsize); }
long long PairParams::b_T() const { return tsize / gcd(tsize, ssize * ssize); }

namespace {

FilterVerdict kill(const char* tag, const std::string& why) { return FilterVerdict{true, tag, why}; }
FilterVerdict pass() { return FilterVerdict{}; }

std::string str(long long v) { return std::to_string(v); }

// One side of the pair: X is the set whose characters are bounded, Y its partner.
struct Side {
    char name, partner;
    long long x, y, a_x, b_x, b_y;
};

std::vector<Side> sides(const PairParams& P) {
    return {{'S', 'T', P.ssize, P.tsize, P.a_S(), P.b_S(), P.b_T()},
            {'T', 'S', P.tsize, P.ssize, P.a_T(), P.b_T(), P.b_S()}};
}

// nu_Y(y) for y of order p: a multiple of b_Y in [0, |Y|) with x^2 (|Y| - nu) / (p |Y|) a positive integer.
std::vector<long long> weight_feasible(const Side& s, long long p) {
    std::vector<long long> out;
    for (long long nu = 0; nu < s.y; nu += s.b_y) {
        long long num = s.x * s.x * (s.y - nu);
        long long den = p * s.y;
        if (num % den == 0 && num / den > 0) out.push_back(nu);
    }
    return out;
}

}  // namespace

bool self_conjugate(long long p, long long n) {
    while (n % p == 0) n /= p;
    if (n == 1) return true;
    long long x = 1;
    for (long long j = 0; j <= n; ++j) {
        if (x == n - 1) return true;
        x = x * p % n;
    }
    return false;
}

std::vector<FilterVerdict> basic_filter_pipeline(const PairParams& P) {
    std::vector<FilterVerdict> out;
    const GroupSpec& G = P.group;
    const long long N = G.order();
    const long long s = P.ssize, t = P.tsize;
    if (s < 1 || t < 1) {
        out.push_back(kill(rule::size_product, "set sizes must be positive"));
        return out;
    }
    if (s * t != N) out.push_back(kill(rule::size_product, str(s) + " * " + str(t) + " != |G| = " + str(N)));
    if (N > 1 && gcd(s, t) == 1) out.push_back(kill(rule::common_factor, "gcd(|S|, |T|) = 1"));
    else if (N > 1 && nt::is_square_free(N)) out.push_back(kill(rule::common_factor, "|G| is square-free"));

    if (N > 1) {
        int gens = G.min_generators();
        for (auto& sd : sides(P)) {
            if (sd.x < gens + 1) {
                out.push_back(kill(rule::generators, std::string("|") + sd.name + "| = " + str(sd.x) + " < " +
                                                         str(gens + 1) + " = generators + 1"));
                break;
            }
        }
    }

    for (auto& [p, exps] : G.primary_parts()) {
        int e = exps.back();
        long long need = nt::ipow(p, e - 1) * (p - 1);
        for (auto& sd : sides(P)) {
            if (sd.x * sd.x - sd.x < need) {
                out.push_back(kill(rule::exponent_bound, std::string("|") + sd.name + "|^2 - |" + sd.name + "| = " +
                                                             str(sd.x * sd.x - sd.x) + " < " + str(need) +
                                                             " for exp(G_" + str(p) + ") = " + str(nt::ipow(p, e))));
                break;
            }
        }
    }

    bool is_z4 = G.invariant_factors() == std::vector<int>{4};
    for (auto& sd : sides(P)) {
        if (sd.x == 2 && !is_z4) {
            out.push_back(kill(rule::size_two, std::string("|") + sd.name + "| = 2 outside Z_4"));
            break;
        }
    }
    auto parts = G.primary_parts();
    for (auto& sd : sides(P)) {
        if (sd.x > 2 && nt::is_prime(sd.x)) {
            auto it = parts.find(static_cast<int>(sd.x));
            bool ok = it != parts.end() && it->second.size() >= 2 && it->second.back() == 1;
            if (!ok) {
                out.push_back(kill(rule::prime_size, std::string("|") + sd.name + "| = " + str(sd.x) +
                                                         " needs an elementary abelian Sylow subgroup of rank >= 2"));
                break;
            }
        }
    }

    if (G.invariant_factors().size() == 1) {
        auto f = nt::factorize(N);
        if (f.size() == 1 && !is_z4) {  // Z_4 carries the two-element configuration
            out.push_back(kill(rule::cyclic_prime_power, "cyclic group of prime power order"));
        } else if (f.size() == 2) {
            int a = f.begin()->second, b = std::next(f.begin())->second;
            if (a == 1 || b == 1) out.push_back(kill(rule::cyclic_pq, "cyclic of order p^a q"));
            if (a == 2 && b == 2) out.push_back(kill(rule::cyclic_p2q2, "cyclic of order p^2 q^2"));
            if ((b == 2 && a % 2 == 1) || (a == 2 && b % 2 == 1))
                out.push_back(kill(rule::cyclic_paq2, "cyclic of order p^a q^2 with a odd"));
        }
    }
    return out;
}

FilterVerdict thm_order_filter(const PairParams& P) {
    for (auto& [p, exps] : P.group.primary_parts()) {
        if (exps.size() != 1) continue;
        for (auto& sd : sides(P)) {
            int r = nt::vp(sd.a_x, p);
            if (r < 1) continue;
            long long pr = nt::ipow(p, r);
            long long lhs = sd.x / pr;
            long long rhs = sd.b_x / gcd(sd.b_x, pr);
            if (lhs < rhs) {
                return kill(rule::order_floor, "p = " + str(p) + ": floor(|" + sd.name + "| / " + str(pr) + ") = " +
                                                   str(lhs) + " < " + str(rhs));
            }
        }
    }
    return pass();
}

FilterVerdict thm_weight_filter(const PairParams& P) {
    const long long s = P.ssize, t = P.tsize;
    for (auto& [p, e] : nt::factorize(P.group.order())) {
        (void)e;
        if (s % p != 0 && gcd(s * s, t) <= p)
            return kill(rule::weight, "p = " + str(p) + " does not divide |S| and gcd(|S|^2, |T|) = " +
                                          str(gcd(s * s, t)) + " <= " + str(p));
        if (t % p != 0 && gcd(t * t, s) <= p)
            return kill(rule::weight, "p = " + str(p) + " does not divide |T| and gcd(|T|^2, |S|) = " +
                                          str(gcd(t * t, s)) + " <= " + str(p));
        for (auto& sd : sides(P)) {
            if (weight_feasible(sd, p).empty())
                return kill(rule::weight, std::string("p = ") + str(p) + ": no admissible nu_" + sd.partner +
                                              " on elements of order p");
        }
    }
    return pass();
}

FilterVerdict char_div_filter(const PairParams& P) {
    for (auto& [p, e] : nt::factorize(P.group.order())) {
        (void)e;
        for (auto& sd : sides(P)) {
            auto qs = nt::factorize(sd.a_x);
            std::vector<long long> survivors;
            std::ostringstream why;
            for (long long nu : weight_feasible(sd, p)) {
                long long c = sd.x * sd.x * nu / sd.y;
                bool good = true;
                for (auto& [q, f] : qs) {
                    if (q == p || !nt::is_primitive_root(q, p) || f % 2 == 0) continue;
                    if (c % nt::ipow(q, f + 1) != 0) {
                        good = false;
                        why << " nu=" << nu << " gives |chi|^2=" << c << ", not divisible by " << q << "^" << f + 1
                            << ";";
                        break;
                    }
                }
                if (good) survivors.push_back(nu);
            }
            if (survivors.empty()) {
                return kill(rule::char_div, std::string("characters of order ") + str(p) + " on " + sd.name + ":" +
                                                why.str() + " no value survives");
            }
        }
    }
    return pass();
}

FilterVerdict generator_mass_filter(const PairParams& P) {
    const GroupSpec& G = P.group;
    if (G.invariant_factors().size() != 1) return pass();
    const long long N = G.order();
    if (nt::factorize(N).size() != 2) return pass();
    const long long phi = nt::euler_phi(N);
    for (auto& sd : sides(P)) {
        if (phi * sd.b_x > sd.x * sd.x - sd.x)
            return kill(rule::generator_mass, std::string("phi(N) b_") + sd.name + " = " + str(phi * sd.b_x) + " > |" +
                                                  sd.name + "|^2 - |" + sd.name + "| = " + str(sd.x * sd.x - sd.x));
    }
    return pass();
}

FilterVerdict selfconj_filter(const PairParams& P) {
    const GroupSpec& G = P.group;
    for (auto& [p, exps] : G.primary_parts()) {
        if (exps.size() != 1) continue;
        if (!self_conjugate(p, G.exponent())) continue;
        int l1 = nt::vp(P.ssize, p), l2 = nt::vp(P.tsize, p);
        if (!(l1 == 1 && l2 == 1))
            return kill(rule::self_conjugate, "p = " + str(p) + " is self-conjugate mod " + str(G.exponent()) +
                                                  " with cyclic Sylow subgroup, v_p(|S|) = " + str(l1) +
                                                  ", v_p(|T|) = " + str(l2));
    }
    return pass();
}

std::vector<FilterVerdict> all_filters(const PairParams& P) {
    std::vector<FilterVerdict> out = basic_filter_pipeline(P);
    if (P.ssize < 1 || P.tsize < 1) return out;
    for (auto* f : {thm_order_filter, thm_weight_filter, char_div_filter, generator_mass_filter, selfconj_filter}) {
        FilterVerdict v = f(P);
        if (v.ruled_out) out.push_back(std::move(v));
    }
    return out;
}

std::vector<CyclicCase> scan_cyclic_report(long long n_max, unsigned threads) {
    std::vector<std::vector<CyclicCase>> per(n_max + 1);
    parallel_for(static_cast<std::size_t>(std::max<long long>(n_max - 1, 0)), threads, [&](std::size_t i) {
        long long N = static_cast<long long>(i) + 2;
        if (nt::is_square_free(N)) return;
        GroupSpec G({static_cast<int>(N)});
        for (long long s : nt::divisors(N)) {
            long long t = N / s;
            if (s > t) break;
            CyclicCase c{N, s, t, all_filters(PairParams{G, s, t}), N == 4 && s == 2};
            per[N].push_back(std::move(c));
        }
    });
    std::vector<CyclicCase> out;
    for (auto& v : per)
        for (auto& c : v) out.push_back(std::move(c));
    return out;
}

std::vector<CyclicCase> scan_cyclic(long long n_max, unsigned threads) {
    std::vector<CyclicCase> out;
    for (auto& c : scan_cyclic_report(n_max, threads))
        if (c.kills.empty() && !c.known) out.push_back(std::move(c));
    return out;
}

}  // namespace fdual
