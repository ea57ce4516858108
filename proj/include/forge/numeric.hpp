// SPDX-License-Identifier: Apache-2.0
//
// Arbitrary-precision integer/rational helpers and elementary number
// theory used across the library: gcd/phi/squarefree, factorization,
// probabilistic primality, modular square roots.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace forge {

using Int = mpz_class;
using Rat = mpq_class;

// ---------------------------------------------------------------------------
// Rational parsing / formatting ("num/den", den omitted when 1)
// ---------------------------------------------------------------------------

inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + s);
    r.canonicalize();
    if (sgn(r.get_den()) <= 0)
        throw std::invalid_argument("non-positive denominator: " + s);
    return r;
}

inline std::string format_rat(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// ---------------------------------------------------------------------------
// Small-integer number theory (word-sized arguments)
// ---------------------------------------------------------------------------

inline std::vector<std::pair<unsigned long, unsigned>> factor_small(unsigned long n) {
    if (n == 0) throw std::invalid_argument("factor_small(0)");
    std::vector<std::pair<unsigned long, unsigned>> out;
    for (unsigned long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline unsigned long euler_phi(unsigned long n) {
    if (n == 0) throw std::invalid_argument("euler_phi(0)");
    unsigned long phi = n;
    for (auto [p, e] : factor_small(n)) phi -= phi / p;
    return phi;
}

inline bool is_squarefree(unsigned long n) {
    if (n == 0) return false;
    for (auto [p, e] : factor_small(n))
        if (e > 1) return false;
    return true;
}

inline bool is_prime_small(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline std::vector<unsigned long> primes_up_to(unsigned long n) {
    std::vector<bool> sieve(n + 1, true);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (unsigned long j = i * i; j <= n; j += i) sieve[j] = false;
    }
    return out;
}

// Largest s with s^2 | n; n = square * s^2 with square squarefree.
inline std::pair<unsigned long, unsigned long> squarefree_split(unsigned long n) {
    unsigned long core = 1, sq = 1;
    for (auto [p, e] : factor_small(n)) {
        for (unsigned i = 0; i + 1 < e; i += 2) sq *= p;
        if (e % 2) core *= p;
    }
    return {core, sq};
}

// ---------------------------------------------------------------------------
// Primality (Miller-Rabin): deterministic witness set below 3.3e14,
// otherwise `rounds` random witnesses from a caller-seeded state.
// ---------------------------------------------------------------------------

namespace detail {

inline bool miller_rabin_witness(const Int& n, const Int& a) {
    // returns true if a proves n composite
    Int nm1 = n - 1;
    unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
    Int d = nm1 >> s;
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == nm1) return false;
    }
    return true;
}

} // namespace detail

inline bool is_probable_prime(const Int& n, gmp_randclass& rng, int rounds = 64) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    static const Int kDeterministicBound("330000000000000");
    if (n < kDeterministicBound) {
        for (int a : {2, 3, 5, 7, 11, 13, 17})
            if (detail::miller_rabin_witness(n, a)) return false;
        return true;
    }
    for (int i = 0; i < rounds; ++i) {
        Int a = rng.get_z_range(n - 3) + 2;
        if (detail::miller_rabin_witness(n, a)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Integer factorization: trial division plus Pollard rho (Brent cycle).
// ---------------------------------------------------------------------------

namespace detail {

inline Int pollard_rho(const Int& n, gmp_randclass& rng) {
    if (n % 2 == 0) return 2;
    while (true) {
        Int x = rng.get_z_range(n - 2) + 2, y = x, c = rng.get_z_range(n - 1) + 1, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

inline void factor_rec(const Int& n, gmp_randclass& rng, std::map<Int, unsigned>& out) {
    if (n == 1) return;
    if (is_probable_prime(n, rng)) {
        ++out[n];
        return;
    }
    Int d = pollard_rho(n, rng);
    factor_rec(d, rng, out);
    factor_rec(n / d, rng, out);
}

} // namespace detail

inline std::map<Int, unsigned> factor_int(Int n, gmp_randclass& rng) {
    if (n <= 0) throw std::invalid_argument("factor_int: positive argument required");
    std::map<Int, unsigned> out;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
        while (n % p == 0) { ++out[Int(p)]; n /= p; }
    }
    unsigned long p = 17;
    while (p < 100000 && Int(p) * p <= n) {
        while (n % p == 0) { ++out[Int(p)]; n /= p; }
        p += 2;
    }
    detail::factor_rec(n, rng, out);
    return out;
}

// ---------------------------------------------------------------------------
// Modular arithmetic over prime fields
// ---------------------------------------------------------------------------

// Euler criterion a^((p-1)/2) mod p; p an odd prime.
inline int legendre_symbol(const Int& a, const Int& p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("legendre: p must be an odd prime");
    Int r = a % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    Int e = (p - 1) / 2, x;
    mpz_powm(x.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return x == 1 ? 1 : -1;
}

// Tonelli-Shanks; requires legendre_symbol(a, p) == 1.
inline Int sqrt_mod(const Int& a, const Int& p) {
    Int n = a % p;
    if (n < 0) n += p;
    if (n == 0) return 0;
    if (p % 4 == 3) {
        Int e = (p + 1) / 4, x;
        mpz_powm(x.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return x;
    }
    unsigned long s = mpz_scan1(Int(p - 1).get_mpz_t(), 0);
    Int q = (p - 1) >> s;
    Int z = 2;
    while (legendre_symbol(z, p) != -1) ++z;
    Int c, x, t, e = (q + 1) / 2;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(x.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    unsigned long m = s;
    while (t != 1) {
        Int tt = t;
        unsigned long i = 0;
        while (tt != 1) { tt = (tt * tt) % p; ++i; }
        Int b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = (b * b) % p;
        x = (x * b) % p;
        c = (b * b) % p;
        t = (t * c) % p;
        m = i;
    }
    return x;
}

inline Int mod_inverse(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("mod_inverse: not invertible");
    return r;
}

// Exact integer nth root when it exists.
inline std::optional<Int> exact_nth_root(const Int& a, unsigned n) {
    if (n == 0) throw std::invalid_argument("exact_nth_root: n >= 1");
    if (a < 0 && n % 2 == 0) return std::nullopt;
    Int r;
    bool exact = mpz_root(r.get_mpz_t(), a.get_mpz_t(), n) != 0;
    return exact ? std::optional<Int>(r) : std::nullopt;
}

inline std::optional<Rat> exact_nth_root(const Rat& a, unsigned n) {
    auto num = exact_nth_root(Int(a.get_num()), n);
    auto den = exact_nth_root(Int(a.get_den()), n);
    if (!num || !den) return std::nullopt;
    return Rat(*num, *den);
}

} // namespace forge
