// SPDX-License-Identifier: Apache-2.0
//
// Dense univariate polynomials over Q with exact arithmetic: ring ops,
// division with remainder, gcd, cyclotomic polynomials, power-subring
// tests, irreducibility over Q, perfect-power detection, exact square
// roots and integrality analysis.

#pragma once

#include "forge/numeric.hpp"

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <mutex>
#include <optional>
#include <sstream>
#include <utility>

namespace forge {

class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rat& c) { coef_.push_back(c); normalize(); }
    Polynomial(long c) : Polynomial(Rat(c)) {}
    explicit Polynomial(std::vector<Rat> coeffs) : coef_(std::move(coeffs)) { normalize(); }

    // ascending integer coefficients, e.g. of({1, 0, 6}) = 6x^2 + 1
    static Polynomial of(std::initializer_list<long> coeffs) {
        std::vector<Rat> c;
        for (long v : coeffs) c.emplace_back(v);
        return Polynomial(std::move(c));
    }

    static Polynomial x() { return Polynomial(std::vector<Rat>{Rat(0), Rat(1)}); }

    static Polynomial monomial(size_t deg, const Rat& c = Rat(1)) {
        if (c == 0) return Polynomial();
        std::vector<Rat> v(deg + 1, Rat(0));
        v[deg] = c;
        return Polynomial(std::move(v));
    }

    bool is_zero() const { return coef_.empty(); }

    // The zero polynomial has no degree; callers must branch on is_zero().
    int degree() const {
        if (is_zero()) throw std::domain_error("degree of the zero polynomial");
        return static_cast<int>(coef_.size()) - 1;
    }

    int degree_or(int zero_sentinel) const {
        return is_zero() ? zero_sentinel : degree();
    }

    Rat coeff(size_t i) const { return i < coef_.size() ? coef_[i] : Rat(0); }

    const Rat& leading() const {
        if (is_zero()) throw std::domain_error("leading coefficient of the zero polynomial");
        return coef_.back();
    }

    const std::vector<Rat>& coeffs() const { return coef_; }

    bool is_constant() const { return coef_.size() <= 1; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coef_ == b.coef_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Rat> c(std::max(a.coef_.size(), b.coef_.size()), Rat(0));
        for (size_t i = 0; i < a.coef_.size(); ++i) c[i] += a.coef_[i];
        for (size_t i = 0; i < b.coef_.size(); ++i) c[i] += b.coef_[i];
        return Polynomial(std::move(c));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<Rat> c(std::max(a.coef_.size(), b.coef_.size()), Rat(0));
        for (size_t i = 0; i < a.coef_.size(); ++i) c[i] += a.coef_[i];
        for (size_t i = 0; i < b.coef_.size(); ++i) c[i] -= b.coef_[i];
        return Polynomial(std::move(c));
    }

    friend Polynomial operator-(const Polynomial& a) {
        std::vector<Rat> c = a.coef_;
        for (auto& v : c) v = -v;
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<Rat> c(a.coef_.size() + b.coef_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.coef_.size(); ++i) {
            if (a.coef_[i] == 0) continue;
            for (size_t j = 0; j < b.coef_.size(); ++j) c[i + j] += a.coef_[i] * b.coef_[j];
        }
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(const Rat& s, const Polynomial& a) {
        if (s == 0) return Polynomial();
        std::vector<Rat> c = a.coef_;
        for (auto& v : c) v *= s;
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(const Polynomial& a, const Rat& s) { return s * a; }

    Polynomial pow(unsigned long e) const {
        Polynomial r(Rat(1)), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    Rat evaluate(const Rat& x0) const {
        Rat acc(0);
        for (size_t i = coef_.size(); i-- > 0;) acc = acc * x0 + coef_[i];
        return acc;
    }

    Polynomial derivative() const {
        if (coef_.size() <= 1) return Polynomial();
        std::vector<Rat> c(coef_.size() - 1);
        for (size_t i = 1; i < coef_.size(); ++i) c[i - 1] = Rat(static_cast<long>(i)) * coef_[i];
        return Polynomial(std::move(c));
    }

    // f(g(x)) by Horner
    Polynomial compose(const Polynomial& g) const {
        Polynomial acc;
        for (size_t i = coef_.size(); i-- > 0;) acc = acc * g + Polynomial(coef_[i]);
        return acc;
    }

    // f(x^a)
    Polynomial substitute_power(unsigned long a) const {
        if (a == 0) throw std::invalid_argument("substitute_power: a >= 1");
        if (a == 1 || is_zero()) return *this;
        std::vector<Rat> c((coef_.size() - 1) * a + 1, Rat(0));
        for (size_t i = 0; i < coef_.size(); ++i) c[i * a] = coef_[i];
        return Polynomial(std::move(c));
    }

    // true iff every nonzero coefficient sits at an index divisible by a
    bool is_in_power_subring(unsigned long a) const {
        if (a == 0) throw std::invalid_argument("is_in_power_subring: a >= 1");
        for (size_t i = 0; i < coef_.size(); ++i)
            if (coef_[i] != 0 && i % a != 0) return false;
        return true;
    }

    Polynomial monic() const {
        if (is_zero()) throw std::domain_error("monic of the zero polynomial");
        return (Rat(1) / leading()) * *this;
    }

    std::vector<std::string> to_strings() const {
        std::vector<std::string> out;
        out.reserve(coef_.size());
        for (const auto& c : coef_) out.push_back(format_rat(c));
        return out;
    }

    static Polynomial from_strings(const std::vector<std::string>& v) {
        std::vector<Rat> c;
        c.reserve(v.size());
        for (const auto& s : v) c.push_back(parse_rat(s));
        return Polynomial(std::move(c));
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t i = coef_.size(); i-- > 0;) {
            const Rat& c = coef_[i];
            if (c == 0) continue;
            if (!first) os << (sgn(c) > 0 ? " + " : " - ");
            else if (sgn(c) < 0) os << "-";
            Rat a = abs(c);
            bool unit = (a == 1) && i > 0;
            if (!unit) os << format_rat(a);
            if (i > 0) {
                if (!unit) os << "*";
                os << "x";
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        return os.str();
    }

private:
    void normalize() {
        while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
        for (auto& c : coef_) c.canonicalize();
    }

    std::vector<Rat> coef_; // ascending, no trailing zeros
};

// ---------------------------------------------------------------------------
// Division, gcd, extended gcd
// ---------------------------------------------------------------------------

inline std::pair<Polynomial, Polynomial> poly_divrem(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("poly_divrem: division by zero polynomial");
    if (a.is_zero() || a.degree() < b.degree()) return {Polynomial(), a};
    std::vector<Rat> rem(a.coeffs());
    int db = b.degree();
    std::vector<Rat> quo(a.degree() - db + 1, Rat(0));
    const Rat lb = b.leading();
    for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
        if (rem[i] == 0) continue;
        Rat f = rem[i] / lb;
        quo[i - db] = f;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.coeff(j);
    }
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

inline Polynomial operator/(const Polynomial& a, const Polynomial& b) {
    auto [q, r] = poly_divrem(a, b);
    if (!r.is_zero()) throw std::domain_error("polynomial division not exact");
    return q;
}

inline bool poly_divides(const Polynomial& b, const Polynomial& a) {
    return poly_divrem(a, b).second.is_zero();
}

// monic gcd
inline Polynomial poly_gcd(Polynomial a, Polynomial b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("poly_gcd(0, 0)");
    while (!b.is_zero()) {
        Polynomial r = poly_divrem(a, b.monic()).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// g = gcd(a, b) monic, with u*a + v*b = g
struct PolyXgcd {
    Polynomial g, u, v;
};

inline PolyXgcd poly_xgcd(const Polynomial& a, const Polynomial& b) {
    Polynomial r0 = a, r1 = b;
    Polynomial u0(Rat(1)), u1, v0, v1(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r] = poly_divrem(r0, r1);
        Polynomial u2 = u0 - q * u1, v2 = v0 - q * v1;
        r0 = std::move(r1); r1 = std::move(r);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (r0.is_zero()) throw std::domain_error("poly_xgcd(0, 0)");
    Rat inv = Rat(1) / r0.leading();
    return {inv * r0, inv * u0, inv * v0};
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials: Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
// ---------------------------------------------------------------------------

inline const Polynomial& cyclotomic(unsigned long n) {
    if (n == 0) throw std::invalid_argument("cyclotomic: n >= 1");
    static std::map<unsigned long, Polynomial> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lk(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // iterative to keep the lock simple; fills all divisors of n
    std::vector<unsigned long> divs;
    for (unsigned long d = 1; d <= n; ++d)
        if (n % d == 0) divs.push_back(d);
    for (unsigned long d : divs) {
        if (cache.count(d)) continue;
        std::vector<Rat> xn(d + 1, Rat(0));
        xn[0] = Rat(-1);
        xn[d] = Rat(1);
        Polynomial f{std::vector<Rat>(xn)};
        for (unsigned long e : divs) {
            if (e >= d || d % e != 0) continue;
            f = f / cache.at(e);
        }
        cache.emplace(d, std::move(f));
    }
    return cache.at(n);
}

// ---------------------------------------------------------------------------
// Integer model used by irreducibility: clear denominators, primitive part
// ---------------------------------------------------------------------------

namespace detail {

// primitive integer polynomial with positive leading coefficient sharing
// the factorization structure of f over Q
inline std::vector<Int> primitive_int_poly(const Polynomial& f) {
    Int lcm_den = 1;
    for (const auto& c : f.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Int> z;
    z.reserve(f.coeffs().size());
    Int content = 0;
    for (const auto& c : f.coeffs()) {
        Int v = c.get_num() * (lcm_den / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        z.push_back(v);
    }
    if (content == 0) return {};
    for (auto& v : z) v /= content;
    if (z.back() < 0)
        for (auto& v : z) v = -v;
    return z;
}

inline Int eval_int_poly(const std::vector<Int>& f, const Int& x0) {
    Int acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = acc * x0 + f[i];
    return acc;
}

// --- arithmetic in F_ell[x], ell a small odd prime (fits in long) ---

using ModPoly = std::vector<unsigned long>;

inline void mp_trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline ModPoly mp_reduce(const std::vector<Int>& f, unsigned long ell) {
    ModPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        Int v = f[i] % static_cast<long>(ell);
        if (v < 0) v += static_cast<long>(ell);
        r[i] = v.get_ui();
    }
    mp_trim(r);
    return r;
}

inline ModPoly mp_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, unsigned long ell) {
    if (a.empty() || b.empty()) return {};
    std::vector<unsigned long> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            c[i + j] = (c[i + j] + a[i] * b[j]) % ell;
        }
    }
    // reduce mod m (monic-ized divisor)
    size_t dm = m.size() - 1;
    unsigned long lead_inv = 1;
    {
        // modular inverse of m's leading coefficient
        unsigned long lm = m.back() % ell;
        long t0 = 0, t1 = 1;
        long r0 = static_cast<long>(ell), r1 = static_cast<long>(lm);
        while (r1) {
            long q = r0 / r1;
            long tmp = r0 - q * r1; r0 = r1; r1 = tmp;
            tmp = t0 - q * t1; t0 = t1; t1 = tmp;
        }
        long inv = t0 % static_cast<long>(ell);
        if (inv < 0) inv += static_cast<long>(ell);
        lead_inv = static_cast<unsigned long>(inv);
    }
    for (size_t i = c.size(); i-- > 0 && i >= dm;) {
        if (i < dm) break;
        if (!c[i]) continue;
        unsigned long f = (c[i] * lead_inv) % ell;
        for (size_t j = 0; j <= dm; ++j) {
            unsigned long sub = (f * m[j]) % ell;
            c[i - dm + j] = (c[i - dm + j] + ell - sub) % ell;
        }
    }
    c.resize(std::min(c.size(), dm));
    mp_trim(c);
    return c;
}

inline ModPoly mp_powmod(ModPoly base, unsigned long e, const ModPoly& m, unsigned long ell) {
    ModPoly r{1};
    while (e) {
        if (e & 1) r = mp_mulmod(r, base, m, ell);
        base = mp_mulmod(base, base, m, ell);
        e >>= 1;
    }
    return r;
}

inline ModPoly mp_gcd(ModPoly a, ModPoly b, unsigned long ell) {
    auto mod = [&](const ModPoly& x, const ModPoly& y) {
        ModPoly r = x;
        size_t dy = y.size() - 1;
        unsigned long ly = y.back();
        // inverse of ly
        unsigned long inv = 1;
        {
            long t0 = 0, t1 = 1, r0 = static_cast<long>(ell), r1 = static_cast<long>(ly);
            while (r1) {
                long q = r0 / r1;
                long tmp = r0 - q * r1; r0 = r1; r1 = tmp;
                tmp = t0 - q * t1; t0 = t1; t1 = tmp;
            }
            long iv = t0 % static_cast<long>(ell);
            if (iv < 0) iv += static_cast<long>(ell);
            inv = static_cast<unsigned long>(iv);
        }
        for (size_t i = r.size(); i-- > 0 && i >= dy;) {
            if (i < dy) break;
            if (!r[i]) continue;
            unsigned long f = (r[i] * inv) % ell;
            for (size_t j = 0; j <= dy; ++j) {
                unsigned long sub = (f * y[j]) % ell;
                r[i - dy + j] = (r[i - dy + j] + ell - sub) % ell;
            }
        }
        r.resize(std::min(r.size(), dy));
        mp_trim(r);
        return r;
    };
    while (!b.empty()) {
        ModPoly r = mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline ModPoly mp_derivative(const ModPoly& f, unsigned long ell) {
    if (f.size() <= 1) return {};
    ModPoly d(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) d[i - 1] = (f[i] * (i % ell)) % ell;
    mp_trim(d);
    return d;
}

inline unsigned long mp_inv_scalar(unsigned long a, unsigned long ell) {
    long t0 = 0, t1 = 1, r0 = static_cast<long>(ell), r1 = static_cast<long>(a % ell);
    while (r1) {
        long q = r0 / r1;
        long tmp = r0 - q * r1; r0 = r1; r1 = tmp;
        tmp = t0 - q * t1; t0 = t1; t1 = tmp;
    }
    long inv = t0 % static_cast<long>(ell);
    if (inv < 0) inv += static_cast<long>(ell);
    return static_cast<unsigned long>(inv);
}

inline std::pair<ModPoly, ModPoly> mp_divmod(const ModPoly& a, const ModPoly& b, unsigned long ell) {
    if (b.empty()) throw std::domain_error("mp_divmod: division by zero");
    if (a.size() < b.size()) return {{}, a};
    ModPoly r = a;
    size_t db = b.size() - 1;
    ModPoly q(a.size() - db, 0);
    unsigned long inv = mp_inv_scalar(b.back(), ell);
    for (size_t i = r.size(); i-- > 0 && i >= db;) {
        if (i < db) break;
        if (!r[i]) continue;
        unsigned long f = (r[i] * inv) % ell;
        q[i - db] = f;
        for (size_t j = 0; j <= db; ++j) {
            unsigned long sub = (f * b[j]) % ell;
            r[i - db + j] = (r[i - db + j] + ell - sub) % ell;
        }
    }
    r.resize(std::min(r.size(), db));
    mp_trim(r);
    mp_trim(q);
    return {q, r};
}

inline ModPoly mp_monic(ModPoly f, unsigned long ell) {
    if (f.empty()) return f;
    unsigned long inv = mp_inv_scalar(f.back(), ell);
    for (auto& c : f) c = (c * inv) % ell;
    return f;
}

inline ModPoly mp_mul(const ModPoly& a, const ModPoly& b, unsigned long ell) {
    if (a.empty() || b.empty()) return {};
    ModPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % ell;
    }
    mp_trim(c);
    return c;
}

inline ModPoly mp_sub(const ModPoly& a, const ModPoly& b, unsigned long ell) {
    ModPoly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] % ell;
    for (size_t i = 0; i < b.size(); ++i) c[i] = (c[i] + ell - b[i] % ell) % ell;
    mp_trim(c);
    return c;
}

// s*a + t*b = g over F_ell, g monic
struct ModXgcd {
    ModPoly g, s, t;
};

inline ModXgcd mp_xgcd(const ModPoly& a, const ModPoly& b, unsigned long ell) {
    ModPoly r0 = a, r1 = b;
    ModPoly s0{1}, s1, t0, t1{1};
    while (!r1.empty()) {
        auto [q, r] = mp_divmod(r0, r1, ell);
        ModPoly s2 = mp_sub(s0, mp_mul(q, s1, ell), ell);
        ModPoly t2 = mp_sub(t0, mp_mul(q, t1, ell), ell);
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.empty()) throw std::domain_error("mp_xgcd(0, 0)");
    unsigned long inv = mp_inv_scalar(r0.back(), ell);
    auto scale = [&](ModPoly f) {
        for (auto& c : f) c = (c * inv) % ell;
        return f;
    };
    return {scale(r0), scale(s0), scale(t0)};
}

inline ModPoly mp_powmod_big(const ModPoly& base, const Int& e, const ModPoly& m,
                             unsigned long ell) {
    ModPoly r{1};
    if (e == 0) return r;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = mp_mulmod(r, r, m, ell);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mp_mulmod(r, base, m, ell);
    }
    return r;
}

// Distinct-degree decomposition of squarefree f over F_ell: list of
// (monic product of the degree-d irreducible factors, d).
inline std::vector<std::pair<ModPoly, int>> mp_distinct_degree(const ModPoly& fin,
                                                              unsigned long ell) {
    ModPoly f = mp_monic(fin, ell);
    std::vector<std::pair<ModPoly, int>> parts;
    ModPoly h{0, 1}; // x
    int d = 0;
    while (static_cast<int>(f.size()) - 1 >= 2 * (d + 1)) {
        ++d;
        h = mp_powmod(h, ell, f, ell);
        ModPoly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + ell - 1) % ell;
        mp_trim(diff);
        // gcd(x^(ell^d) - x, f) collects exactly the degree-d factors,
        // lower degrees having been stripped in earlier rounds
        ModPoly g = diff.empty() ? f : mp_gcd(f, diff, ell);
        if (g.size() > 1) {
            parts.emplace_back(mp_monic(g, ell), d);
            f = mp_monic(mp_divmod(f, g, ell).first, ell);
            if (f.size() > 1) h = mp_divmod(h, f, ell).second;
        }
    }
    if (f.size() > 1) parts.emplace_back(f, static_cast<int>(f.size()) - 1);
    return parts;
}

// Multiset of irreducible factor degrees of squarefree f over F_ell.
inline std::vector<int> mp_factor_degrees(const ModPoly& fin, unsigned long ell) {
    std::vector<int> degs;
    for (const auto& [g, d] : mp_distinct_degree(fin, ell)) {
        int copies = (static_cast<int>(g.size()) - 1) / d;
        for (int i = 0; i < copies; ++i) degs.push_back(d);
    }
    return degs;
}

// Cantor-Zassenhaus equal-degree splitting: g is a monic product of
// distinct irreducible degree-d factors over F_ell, ell odd.
inline void mp_equal_degree_split(const ModPoly& g, int d, unsigned long ell, gmp_randclass& rng,
                                  std::vector<ModPoly>& out) {
    int n = static_cast<int>(g.size()) - 1;
    if (n == d) {
        out.push_back(g);
        return;
    }
    Int pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), ell, static_cast<unsigned long>(d));
    Int e = (pd - 1) / 2;
    while (true) {
        ModPoly a(static_cast<size_t>(n), 0);
        for (auto& c : a) c = Int(rng.get_z_range(ell)).get_ui();
        mp_trim(a);
        if (a.size() < 2) continue;
        ModPoly h = mp_gcd(g, a, ell);
        if (static_cast<int>(h.size()) - 1 < 1) {
            ModPoly b = mp_powmod_big(a, e, g, ell);
            if (b.size() < 1) b.resize(1, 0);
            b[0] = (b[0] + ell - 1) % ell;
            mp_trim(b);
            if (b.empty()) continue;
            h = mp_gcd(g, b, ell);
        }
        int dh = static_cast<int>(h.size()) - 1;
        if (dh < 1 || dh >= n) continue;
        ModPoly h1 = mp_monic(h, ell);
        ModPoly h2 = mp_monic(mp_divmod(g, h1, ell).first, ell);
        mp_equal_degree_split(h1, d, ell, rng, out);
        mp_equal_degree_split(h2, d, ell, rng, out);
        return;
    }
}

// Full factorization of squarefree f over F_ell into monic irreducibles.
inline std::vector<ModPoly> mp_factor_squarefree(const ModPoly& f, unsigned long ell,
                                                 gmp_randclass& rng) {
    std::vector<ModPoly> out;
    for (const auto& [g, d] : mp_distinct_degree(f, ell)) mp_equal_degree_split(g, d, ell, rng, out);
    return out;
}

inline std::vector<Int> divisors_of(const Int& v, gmp_randclass& rng) {
    Int a = abs(v);
    auto fac = factor_int(a, rng);
    std::vector<Int> divs{1};
    for (auto& [p, e] : fac) {
        size_t base = divs.size();
        Int pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    return divs;
}

// --- arithmetic in (Z/m)[x], m a prime power held as Int ---

using ZmPoly = std::vector<Int>;

inline void zm_trim(ZmPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline ZmPoly zm_norm(ZmPoly f, const Int& m) {
    for (auto& c : f) {
        c %= m;
        if (c < 0) c += m;
    }
    zm_trim(f);
    return f;
}

inline ZmPoly zm_add(const ZmPoly& a, const ZmPoly& b, const Int& m) {
    ZmPoly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return zm_norm(std::move(c), m);
}

inline ZmPoly zm_sub(const ZmPoly& a, const ZmPoly& b, const Int& m) {
    ZmPoly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return zm_norm(std::move(c), m);
}

inline ZmPoly zm_mul(const ZmPoly& a, const ZmPoly& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    ZmPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return zm_norm(std::move(c), m);
}

// b monic
inline std::pair<ZmPoly, ZmPoly> zm_divmod(const ZmPoly& a, const ZmPoly& b, const Int& m) {
    if (b.empty() || b.back() != 1) throw std::domain_error("zm_divmod: monic divisor required");
    ZmPoly r = zm_norm(a, m);
    if (r.size() < b.size()) return {{}, r};
    size_t db = b.size() - 1;
    ZmPoly q(r.size() - db, 0);
    for (size_t i = r.size(); i-- > 0 && i >= db;) {
        if (i < db) break;
        if (r[i] == 0) continue;
        Int f = r[i];
        q[i - db] = f;
        for (size_t j = 0; j <= db; ++j) {
            r[i - db + j] -= f * b[j];
            r[i - db + j] %= m;
            if (r[i - db + j] < 0) r[i - db + j] += m;
        }
    }
    r.resize(std::min(r.size(), db));
    zm_trim(r);
    zm_trim(q);
    return {q, r};
}

// symmetric representative in (-m/2, m/2]
inline std::vector<Int> zm_symmetric(const ZmPoly& f, const Int& m) {
    std::vector<Int> out = f;
    for (auto& c : out)
        if (2 * c > m) c -= m;
    return out;
}

// One quadratic Hensel step: from f = g h (mod m) with s g + t h = 1 (mod m)
// to the same congruences mod m^2. f, g, h monic; deg s < deg h, deg t < deg g.
inline void hensel_step(const ZmPoly& f, ZmPoly& g, ZmPoly& h, ZmPoly& s, ZmPoly& t,
                        const Int& m) {
    const Int m2 = m * m;
    size_t dg = g.size(), dh = h.size();
    ZmPoly e = zm_sub(zm_norm(f, m2), zm_mul(g, h, m2), m2);
    auto [q, r] = zm_divmod(zm_mul(s, e, m2), h, m2);
    g = zm_add(g, zm_add(zm_mul(t, e, m2), zm_mul(q, g, m2), m2), m2);
    h = zm_add(h, r, m2);
    // coefficients of g above its nominal degree vanish mod m^2
    g.resize(dg, 0);
    zm_trim(g);
    h.resize(dh, 0);
    zm_trim(h);
    if (g.empty() || g.back() != 1 || h.empty() || h.back() != 1)
        throw std::logic_error("hensel_step: monicity lost");
    ZmPoly b = zm_sub(zm_add(zm_mul(s, g, m2), zm_mul(t, h, m2), m2), ZmPoly{1}, m2);
    auto [c, d] = zm_divmod(zm_mul(s, b, m2), h, m2);
    s = zm_sub(s, d, m2);
    t = zm_sub(t, zm_add(zm_mul(t, b, m2), zm_mul(c, g, m2), m2), m2);
}

// Lift the coprime monic factorization f = prod facs[lo..hi) (mod ell) to
// mod target, where target = ell^(2^j). f is monic mod target.
inline void hensel_lift(const ZmPoly& f, std::vector<ZmPoly>& facs, size_t lo, size_t hi,
                        unsigned long ell, const Int& target) {
    if (hi - lo == 1) {
        facs[lo] = zm_norm(f, target);
        return;
    }
    const Int mell(static_cast<long>(ell));
    size_t mid = lo + (hi - lo) / 2;
    ZmPoly g{1}, h{1};
    for (size_t i = lo; i < mid; ++i) g = zm_mul(g, zm_norm(facs[i], mell), mell);
    for (size_t i = mid; i < hi; ++i) h = zm_mul(h, zm_norm(facs[i], mell), mell);
    auto to_mod = [&](const ZmPoly& a) {
        ModPoly r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = a[i].get_ui();
        return r;
    };
    auto from_mod = [](const ModPoly& a) {
        ZmPoly r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = static_cast<long>(a[i]);
        return r;
    };
    ModXgcd bez = mp_xgcd(to_mod(g), to_mod(h), ell);
    if (bez.g.size() != 1)
        throw std::logic_error("hensel_lift: factors not coprime mod ell");
    // scale Bezout pair so that s g + t h = 1 exactly mod ell
    unsigned long inv = mp_inv_scalar(bez.g[0], ell);
    for (auto& c : bez.s) c = (c * inv) % ell;
    for (auto& c : bez.t) c = (c * inv) % ell;
    ZmPoly s = from_mod(bez.s), t = from_mod(bez.t);
    Int m = mell;
    while (m < target) {
        hensel_step(zm_norm(f, m * m), g, h, s, t, m);
        m *= m;
    }
    hensel_lift(zm_norm(g, target), facs, lo, mid, ell, target);
    hensel_lift(zm_norm(h, target), facs, mid, hi, ell, target);
}

// Exact reducibility of a primitive squarefree integer polynomial F with
// positive leading coefficient and no rational roots (both pre-checked).
// Zassenhaus: factor the monicized polynomial mod a good prime, Hensel
// lift above the factor coefficient bound, recombine subsets. allowed[d]
// excludes factor degrees ruled out by the modular degree analysis.
inline bool zassenhaus_has_factor(const std::vector<Int>& F, const std::vector<char>& allowed) {
    const int n = static_cast<int>(F.size()) - 1;
    // monicize: G(y) = lc^(n-1) F(y/lc) is monic with integer coefficients
    // and the same factor degrees over Q
    const Int lc = F.back();
    std::vector<Int> G(F.size());
    G[n] = 1;
    Int scale = 1;
    for (int i = n - 1; i >= 0; --i) {
        G[i] = F[i] * scale;
        scale *= lc;
    }

    static gmp_randclass rng(gmp_randinit_default);
    static std::mutex mtx;
    std::lock_guard<std::mutex> lk(mtx);
    rng.seed(271828ul);

    // good prime: G squarefree mod ell; prefer the fewest modular factors
    unsigned long best_ell = 0;
    size_t best_count = static_cast<size_t>(-1);
    for (unsigned long ell : primes_up_to(400)) {
        if (ell == 2) continue;
        ModPoly gm = mp_reduce(G, ell);
        if (static_cast<int>(gm.size()) - 1 != n) continue; // cannot happen: monic
        ModPoly d = mp_derivative(gm, ell);
        if (d.empty()) continue;
        if (mp_gcd(gm, d, ell).size() != 1) continue;
        size_t count = mp_factor_degrees(gm, ell).size();
        if (count < best_count) {
            best_count = count;
            best_ell = ell;
            if (count <= 2) break;
        }
        if (best_ell && ell > 100 && best_count <= 6) break;
    }
    if (best_ell == 0)
        throw std::runtime_error("irreducible_over_Q: no squarefree reduction found");
    if (best_count == 1) return false;

    std::vector<ModPoly> mod_facs = mp_factor_squarefree(mp_reduce(G, best_ell), best_ell, rng);
    const size_t rcnt = mod_facs.size();
    if (rcnt > 26)
        throw std::runtime_error("irreducible_over_Q: factor search out of range");

    // lift above twice the Mignotte bound on factor coefficients of G
    Int norm2 = 0;
    for (const Int& c : G) norm2 += c * c;
    Int bound = (sqrt(norm2) + 1) << n;
    Int target(static_cast<long>(best_ell));
    while (target <= 2 * bound) target *= target;

    std::vector<ZmPoly> facs(rcnt);
    for (size_t i = 0; i < rcnt; ++i) {
        facs[i].resize(mod_facs[i].size());
        for (size_t j = 0; j < mod_facs[i].size(); ++j)
            facs[i][j] = static_cast<long>(mod_facs[i][j]);
    }
    hensel_lift(zm_norm(ZmPoly(G.begin(), G.end()), target), facs, 0, rcnt, best_ell, target);

    const Int G0 = G[0]; // nonzero: no rational roots
    std::vector<int> fdeg(rcnt);
    std::vector<Int> fconst(rcnt);
    for (size_t i = 0; i < rcnt; ++i) {
        fdeg[i] = static_cast<int>(facs[i].size()) - 1;
        fconst[i] = facs[i].empty() ? Int(0) : facs[i][0];
    }

    const Polynomial gq = Polynomial([&] {
        std::vector<Rat> c;
        for (const auto& v : G) c.emplace_back(v);
        return c;
    }());

    for (unsigned long mask = 1; mask + 1 < (1ul << rcnt); ++mask) {
        int pc = __builtin_popcountl(mask);
        if (2 * pc > static_cast<int>(rcnt)) continue;
        if (2 * pc == static_cast<int>(rcnt) && !(mask & 1)) continue; // complement dedupe
        int d = 0;
        for (size_t i = 0; i < rcnt; ++i)
            if (mask & (1ul << i)) d += fdeg[i];
        if (d < 1 || d >= n) continue;
        if (d < static_cast<int>(allowed.size()) && !allowed[d]) continue;
        // constant-term filter: cand(0) must divide G(0)
        Int c0 = 1;
        for (size_t i = 0; i < rcnt; ++i)
            if (mask & (1ul << i)) c0 = (c0 * fconst[i]) % target;
        if (2 * c0 > target) c0 -= target;
        if (c0 == 0 || G0 % c0 != 0) continue;

        ZmPoly prod{1};
        for (size_t i = 0; i < rcnt; ++i)
            if (mask & (1ul << i)) prod = zm_mul(prod, facs[i], target);
        std::vector<Int> cand = zm_symmetric(prod, target);
        std::vector<Rat> cr;
        for (const auto& v : cand) cr.emplace_back(v);
        if (poly_divides(Polynomial(std::move(cr)), gq)) return true;
    }
    return false;
}

// does f match Phi_n for some n? (cyclotomics are irreducible but often
// reducible modulo every prime, so the certificate loop never fires on them)
inline bool is_cyclotomic_poly(const Polynomial& f) {
    if (f.is_zero() || f.is_constant()) return false;
    unsigned long deg = static_cast<unsigned long>(f.degree());
    unsigned long nmax = 10 * deg + 20;
    for (unsigned long n = 1; n <= nmax; ++n) {
        if (euler_phi(n) != deg) continue;
        if (f == cyclotomic(n)) return true;
    }
    return false;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Irreducibility over Q. Exact: modular degree analysis first, then a
// Zassenhaus factor search (modular factorization, Hensel lifting, subset
// recombination) when the analysis is inconclusive.
// ---------------------------------------------------------------------------

inline bool irreducible_over_Q(const Polynomial& f) {
    if (f.is_zero() || f.is_constant())
        throw std::invalid_argument("irreducible_over_Q: non-constant input required");
    if (f.degree() == 1) return true;

    std::vector<Int> F = detail::primitive_int_poly(f);
    const int n = static_cast<int>(F.size()) - 1;

    // repeated factor => reducible
    Polynomial g = poly_gcd(f, f.derivative());
    if (!g.is_constant()) return false;

    if (detail::is_cyclotomic_poly(f)) return true;

    // Modular degree analysis. Any rational factor of degree d reduces mod a
    // good prime ell (leading coefficient a unit, image squarefree) to a
    // product of mod-ell factors whose degrees sum to d, so d lies in the
    // subset sums of the mod-ell factor degrees. A single modular factor
    // certifies irreducibility outright; so does an empty intersection of
    // proper subset sums across primes.
    static const unsigned long kCertPrimes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                               47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};
    std::vector<char> possible(n + 1, 1); // possible[d]: degree-d factor not yet excluded
    for (unsigned long ell : kCertPrimes) {
        if (F.back() % static_cast<long>(ell) == 0) continue;
        detail::ModPoly fm = detail::mp_reduce(F, ell);
        if (static_cast<int>(fm.size()) - 1 != n) continue;
        detail::ModPoly d = detail::mp_derivative(fm, ell);
        if (d.empty()) continue;
        if (detail::mp_gcd(fm, d, ell).size() != 1) continue; // not squarefree mod ell
        std::vector<int> degs = detail::mp_factor_degrees(fm, ell);
        if (degs.size() == 1) return true;
        std::vector<char> sums(n + 1, 0);
        sums[0] = 1;
        for (int dg : degs)
            for (int s = n; s >= dg; --s)
                if (sums[s - dg]) sums[s] = 1;
        bool proper = false;
        for (int i = 1; i < n; ++i) {
            possible[i] = possible[i] && sums[i];
            proper = proper || possible[i];
        }
        if (!proper) return true;
    }

    // exact fallback: rational roots, then Kronecker factor search over the
    // degrees that survived the modular analysis
    {
        static gmp_randclass rng(gmp_randinit_default);
        static std::mutex mtx;
        std::lock_guard<std::mutex> lk(mtx);
        rng.seed(99991ul);
        if (F.front() == 0) return false; // x | f
        for (const Int& num : detail::divisors_of(F.front(), rng)) {
            for (const Int& den : detail::divisors_of(F.back(), rng)) {
                for (int s : {1, -1}) {
                    Rat root(s * num, den);
                    root.canonicalize();
                    if (f.evaluate(root) == 0) return false;
                }
            }
        }
    }
    return !detail::zassenhaus_has_factor(F, possible);
}

// ---------------------------------------------------------------------------
// Squarefree decomposition (Yun) and perfect-power detection
// ---------------------------------------------------------------------------

// f = lc * prod u_i^i with u_i monic squarefree pairwise coprime (Yun)
inline std::vector<std::pair<Polynomial, unsigned>> squarefree_decomposition(const Polynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree_decomposition of zero");
    std::vector<std::pair<Polynomial, unsigned>> out;
    Polynomial g = f.monic();
    if (g.is_constant()) return out;
    Polynomial gp = g.derivative();
    Polynomial a0 = poly_gcd(g, gp);
    Polynomial b = g / a0;
    Polynomial c = gp / a0;
    Polynomial d = c - b.derivative();
    unsigned i = 1;
    while (!b.is_constant()) {
        Polynomial a = d.is_zero() ? b.monic() : poly_gcd(b, d);
        if (!a.is_constant()) out.emplace_back(a, i);
        b = b / a;
        c = d / a;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

// largest e with f = g^e for some g in Q[x]; (f, 1) when none
inline std::pair<Polynomial, unsigned> poly_perfect_power(const Polynomial& f) {
    if (f.is_zero() || f.is_constant())
        throw std::invalid_argument("poly_perfect_power: non-constant input required");
    auto parts = squarefree_decomposition(f);
    unsigned e = 0;
    for (const auto& [u, i] : parts) e = std::gcd(e, i);
    if (e <= 1) return {f, 1};
    // try exponents dividing e, largest first, requiring a rational e-th
    // root of the leading constant
    for (unsigned ee = e; ee >= 2; --ee) {
        if (e % ee != 0) continue;
        Polynomial base(Rat(1));
        for (const auto& [u, i] : parts) base = base * u.pow(i / ee);
        auto croot = exact_nth_root(Rat(f.leading()), ee);
        if (!croot) continue;
        Polynomial cand = *croot * base;
        if (cand.pow(ee) == f) return {cand, ee};
    }
    return {f, 1};
}

// ---------------------------------------------------------------------------
// Integrality: lcm of coefficient denominators and the residues a mod L
// with f(a) integral (f(a) in Z is periodic in a mod L)
// ---------------------------------------------------------------------------

struct IntegralityReport {
    Int den_lcm;
    std::vector<Int> residues; // sorted residues in [0, den_lcm)
};

inline IntegralityReport content_and_integrality(const Polynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("content_and_integrality of zero");
    Int L = 1;
    for (const auto& c : f.coeffs()) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den().get_mpz_t());
    IntegralityReport rep{L, {}};
    for (Int a = 0; a < L; ++a) {
        Rat v = f.evaluate(Rat(a));
        if (v.get_den() == 1) rep.residues.push_back(a);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Exact polynomial square root
// ---------------------------------------------------------------------------

inline std::optional<Polynomial> poly_sqrt(const Polynomial& f) {
    if (f.is_zero()) return Polynomial();
    if (f.degree() % 2 != 0) return std::nullopt;
    auto lead = exact_nth_root(Rat(f.leading()), 2);
    if (!lead) return std::nullopt;
    const int n = f.degree() / 2;
    std::vector<Rat> s(n + 1, Rat(0));
    s[n] = *lead;
    for (int i = n - 1; i >= 0; --i) {
        Rat acc(0);
        for (int j = i + 1; j < n; ++j) {
            int k = n + i - j;
            if (k > j || k < 0) continue;
            Rat term = s[j] * s[k];
            acc += (k == j) ? term : 2 * term;
        }
        s[i] = (f.coeff(n + i) - acc) / (2 * s[n]);
    }
    Polynomial root{std::vector<Rat>(s)};
    if (root * root == f) return root;
    return std::nullopt;
}

} // namespace forge
