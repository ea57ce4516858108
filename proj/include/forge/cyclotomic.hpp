// SPDX-License-Identifier: Apache-2.0
//
// Arithmetic in Q[x]/(Phi_l(x)), quadratic characters, Gauss sums, and
// square roots of -D inside cyclotomic fields.

#pragma once

#include "forge/polynomial.hpp"

#include <numeric>

namespace forge {

// Residue class in Q[x]/(Phi_l(x)); rep is the canonical reduction.
class CycloElement {
public:
    CycloElement(unsigned long l, Polynomial rep) : l_(l) {
        if (l == 0) throw std::invalid_argument("CycloElement: l >= 1");
        rep_ = poly_divrem(std::move(rep), cyclotomic(l)).second;
    }

    static CycloElement zeta(unsigned long l) { return CycloElement(l, Polynomial::x()); }
    static CycloElement one(unsigned long l) { return CycloElement(l, Polynomial(Rat(1))); }

    unsigned long index() const { return l_; }
    const Polynomial& rep() const { return rep_; }
    bool is_zero() const { return rep_.is_zero(); }

    friend bool operator==(const CycloElement& a, const CycloElement& b) {
        return a.l_ == b.l_ && a.rep_ == b.rep_;
    }

    friend CycloElement operator+(const CycloElement& a, const CycloElement& b) {
        a.check(b);
        return CycloElement(a.l_, a.rep_ + b.rep_);
    }

    friend CycloElement operator-(const CycloElement& a, const CycloElement& b) {
        a.check(b);
        return CycloElement(a.l_, a.rep_ - b.rep_);
    }

    friend CycloElement operator-(const CycloElement& a) { return CycloElement(a.l_, -a.rep_); }

    friend CycloElement operator*(const CycloElement& a, const CycloElement& b) {
        a.check(b);
        return CycloElement(a.l_, a.rep_ * b.rep_);
    }

    friend CycloElement operator*(const Rat& s, const CycloElement& a) {
        return CycloElement(a.l_, s * a.rep_);
    }

    CycloElement pow(unsigned long e) const {
        CycloElement r = one(l_), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    // via extended gcd of rep with Phi_l (Phi_l irreducible, so the gcd is 1)
    CycloElement inverse() const {
        if (is_zero()) throw std::domain_error("CycloElement::inverse of zero");
        auto x = poly_xgcd(rep_, cyclotomic(l_));
        if (!x.g.is_constant() || x.g.coeff(0) != 1)
            throw std::logic_error("CycloElement::inverse: gcd with irreducible modulus != 1");
        return CycloElement(l_, x.u);
    }

private:
    void check(const CycloElement& o) const {
        if (l_ != o.l_) throw std::invalid_argument("CycloElement: mismatched cyclotomic indices");
    }

    unsigned long l_;
    Polynomial rep_;
};

// ---------------------------------------------------------------------------
// Quadratic characters
// ---------------------------------------------------------------------------

// quadratic residue symbol (a/p) by the Euler criterion
inline int legendre(const Int& a, unsigned long p) {
    if (p < 3 || !is_prime_small(p))
        throw std::invalid_argument("legendre: p must be an odd prime");
    return legendre_symbol(a, Int(p));
}

// chi_p: the order-2 Dirichlet character mod p
struct CharacterTable {
    unsigned long p;
    std::vector<int> values; // values[a] for a in [0, p)

    explicit CharacterTable(unsigned long p_) : p(p_), values(p_) {
        for (unsigned long a = 0; a < p; ++a) values[a] = legendre(Int(a), p);
    }

    int operator()(long a) const {
        long r = a % static_cast<long>(p);
        if (r < 0) r += static_cast<long>(p);
        return values[static_cast<size_t>(r)];
    }
};

// ---------------------------------------------------------------------------
// Gauss sums and square roots of -D
// ---------------------------------------------------------------------------

// sum_a chi_p(a) zeta_p^a embedded in Q(mu_l) via zeta_p = zeta_l^(l/p);
// squares to -p for p = 3 mod 4 and +p for p = 1 mod 4
inline CycloElement gauss_sum(unsigned long p, unsigned long l) {
    if (p < 3 || !is_prime_small(p)) throw std::invalid_argument("gauss_sum: p must be an odd prime");
    if (l % p != 0) throw std::invalid_argument("gauss_sum: p must divide l");
    CharacterTable chi(p);
    unsigned long step = l / p;
    Polynomial acc;
    for (unsigned long a = 1; a < p; ++a) {
        unsigned long e = (a * step) % l;
        acc = acc + Polynomial::monomial(e, Rat(chi.values[a]));
    }
    return CycloElement(l, acc);
}

// criterion for sqrt(-D) in Q(mu_l):
//   4 | l and D | l/4,  or  4 !| l and D | l and D = 3 mod 4
inline bool sqrt_minus_D_exists(unsigned long D, unsigned long l) {
    if (D == 0 || !is_squarefree(D))
        throw std::invalid_argument("sqrt_minus_D_exists: D must be squarefree and positive");
    if (l == 0) throw std::invalid_argument("sqrt_minus_D_exists: l >= 1");
    if (l % 4 == 0) return (l / 4) % D == 0;
    return l % D == 0 && D % 4 == 3;
}

// element s with s^2 = -D in Q[x]/(Phi_l): product of Gauss sums over the
// odd primes dividing D, a zeta_8 + zeta_8^-1 factor when D is even, and
// a zeta_4 twist when the square lands on +D; verified before returning
inline CycloElement sqrt_minus_D(unsigned long D, unsigned long l) {
    if (!sqrt_minus_D_exists(D, l))
        throw std::invalid_argument("sqrt_minus_D: sqrt(-D) does not lie in Q(mu_l)");
    CycloElement s = CycloElement::one(l);
    for (auto [p, e] : factor_small(D)) {
        if (p == 2) {
            if (l % 8 != 0) throw std::logic_error("sqrt_minus_D: even D requires 8 | l");
            Polynomial r2 = Polynomial::monomial(l / 8) + Polynomial::monomial(7 * (l / 8) % l);
            s = s * CycloElement(l, r2); // zeta_8 + zeta_8^-1 = sqrt(2)
        } else {
            s = s * gauss_sum(p, l);
        }
    }
    const CycloElement target(l, Polynomial(Rat(-(long)D)));
    CycloElement sq = s * s;
    if (sq == target) return s;
    if (l % 4 == 0) {
        s = s * CycloElement(l, Polynomial::monomial(l / 4)); // multiply by zeta_4
        if (s * s == target) return s;
    }
    throw std::logic_error("sqrt_minus_D: construction failed verification");
}

// zeta_l^((l/k) g): a primitive k-th root of unity inside Q(mu_l)
inline CycloElement primitive_root_image(unsigned long l, unsigned long k, long g) {
    if (k == 0 || l % k != 0) throw std::invalid_argument("primitive_root_image: k must divide l");
    long gm = g % static_cast<long>(k);
    if (gm < 0) gm += static_cast<long>(k);
    if (std::gcd(static_cast<unsigned long>(gm == 0 ? k : gm), k) != 1 && k != 1)
        throw std::invalid_argument("primitive_root_image: gcd(g, k) must be 1");
    unsigned long e = ((l / k) * static_cast<unsigned long>(gm)) % l;
    return CycloElement(l, Polynomial::monomial(e));
}

} // namespace forge
