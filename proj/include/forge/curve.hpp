// SPDX-License-Identifier: Apache-2.0
//
// Concrete curve instantiation: evaluate a family at integer arguments,
// certify primality, construct an elliptic curve over F_q for D in {1, 3}
// (brute-force order counting otherwise, q < 10^4), and verify order,
// embedding degree and the pairing-friendly predicate.

#pragma once

#include "forge/family.hpp"

#include <cmath>
#include <variant>

namespace forge {

struct CurveInstance {
    Int x0;
    Int q, r, t, h, y;
    Int D;
    Int A, B; // E: Y^2 = X^3 + A X + B over F_q
    unsigned long k_verified = 0;
    double rho_numeric = 0.0;
    bool pairing_friendly = false;
};

struct Rejection {
    Int x0;
    std::string reason;
};

struct EvaluationResult {
    bool accepted = false;
    Int q, r, t, h, y, D;
    std::string reason;
};

// ---------------------------------------------------------------------------
// Elliptic curve arithmetic over F_q (affine, q an odd prime)
// ---------------------------------------------------------------------------

namespace ec {

struct Point {
    Int x, y;
    bool infinity = true;
};

struct Curve {
    Int q, A, B;

    bool on_curve(const Point& p) const {
        if (p.infinity) return true;
        return ((p.y * p.y - (p.x * p.x * p.x + A * p.x + B)) % q) == 0;
    }

    Point add(const Point& p1, const Point& p2) const {
        if (p1.infinity) return p2;
        if (p2.infinity) return p1;
        Int dx = (p2.x - p1.x) % q;
        if (dx < 0) dx += q;
        Int lambda;
        if (dx == 0) {
            Int sum_y = (p1.y + p2.y) % q;
            if (sum_y == 0) return Point{}; // inverse points
            lambda = ((3 * p1.x * p1.x + A) % q) * mod_inverse((2 * p1.y) % q, q) % q;
        } else {
            Int dy = (p2.y - p1.y) % q;
            lambda = dy * mod_inverse(dx, q) % q;
        }
        Int x3 = (lambda * lambda - p1.x - p2.x) % q;
        if (x3 < 0) x3 += q;
        Int y3 = (lambda * (p1.x - x3) - p1.y) % q;
        if (y3 < 0) y3 += q;
        return Point{x3, y3, false};
    }

    Point mul(Point p, Int n) const {
        if (n < 0) throw std::invalid_argument("scalar must be non-negative");
        Point r{};
        while (n > 0) {
            if (mpz_odd_p(n.get_mpz_t())) r = add(r, p);
            p = add(p, p);
            n >>= 1;
        }
        return r;
    }

    Point random_point(gmp_randclass& rng) const {
        while (true) {
            Int x = rng.get_z_range(q);
            Int rhs = (x * x * x + A * x + B) % q;
            if (rhs < 0) rhs += q;
            if (rhs == 0) return Point{x, 0, false};
            if (legendre_symbol(rhs, q) != 1) continue;
            Int y = sqrt_mod(rhs, q);
            return Point{x, y, false};
        }
    }
};

// #E = q + 1 + sum_x chi(x^3 + Ax + B); exact, for small q
inline Int order_brute(const Int& q, const Int& A, const Int& B) {
    Int count = q + 1;
    for (Int x = 0; x < q; ++x) {
        Int rhs = (x * x * x + A * x + B) % q;
        if (rhs < 0) rhs += q;
        if (rhs == 0) continue;
        count += legendre_symbol(rhs, q);
    }
    return count;
}

} // namespace ec

// ---------------------------------------------------------------------------
// Embedding degree: multiplicative order of q mod r
// ---------------------------------------------------------------------------

// 0 means the order exceeds k_max
inline unsigned long embedding_degree(const Int& q, const Int& r, unsigned long k_max,
                                      gmp_randclass& rng) {
    if (r < 2) throw std::invalid_argument("embedding_degree: r must be a prime >= 2");
    if (q % r == 0) throw std::invalid_argument("embedding_degree: r | q");
    Int ord = r - 1;
    auto fac = factor_int(r - 1, rng);
    for (const auto& [p, e] : fac) {
        for (unsigned i = 0; i < e; ++i) {
            Int cand = ord / p;
            Int x;
            mpz_powm(x.get_mpz_t(), Int(q % r).get_mpz_t(), cand.get_mpz_t(), r.get_mpz_t());
            if (x == 1) ord = cand;
            else break;
        }
    }
    if (ord > k_max) return 0;
    return ord.get_ui();
}

// ---------------------------------------------------------------------------
// Family evaluation at an integer argument
// ---------------------------------------------------------------------------

namespace detail {

inline std::optional<Int> integer_value(const Polynomial& f, const Int& x0) {
    Rat v = f.evaluate(Rat(x0));
    if (v.get_den() != 1) return std::nullopt;
    return Int(v.get_num());
}

// 4q - t^2 = D y^2 with D squarefree, by trial division (small values)
inline std::optional<std::pair<Int, Int>> split_cm_discriminant(const Int& m) {
    if (m <= 0) return std::nullopt;
    if (m > 100000000) return std::nullopt; // sparse path is capped at small q
    unsigned long v = m.get_ui();
    auto [core, sq] = squarefree_split(v);
    if (core == 0) return std::nullopt;
    return std::make_pair(Int(core), Int(sq));
}

} // namespace detail

inline EvaluationResult evaluate_family(const FamilyCandidate& fam, const Int& x0,
                                        gmp_randclass& rng) {
    EvaluationResult res;
    auto reject = [&](const std::string& why) {
        res.accepted = false;
        res.reason = why;
        return res;
    };

    auto q = detail::integer_value(fam.q, x0);
    if (!q) return reject("q(x0) not integral");
    auto r = detail::integer_value(fam.r, x0);
    if (!r) return reject("r(x0) not integral");
    auto t = detail::integer_value(fam.t, x0);
    if (!t) return reject("t(x0) not integral");
    if (*q < 5) return reject("q(x0) < 5");
    if (*r < 2) return reject("r(x0) < 2");
    if (!is_probable_prime(*q, rng)) return reject("q(x0) composite");
    if (!is_probable_prime(*r, rng)) return reject("r(x0) composite");

    Int hr = *q + 1 - *t;
    if (hr % *r != 0) return reject("r(x0) does not divide q+1-t");
    Int h = hr / *r;
    if (h < 1) return reject("cofactor h < 1");

    Int m = 4 * *q - *t * *t;
    if (m < 0) return reject("Hasse bound violated: 4q - t^2 < 0");

    Int D, y;
    if (!fam.y.is_zero()) {
        auto yv = detail::integer_value(fam.y, x0);
        if (!yv) return reject("y(x0) not integral");
        y = abs(*yv);
        D = Int(static_cast<long>(fam.D));
        if (D * y * y != m) return reject("D y^2 != 4q - t^2 at x0");
    } else {
        // sparse family: recover (D, y) from 4q - t^2 by trial factorization
        if (*q >= 10000) return reject("sparse instantiation capped at q < 10^4");
        auto split = detail::split_cm_discriminant(m);
        if (!split) return reject("cannot factor 4q - t^2");
        D = split->first;
        y = split->second;
    }

    res.accepted = true;
    res.q = *q;
    res.r = *r;
    res.t = *t;
    res.h = h;
    res.y = y;
    res.D = D;
    return res;
}

// ---------------------------------------------------------------------------
// Curve construction
// ---------------------------------------------------------------------------

namespace detail {

// candidate group orders of the twist family containing Y^2 = X^3 + AX + B
inline std::vector<Int> twist_orders(const Int& q, const Int& t, const Int& y, const Int& D) {
    std::vector<Int> out;
    std::vector<Int> traces;
    if (D == 3) {
        // 4q = t^2 + 3y^2; six twists
        Int u = (t + 3 * y) / 2, v = (t - 3 * y) / 2;
        traces = {t, Int(-t), u, Int(-u), v, Int(-v)};
    } else if (D == 1) {
        // 4q = t^2 + y^2; four twists
        traces = {t, Int(-t), y, Int(-y)};
    } else {
        traces = {t, Int(-t)};
    }
    for (const Int& tr : traces) out.push_back(q + 1 - tr);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// certify #E = n by random points: n P = O for all samples, and every other
// candidate order s is excluded by some sampled P with s P != O
inline bool certify_order(const ec::Curve& E, const Int& n, const std::vector<Int>& candidates,
                          gmp_randclass& rng) {
    constexpr int kSamples = 20;
    std::vector<Int> alive;
    for (const Int& s : candidates)
        if (s != n) alive.push_back(s);
    for (int i = 0; i < kSamples; ++i) {
        ec::Point P = E.random_point(rng);
        if (!E.mul(P, n).infinity) return false;
        alive.erase(std::remove_if(alive.begin(), alive.end(),
                                   [&](const Int& s) { return !E.mul(P, s).infinity; }),
                    alive.end());
        if (alive.empty() && i >= 4) return true;
    }
    return alive.empty();
}

} // namespace detail

// Returns (A, B) of a curve with exactly q + 1 - t points. D in {1, 3} uses
// a twist sweep (j = 1728 / j = 0); other D fall back to exhaustive search
// with brute-force counting, capped at q < 10^4.
inline std::pair<Int, Int> construct_curve(const Int& q, const Int& t, const Int& D,
                                           gmp_randclass& rng) {
    if (q <= 3) throw std::invalid_argument("construct_curve: q > 3 required");
    const Int n = q + 1 - t;
    Int m = 4 * q - t * t;
    if (m < 0 || m % D != 0) throw std::invalid_argument("construct_curve: 4q - t^2 != D y^2");
    auto yy = exact_nth_root(Int(m / D), 2);
    if (!yy) throw std::invalid_argument("construct_curve: 4q - t^2 != D y^2");
    const Int y = *yy;

    const bool small = q < 10000;
    if (D == 3 || D == 1) {
        auto candidates = detail::twist_orders(q, t, y, D);
        constexpr long kSweep = 64;
        for (long c = 1; c <= kSweep; ++c) {
            ec::Curve E{q, D == 1 ? Int(c) : Int(0), D == 1 ? Int(0) : Int(c)};
            if (small) {
                if (ec::order_brute(q, E.A, E.B) == n) return {E.A, E.B};
            } else {
                if (detail::certify_order(E, n, candidates, rng)) return {E.A, E.B};
            }
        }
        throw std::runtime_error("construct_curve: curve not found in twist sweep");
    }

    if (!small)
        throw std::invalid_argument("construct_curve: D not in {1, 3} requires q < 10^4");
    for (Int A = 0; A < q; ++A) {
        for (Int B = 0; B < q; ++B) {
            Int disc = (4 * A * A * A + 27 * B * B) % q;
            if (disc == 0) continue;
            if (ec::order_brute(q, A, B) == n) return {A, B};
        }
    }
    throw std::runtime_error("construct_curve: no curve of the requested order exists");
}

// ---------------------------------------------------------------------------
// Instance verification
// ---------------------------------------------------------------------------

struct InstanceChecklist {
    bool q_prime = false;
    bool r_prime = false;
    bool cofactor_identity = false;   // q + 1 - t = h r
    bool cm_identity = false;         // D y^2 = 4q - t^2
    bool hasse = false;               // t^2 <= 4q
    bool curve_order = false;         // #E = q + 1 - t (brute force when q < 10^4)
    bool r_coprime_kq = false;        // r does not divide k q
    bool embedding_degree_ok = false; // order of q mod r equals k_verified
    bool pairing_friendly = false;    // r^2 >= q and 2^(8k) < r
    bool all_ok = false;
};

inline bool pairing_friendly_predicate(const Int& q, const Int& r, unsigned long k) {
    if (r * r < q) return false;
    Int threshold = Int(1) << (8 * k);
    return threshold < r;
}

inline InstanceChecklist verify_instance(const CurveInstance& inst, gmp_randclass& rng) {
    InstanceChecklist c;
    c.q_prime = is_probable_prime(inst.q, rng);
    c.r_prime = is_probable_prime(inst.r, rng);
    c.cofactor_identity = inst.q + 1 - inst.t == inst.h * inst.r;
    c.cm_identity = inst.D * inst.y * inst.y == 4 * inst.q - inst.t * inst.t;
    c.hasse = inst.t * inst.t <= 4 * inst.q;
    if (inst.q < 10000) {
        c.curve_order = ec::order_brute(inst.q, inst.A, inst.B) == inst.q + 1 - inst.t;
    } else {
        ec::Curve E{inst.q, inst.A, inst.B};
        auto cands = detail::twist_orders(inst.q, inst.t, inst.y, inst.D);
        c.curve_order = detail::certify_order(E, inst.q + 1 - inst.t, cands, rng);
    }
    c.r_coprime_kq = (Int(inst.k_verified) * inst.q) % inst.r != 0;
    c.embedding_degree_ok =
        c.r_prime && embedding_degree(inst.q, inst.r, 10 * inst.k_verified + 16, rng) ==
                         inst.k_verified;
    c.pairing_friendly = pairing_friendly_predicate(inst.q, inst.r, inst.k_verified) ==
                         inst.pairing_friendly;
    c.all_ok = c.q_prime && c.r_prime && c.cofactor_identity && c.cm_identity && c.hasse &&
               c.curve_order && c.r_coprime_kq && c.embedding_degree_ok && c.pairing_friendly;
    return c;
}

// ---------------------------------------------------------------------------
// Batch driver
// ---------------------------------------------------------------------------

struct SearchResult {
    std::vector<CurveInstance> instances;
    std::vector<Rejection> rejections;
};

inline std::optional<CurveInstance> instantiate_at(const FamilyCandidate& fam, const Int& x0,
                                                   gmp_randclass& rng, std::string* why = nullptr) {
    EvaluationResult ev = evaluate_family(fam, x0, rng);
    if (!ev.accepted) {
        if (why) *why = ev.reason;
        return std::nullopt;
    }
    CurveInstance inst;
    inst.x0 = x0;
    inst.q = ev.q;
    inst.r = ev.r;
    inst.t = ev.t;
    inst.h = ev.h;
    inst.y = ev.y;
    inst.D = ev.D;
    unsigned long k = embedding_degree(ev.q, ev.r, std::max<unsigned long>(10 * fam.k + 16, 64), rng);
    if (k == 0) {
        if (why) *why = "embedding degree exceeds bound";
        return std::nullopt;
    }
    inst.k_verified = k;
    try {
        auto [A, B] = construct_curve(ev.q, ev.t, ev.D, rng);
        inst.A = A;
        inst.B = B;
    } catch (const std::exception& e) {
        if (why) *why = e.what();
        return std::nullopt;
    }
    inst.rho_numeric = std::log(ev.q.get_d()) / std::log(ev.r.get_d());
    inst.pairing_friendly = pairing_friendly_predicate(ev.q, ev.r, k);
    InstanceChecklist check = verify_instance(inst, rng);
    if (!check.all_ok) {
        if (why) *why = "instance failed verification";
        return std::nullopt;
    }
    return inst;
}

inline SearchResult search_instances(const FamilyCandidate& fam, const Int& x_from,
                                     const Int& x_to, unsigned long seed) {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(seed);
    SearchResult out;
    for (Int x0 = x_from; x0 <= x_to; ++x0) {
        std::string why;
        if (auto inst = instantiate_at(fam, x0, rng, &why)) out.instances.push_back(*inst);
        else out.rejections.push_back({x0, why});
    }
    return out;
}

} // namespace forge
