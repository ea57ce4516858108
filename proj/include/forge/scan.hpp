// SPDX-License-Identifier: Apache-2.0
//
// Exhaustive desk-scale scans over (k, d, D, g) confirming that no
// complete-family candidate with cyclotomic r(x) attains rho = 1 in the
// classes covered by the two main non-existence theorems.

#pragma once

#include "forge/family.hpp"

#include <atomic>
#include <cstdint>
#include <map>
#include <thread>

namespace forge {

enum class ScanMode { theorem1_i, theorem1_ii, theorem2 };

inline const char* to_cstr(ScanMode m) {
    switch (m) {
        case ScanMode::theorem1_i: return "theorem1_i";
        case ScanMode::theorem1_ii: return "theorem1_ii";
        case ScanMode::theorem2: return "theorem2";
    }
    return "?";
}

struct ScanSpec {
    ScanMode mode = ScanMode::theorem1_i;
    // theorem1_i: k_set = {1, 2} + {p, 2p} for primes p = 3 mod 4, p <= p_max
    std::vector<unsigned long> k_set;
    // theorem1_ii: primes p = 3 mod 4, p >= 7, and 2 <= Q <= Q_max
    std::vector<unsigned long> p_set;
    unsigned long Q_min = 2, Q_max = 13;
    // theorem2: for each k in k_set, squarefree d coprime to k with d*k <= dk_max;
    // d_set restricts the enumeration when nonempty (entries must be pre-reduced)
    std::vector<unsigned long> d_set;
    unsigned long dk_max = 60;
    unsigned threads = 1;
};

// one enumerated candidate, in reduced form
struct ScanRow {
    unsigned long k = 0, d = 1, D = 0;
    long g = 0;
    int deg_t = 0, deg_y = 0;
    Rat rho;
};

struct ScanReport {
    ScanSpec spec;
    std::uint64_t candidates_examined = 0;
    std::map<Rat, std::uint64_t> rho_histogram;
    std::optional<Rat> min_rho;
    std::map<unsigned long, Rat> min_rho_by_k;
    std::vector<FamilyCandidate> violations; // complete families with rho = 1
    std::vector<ScanRow> rows;
};

// all squarefree D <= l with sqrt(-D) in Q(mu_l)
inline std::vector<unsigned long> admissible_discriminants(unsigned long l) {
    std::vector<unsigned long> out;
    for (unsigned long D = 1; D <= l; ++D)
        if (is_squarefree(D) && sqrt_minus_D_exists(D, l)) out.push_back(D);
    return out;
}

// (p-2)Q + 1 < phi(k), the theorem-1(ii) admissibility inequality
inline bool inequality_filter(unsigned long p, unsigned long Q, unsigned long k) {
    if (k != p * Q && k != 2 * p * Q)
        throw std::invalid_argument("inequality_filter: k must be pQ or 2pQ");
    return (p - 2) * Q + 1 < euler_phi(k);
}

// Theorem 2(i): iteratively remove gcd(d, k) and square factors from d,
// accumulating the substitution exponent.
inline std::pair<unsigned long, unsigned long> reduce_theorem2_parameters(unsigned long d,
                                                                          unsigned long k) {
    if (d == 0 || k == 0) throw std::invalid_argument("reduce_theorem2_parameters: d, k >= 1");
    unsigned long expo = 1;
    while (true) {
        unsigned long e = std::gcd(d, k);
        if (e >= 2) {
            d /= e;
            expo *= e;
            continue;
        }
        auto [core, sq] = squarefree_split(d);
        if (sq >= 2) {
            d = core;
            expo *= sq;
            continue;
        }
        break;
    }
    return {d, expo};
}

namespace detail {

struct WorkItem {
    unsigned long k, d, D, l;
    long g;
};

// degree-only evaluation (q is not materialized): t = rep(zeta_k^g) + 1
// and y = rep((zeta_k^g - 1) * sqrt(-D)/(-D)) mod Phi_l
inline ScanRow evaluate_candidate(const WorkItem& w, const CycloElement& inv_sqrt) {
    const CycloElement zeta = primitive_root_image(w.l, w.k, w.g);
    const CycloElement one = CycloElement::one(w.l);
    const Polynomial t = zeta.rep() + Polynomial(Rat(1));
    const Polynomial y = ((zeta - one) * inv_sqrt).rep();
    ScanRow row;
    row.k = w.k;
    row.d = w.d;
    row.D = w.D;
    row.g = w.g;
    row.deg_t = t.degree_or(0);
    row.deg_y = y.degree_or(0);
    row.rho = Rat(2 * std::max(row.deg_t, row.deg_y), static_cast<long>(euler_phi(w.l)));
    row.rho.canonicalize();
    return row;
}

inline ScanReport run_items(ScanSpec spec, const std::vector<WorkItem>& items) {
    ScanReport rep;
    rep.spec = spec;
    std::vector<ScanRow> rows(items.size());

    // cache 1/sqrt(-D) per (l, D); built serially up front
    std::map<std::pair<unsigned long, unsigned long>, CycloElement> inv_cache;
    for (const auto& w : items) {
        auto key = std::make_pair(w.l, w.D);
        if (!inv_cache.count(key)) {
            CycloElement s = sqrt_minus_D(w.D, w.l);
            inv_cache.emplace(key, Rat(-1, static_cast<long>(w.D)) * s);
        }
    }

    unsigned nthreads = std::max(1u, spec.threads);
    if (nthreads == 1 || items.size() < 2 * nthreads) {
        for (size_t i = 0; i < items.size(); ++i)
            rows[i] = evaluate_candidate(items[i], inv_cache.at({items[i].l, items[i].D}));
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t i = next.fetch_add(1); i < items.size(); i = next.fetch_add(1))
                rows[i] = evaluate_candidate(items[i], inv_cache.at({items[i].l, items[i].D}));
        };
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (size_t i = 0; i < rows.size(); ++i) {
        const ScanRow& row = rows[i];
        ++rep.candidates_examined;
        ++rep.rho_histogram[row.rho];
        if (!rep.min_rho || row.rho < *rep.min_rho) rep.min_rho = row.rho;
        auto it = rep.min_rho_by_k.find(row.k);
        if (it == rep.min_rho_by_k.end() || row.rho < it->second)
            rep.min_rho_by_k.insert_or_assign(row.k, row.rho);
        if (row.rho == 1) {
            // materialize and run the full condition check; only complete
            // families count as violations of the theorems
            FamilyCandidate fam =
                brezing_weng(row.k, row.D, items[i].l, row.g);
            if (fam.report.is_complete) rep.violations.push_back(std::move(fam));
        }
    }
    rep.rows = std::move(rows);
    return rep;
}

} // namespace detail

// Theorem 1 scans: r = Phi_k. Mode (i) enumerates all admissible D and all
// g coprime to k; mode (ii) fixes t = x + 1 (g = 1) and D = p.
inline ScanReport scan_theorem1(const ScanSpec& spec) {
    std::vector<detail::WorkItem> items;
    auto is_theorem1_degree = [](unsigned long k) {
        // k in {1, 2, p, 2p}; odd p must satisfy p = 3 mod 4
        if (k == 1 || k == 2 || k == 4) return true;
        if (is_prime_small(k)) return k % 4 == 3;
        if (k % 2 == 0 && is_prime_small(k / 2)) return (k / 2) % 4 == 3;
        return false;
    };
    if (spec.mode == ScanMode::theorem1_i) {
        for (unsigned long k : spec.k_set) {
            if (!is_theorem1_degree(k))
                throw std::invalid_argument(
                    "scan_theorem1(i): k must be 1, 2, p or 2p with p = 3 mod 4");
            for (unsigned long D : admissible_discriminants(k)) {
                for (unsigned long g = 1; g < k; ++g) {
                    if (std::gcd(g, k) != 1) continue;
                    items.push_back({k, 1, D, k, static_cast<long>(g)});
                }
            }
        }
    } else if (spec.mode == ScanMode::theorem1_ii) {
        for (unsigned long p : spec.p_set) {
            if (p < 7 || !is_prime_small(p) || p % 4 != 3)
                throw std::invalid_argument("scan_theorem1(ii): p must be a prime >= 7 with p = 3 mod 4");
            for (unsigned long Q = std::max<unsigned long>(2, spec.Q_min); Q <= spec.Q_max; ++Q) {
                for (unsigned long k : {p * Q, 2 * p * Q}) {
                    if (!inequality_filter(p, Q, k)) continue;
                    if (!sqrt_minus_D_exists(p, k)) continue;
                    items.push_back({k, 1, p, k, 1});
                }
            }
        }
    } else {
        throw std::invalid_argument("scan_theorem1: wrong mode");
    }
    return detail::run_items(spec, items);
}

// Theorem 2 scan: r = Phi_{dk}, t = x^{dg} + 1 with dg < phi(dk); d must be
// squarefree and coprime to k (reduce first via reduce_theorem2_parameters).
inline ScanReport scan_theorem2(const ScanSpec& spec) {
    if (spec.mode != ScanMode::theorem2) throw std::invalid_argument("scan_theorem2: wrong mode");
    std::vector<detail::WorkItem> items;
    for (unsigned long k : spec.k_set) {
        std::vector<unsigned long> ds;
        if (!spec.d_set.empty()) {
            for (unsigned long d : spec.d_set) {
                if (!is_squarefree(d) || std::gcd(d, k) != 1)
                    throw std::invalid_argument(
                        "scan_theorem2: d must be squarefree and coprime to k "
                        "(pre-reduce via reduce_theorem2_parameters)");
                if (d * k <= spec.dk_max) ds.push_back(d);
            }
        } else {
            for (unsigned long d = 1; d * k <= spec.dk_max; ++d)
                if (is_squarefree(d) && std::gcd(d, k) == 1) ds.push_back(d);
        }
        for (unsigned long d : ds) {
            unsigned long l = d * k;
            unsigned long phi = euler_phi(l);
            if (phi < 2) continue;
            auto Ds = admissible_discriminants(l);
            if (Ds.empty()) continue;
            for (unsigned long g = 1; d * g < phi; ++g) {
                if (std::gcd(g, k) != 1) continue;
                for (unsigned long D : Ds)
                    items.push_back({k, d, D, l, static_cast<long>(g)});
            }
        }
    }
    return detail::run_items(spec, items);
}

// TSV rows: k, d, D, g, deg_t, deg_y, rho
inline std::string scan_tsv(const ScanReport& rep) {
    std::string out = "k\td\tD\tg\tdeg_t\tdeg_y\trho\n";
    for (const auto& r : rep.rows) {
        out += std::to_string(r.k) + "\t" + std::to_string(r.d) + "\t" + std::to_string(r.D) +
               "\t" + std::to_string(r.g) + "\t" + std::to_string(r.deg_t) + "\t" +
               std::to_string(r.deg_y) + "\t" + format_rat(r.rho) + "\n";
    }
    return out;
}

} // namespace forge
