// SPDX-License-Identifier: Apache-2.0
//
// forge: construct, verify, scan and instantiate pairing-friendly curve
// families. Exit codes: 0 pass, 1 mathematical failure, 2 usage error.

#include "forge/serialize.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace forge;

Polynomial parse_poly_arg(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    parts.push_back(cur);
    return Polynomial::from_strings(parts);
}

unsigned threads_default() {
    if (const char* env = std::getenv("FORGE_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

void print_family(const FamilyCandidate& fam) {
    std::cout << "k = " << fam.k << ", D = " << fam.D;
    if (fam.l != 0) std::cout << ", l = " << fam.l << ", g = " << fam.g;
    std::cout << "\n";
    std::cout << "t(x) = " << fam.t.to_string() << "\n";
    std::cout << "r(x) = " << fam.r.to_string() << "\n";
    std::cout << "q(x) = " << fam.q.to_string() << "\n";
    std::cout << "y(x) = " << fam.y.to_string() << "\n";
    std::cout << "h(x) = " << fam.h.to_string() << "\n";
    std::cout << "rho  = " << format_rat(fam.rho) << "\n";
    const ConditionReport& c = fam.report;
    std::cout << "conditions:\n";
    std::cout << "  (i)   r represents primes: " << to_cstr(c.r_represents_primes) << " ("
              << c.r_evidence << ")\n";
    std::cout << "  (ii)  q represents primes: " << to_cstr(c.q_represents_primes)
              << " (" << c.q_evidence << ")\n";
    std::cout << "  (iii) r | q + 1 - t: " << (c.divisibility_iii ? "yes" : "no") << "\n";
    std::cout << "  (iv)  r | Phi_k(t - 1): " << (c.divisibility_iv ? "yes" : "no") << "\n";
    std::cout << "  (v)   D y^2 = 4q - t^2: " << (c.cm_equation_v ? "yes" : "no") << " ("
              << c.v_witness << ")\n";
    std::cout << (c.is_complete ? "complete family"
                                : (c.is_sparse_candidate ? "sparse-family candidate"
                                                         : "not a complete family"))
              << ", rho = " << format_rat(fam.rho) << "\n";
}

// reason string for the first failed condition
std::string failure_reason(const FamilyCandidate& fam) {
    const ConditionReport& c = fam.report;
    if (c.r_represents_primes != PrimesVerdict::yes_heuristic)
        return "r(x) fails the primes heuristic: " + c.r_evidence;
    if (c.q_represents_primes != PrimesVerdict::yes_heuristic) {
        if (c.q_evidence == "reducible over Q")
            return "q(x) reducible: " + fam.q.to_string();
        return "q(x) fails the primes heuristic: " + c.q_evidence;
    }
    if (!c.divisibility_iii) return "r does not divide q + 1 - t";
    if (!c.divisibility_iv) return "r does not divide Phi_k(t - 1)";
    if (!c.cm_equation_v) return "no polynomial y with D y^2 = 4q - t^2";
    return "unknown";
}

int report_family(const FamilyCandidate& fam, bool json_out) {
    if (json_out) {
        std::cout << to_json(fam).dump(2) << "\n";
    } else {
        print_family(fam);
        if (!fam.report.is_complete) std::cout << "reason: " << failure_reason(fam) << "\n";
    }
    return fam.report.is_complete ? 0 : 1;
}

int report_scan(const ScanReport& rep, bool json_out, bool tsv) {
    if (json_out) {
        std::cout << to_json(rep).dump(2) << "\n";
    } else if (tsv) {
        std::cout << scan_tsv(rep);
    } else {
        std::cout << "mode: " << to_cstr(rep.spec.mode) << "\n";
        std::cout << "candidates examined: " << rep.candidates_examined << "\n";
        std::cout << "rho histogram:\n";
        for (const auto& [rho, n] : rep.rho_histogram)
            std::cout << "  rho = " << format_rat(rho) << ": " << n << "\n";
        if (rep.min_rho)
            std::cout << "min rho: " << format_rat(*rep.min_rho) << "\n";
        else
            std::cout << "no candidates\n";
        std::cout << "violations (complete families with rho = 1): " << rep.violations.size()
                  << "\n";
    }
    return rep.violations.empty() ? 0 : 1;
}

FamilyCandidate load_family(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("family-file", "cannot open " + path);
    json j = json::parse(in);
    Polynomial t = polynomial_from_json(j.at("t"));
    Polynomial r = polynomial_from_json(j.at("r"));
    Polynomial q = polynomial_from_json(j.at("q"));
    unsigned long k = j.at("k").get<unsigned long>();
    unsigned long D = j.at("D").get<unsigned long>();
    return candidate_from_triple(t, r, q, k, D);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pairing-friendly curve family construction, scanning and instantiation"};
    app.require_subcommand(1);
    bool json_out = false;
    app.add_flag("--json", json_out, "emit JSON on stdout");

    // build-family
    auto* build = app.add_subcommand("build-family", "Brezing-Weng construction for (k, D, l, g)");
    unsigned long bf_k = 0, bf_D = 0, bf_l = 0;
    long bf_g = 1;
    build->add_option("-k,--embedding-degree", bf_k, "target embedding degree k")->required();
    build->add_option("-D,--discriminant", bf_D, "CM discriminant (squarefree)")->required();
    build->add_option("-l,--cyclotomic-index", bf_l, "index l of Q(mu_l), k | l")->required();
    build->add_option("-g,--root-exponent", bf_g, "exponent g with gcd(g, k) = 1");

    // verify
    auto* verify = app.add_subcommand("verify", "check the complete-family conditions for (t, r, q)");
    std::string v_t, v_r, v_q;
    unsigned long v_k = 0, v_D = 0;
    verify->add_option("--t", v_t, "t(x), comma-separated ascending coefficients")->required();
    verify->add_option("--r", v_r, "r(x), comma-separated ascending coefficients")->required();
    verify->add_option("--q", v_q, "q(x), comma-separated ascending coefficients")->required();
    verify->add_option("-k,--embedding-degree", v_k, "embedding degree k")->required();
    verify->add_option("-D,--discriminant", v_D, "CM discriminant (squarefree)")->required();

    // scan
    auto* scan = app.add_subcommand("scan", "exhaustive rho = 1 non-existence scan");
    std::string s_theorem;
    unsigned long s_pmax = 31, s_Qmax = 13, s_dkmax = 60;
    std::vector<unsigned long> s_kset, s_pset, s_dset;
    bool s_tsv = false;
    unsigned s_threads = threads_default();
    scan->add_option("--theorem", s_theorem, "scan class: 1i, 1ii or 2")->required();
    scan->add_option("--pmax", s_pmax, "largest prime p (default 31)");
    scan->add_option("--qmax", s_Qmax, "largest Q for class 1ii (default 13)");
    scan->add_option("--dkmax", s_dkmax, "largest dk for class 2 (default 60)");
    scan->add_option("-k,--k-set", s_kset, "explicit k values (overrides --pmax for 1i/2)");
    scan->add_option("-p,--p-set", s_pset, "explicit p values for class 1ii");
    scan->add_option("-d,--d-set", s_dset, "explicit d values for class 2 (squarefree, coprime to k)");
    scan->add_flag("--tsv", s_tsv, "emit TSV rows instead of the summary");
    scan->add_option("--threads", s_threads, "worker threads (env FORGE_THREADS)");

    // instantiate
    auto* inst = app.add_subcommand("instantiate", "evaluate a family file over an x0 range");
    std::string i_file;
    long i_from = 0, i_to = 0;
    unsigned long i_seed = 0;
    inst->add_option("--family-file", i_file, "JSON family file (as emitted by build-family --json)")
        ->required();
    inst->add_option("--x-from", i_from, "range start")->required();
    inst->add_option("--x-to", i_to, "range end (inclusive)")->required();
    inst->add_option("--seed", i_seed, "RNG seed for primality and point sampling");

    // show
    auto* show = app.add_subcommand("show", "re-verify and display a family file");
    std::string sh_file;
    show->add_option("family-file", sh_file, "JSON family file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*build) {
            std::cerr << "# build-family k=" << bf_k << " D=" << bf_D << " l=" << bf_l
                      << " g=" << bf_g << "\n";
            return report_family(brezing_weng(bf_k, bf_D, bf_l, bf_g), json_out);
        }
        if (*verify) {
            std::cerr << "# verify k=" << v_k << " D=" << v_D << "\n";
            FamilyCandidate fam = candidate_from_triple(parse_poly_arg(v_t), parse_poly_arg(v_r),
                                                        parse_poly_arg(v_q), v_k, v_D);
            return report_family(fam, json_out);
        }
        if (*scan) {
            ScanSpec spec;
            spec.threads = s_threads;
            spec.Q_max = s_Qmax;
            spec.dk_max = s_dkmax;
            spec.d_set = s_dset;
            ScanReport rep;
            if (s_theorem == "1i") {
                spec.mode = ScanMode::theorem1_i;
                if (!s_kset.empty()) {
                    spec.k_set = s_kset;
                } else {
                    spec.k_set = {1, 2};
                    for (unsigned long p : primes_up_to(s_pmax))
                        if (p % 4 == 3) {
                            spec.k_set.push_back(p);
                            spec.k_set.push_back(2 * p);
                        }
                }
                std::cerr << "# scan theorem=1i pmax=" << s_pmax << " threads=" << s_threads
                          << "\n";
                rep = scan_theorem1(spec);
            } else if (s_theorem == "1ii") {
                spec.mode = ScanMode::theorem1_ii;
                if (!s_pset.empty()) {
                    spec.p_set = s_pset;
                } else {
                    for (unsigned long p : primes_up_to(s_pmax))
                        if (p >= 7 && p % 4 == 3) spec.p_set.push_back(p);
                }
                std::cerr << "# scan theorem=1ii pmax=" << s_pmax << " Qmax=" << s_Qmax
                          << " threads=" << s_threads << "\n";
                rep = scan_theorem1(spec);
            } else if (s_theorem == "2") {
                spec.mode = ScanMode::theorem2;
                if (!s_kset.empty()) spec.k_set = s_kset;
                else spec.k_set = {3, 4, 6, 8, 9, 12, 16, 18};
                std::cerr << "# scan theorem=2 dkmax=" << s_dkmax << " threads=" << s_threads
                          << "\n";
                rep = scan_theorem2(spec);
            } else {
                std::cerr << "unknown --theorem class: " << s_theorem << " (use 1i, 1ii or 2)\n";
                return 2;
            }
            return report_scan(rep, json_out, s_tsv);
        }
        if (*inst) {
            std::cerr << "# instantiate family-file=" << i_file << " x-from=" << i_from
                      << " x-to=" << i_to << " seed=" << i_seed << "\n";
            FamilyCandidate fam = load_family(i_file);
            SearchResult res = search_instances(fam, Int(i_from), Int(i_to), i_seed);
            if (json_out) {
                std::cout << to_json(res).dump(2) << "\n";
            } else {
                std::printf("%-8s %-24s %-24s %-12s %-4s %-10s %s\n", "x0", "q", "r", "t", "k",
                            "rho", "pairing_friendly");
                for (const auto& c : res.instances)
                    std::printf("%-8s %-24s %-24s %-12s %-4lu %-10.4f %s\n",
                                c.x0.get_str().c_str(), c.q.get_str().c_str(),
                                c.r.get_str().c_str(), c.t.get_str().c_str(), c.k_verified,
                                c.rho_numeric, c.pairing_friendly ? "yes" : "no");
                std::cout << res.instances.size() << " instance(s), " << res.rejections.size()
                          << " rejection(s)\n";
            }
            return 0;
        }
        if (*show) {
            std::cerr << "# show family-file=" << sh_file << "\n";
            return report_family(load_family(sh_file), json_out);
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
