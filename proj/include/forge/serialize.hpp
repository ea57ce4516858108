// SPDX-License-Identifier: Apache-2.0
//
// JSON adapters. Polynomials serialize as ascending coefficient strings
// ("num/den", den omitted when 1); big integers as decimal strings.

#pragma once

#include "forge/curve.hpp"
#include "forge/scan.hpp"

#include <json.hpp>

namespace forge {

using json = nlohmann::ordered_json;

inline json to_json(const Polynomial& f) { return json(f.to_strings()); }

inline Polynomial polynomial_from_json(const json& j) {
    std::vector<std::string> v = j.get<std::vector<std::string>>();
    return Polynomial::from_strings(v);
}

inline json to_json(const ConditionReport& r) {
    json j;
    j["r_represents_primes"] = to_cstr(r.r_represents_primes);
    j["r_evidence"] = r.r_evidence;
    j["q_represents_primes"] = to_cstr(r.q_represents_primes);
    j["q_power_base"] = to_json(r.q_power_base);
    j["q_power_exponent"] = r.q_power_exponent;
    j["q_evidence"] = r.q_evidence;
    j["divisibility_iii"] = r.divisibility_iii;
    j["divisibility_iv"] = r.divisibility_iv;
    j["cm_equation_v"] = r.cm_equation_v;
    j["v_witness"] = r.v_witness;
    j["is_complete"] = r.is_complete;
    j["is_sparse_candidate"] = r.is_sparse_candidate;
    j["y_represents_integers"] = r.y_represents_integers;
    j["joint_modulus"] = r.joint_modulus.get_str();
    json residues = json::array();
    for (const Int& a : r.joint_residues) residues.push_back(a.get_str());
    j["joint_residues"] = residues;
    return j;
}

inline json to_json(const FamilyCandidate& f) {
    json j;
    j["k"] = f.k;
    j["D"] = f.D;
    j["l"] = f.l;
    j["g"] = f.g;
    j["t"] = to_json(f.t);
    j["r"] = to_json(f.r);
    j["q"] = to_json(f.q);
    j["y"] = to_json(f.y);
    j["h"] = to_json(f.h);
    j["rho"] = format_rat(f.rho);
    j["conditions"] = to_json(f.report);
    return j;
}

inline json to_json(const ScanReport& rep) {
    json j;
    j["mode"] = to_cstr(rep.spec.mode);
    j["candidates_examined"] = rep.candidates_examined;
    json hist = json::object();
    for (const auto& [rho, n] : rep.rho_histogram) hist[format_rat(rho)] = n;
    j["rho_histogram"] = hist;
    j["min_rho"] = rep.min_rho ? json(format_rat(*rep.min_rho)) : json(nullptr);
    json by_k = json::object();
    for (const auto& [k, rho] : rep.min_rho_by_k) by_k[std::to_string(k)] = format_rat(rho);
    j["min_rho_by_k"] = by_k;
    json viols = json::array();
    for (const auto& f : rep.violations) viols.push_back(to_json(f));
    j["violations"] = viols;
    json rows = json::array();
    for (const auto& r : rep.rows) {
        json row;
        row["k"] = r.k;
        row["d"] = r.d;
        row["D"] = r.D;
        row["g"] = r.g;
        row["deg_t"] = r.deg_t;
        row["deg_y"] = r.deg_y;
        row["rho"] = format_rat(r.rho);
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

inline json to_json(const CurveInstance& c) {
    json j;
    j["x0"] = c.x0.get_str();
    j["q"] = c.q.get_str();
    j["r"] = c.r.get_str();
    j["t"] = c.t.get_str();
    j["h"] = c.h.get_str();
    j["y"] = c.y.get_str();
    j["D"] = c.D.get_str();
    j["A"] = c.A.get_str();
    j["B"] = c.B.get_str();
    j["k_verified"] = c.k_verified;
    j["rho_numeric"] = c.rho_numeric;
    j["pairing_friendly"] = c.pairing_friendly;
    return j;
}

inline json to_json(const SearchResult& s) {
    json j;
    json inst = json::array();
    for (const auto& c : s.instances) inst.push_back(to_json(c));
    j["instances"] = inst;
    json rej = json::array();
    for (const auto& r : s.rejections) {
        json e;
        e["x0"] = r.x0.get_str();
        e["reason"] = r.reason;
        rej.push_back(e);
    }
    j["rejections"] = rej;
    return j;
}

} // namespace forge
