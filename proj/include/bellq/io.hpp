// Copyright 2026 The bellq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bellq/bell.hpp"
#include "bellq/errors.hpp"
#include "bellq/pauli.hpp"
#include "bellq/qstate.hpp"
#include "bellq/theorem.hpp"
#include "bellq/wenplaquette.hpp"

namespace bellq::io {

using nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline double number(const json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string("field '") + what + "' must be a number");
    return j.get<double>();
}

inline int integer(const json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string("field '") + what + "' must be an integer");
    return j.get<int>();
}

inline std::string text(const json& j, const char* what) {
    if (!j.is_string()) throw ParseError(std::string("field '") + what + "' must be a string");
    return j.get<std::string>();
}

inline Complex complex_value(const json& j) {
    if (!j.is_object()) throw ParseError("complex value must be an object with 're'/'im'");
    const double re = j.contains("re") ? number(j.at("re"), "re") : 0.0;
    const double im = j.contains("im") ? number(j.at("im"), "im") : 0.0;
    return {re, im};
}

inline json vec3(const UnitVector3& v) { return json::array({v[0], v[1], v[2]}); }

inline UnitVector3 unit_vector(const json& j) {
    if (!j.is_array() || j.size() != 3) throw ParseError("unit vector must be an array of three numbers");
    return UnitVector3::from(number(j[0], "x"), number(j[1], "y"), number(j[2], "z"));
}

inline std::vector<UnitVector3> vec_list(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string("field '") + what + "' must be an array");
    std::vector<UnitVector3> out;
    for (const auto& v : j) out.push_back(unit_vector(v));
    return out;
}

inline json vec_list(const std::vector<UnitVector3>& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(vec3(v));
    return out;
}

}  // namespace detail

/// Accepts {"n", "terms": [{"bits","re","im"}]} or {"n", "amplitudes": [{"re","im"}]}.
inline StateVector state_from_json(const json& j) {
    const int n = detail::integer(detail::field(j, "n"), "n");
    if (j.contains("terms")) {
        const json& terms = j.at("terms");
        if (!terms.is_array()) throw ParseError("field 'terms' must be an array");
        std::vector<Term> parsed;
        for (const auto& t : terms) parsed.push_back({detail::text(detail::field(t, "bits"), "bits"), detail::complex_value(t)});
        return from_terms(n, parsed);
    }
    if (j.contains("amplitudes")) {
        const json& amps = j.at("amplitudes");
        if (!amps.is_array()) throw ParseError("field 'amplitudes' must be an array");
        bellq::detail::check_qubit_count(n);
        if (amps.size() != (std::size_t{1} << n)) throw ShapeError("amplitude list length must be 2^n");
        Amplitudes a(static_cast<Eigen::Index>(amps.size()));
        for (std::size_t k = 0; k < amps.size(); ++k) a[static_cast<Eigen::Index>(k)] = detail::complex_value(amps[k]);
        return StateVector::from_amplitudes(std::move(a));
    }
    throw ParseError("state needs either 'terms' or 'amplitudes'");
}

inline json state_to_json(const StateVector& s) {
    json amps = json::array();
    for (std::size_t k = 0; k < s.dim(); ++k) amps.push_back({{"re", s[k].real()}, {"im", s[k].imag()}});
    return {{"n", s.num_qubits()}, {"amplitudes", std::move(amps)}};
}

inline json tensor_to_json(const CorrelationTensor& r) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < r.rows(); ++i) rows.push_back(json::array({r(i, 0), r(i, 1), r(i, 2)}));
    return {{"n", r.num_qubits()}, {"rows", r.rows()}, {"entries", std::move(rows)}};
}

inline json settings_to_json(const BellSettings& s) {
    return {{"n", s.n}, {"b", detail::vec3(s.b)}, {"b_prime", detail::vec3(s.b_prime)},
            {"a", detail::vec_list(s.a)}, {"a_prime", detail::vec_list(s.a_prime)}};
}

inline BellSettings settings_from_json(const json& j) {
    BellSettings s;
    s.n = detail::integer(detail::field(j, "n"), "n");
    s.b = detail::unit_vector(detail::field(j, "b"));
    s.b_prime = detail::unit_vector(detail::field(j, "b_prime"));
    s.a = detail::vec_list(detail::field(j, "a"), "a");
    s.a_prime = detail::vec_list(detail::field(j, "a_prime"), "a_prime");
    s.validate(s.n);
    return s;
}

inline json full_settings_to_json(const FullBellSettings& s) {
    return {{"n", s.n}, {"a", detail::vec_list(s.a)}, {"a_prime", detail::vec_list(s.a_prime)}, {"leaf", detail::vec_list(s.leaf)}};
}

inline FullBellSettings full_settings_from_json(const json& j) {
    FullBellSettings s;
    s.n = detail::integer(detail::field(j, "n"), "n");
    s.a = detail::vec_list(detail::field(j, "a"), "a");
    s.a_prime = detail::vec_list(detail::field(j, "a_prime"), "a_prime");
    s.leaf = detail::vec_list(detail::field(j, "leaf"), "leaf");
    s.validate(s.n);
    return s;
}

inline FamilySpec family_spec_from_json(const json& j) {
    FamilySpec spec;
    spec.n = detail::integer(detail::field(j, "n"), "n");
    spec.alpha = detail::integer(detail::field(j, "alpha"), "alpha");
    spec.u_bits = j.contains("u_bits") ? detail::text(j.at("u_bits"), "u_bits") : std::string();
    spec.v_bits = detail::text(detail::field(j, "v_bits"), "v_bits");
    spec.lambda_plus = detail::number(detail::field(j, "lambda_plus"), "lambda_plus");
    if (j.contains("phase_plus")) spec.phase_plus = detail::complex_value(j.at("phase_plus"));
    if (j.contains("phase_minus")) spec.phase_minus = detail::complex_value(j.at("phase_minus"));
    spec.validate();
    return spec;
}

inline json family_spec_to_json(const FamilySpec& s) {
    return {{"n", s.n},
            {"alpha", s.alpha},
            {"u_bits", s.u_bits},
            {"v_bits", s.v_bits},
            {"lambda_plus", s.lambda_plus},
            {"phase_plus", {{"re", s.phase_plus.real()}, {"im", s.phase_plus.imag()}}},
            {"phase_minus", {{"re", s.phase_minus.real()}, {"im", s.phase_minus.imag()}}}};
}

/// Optional keys: starts, seed, tolerance, max_iters, theorem_tol.
inline void apply_config(const json& j, TheoremConfig& cfg) {
    if (!j.is_object()) throw ParseError("optimizer config must be an object");
    if (j.contains("starts")) cfg.optimizer.starts = detail::integer(j.at("starts"), "starts");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) throw ParseError("field 'seed' must be a non-negative integer");
        cfg.optimizer.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("tolerance")) cfg.optimizer.tolerance = detail::number(j.at("tolerance"), "tolerance");
    if (j.contains("max_iters")) cfg.optimizer.max_iters = detail::integer(j.at("max_iters"), "max_iters");
    if (j.contains("theorem_tol")) cfg.theorem_tol = detail::number(j.at("theorem_tol"), "theorem_tol");
}

struct Sweep {
    std::vector<FamilySpec> specs;
    std::optional<json> optimizer;
};

/// A bare list of specs, or {"specs": [...], "optimizer": {...}}.
inline Sweep sweep_from_json(const json& j) {
    Sweep out;
    const json* list = &j;
    if (j.is_object()) {
        list = &detail::field(j, "specs");
        if (j.contains("optimizer")) out.optimizer = j.at("optimizer");
    }
    if (!list->is_array()) throw ParseError("sweep must be a list of family specs");
    for (const auto& s : *list) out.specs.push_back(family_spec_from_json(s));
    return out;
}

inline json report_to_json(const TheoremReport& r) {
    auto triple = [](const std::array<double, 3>& t) { return json::array({t[0], t[1], t[2]}); };
    return {{"spec", family_spec_to_json(r.spec)},
            {"concurrence", r.concurrence},
            {"branch", std::string(to_string(r.branch))},
            {"predicted_gamma", r.predicted_gamma},
            {"gamma_hat", r.gamma_hat},
            {"gamma_restricted", r.gamma_restricted},
            {"spectral_bound", r.spectral_bound},
            {"spectrum", triple(r.spectrum)},
            {"predicted_spectrum", triple(r.predicted)},
            {"spectrum_ok", r.spectrum_ok},
            {"converged", r.converged},
            {"pass", r.pass}};
}

inline json wen_report_to_json(const WenReport& r) {
    json entropies = json::array();
    for (const auto& p : r.entropies) entropies.push_back({{"delta", p.delta}, {"L", p.boundary_length}, {"S", p.entropy}});
    json concurrence = json::array();
    for (const auto& c : r.concurrence) concurrence.push_back(c ? json(*c) : json(nullptr));
    return {{"lambda_plus", r.lambda_plus},
            {"entropies", std::move(entropies)},
            {"s_tee", r.fit.s_tee},
            {"area_coeff", r.fit.area_coeff},
            {"quantum_dimension", std::exp(2.0 * r.fit.s_tee)},
            {"lemma_bound", r.lemma_bound},
            {"inverse_mapping", json::array({r.inverse[0], r.inverse[1]})},
            {"flat_spectrum", json::array({r.flat[0], r.flat[1]})},
            {"concurrence", std::move(concurrence)},
            {"warnings", r.warnings}};
}

}  // namespace bellq::io
