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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "bellq/bell.hpp"
#include "bellq/errors.hpp"
#include "bellq/pauli.hpp"
#include "bellq/qstate.hpp"

namespace bellq {

/// |u⟩ ⊗ (λ₊ e^{iφ₊} |v⟩|1⟩ + λ₋ e^{iφ₋} |v̄⟩|0⟩) with subsystem A = qubit n.
struct FamilySpec {
    int n = 2;
    int alpha = 2;
    std::string u_bits;       ///< spectator basis state, length n - alpha
    std::string v_bits = "1";  ///< length alpha - 1; ṽ is its bitwise complement
    Complex phase_plus{1.0, 0.0};
    Complex phase_minus{1.0, 0.0};
    double lambda_plus = 1.0 / std::numbers::sqrt2;

    double lambda_minus() const { return std::sqrt(std::max(0.0, 1.0 - lambda_plus * lambda_plus)); }

    void validate() const {
        if (alpha < 2 || alpha > n)
            throw ShapeError("alpha must satisfy 2 <= alpha <= n (alpha=" + std::to_string(alpha) + ", n=" + std::to_string(n) + ")");
        if (static_cast<int>(u_bits.size()) != n - alpha) throw ShapeError("u_bits must have length n - alpha");
        if (static_cast<int>(v_bits.size()) != alpha - 1) throw ShapeError("v_bits must have length alpha - 1");
        for (char c : u_bits + v_bits)
            if (c != '0' && c != '1') throw ShapeError("bit strings may only contain 0 and 1");
        if (!(lambda_plus >= 0.0 && lambda_plus <= 1.0)) throw DomainError("lambda_plus must lie in [0, 1]");
        if (std::abs(std::abs(phase_plus) - 1.0) > 1e-12 || std::abs(std::abs(phase_minus) - 1.0) > 1e-12)
            throw DomainError("branch phases must have unit modulus");
    }
};

inline StateVector family_state(const FamilySpec& spec) {
    spec.validate();
    std::string v_bar = spec.v_bits;
    for (char& c : v_bar) c = (c == '0') ? '1' : '0';
    return from_terms(spec.n, {{spec.u_bits + spec.v_bits + "1", spec.lambda_plus * spec.phase_plus},
                               {spec.u_bits + v_bar + "0", spec.lambda_minus() * spec.phase_minus}});
}

enum class Branch { EvenBelow, EvenAbove, OddBelow, OddAbove };

inline std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::EvenBelow: return "even-below";
        case Branch::EvenAbove: return "even-above";
        case Branch::OddBelow: return "odd-below";
        case Branch::OddAbove: return "odd-above";
    }
    return "?";
}

namespace detail {

inline double checked_concurrence(double c) {
    if (!(c >= -1e-12 && c <= 1.0 + 1e-12)) throw DomainError("concurrence must lie in [0, 1]");
    return std::clamp(c, 0.0, 1.0);
}

inline void check_alpha(int alpha) {
    if (alpha < 2) throw DomainError("alpha must be at least 2");
}

}  // namespace detail

/// Which piece of f_α applies. At the threshold itself the first piece is used.
inline Branch f_alpha_branch(double c, int alpha) {
    c = detail::checked_concurrence(c);
    detail::check_alpha(alpha);
    const double c2 = c * c;
    if (alpha % 2 == 0) return std::ldexp(1.0, 2 - alpha) >= c2 ? Branch::EvenBelow : Branch::EvenAbove;
    return 1.0 / (1.0 + std::ldexp(1.0, alpha - 2)) >= c2 ? Branch::OddBelow : Branch::OddAbove;
}

/// Closed-form maximal violation divided by two, as a function of concurrence.
inline double f_alpha(double c, int alpha) {
    const Branch branch = f_alpha_branch(c, alpha);
    c = detail::checked_concurrence(c);
    const double c2 = c * c;
    const double scale = std::ldexp(1.0, alpha - 2);
    switch (branch) {
        case Branch::EvenBelow: return std::sqrt(1.0 + scale * c2);
        case Branch::OddBelow: return std::sqrt(1.0 + (scale - 1.0) * c2);
        case Branch::EvenAbove:
        case Branch::OddAbove: return std::pow(2.0, 0.5 * (alpha - 1)) * c;
    }
    return 0.0;
}

/// Predicted R†R eigenvalues {2^(α-2)C², 2^(α-2)C², 1 or 1 - C²}, unsorted.
inline std::array<double, 3> predicted_spectrum(double c, int alpha) {
    c = detail::checked_concurrence(c);
    detail::check_alpha(alpha);
    const double transverse = std::ldexp(c * c, alpha - 2);
    return {transverse, transverse, alpha % 2 == 0 ? 1.0 : 1.0 - c * c};
}

struct TheoremConfig {
    OptimizerConfig optimizer;
    double theorem_tol = 1e-4;
    double spectral_tol = 1e-9;
};

struct TheoremReport {
    FamilySpec spec;
    double concurrence = 0.0;
    Branch branch = Branch::EvenBelow;
    double predicted_gamma = 0.0;
    double gamma_hat = 0.0;
    double gamma_restricted = 0.0;
    double spectral_bound = 0.0;
    std::array<double, 3> spectrum{};
    std::array<double, 3> predicted{};
    bool spectrum_ok = false;
    bool converged = false;
    bool pass = false;
};

/// Builds the family state and checks optimizer, spectral bound and closed form against each other.
inline TheoremReport verify(const FamilySpec& spec, const TheoremConfig& cfg = {}) {
    const StateVector state = family_state(spec);
    const CorrelationTensor r = correlation_tensor(state);

    TheoremReport rep;
    rep.spec = spec;
    rep.concurrence = concurrence_pure(state, Bipartition::make(spec.n, {spec.n}));
    rep.branch = f_alpha_branch(rep.concurrence, spec.alpha);
    rep.predicted_gamma = 2.0 * f_alpha(rep.concurrence, spec.alpha);
    rep.spectrum = gram_spectrum(r);
    rep.spectral_bound = lemma_bound(r);
    rep.predicted = predicted_spectrum(rep.concurrence, spec.alpha);

    std::array<double, 3> expected = rep.predicted;
    std::sort(expected.begin(), expected.end(), std::greater<>());
    rep.spectrum_ok = true;
    for (std::size_t i = 0; i < 3; ++i)
        rep.spectrum_ok = rep.spectrum_ok && std::abs(expected[i] - rep.spectrum[i]) <= cfg.spectral_tol;

    const FullMaximum full = maximize(r, cfg.optimizer);
    rep.gamma_hat = full.gamma_hat;
    rep.converged = full.converged;
    rep.gamma_restricted = maximize_restricted(r, cfg.optimizer).gamma_hat;

    rep.pass = rep.converged && rep.spectrum_ok && std::abs(rep.gamma_hat - rep.predicted_gamma) <= cfg.theorem_tol;
    return rep;
}

/// Family specs over α ∈ alphas, n ∈ [α, α + max_extra] and the given λ₊ values.
/// Each configuration appears twice: spectators 0…0 with v = 1…1, and alternating
/// spectators 1010… with v = 0101….
inline std::vector<FamilySpec> family_sweep(const std::vector<int>& alphas, int max_extra, const std::vector<double>& lambdas) {
    auto alternating = [](int len, char first) {
        std::string s(static_cast<std::size_t>(len), first);
        for (std::size_t i = 1; i < s.size(); i += 2) s[i] = first == '0' ? '1' : '0';
        return s;
    };
    std::vector<FamilySpec> out;
    for (int alpha : alphas)
        for (int n = alpha; n <= alpha + max_extra; ++n)
            for (double lp : lambdas)
                for (int variant = 0; variant < 2; ++variant) {
                    FamilySpec s;
                    s.n = n;
                    s.alpha = alpha;
                    s.lambda_plus = lp;
                    s.u_bits = variant == 0 ? std::string(static_cast<std::size_t>(n - alpha), '0') : alternating(n - alpha, '1');
                    s.v_bits = variant == 0 ? std::string(static_cast<std::size_t>(alpha - 1), '1') : alternating(alpha - 1, '0');
                    out.push_back(std::move(s));
                }
    return out;
}

}  // namespace bellq
