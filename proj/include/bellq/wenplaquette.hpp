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
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "bellq/errors.hpp"
#include "bellq/pauli.hpp"
#include "bellq/qstate.hpp"

namespace bellq {

/// Periodic lx x ly lattice with one qubit per vertex. `labels[y*lx + x]` is the
/// 1-based qubit sitting at vertex (x, y).
class TorusLattice {
  public:
    static TorusLattice make(int lx, int ly, std::vector<int> labels) {
        if (lx < 2 || ly < 2) throw ShapeError("torus sides must be at least 2");
        if (lx * ly > kMaxQubits) throw SizeLimitError("torus exceeds " + std::to_string(kMaxQubits) + " sites");
        if (static_cast<int>(labels.size()) != lx * ly) throw ShapeError("one label per vertex required");
        std::vector<int> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < lx * ly; ++i)
            if (sorted[static_cast<std::size_t>(i)] != i + 1) throw ShapeError("labels must be a permutation of 1..lx*ly");
        return TorusLattice(lx, ly, std::move(labels));
    }

    static TorusLattice row_major(int lx, int ly) {
        std::vector<int> labels(static_cast<std::size_t>(std::max(lx * ly, 0)));
        for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i) + 1;
        return make(lx, ly, std::move(labels));
    }

    /// Four sites numbered around the plaquette: 1 2 on the bottom row, 4 3 on top.
    static TorusLattice four_site() { return make(2, 2, {1, 2, 4, 3}); }

    /// Six sites, 1 2 3 on the bottom row and 4 5 6 on top.
    static TorusLattice six_site() { return row_major(3, 2); }

    int lx() const { return lx_; }
    int ly() const { return ly_; }
    int num_sites() const { return lx_ * ly_; }

    int site(int x, int y) const {
        x = ((x % lx_) + lx_) % lx_;
        y = ((y % ly_) + ly_) % ly_;
        return labels_[static_cast<std::size_t>(y * lx_ + x)];
    }

    /// Qubits (i, i+x̂, i+x̂+ŷ, i+ŷ), carrying σx, σy, σx, σy.
    std::vector<std::array<int, 4>> plaquettes() const {
        std::vector<std::array<int, 4>> out;
        for (int y = 0; y < ly_; ++y)
            for (int x = 0; x < lx_; ++x) out.push_back({site(x, y), site(x + 1, y), site(x + 1, y + 1), site(x, y + 1)});
        return out;
    }

    /// Number of nearest-neighbour bonds joining A to its complement, counted with multiplicity.
    int boundary_length(const std::vector<int>& subsystem_a) const {
        auto in_a = [&](int q) { return std::find(subsystem_a.begin(), subsystem_a.end(), q) != subsystem_a.end(); };
        int count = 0;
        for (int y = 0; y < ly_; ++y)
            for (int x = 0; x < lx_; ++x) {
                const bool here = in_a(site(x, y));
                if (here != in_a(site(x + 1, y))) ++count;
                if (here != in_a(site(x, y + 1))) ++count;
            }
        return count;
    }

  private:
    TorusLattice(int lx, int ly, std::vector<int> labels) : lx_(lx), ly_(ly), labels_(std::move(labels)) {}

    int lx_;
    int ly_;
    std::vector<int> labels_;
};

using SparseOperator = Eigen::SparseMatrix<Complex>;

inline PauliString plaquette_string(int n, const std::array<int, 4>& p) {
    std::vector<Pauli> labels(static_cast<std::size_t>(n), Pauli::I);
    constexpr std::array<Pauli, 4> kPattern{Pauli::X, Pauli::Y, Pauli::X, Pauli::Y};
    for (std::size_t k = 0; k < 4; ++k) {
        auto& slot = labels[static_cast<std::size_t>(p[k] - 1)];
        if (slot != Pauli::I) throw ShapeError("plaquette visits a site twice");
        slot = kPattern[k];
    }
    return PauliString(std::move(labels));
}

/// Sparse matrix of a Pauli string (one nonzero per column).
inline SparseOperator pauli_operator(const PauliString& p) {
    const int n = static_cast<int>(p.size());
    detail::check_qubit_count(n);
    const std::size_t dim = std::size_t{1} << n;
    std::size_t flip = 0, phase = 0;
    int ny = 0;
    for (int q = 1; q <= n; ++q) {
        const std::size_t bit = std::size_t{1} << detail::bit_position(n, q);
        switch (p[static_cast<std::size_t>(q - 1)]) {
            case Pauli::I: break;
            case Pauli::X: flip |= bit; break;
            case Pauli::Y: flip |= bit; phase |= bit; ++ny; break;
            case Pauli::Z: phase |= bit; break;
        }
    }
    static constexpr std::array<Complex, 4> kPowersOfI{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    const Complex global = kPowersOfI[static_cast<std::size_t>(ny & 3)];
    std::vector<Eigen::Triplet<Complex>> entries;
    entries.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const Complex v = (std::popcount(k & phase) & 1U) ? -global : global;
        entries.emplace_back(static_cast<int>(k ^ flip), static_cast<int>(k), v);
    }
    SparseOperator op(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    op.setFromTriplets(entries.begin(), entries.end());
    return op;
}

inline SparseOperator plaquette_operator(const TorusLattice& lat, const std::array<int, 4>& p) {
    return pauli_operator(plaquette_string(lat.num_sites(), p));
}

/// H = Σ_i σx^i σy^{i+x̂} σx^{i+x̂+ŷ} σy^{i+ŷ}
inline SparseOperator hamiltonian(const TorusLattice& lat) {
    const auto dim = Eigen::Index{1} << lat.num_sites();
    SparseOperator h(dim, dim);
    for (const auto& p : lat.plaquettes()) h += plaquette_operator(lat, p);
    return h;
}

/// The four listed degenerate states of the four-site torus.
inline std::array<StateVector, 4> ground_states_4() {
    return {from_terms(4, {{"0000", 1.0}, {"1111", 1.0}}), from_terms(4, {{"1010", 1.0}, {"0101", 1.0}}),
            from_terms(4, {{"0011", 1.0}, {"1100", -1.0}}), from_terms(4, {{"1001", 1.0}, {"0110", -1.0}})};
}

/// (λ₊/√2)(-|111000⟩ + |001110⟩) + (λ₋/√2)(|100011⟩ + |010101⟩)
inline StateVector ground_state_6(double lambda_plus) {
    if (!(lambda_plus >= 0.0 && lambda_plus <= 1.0)) throw DomainError("lambda_plus must lie in [0, 1]");
    const double lambda_minus = std::sqrt(std::max(0.0, 1.0 - lambda_plus * lambda_plus));
    const double p = lambda_plus / std::numbers::sqrt2;
    const double m = lambda_minus / std::numbers::sqrt2;
    return from_terms(6, {{"111000", -p}, {"001110", p}, {"100011", m}, {"010101", m}});
}

struct EntropyPoint {
    int delta = 1;
    int boundary_length = 0;
    double entropy = 0.0;
};

/// Subsystem A for case δ: {6} or {5, 6}.
inline std::vector<int> wen_subsystem(int delta) {
    if (delta == 1) return {6};
    if (delta == 2) return {5, 6};
    throw DomainError("case indicator must be 1 or 2");
}

inline std::array<EntropyPoint, 2> entropy_points(const StateVector& state) {
    if (state.num_qubits() != 6) throw ShapeError("entropy points are defined for the 6-qubit state");
    const TorusLattice lat = TorusLattice::six_site();
    std::array<EntropyPoint, 2> out;
    for (int delta = 1; delta <= 2; ++delta) {
        const auto a = wen_subsystem(delta);
        out[static_cast<std::size_t>(delta - 1)] = {delta, lat.boundary_length(a), von_neumann_entropy(partial_trace(state, a))};
    }
    return out;
}

/// 2 sqrt(13 - 2^(δ+2) e^(-S)); exact for flat reduced spectra, where Tr ρ² = e^(-S).
inline double inverse_mapping(int delta, double entropy) {
    if (delta != 1 && delta != 2) throw DomainError("case indicator must be 1 or 2");
    const double radicand = 13.0 - std::ldexp(std::exp(-entropy), delta + 2);
    if (radicand < 0.0) throw DomainError("inverse mapping radicand is negative");
    return 2.0 * std::sqrt(radicand);
}

struct AreaLawFit {
    double area_coeff = 0.0;
    double s_tee = 0.0;
};

/// Exact solve of S = area_coeff·L - s_tee through two points.
inline AreaLawFit stee_fit(const EntropyPoint& p1, const EntropyPoint& p2) {
    if (p1.boundary_length == p2.boundary_length) throw DegenerateFitError("boundary lengths coincide");
    const double slope = (p2.entropy - p1.entropy) / (p2.boundary_length - p1.boundary_length);
    return {slope, slope * p1.boundary_length - p1.entropy};
}

/// True when all eigenvalues of ρ are equal within `tol`.
inline bool flat_spectrum(const DensityMatrix& rho, double tol = 1e-12) {
    const Eigen::VectorXd ev = rho.eigenvalues();
    return ev.maxCoeff() - ev.minCoeff() <= tol;
}

struct WenReport {
    double lambda_plus = 0.0;
    std::array<EntropyPoint, 2> entropies{};
    AreaLawFit fit;
    double lemma_bound = 0.0;
    std::array<double, 2> inverse{};
    std::array<bool, 2> flat{};
    std::array<std::optional<double>, 2> concurrence{};
    std::vector<std::string> warnings;
};

/// Full six-qubit pipeline: entropies, area-law fit, spectral bound and inverse mapping.
inline WenReport wen_report(double lambda_plus) {
    const StateVector state = ground_state_6(lambda_plus);
    WenReport rep;
    rep.lambda_plus = lambda_plus;
    rep.entropies = entropy_points(state);
    rep.fit = stee_fit(rep.entropies[0], rep.entropies[1]);
    rep.lemma_bound = lemma_bound(state);
    for (int delta = 1; delta <= 2; ++delta) {
        const auto i = static_cast<std::size_t>(delta - 1);
        const auto a = wen_subsystem(delta);
        rep.inverse[i] = inverse_mapping(delta, rep.entropies[i].entropy);
        rep.flat[i] = flat_spectrum(partial_trace(state, a));
        if (!rep.flat[i])
            rep.warnings.push_back("reduced spectrum for delta=" + std::to_string(delta) +
                                   " is not flat; the inverse mapping is not exact");
        try {
            rep.concurrence[i] = generalized_concurrence(state, Bipartition::make(6, a), delta);
        } catch (const DomainError&) {
            rep.warnings.push_back("generalized concurrence undefined for delta=" + std::to_string(delta));
        }
    }
    return rep;
}

}  // namespace bellq
