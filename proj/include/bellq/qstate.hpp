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
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bellq/errors.hpp"
#include "bellq/random.hpp"

namespace bellq {

using Complex = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;

/// Dense state vectors are capped at this many qubits.
inline constexpr int kMaxQubits = 12;

/// Tolerances shared across the density-matrix checks.
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kDensityTolerance = 1e-10;

namespace detail {

inline void check_qubit_count(int n) {
    if (n < 1) throw ShapeError("qubit count must be positive, got " + std::to_string(n));
    if (n > kMaxQubits)
        throw SizeLimitError("qubit count " + std::to_string(n) + " exceeds the dense limit of " +
                             std::to_string(kMaxQubits));
}

/// Bit position (LSB = 0) of a 1-based qubit. Qubit 1 is the most significant bit.
inline int bit_position(int n, int qubit) { return n - qubit; }

}  // namespace detail

/// Pure n-qubit state with unit norm. Normalization happens once, at construction.
class StateVector {
  public:
    /// Normalizes `amps`. The length must be a power of two. Vectors already
    /// normalized to rounding are kept bit for bit, so export/import is exact.
    static StateVector from_amplitudes(Amplitudes amps) {
        const auto dim = static_cast<std::size_t>(amps.size());
        if (dim < 2 || (dim & (dim - 1)) != 0)
            throw ShapeError("amplitude count " + std::to_string(dim) + " is not a power of two >= 2");
        int n = 0;
        while ((std::size_t{1} << n) < dim) ++n;
        detail::check_qubit_count(n);
        const double norm = amps.norm();
        if (!(norm > 0.0) || !std::isfinite(norm)) throw ZeroStateError("state has zero or non-finite norm");
        if (std::abs(norm - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) amps /= norm;
        return StateVector(n, std::move(amps));
    }

    int num_qubits() const { return n_; }
    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const Amplitudes& amplitudes() const { return amps_; }
    Complex operator[](std::size_t k) const { return amps_[static_cast<Eigen::Index>(k)]; }

  private:
    StateVector(int n, Amplitudes amps) : n_(n), amps_(std::move(amps)) {}

    int n_;
    Amplitudes amps_;
};

/// ⟨a|b⟩
inline Complex inner(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) throw ShapeError("inner product of states with different qubit counts");
    return a.amplitudes().dot(b.amplitudes());
}

struct Term {
    std::string bits;
    Complex coefficient;
};

/// Builds a state from ket strings such as {"011", 1.0}. Duplicate strings add up.
inline StateVector from_terms(int n, const std::vector<Term>& terms) {
    detail::check_qubit_count(n);
    Amplitudes amps = Amplitudes::Zero(Eigen::Index{1} << n);
    for (const auto& t : terms) {
        if (static_cast<int>(t.bits.size()) != n)
            throw ShapeError("bitstring '" + t.bits + "' has length " + std::to_string(t.bits.size()) +
                             ", expected " + std::to_string(n));
        Eigen::Index k = 0;
        for (char c : t.bits) {
            if (c != '0' && c != '1') throw ShapeError("bitstring '" + t.bits + "' contains a non-binary character");
            k = (k << 1) | (c == '1' ? 1 : 0);
        }
        amps[k] += t.coefficient;
    }
    if (amps.squaredNorm() == 0.0) throw ZeroStateError("all term coefficients vanish");
    return StateVector::from_amplitudes(std::move(amps));
}

/// A split of qubits {1..n} into a nonempty proper subset A and its complement B.
class Bipartition {
  public:
    static Bipartition make(int n, std::vector<int> subsystem_a) {
        if (subsystem_a.empty()) throw BipartitionError("subsystem A is empty");
        std::sort(subsystem_a.begin(), subsystem_a.end());
        if (std::adjacent_find(subsystem_a.begin(), subsystem_a.end()) != subsystem_a.end())
            throw BipartitionError("subsystem A lists a qubit twice");
        for (int q : subsystem_a)
            if (q < 1 || q > n)
                throw BipartitionError("qubit " + std::to_string(q) + " outside 1.." + std::to_string(n));
        if (static_cast<int>(subsystem_a.size()) == n) throw BipartitionError("subsystem A is the whole system");
        std::vector<int> b;
        for (int q = 1; q <= n; ++q)
            if (!std::binary_search(subsystem_a.begin(), subsystem_a.end(), q)) b.push_back(q);
        return Bipartition(n, std::move(subsystem_a), std::move(b));
    }

    int num_qubits() const { return n_; }
    const std::vector<int>& subsystem_a() const { return a_; }
    const std::vector<int>& subsystem_b() const { return b_; }
    Bipartition complement() const { return Bipartition(n_, b_, a_); }

  private:
    Bipartition(int n, std::vector<int> a, std::vector<int> b) : n_(n), a_(std::move(a)), b_(std::move(b)) {}

    int n_;
    std::vector<int> a_;
    std::vector<int> b_;
};

/// Reduced state on an ordered list of qubits.
class DensityMatrix {
  public:
    /// Validates Hermiticity and unit trace at 1e-10.
    static DensityMatrix make(std::vector<int> qubits, Eigen::MatrixXcd entries) {
        const auto dim = Eigen::Index{1} << qubits.size();
        if (entries.rows() != dim || entries.cols() != dim)
            throw ShapeError("density matrix dimension does not match its qubit list");
        if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kDensityTolerance)
            throw NotPositiveError("density matrix is not Hermitian");
        if (std::abs(entries.trace() - Complex(1.0)) > kDensityTolerance)
            throw NotPositiveError("density matrix trace differs from 1");
        return DensityMatrix(std::move(qubits), std::move(entries));
    }

    const std::vector<int>& qubits() const { return qubits_; }
    const Eigen::MatrixXcd& entries() const { return entries_; }

    /// Tr ρ²
    double purity() const { return entries_.cwiseAbs2().sum(); }

    /// Ascending eigenvalues.
    Eigen::VectorXd eigenvalues() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
        return solver.eigenvalues();
    }

  private:
    DensityMatrix(std::vector<int> qubits, Eigen::MatrixXcd entries)
        : qubits_(std::move(qubits)), entries_(std::move(entries)) {}

    std::vector<int> qubits_;
    Eigen::MatrixXcd entries_;
};

namespace detail {

/// ψ reshaped to a dim_a x dim_b matrix, rows indexed by the A qubits.
inline Eigen::MatrixXcd coefficient_matrix(const StateVector& state, const Bipartition& split) {
    const int n = state.num_qubits();
    const auto& a = split.subsystem_a();
    const auto& b = split.subsystem_b();
    Eigen::MatrixXcd psi(Eigen::Index{1} << a.size(), Eigen::Index{1} << b.size());
    for (std::size_t k = 0; k < state.dim(); ++k) {
        Eigen::Index ia = 0, ib = 0;
        for (int q : a) ia = (ia << 1) | static_cast<Eigen::Index>((k >> bit_position(n, q)) & 1U);
        for (int q : b) ib = (ib << 1) | static_cast<Eigen::Index>((k >> bit_position(n, q)) & 1U);
        psi(ia, ib) = state[k];
    }
    return psi;
}

}  // namespace detail

/// ρ_A = Tr_B |ψ⟩⟨ψ|, with kept qubits in ascending order.
inline DensityMatrix partial_trace(const StateVector& state, const std::vector<int>& keep) {
    const Bipartition split = Bipartition::make(state.num_qubits(), keep);
    const Eigen::MatrixXcd psi = detail::coefficient_matrix(state, split);
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    return DensityMatrix::make(split.subsystem_a(), std::move(rho));
}

/// S = -Tr ρ ln ρ in nats. Eigenvalues in [-1e-10, 0) count as zero.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double lambda : rho.eigenvalues()) {
        if (lambda < -kDensityTolerance)
            throw NotPositiveError("density matrix has eigenvalue " + std::to_string(lambda));
        if (lambda > 0.0) s -= lambda * std::log(lambda);
    }
    return std::max(s, 0.0);
}

/// C = sqrt(2 (1 - Tr ρ_A²)).
///
/// Evaluated as 2 sqrt(Σ |Ψ_ij Ψ_kl - Ψ_il Ψ_kj|²) over the 2x2 minors of the
/// coefficient matrix, which equals the above for a normalized state but does
/// not lose half the digits near C = 0 the way 1 - Tr ρ² does.
inline double concurrence_pure(const StateVector& state, const Bipartition& split) {
    if (split.num_qubits() != state.num_qubits()) throw BipartitionError("bipartition built for a different qubit count");
    Eigen::MatrixXcd psi = detail::coefficient_matrix(state, split);
    if (psi.rows() > psi.cols()) psi.transposeInPlace();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < psi.rows(); ++i)
        for (Eigen::Index k = i + 1; k < psi.rows(); ++k)
            for (Eigen::Index j = 0; j < psi.cols(); ++j)
                for (Eigen::Index l = j + 1; l < psi.cols(); ++l)
                    sum += std::norm(psi(i, j) * psi(k, l) - psi(i, l) * psi(k, j));
    return 2.0 * std::sqrt(sum) / state.amplitudes().squaredNorm();
}

/// C(δ) = sqrt(2 (1 - 2^(δ-1) Tr ρ_A²)) for |A| = δ.
inline double generalized_concurrence(const StateVector& state, const Bipartition& split, int delta) {
    if (delta != 1 && delta != 2) throw DomainError("case indicator must be 1 or 2");
    if (static_cast<int>(split.subsystem_a().size()) != delta)
        throw BipartitionError("subsystem A must contain exactly " + std::to_string(delta) + " qubit(s)");
    if (split.num_qubits() != state.num_qubits()) throw BipartitionError("bipartition built for a different qubit count");
    if (delta == 1) return concurrence_pure(state, split);
    const double purity = partial_trace(state, split.subsystem_a()).purity();
    const double radicand = 2.0 * (1.0 - std::ldexp(purity, delta - 1));
    if (radicand < -kNormTolerance)
        throw DomainError("generalized concurrence undefined: Tr rho^2 = " + std::to_string(purity));
    return std::sqrt(std::max(0.0, radicand));
}

/// (1 ⊗ … ⊗ u ⊗ … ⊗ 1)|ψ⟩ with u on `qubit` (1-based).
inline StateVector apply_local_unitary(const StateVector& state, int qubit, const Eigen::Matrix2cd& u) {
    if ((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > kDensityTolerance)
        throw NotUnitaryError("single-qubit operator is not unitary");
    const int n = state.num_qubits();
    if (qubit < 1 || qubit > n) throw ShapeError("qubit " + std::to_string(qubit) + " outside 1.." + std::to_string(n));
    const std::size_t mask = std::size_t{1} << detail::bit_position(n, qubit);
    Amplitudes out = state.amplitudes();
    for (std::size_t k = 0; k < state.dim(); ++k) {
        if (k & mask) continue;
        const Complex a0 = state[k];
        const Complex a1 = state[k | mask];
        out[static_cast<Eigen::Index>(k)] = u(0, 0) * a0 + u(0, 1) * a1;
        out[static_cast<Eigen::Index>(k | mask)] = u(1, 0) * a0 + u(1, 1) * a1;
    }
    return StateVector::from_amplitudes(std::move(out));
}

/// Complex Gaussian amplitudes, normalized.
inline StateVector random_state(int n, std::uint64_t seed) {
    detail::check_qubit_count(n);
    Rng rng(seed);
    Amplitudes amps(Eigen::Index{1} << n);
    for (auto& a : amps) {
        const double re = rng.normal();
        a = Complex(re, rng.normal());
    }
    return StateVector::from_amplitudes(std::move(amps));
}

/// Tensor product of n independent random single-qubit states.
inline StateVector random_product_state(int n, std::uint64_t seed) {
    detail::check_qubit_count(n);
    Rng rng(seed);
    Amplitudes amps = Amplitudes::Ones(1);
    for (int q = 0; q < n; ++q) {
        Eigen::Vector2cd site;
        for (auto& a : site) {
            const double re = rng.normal();
            a = Complex(re, rng.normal());
        }
        site.normalize();
        Amplitudes next(amps.size() * 2);
        for (Eigen::Index k = 0; k < amps.size(); ++k) {
            next[2 * k] = amps[k] * site[0];
            next[2 * k + 1] = amps[k] * site[1];
        }
        amps = std::move(next);
    }
    return StateVector::from_amplitudes(std::move(amps));
}

/// Haar-random 2x2 unitary (QR of a complex Ginibre matrix with phase fix).
inline Eigen::Matrix2cd random_unitary2(Rng& rng) {
    Eigen::Matrix2cd g;
    for (Eigen::Index i = 0; i < 4; ++i) {
        const double re = rng.normal();
        g(i) = Complex(re, rng.normal());
    }
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(g);
    Eigen::Matrix2cd q = qr.householderQ();
    const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < 2; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

}  // namespace bellq
