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
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bellq/errors.hpp"
#include "bellq/qstate.hpp"

namespace bellq {

enum class Pauli : std::uint8_t { I, X, Y, Z };

/// Largest qubit count for which the full 3^n correlation tensor is built.
inline constexpr int kMaxTensorQubits = 10;

class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::vector<Pauli> labels) : labels_(std::move(labels)) {}

    /// Parses "XYZI"-style text; lower case accepted.
    static PauliString parse(std::string_view text) {
        std::vector<Pauli> labels;
        labels.reserve(text.size());
        for (char c : text) {
            switch (c) {
                case 'I': case 'i': labels.push_back(Pauli::I); break;
                case 'X': case 'x': labels.push_back(Pauli::X); break;
                case 'Y': case 'y': labels.push_back(Pauli::Y); break;
                case 'Z': case 'z': labels.push_back(Pauli::Z); break;
                default: throw ParseError(std::string("invalid Pauli label '") + c + "'");
            }
        }
        return PauliString(std::move(labels));
    }

    std::size_t size() const { return labels_.size(); }
    Pauli operator[](std::size_t i) const { return labels_[i]; }
    const std::vector<Pauli>& labels() const { return labels_; }

  private:
    std::vector<Pauli> labels_;
};

namespace detail {

/// ⟨ψ|P|ψ⟩ for P acting as P|k⟩ = i^ny (-1)^popcount(k & phase_mask) |k ^ flip_mask⟩.
inline double masked_expectation(const Amplitudes& amps, std::size_t flip_mask, std::size_t phase_mask, int ny) {
    Complex acc = 0.0;
    const auto dim = static_cast<std::size_t>(amps.size());
    for (std::size_t k = 0; k < dim; ++k) {
        const Complex term = std::conj(amps[static_cast<Eigen::Index>(k ^ flip_mask)]) * amps[static_cast<Eigen::Index>(k)];
        acc += (std::popcount(k & phase_mask) & 1U) ? -term : term;
    }
    static constexpr std::array<Complex, 4> kPowersOfI{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    return (kPowersOfI[static_cast<std::size_t>(ny & 3)] * acc).real();
}

}  // namespace detail

/// ⟨ψ|σ_{p1} ⊗ … ⊗ σ_{pn}|ψ⟩ by sparse action on the amplitudes.
inline double pauli_expectation(const StateVector& state, const PauliString& p) {
    const int n = state.num_qubits();
    if (static_cast<int>(p.size()) != n)
        throw ShapeError("Pauli string of length " + std::to_string(p.size()) + " for " + std::to_string(n) + " qubits");
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
    return detail::masked_expectation(state.amplitudes(), flip, phase, ny);
}

/// R_{I,i_n} = ⟨σ_{i_1} ⊗ … ⊗ σ_{i_n}⟩ arranged as 3^(n-1) x 3.
///
/// Rows index (i_1 … i_{n-1}) in base 3 with x=0, y=1, z=2 and i_1 the most
/// significant digit. Storage is row-major, so `flat()` is the full tensor
/// indexed by (i_1 … i_n) with the same digit order.
class CorrelationTensor {
  public:
    using Matrix = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;

    CorrelationTensor(int n, Matrix entries) : n_(n), entries_(std::move(entries)) {
        if (entries_.rows() != ipow3(n - 1)) throw ShapeError("correlation tensor row count must be 3^(n-1)");
    }

    int num_qubits() const { return n_; }
    Eigen::Index rows() const { return entries_.rows(); }
    const Matrix& entries() const { return entries_; }
    double operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

    /// Full tensor of length 3^n.
    Eigen::Map<const Eigen::VectorXd> flat() const { return {entries_.data(), entries_.size()}; }

    /// R†R (3 x 3).
    Eigen::Matrix3d gram() const { return entries_.transpose() * entries_; }

    static Eigen::Index ipow3(int k) {
        Eigen::Index r = 1;
        for (int i = 0; i < k; ++i) r *= 3;
        return r;
    }

  private:
    int n_;
    Matrix entries_;
};

inline CorrelationTensor correlation_tensor(const StateVector& state) {
    const int n = state.num_qubits();
    if (n > kMaxTensorQubits)
        throw SizeLimitError("correlation tensor limited to " + std::to_string(kMaxTensorQubits) + " qubits");
    CorrelationTensor::Matrix r(CorrelationTensor::ipow3(n - 1), 3);
    double* out = r.data();
    // Depth-first over digits so the masks are built incrementally; the
    // visiting order equals the row-major flat order.
    std::function<void(int, std::size_t, std::size_t, int)> visit = [&](int q, std::size_t flip, std::size_t phase,
                                                                        int ny) {
        if (q > n) {
            *out++ = detail::masked_expectation(state.amplitudes(), flip, phase, ny);
            return;
        }
        const std::size_t bit = std::size_t{1} << detail::bit_position(n, q);
        visit(q + 1, flip | bit, phase, ny);
        visit(q + 1, flip | bit, phase | bit, ny + 1);
        visit(q + 1, flip, phase | bit, ny);
    };
    visit(1, 0, 0, 0);
    return CorrelationTensor(n, std::move(r));
}

/// Eigenvalues of R†R, descending, tiny negatives clamped to 0.
inline std::array<double, 3> gram_spectrum(const CorrelationTensor& r) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(r.gram(), Eigen::EigenvaluesOnly);
    const Eigen::Vector3d ev = solver.eigenvalues();
    std::array<double, 3> out{ev[2], ev[1], ev[0]};
    for (double& v : out) v = std::max(v, 0.0);
    return out;
}

/// 2 sqrt(u1² + u2²) over the two largest Gram eigenvalues.
inline double lemma_bound(const CorrelationTensor& r) {
    if (r.num_qubits() < 2) throw ShapeError("the spectral bound needs at least 2 qubits");
    const auto s = gram_spectrum(r);
    return 2.0 * std::sqrt(s[0] + s[1]);
}

inline double lemma_bound(const StateVector& state) {
    if (state.num_qubits() < 2) throw ShapeError("the spectral bound needs at least 2 qubits");
    return lemma_bound(correlation_tensor(state));
}

}  // namespace bellq
