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
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bellq/errors.hpp"
#include "bellq/pauli.hpp"
#include "bellq/qstate.hpp"
#include "bellq/random.hpp"

namespace bellq {

/// Direction of a single-qubit observable n·σ.
class UnitVector3 {
  public:
    UnitVector3() : v_(0.0, 0.0, 1.0) {}

    /// Requires |v| = 1 within 1e-9.
    static UnitVector3 from(const Eigen::Vector3d& v) {
        if (std::abs(v.norm() - 1.0) > 1e-9) throw DomainError("vector is not unit length");
        return UnitVector3(v);
    }
    static UnitVector3 from(double x, double y, double z) { return from(Eigen::Vector3d(x, y, z)); }

    /// v/|v|, or `fallback` when v vanishes.
    static UnitVector3 normalized(const Eigen::Vector3d& v, const UnitVector3& fallback) {
        const double norm = v.norm();
        if (!(norm > 1e-300)) return fallback;
        return UnitVector3(v / norm);
    }

    static UnitVector3 from_angles(double theta, double phi) {
        return UnitVector3(Eigen::Vector3d(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                                           std::cos(theta)));
    }

    static UnitVector3 random(Rng& rng) {
        Eigen::Vector3d v;
        do {
            v = Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal());
        } while (v.norm() < 1e-8);
        return UnitVector3(v.normalized());
    }

    static UnitVector3 x() { return UnitVector3(Eigen::Vector3d::UnitX()); }
    static UnitVector3 y() { return UnitVector3(Eigen::Vector3d::UnitY()); }
    static UnitVector3 z() { return UnitVector3(Eigen::Vector3d::UnitZ()); }

    const Eigen::Vector3d& vec() const { return v_; }
    double operator[](int i) const { return v_[i]; }

  private:
    explicit UnitVector3(const Eigen::Vector3d& v) : v_(v) {}

    Eigen::Vector3d v_;
};

/// Settings of the restricted operator
///   (b·σ) ⊗ A_2 ⊗ … ⊗ A_{n-1} ⊗ (A_n + A_n') + (b'·σ) ⊗ A_2' ⊗ … ⊗ A_{n-1}' ⊗ (A_n - A_n').
/// `a[k]` and `a_prime[k]` belong to qubit k + 2.
struct BellSettings {
    int n = 2;
    UnitVector3 b;
    UnitVector3 b_prime;
    std::vector<UnitVector3> a;
    std::vector<UnitVector3> a_prime;

    void validate(int qubits) const {
        if (n != qubits) throw ShapeError("settings for " + std::to_string(n) + " qubits, state has " + std::to_string(qubits));
        if (n < 2) throw ShapeError("Bell settings need at least 2 qubits");
        if (a.size() != static_cast<std::size_t>(n - 1) || a_prime.size() != static_cast<std::size_t>(n - 1))
            throw ShapeError("Bell settings must hold 2n unit vectors");
    }
};

/// Settings of the fully recursive operator
///   B_k = B_{k-1} ⊗ (A_k + A_k')/2 + B'_{k-1} ⊗ (A_k - A_k')/2,  B_1 = 2 b·σ,
/// where every B_{k-1} and B'_{k-1} carries its own settings.
///
/// The operator tree is stored in heap order: node 0 is B_n, node i has children
/// 2i+1 (unprimed) and 2i+2 (primed). Internal nodes hold (a, a'); the 2^(n-1)
/// leaves hold one b each, left to right.
struct FullBellSettings {
    int n = 2;
    std::vector<UnitVector3> a;
    std::vector<UnitVector3> a_prime;
    std::vector<UnitVector3> leaf;

    static std::size_t internal_count(int n) { return (std::size_t{1} << (n - 1)) - 1; }
    static std::size_t leaf_count(int n) { return std::size_t{1} << (n - 1); }

    /// Total number of unit vectors, 3·2^(n-1) - 2.
    static std::size_t vector_count(int n) { return 2 * internal_count(n) + leaf_count(n); }

    static FullBellSettings filled(int n, const UnitVector3& v) {
        FullBellSettings s;
        s.n = n;
        s.a.assign(internal_count(n), v);
        s.a_prime.assign(internal_count(n), v);
        s.leaf.assign(leaf_count(n), v);
        return s;
    }

    /// Embeds a restricted setting: every node of the unprimed subtree at level k
    /// gets (a_k, a_k), so that branch collapses to B_1 ⊗ A_2 ⊗ … ⊗ A_{n-1}.
    static FullBellSettings from_restricted(const BellSettings& r) {
        r.validate(r.n);
        FullBellSettings s = filled(r.n, UnitVector3::z());
        s.a[0] = r.a[static_cast<std::size_t>(r.n - 2)];
        s.a_prime[0] = r.a_prime[static_cast<std::size_t>(r.n - 2)];
        if (r.n == 2) {
            s.leaf[0] = r.b;
            s.leaf[1] = r.b_prime;
            return s;
        }
        const std::size_t internal = internal_count(r.n);
        // Breadth-first walk; `primed` is fixed by which child of the root the node descends from.
        struct Item {
            std::size_t node;
            int level;
            bool primed;
        };
        std::vector<Item> stack{{1, r.n - 1, false}, {2, r.n - 1, true}};
        while (!stack.empty()) {
            const Item it = stack.back();
            stack.pop_back();
            if (it.node >= internal) {
                s.leaf[it.node - internal] = it.primed ? r.b_prime : r.b;
                continue;
            }
            const auto& v = it.primed ? r.a_prime[static_cast<std::size_t>(it.level - 2)]
                                      : r.a[static_cast<std::size_t>(it.level - 2)];
            s.a[it.node] = v;
            s.a_prime[it.node] = v;
            stack.push_back({2 * it.node + 1, it.level - 1, it.primed});
            stack.push_back({2 * it.node + 2, it.level - 1, it.primed});
        }
        return s;
    }

    void validate(int qubits) const {
        if (n != qubits) throw ShapeError("settings for " + std::to_string(n) + " qubits, state has " + std::to_string(qubits));
        if (n < 2) throw ShapeError("Bell settings need at least 2 qubits");
        if (n > kMaxTensorQubits) throw SizeLimitError("recursive Bell settings limited to " + std::to_string(kMaxTensorQubits) + " qubits");
        if (a.size() != internal_count(n) || a_prime.size() != internal_count(n) || leaf.size() != leaf_count(n))
            throw ShapeError("recursive Bell settings have the wrong tree size");
    }
};

namespace detail {

/// (m ⊗ c)[I*3 + j] = m[I] c[j]
inline Eigen::VectorXd kron3(const Eigen::VectorXd& m, const Eigen::Vector3d& c) {
    Eigen::VectorXd out(m.size() * 3);
    for (Eigen::Index i = 0; i < m.size(); ++i) out.segment<3>(3 * i) = m[i] * c;
    return out;
}

inline Eigen::VectorXd product_vector(const UnitVector3& first, const std::vector<UnitVector3>& rest, std::size_t count) {
    Eigen::VectorXd out = first.vec();
    for (std::size_t k = 0; k < count; ++k) out = kron3(out, rest[k].vec());
    return out;
}

/// w reshaped as (len/3) x 3 row-major, times c.
inline Eigen::VectorXd contract_last(const Eigen::VectorXd& w, const Eigen::Vector3d& c) {
    const Eigen::Index rows = w.size() / 3;
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>> m(w.data(), rows, 3);
    return m * c;
}

/// Transposed contraction: Σ_I m[I] w[I*3 + j].
inline Eigen::Vector3d contract_rows(const Eigen::VectorXd& w, const Eigen::VectorXd& m) {
    const Eigen::Index rows = w.size() / 3;
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>> mat(w.data(), rows, 3);
    return mat.transpose() * m;
}

inline Eigen::VectorXd full_coefficients(const FullBellSettings& s, std::size_t node, int level) {
    if (level == 1) return 2.0 * s.leaf[node - FullBellSettings::internal_count(s.n)].vec();
    const Eigen::Vector3d plus = 0.5 * (s.a[node].vec() + s.a_prime[node].vec());
    const Eigen::Vector3d minus = 0.5 * (s.a[node].vec() - s.a_prime[node].vec());
    return kron3(full_coefficients(s, 2 * node + 1, level - 1), plus) +
           kron3(full_coefficients(s, 2 * node + 2, level - 1), minus);
}

}  // namespace detail

/// Coefficients of the recursive operator in the Pauli basis: B_n = Σ M_I σ_{i_1} ⊗ … ⊗ σ_{i_n}.
/// The vector always has Euclidean norm 2.
inline Eigen::VectorXd full_coefficients(const FullBellSettings& s) {
    s.validate(s.n);
    return detail::full_coefficients(s, 0, s.n);
}

/// Tr(ρ B~_n) = ⟨B, R(a_n + a_n')⟩ + ⟨B', R(a_n - a_n')⟩, B_I = b_{i_1} a_{2,i_2} ⋯ a_{n-1,i_{n-1}}.
///
/// Normalization: B_1 is defined through (1/2) B_1 = b·σ, which cancels the 1/2
/// in front of (A_n ± A_n'). No residual factor remains here.
inline double expectation_restricted(const CorrelationTensor& r, const BellSettings& s) {
    s.validate(r.num_qubits());
    const auto last = static_cast<std::size_t>(s.n - 2);
    const Eigen::VectorXd b = detail::product_vector(s.b, s.a, last);
    const Eigen::VectorXd bp = detail::product_vector(s.b_prime, s.a_prime, last);
    const Eigen::Vector3d plus = s.a[last].vec() + s.a_prime[last].vec();
    const Eigen::Vector3d minus = s.a[last].vec() - s.a_prime[last].vec();
    return b.dot(r.entries() * plus) + bp.dot(r.entries() * minus);
}

inline double expectation_restricted(const StateVector& state, const BellSettings& s) {
    s.validate(state.num_qubits());
    return expectation_restricted(correlation_tensor(state), s);
}

/// Tr(ρ B_n) for the fully recursive operator, by contracting its coefficient tensor with R.
inline double expectation_full(const CorrelationTensor& r, const FullBellSettings& s) {
    s.validate(r.num_qubits());
    return full_coefficients(s).dot(r.flat());
}

inline double expectation_full(const StateVector& state, const FullBellSettings& s) {
    s.validate(state.num_qubits());
    return expectation_full(correlation_tensor(state), s);
}

/// 2^((n+1)/2)
inline double tsirelson_bound(int n) {
    if (n < 1) throw ShapeError("qubit count must be positive");
    return std::pow(2.0, 0.5 * (n + 1));
}

namespace detail {

/// Σ over all entries of w (a k-mode tensor, 3 per mode) times every vector except mode `skip`.
inline Eigen::Vector3d contract_except(const Eigen::VectorXd& w, const std::vector<Eigen::Vector3d>& vs, std::size_t skip) {
    const std::size_t modes = vs.size();
    Eigen::Vector3d g = Eigen::Vector3d::Zero();
    std::vector<int> digits(modes, 0);
    for (Eigen::Index idx = 0; idx < w.size(); ++idx) {
        double weight = w[idx];
        for (std::size_t m = 0; m < modes && weight != 0.0; ++m)
            if (m != skip) weight *= vs[m][digits[m]];
        g[digits[skip]] += weight;
        for (std::size_t m = modes; m-- > 0;) {
            if (++digits[m] < 3) break;
            digits[m] = 0;
        }
    }
    return g;
}

/// Product-vector approximation of w: mode-wise dominant directions, then
/// alternating refinement until the overlap stops improving.
inline std::vector<Eigen::Vector3d> rank_one(const Eigen::VectorXd& w, std::size_t modes, int max_rounds = 200) {
    std::vector<Eigen::Vector3d> vs(modes, Eigen::Vector3d::UnitZ());
    if (w.norm() < 1e-300) return vs;
    // Mode-p Gram matrices, G_p = W_(p) W_(p)^T.
    for (std::size_t p = 0; p < modes; ++p) {
        Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
        Eigen::Index stride = 1;
        for (std::size_t m = p + 1; m < modes; ++m) stride *= 3;
        const Eigen::Index block = stride * 3;
        for (Eigen::Index base = 0; base < w.size(); base += block)
            for (Eigen::Index off = 0; off < stride; ++off) {
                Eigen::Vector3d col(w[base + off], w[base + off + stride], w[base + off + 2 * stride]);
                g += col * col.transpose();
            }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(g);
        vs[p] = es.eigenvectors().col(2);
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (int round = 0; round < max_rounds; ++round) {
        double overlap = 0.0;
        for (std::size_t p = 0; p < modes; ++p) {
            const Eigen::Vector3d g = contract_except(w, vs, p);
            if (g.norm() > 1e-300) vs[p] = g.normalized();
            overlap = g.norm();
        }
        if (overlap - prev < 1e-15) break;
        prev = overlap;
    }
    return vs;
}

inline void assign_chain(const std::vector<Eigen::Vector3d>& vs, UnitVector3& first, std::vector<UnitVector3>& rest) {
    first = UnitVector3::normalized(vs[0], UnitVector3::z());
    for (std::size_t k = 1; k < vs.size(); ++k) rest[k - 1] = UnitVector3::normalized(vs[k], UnitVector3::z());
}

/// Completes restricted settings from last-qubit directions c ⊥ c' and angle θ.
inline BellSettings settings_from_frame(const CorrelationTensor& r, const Eigen::Vector3d& c, const Eigen::Vector3d& cp,
                                        double cos_t, double sin_t) {
    const int n = r.num_qubits();
    BellSettings s;
    s.n = n;
    s.a.assign(static_cast<std::size_t>(n - 1), UnitVector3::z());
    s.a_prime.assign(static_cast<std::size_t>(n - 1), UnitVector3::z());
    const auto last = static_cast<std::size_t>(n - 2);
    s.a[last] = UnitVector3::normalized(cos_t * c + sin_t * cp, UnitVector3::x());
    s.a_prime[last] = UnitVector3::normalized(cos_t * c - sin_t * cp, UnitVector3::y());
    const Eigen::VectorXd target = r.entries() * c;
    const Eigen::VectorXd target_p = r.entries() * cp;
    assign_chain(rank_one(target, static_cast<std::size_t>(n - 1)), s.b, s.a);
    assign_chain(rank_one(target_p, static_cast<std::size_t>(n - 1)), s.b_prime, s.a_prime);
    return s;
}

}  // namespace detail

/// Candidate maximizer for the restricted operator when R†R is diagonal.
///
/// The last-qubit pair comes from a+a' = 2c cosθ, a-a' = 2c' sinθ. If the two
/// largest Gram entries are xx and yy: c = (1,1,0)/√2, c' = (1,-1,0)/√2, θ = π/4.
/// If zz is largest and xx or yy second: c = ẑ, c' = (1,1,0)/√2, cosθ = u1/√(u1²+u2²).
/// Other orderings use the two dominant axes. B̂ and B̂' are the best product
/// vectors along R c and R c'.
inline BellSettings optimal_settings_from_spectrum(const CorrelationTensor& r) {
    if (r.num_qubits() < 2) throw ShapeError("Bell settings need at least 2 qubits");
    const Eigen::Matrix3d g = r.gram();
    const double off = std::max({std::abs(g(0, 1)), std::abs(g(0, 2)), std::abs(g(1, 2))});
    if (off > 1e-8) throw NotApplicableError("R^T R is not diagonal");

    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return g(i, i) > g(j, j); });
    const double u1 = std::sqrt(std::max(g(order[0], order[0]), 0.0));
    const double u2 = std::sqrt(std::max(g(order[1], order[1]), 0.0));
    const double norm = std::hypot(u1, u2);
    const double cos_t = norm > 0.0 ? u1 / norm : std::sqrt(0.5);
    const double sin_t = norm > 0.0 ? u2 / norm : std::sqrt(0.5);

    const bool top_xy = (order[0] != 2 && order[1] != 2);
    const bool z_then_transverse = (order[0] == 2);
    if (top_xy) {
        const Eigen::Vector3d c = Eigen::Vector3d(1, 1, 0) / std::sqrt(2.0);
        const Eigen::Vector3d cp = Eigen::Vector3d(1, -1, 0) / std::sqrt(2.0);
        return detail::settings_from_frame(r, c, cp, std::sqrt(0.5), std::sqrt(0.5));
    }
    if (z_then_transverse) {
        const Eigen::Vector3d c = Eigen::Vector3d::UnitZ();
        const Eigen::Vector3d cp = Eigen::Vector3d(1, 1, 0) / std::sqrt(2.0);
        return detail::settings_from_frame(r, c, cp, cos_t, sin_t);
    }
    return detail::settings_from_frame(r, Eigen::Vector3d::Unit(order[0]), Eigen::Vector3d::Unit(order[1]), cos_t, sin_t);
}

/// Restricted settings along the top two right singular vectors of R.
inline BellSettings spectral_settings(const CorrelationTensor& r) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(r.gram());
    const double u1 = std::sqrt(std::max(es.eigenvalues()[2], 0.0));
    const double u2 = std::sqrt(std::max(es.eigenvalues()[1], 0.0));
    const double norm = std::hypot(u1, u2);
    return detail::settings_from_frame(r, es.eigenvectors().col(2), es.eigenvectors().col(1),
                                       norm > 0.0 ? u1 / norm : std::sqrt(0.5), norm > 0.0 ? u2 / norm : std::sqrt(0.5));
}

namespace detail {

inline void spectral_full(FullBellSettings& s, std::size_t node, int level, const Eigen::VectorXd& w) {
    if (level == 1) {
        s.leaf[node - FullBellSettings::internal_count(s.n)] = UnitVector3::normalized(w, UnitVector3::z());
        return;
    }
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>> m(w.data(), w.size() / 3, 3);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m.transpose() * m);
    const Eigen::Vector3d c = es.eigenvectors().col(2);
    const Eigen::Vector3d cp = es.eigenvectors().col(1);
    const double u1 = std::sqrt(std::max(es.eigenvalues()[2], 0.0));
    const double u2 = std::sqrt(std::max(es.eigenvalues()[1], 0.0));
    const double norm = std::hypot(u1, u2);
    const double cos_t = norm > 0.0 ? u1 / norm : std::sqrt(0.5);
    const double sin_t = norm > 0.0 ? u2 / norm : std::sqrt(0.5);
    s.a[node] = UnitVector3::normalized(cos_t * c + sin_t * cp, UnitVector3::x());
    s.a_prime[node] = UnitVector3::normalized(cos_t * c - sin_t * cp, UnitVector3::y());
    spectral_full(s, 2 * node + 1, level - 1, m * c);
    spectral_full(s, 2 * node + 2, level - 1, m * cp);
}

}  // namespace detail

/// Recursive-operator settings built top-down from the singular vectors of each
/// partially contracted correlation tensor. Exact at n = 2.
inline FullBellSettings spectral_full_settings(const CorrelationTensor& r) {
    if (r.num_qubits() < 2) throw ShapeError("Bell settings need at least 2 qubits");
    FullBellSettings s = FullBellSettings::filled(r.num_qubits(), UnitVector3::z());
    detail::spectral_full(s, 0, s.n, Eigen::VectorXd(r.flat()));
    return s;
}

struct OptimizerConfig {
    int starts = 32;
    std::uint64_t seed = 0;
    /// A start stops once one sweep improves the value by less than this.
    double tolerance = 1e-10;
    int max_iters = 10000;
    bool warm_start = true;
};

template <typename Settings>
struct MaximizeResult {
    double gamma_hat = -std::numeric_limits<double>::infinity();
    Settings argmax;
    bool converged = false;
    int best_start = -1;
    int sweeps = 0;
};

using RestrictedMaximum = MaximizeResult<BellSettings>;
using FullMaximum = MaximizeResult<FullBellSettings>;

namespace detail {

/// One block-coordinate pass over the subtree at `node`; returns its coefficient vector.
inline Eigen::VectorXd full_sweep(FullBellSettings& s, std::size_t node, int level, const Eigen::VectorXd& w) {
    if (level == 1) {
        auto& b = s.leaf[node - FullBellSettings::internal_count(s.n)];
        b = UnitVector3::normalized(w, b);
        return 2.0 * b.vec();
    }
    const Eigen::Vector3d plus = 0.5 * (s.a[node].vec() + s.a_prime[node].vec());
    const Eigen::Vector3d minus = 0.5 * (s.a[node].vec() - s.a_prime[node].vec());
    const Eigen::VectorXd ml = full_sweep(s, 2 * node + 1, level - 1, contract_last(w, plus));
    const Eigen::VectorXd mr = full_sweep(s, 2 * node + 2, level - 1, contract_last(w, minus));
    // Value = a·Wᵀ(M_L + M_R)/2 + a'·Wᵀ(M_L - M_R)/2, maximized per vector.
    s.a[node] = UnitVector3::normalized(contract_rows(w, ml + mr), s.a[node]);
    s.a_prime[node] = UnitVector3::normalized(contract_rows(w, ml - mr), s.a_prime[node]);
    const Eigen::Vector3d new_plus = 0.5 * (s.a[node].vec() + s.a_prime[node].vec());
    const Eigen::Vector3d new_minus = 0.5 * (s.a[node].vec() - s.a_prime[node].vec());
    return kron3(ml, new_plus) + kron3(mr, new_minus);
}

inline void chain_sweep(const Eigen::VectorXd& w, UnitVector3& first, std::vector<UnitVector3>& rest, std::size_t count) {
    std::vector<Eigen::Vector3d> vs;
    vs.reserve(count + 1);
    vs.push_back(first.vec());
    for (std::size_t k = 0; k < count; ++k) vs.push_back(rest[k].vec());
    for (std::size_t p = 0; p < vs.size(); ++p) {
        const Eigen::Vector3d g = contract_except(w, vs, p);
        if (g.norm() > 1e-300) vs[p] = g.normalized();
    }
    first = UnitVector3::normalized(vs[0], first);
    for (std::size_t k = 0; k < count; ++k) rest[k] = UnitVector3::normalized(vs[k + 1], rest[k]);
}

inline void restricted_sweep(const CorrelationTensor& r, BellSettings& s) {
    const auto last = static_cast<std::size_t>(s.n - 2);
    const Eigen::VectorXd b = product_vector(s.b, s.a, last);
    const Eigen::VectorXd bp = product_vector(s.b_prime, s.a_prime, last);
    s.a[last] = UnitVector3::normalized(r.entries().transpose() * (b + bp), s.a[last]);
    s.a_prime[last] = UnitVector3::normalized(r.entries().transpose() * (b - bp), s.a_prime[last]);
    chain_sweep(r.entries() * (s.a[last].vec() + s.a_prime[last].vec()), s.b, s.a, last);
    chain_sweep(r.entries() * (s.a[last].vec() - s.a_prime[last].vec()), s.b_prime, s.a_prime, last);
}

template <typename Settings, typename Evaluate, typename Sweep>
MaximizeResult<Settings> multistart(std::vector<Settings> starts, const OptimizerConfig& cfg, Evaluate evaluate, Sweep sweep) {
    MaximizeResult<Settings> best;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        Settings s = std::move(starts[i]);
        double value = evaluate(s);
        bool converged = false;
        int iter = 0;
        while (iter < cfg.max_iters) {
            ++iter;
            sweep(s);
            const double next = evaluate(s);
            const double gain = next - value;
            value = std::max(value, next);
            if (gain < cfg.tolerance) {
                converged = true;
                break;
            }
        }
        // Strict comparison: ties keep the lowest start index.
        if (value > best.gamma_hat) {
            best.gamma_hat = value;
            best.argmax = std::move(s);
            best.converged = converged;
            best.best_start = static_cast<int>(i);
            best.sweeps = iter;
        }
    }
    return best;
}

inline BellSettings random_restricted(int n, Rng& rng) {
    BellSettings s;
    s.n = n;
    s.b = UnitVector3::random(rng);
    s.b_prime = UnitVector3::random(rng);
    for (int k = 0; k < n - 1; ++k) s.a.push_back(UnitVector3::random(rng));
    for (int k = 0; k < n - 1; ++k) s.a_prime.push_back(UnitVector3::random(rng));
    return s;
}

inline FullBellSettings random_full(int n, Rng& rng) {
    FullBellSettings s = FullBellSettings::filled(n, UnitVector3::z());
    for (auto& v : s.a) v = UnitVector3::random(rng);
    for (auto& v : s.a_prime) v = UnitVector3::random(rng);
    for (auto& v : s.leaf) v = UnitVector3::random(rng);
    return s;
}

inline void check_config(const OptimizerConfig& cfg) {
    if (cfg.starts < 1) throw DomainError("optimizer needs at least one start");
    if (cfg.max_iters < 1) throw DomainError("optimizer needs at least one iteration");
}

}  // namespace detail

/// Best-found maximum of the restricted operator B~_n over its 2n unit vectors.
/// This value never exceeds 2√2, whatever n is.
inline RestrictedMaximum maximize_restricted(const CorrelationTensor& r, const OptimizerConfig& cfg = {}) {
    const int n = r.num_qubits();
    if (n < 2) throw ShapeError("maximization needs at least 2 qubits");
    detail::check_config(cfg);
    std::vector<BellSettings> starts;
    if (cfg.warm_start) {
        starts.push_back(spectral_settings(r));
        try {
            starts.push_back(optimal_settings_from_spectrum(r));
        } catch (const NotApplicableError&) {
        }
    }
    Rng rng(cfg.seed);
    while (static_cast<int>(starts.size()) < cfg.starts) starts.push_back(detail::random_restricted(n, rng));
    starts.resize(static_cast<std::size_t>(cfg.starts));
    return detail::multistart(
        std::move(starts), cfg, [&](const BellSettings& s) { return expectation_restricted(r, s); },
        [&](BellSettings& s) { detail::restricted_sweep(r, s); });
}

inline RestrictedMaximum maximize_restricted(const StateVector& state, const OptimizerConfig& cfg = {}) {
    if (state.num_qubits() < 2) throw ShapeError("maximization needs at least 2 qubits");
    return maximize_restricted(correlation_tensor(state), cfg);
}

/// Best-found maximum violation γ̂ of the fully recursive n-qubit Bell operator.
///
/// Multi-start block-coordinate ascent: the expectation is linear in each unit
/// vector, so every block update is exact. Warm starts come from the spectral
/// constructions; the rest are seeded random trees.
inline FullMaximum maximize(const CorrelationTensor& r, const OptimizerConfig& cfg = {}) {
    const int n = r.num_qubits();
    if (n < 2) throw ShapeError("maximization needs at least 2 qubits");
    detail::check_config(cfg);
    std::vector<FullBellSettings> starts;
    if (cfg.warm_start) {
        starts.push_back(spectral_full_settings(r));
        try {
            starts.push_back(FullBellSettings::from_restricted(optimal_settings_from_spectrum(r)));
        } catch (const NotApplicableError&) {
        }
    }
    Rng rng(cfg.seed);
    while (static_cast<int>(starts.size()) < cfg.starts) starts.push_back(detail::random_full(n, rng));
    starts.resize(static_cast<std::size_t>(cfg.starts));
    const Eigen::VectorXd t = r.flat();
    return detail::multistart(
        std::move(starts), cfg, [&](const FullBellSettings& s) { return detail::full_coefficients(s, 0, n).dot(t); },
        [&](FullBellSettings& s) { detail::full_sweep(s, 0, n, t); });
}

inline FullMaximum maximize(const StateVector& state, const OptimizerConfig& cfg = {}) {
    if (state.num_qubits() < 2) throw ShapeError("maximization needs at least 2 qubits");
    return maximize(correlation_tensor(state), cfg);
}

}  // namespace bellq
