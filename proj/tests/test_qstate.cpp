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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bellq/qstate.hpp"
#include "oracles.hpp"

using namespace bellq;

namespace {

const double kSqrtHalf = 1.0 / std::numbers::sqrt2;

StateVector bell_state() { return from_terms(2, {{"00", 1.0}, {"11", 1.0}}); }

Eigen::Matrix2cd hadamard() {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    return h * kSqrtHalf;
}

}  // namespace

TEST(FromTerms, NormalizesBellPair) {
    const StateVector s = bell_state();
    ASSERT_EQ(s.num_qubits(), 2);
    EXPECT_NEAR(std::abs(s[0] - kSqrtHalf), 0.0, 1e-15);
    EXPECT_EQ(s[1], Complex(0.0));
    EXPECT_EQ(s[2], Complex(0.0));
    EXPECT_NEAR(std::abs(s[3] - kSqrtHalf), 0.0, 1e-15);
}

TEST(FromTerms, SingleQubitBasisState) {
    const StateVector s = from_terms(1, {{"0", 1.0}});
    EXPECT_EQ(s[0], Complex(1.0));
    EXPECT_EQ(s[1], Complex(0.0));
}

TEST(FromTerms, RejectsBadInput) {
    EXPECT_THROW(from_terms(2, {}), ZeroStateError);
    EXPECT_THROW(from_terms(2, {{"00", 0.0}}), ZeroStateError);
    EXPECT_THROW(from_terms(2, {{"000", 1.0}}), ShapeError);
    EXPECT_THROW(from_terms(2, {{"0a", 1.0}}), ShapeError);
    EXPECT_THROW(from_terms(kMaxQubits + 1, {{std::string(kMaxQubits + 1, '0'), 1.0}}), SizeLimitError);
}

TEST(FromTerms, RepeatedBitstringsAccumulate) {
    const StateVector s = from_terms(1, {{"1", 1.0}, {"1", 2.0}, {"0", 4.0}});
    EXPECT_NEAR(std::abs(s[1]), 3.0 / 5.0, 1e-15);
    EXPECT_NEAR(std::abs(s[0]), 4.0 / 5.0, 1e-15);
}

TEST(FromAmplitudes, RejectsNonPowerOfTwoAndZero) {
    EXPECT_THROW(StateVector::from_amplitudes(Amplitudes::Ones(3)), ShapeError);
    EXPECT_THROW(StateVector::from_amplitudes(Amplitudes::Ones(1)), ShapeError);
    EXPECT_THROW(StateVector::from_amplitudes(Amplitudes::Zero(4)), ZeroStateError);
}

TEST(Bipartition, ValidatesSubsystem) {
    EXPECT_THROW(Bipartition::make(3, {}), BipartitionError);
    EXPECT_THROW(Bipartition::make(3, {1, 2, 3}), BipartitionError);
    EXPECT_THROW(Bipartition::make(3, {1, 1}), BipartitionError);
    EXPECT_THROW(Bipartition::make(3, {4}), BipartitionError);
    EXPECT_THROW(Bipartition::make(3, {0}), BipartitionError);
    const Bipartition b = Bipartition::make(4, {3, 1});
    EXPECT_EQ(b.subsystem_a(), (std::vector<int>{1, 3}));
    EXPECT_EQ(b.subsystem_b(), (std::vector<int>{2, 4}));
    EXPECT_EQ(b.complement().subsystem_a(), (std::vector<int>{2, 4}));
}

TEST(PartialTrace, BellPairIsMaximallyMixed) {
    const DensityMatrix rho = partial_trace(bell_state(), {2});
    Eigen::Matrix2cd expected = Eigen::Matrix2cd::Identity() * 0.5;
    EXPECT_LE((rho.entries() - expected).norm(), 1e-15);
}

TEST(PartialTrace, ProductStateGivesProjector) {
    const DensityMatrix rho = partial_trace(from_terms(2, {{"01", 1.0}}), {2});
    Eigen::Matrix2cd expected = Eigen::Matrix2cd::Zero();
    expected(1, 1) = 1.0;
    EXPECT_LE((rho.entries() - expected).norm(), 1e-15);
}

TEST(PartialTrace, GhzPairMatchesBruteForce) {
    const StateVector ghz = from_terms(4, {{"0000", 1.0}, {"1111", 1.0}});
    const DensityMatrix rho = partial_trace(ghz, {3, 4});
    Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
    expected(0, 0) = 0.5;
    expected(3, 3) = 0.5;
    EXPECT_LE((rho.entries() - expected).norm(), 1e-15);
    EXPECT_LE((rho.entries() - oracle::partial_trace(ghz, {3, 4})).norm(), 1e-15);
}

TEST(PartialTrace, AgreesWithBruteForceOnRandomStates) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const StateVector s = random_state(4, seed);
        for (const std::vector<int>& keep : {std::vector<int>{1}, {4}, {2, 3}, {1, 4}, {1, 2, 4}}) {
            const DensityMatrix rho = partial_trace(s, keep);
            EXPECT_LE((rho.entries() - oracle::partial_trace(s, keep)).norm(), 1e-12) << "seed " << seed;
        }
    }
}

TEST(PartialTrace, UnsortedKeepIsSorted) {
    const StateVector s = random_state(3, 11);
    EXPECT_LE((partial_trace(s, {3, 1}).entries() - oracle::partial_trace(s, {1, 3})).norm(), 1e-12);
}

TEST(PartialTrace, RejectsEmptyOrFullKeep) {
    EXPECT_THROW(partial_trace(bell_state(), {}), BipartitionError);
    EXPECT_THROW(partial_trace(bell_state(), {1, 2}), BipartitionError);
}

TEST(PartialTrace, TraceOneAndHermitian) {
    const StateVector s = random_state(5, 3);
    const DensityMatrix rho = partial_trace(s, {2, 5});
    EXPECT_NEAR(rho.entries().trace().real(), 1.0, 1e-12);
    EXPECT_LE((rho.entries() - rho.entries().adjoint()).norm(), 1e-14);
}

TEST(Entropy, FlatTwoLevelIsLnTwo) {
    const DensityMatrix rho = DensityMatrix::make({1}, Eigen::Matrix2cd::Identity() * 0.5);
    EXPECT_NEAR(von_neumann_entropy(rho), std::numbers::ln2, 1e-15);
}

TEST(Entropy, PureProjectorIsZero) {
    EXPECT_NEAR(von_neumann_entropy(partial_trace(from_terms(3, {{"101", 1.0}}), {2})), 0.0, 1e-15);
}

TEST(Entropy, NegativeEigenvalueRejected) {
    Eigen::Matrix2cd m;
    m << 1.5, 0, 0, -0.5;
    EXPECT_THROW(von_neumann_entropy(DensityMatrix::make({1}, m)), NotPositiveError);
}

TEST(DensityMatrix, RejectsBadMatrices) {
    Eigen::Matrix2cd m;
    m << 0.5, 1, 0, 0.5;
    EXPECT_THROW(DensityMatrix::make({1}, m), NotPositiveError);
    EXPECT_THROW(DensityMatrix::make({1}, Eigen::Matrix2cd::Identity()), NotPositiveError);
    EXPECT_THROW(DensityMatrix::make({1, 2}, Eigen::Matrix2cd::Identity() * 0.5), ShapeError);
}

TEST(Entropy, ComplementarySubsystemsAgree) {
    for (std::uint64_t seed = 20; seed < 30; ++seed) {
        const StateVector s = random_state(5, seed);
        const Bipartition b = Bipartition::make(5, {1, 4});
        EXPECT_NEAR(von_neumann_entropy(partial_trace(s, b.subsystem_a())),
                    von_neumann_entropy(partial_trace(s, b.subsystem_b())), 1e-10);
        EXPECT_NEAR(concurrence_pure(s, b), concurrence_pure(s, b.complement()), 1e-10);
    }
}

TEST(Concurrence, BellPairIsOne) { EXPECT_NEAR(concurrence_pure(bell_state(), Bipartition::make(2, {2})), 1.0, 1e-15); }

TEST(Concurrence, ProductIsZero) {
    EXPECT_NEAR(concurrence_pure(from_terms(2, {{"00", 1.0}}), Bipartition::make(2, {2})), 0.0, 1e-15);
}

TEST(Concurrence, TwoBranchSuperpositionMatchesTwoLambdaProduct) {
    const double lp = std::sqrt(3.0) / 2.0;
    const StateVector s = from_terms(2, {{"11", lp}, {"00", 0.5}});
    EXPECT_NEAR(concurrence_pure(s, Bipartition::make(2, {2})), 2.0 * lp * 0.5, 1e-12);
    EXPECT_NEAR(concurrence_pure(s, Bipartition::make(2, {2})), std::sqrt(3.0) / 2.0, 1e-12);
}

TEST(Concurrence, MismatchedBipartitionRejected) {
    EXPECT_THROW(concurrence_pure(bell_state(), Bipartition::make(3, {1})), BipartitionError);
}

TEST(GeneralizedConcurrence, ProductStateIsZeroForSingleQubit) {
    const StateVector s = random_product_state(4, 5);
    EXPECT_NEAR(generalized_concurrence(s, Bipartition::make(4, {2}), 1), 0.0, 1e-10);
}

TEST(GeneralizedConcurrence, MatchesPlainFormForOneQubit) {
    const StateVector s = random_state(4, 8);
    const Bipartition b = Bipartition::make(4, {3});
    EXPECT_NEAR(generalized_concurrence(s, b, 1), concurrence_pure(s, b), 1e-12);
}

TEST(GeneralizedConcurrence, RejectsMismatchedSizesAndDomain) {
    const StateVector s = random_state(4, 9);
    EXPECT_THROW(generalized_concurrence(s, Bipartition::make(4, {1, 2}), 1), BipartitionError);
    EXPECT_THROW(generalized_concurrence(s, Bipartition::make(4, {1}), 2), BipartitionError);
    EXPECT_THROW(generalized_concurrence(s, Bipartition::make(4, {1}), 3), DomainError);
    // A product state has Tr ρ² = 1, so the δ=2 radicand is 2(1 - 2) < 0.
    EXPECT_THROW(generalized_concurrence(from_terms(4, {{"0000", 1.0}}), Bipartition::make(4, {1, 2}), 2), DomainError);
}

TEST(LocalUnitary, IdentityLeavesStateUnchanged) {
    const StateVector s = random_state(3, 4);
    const StateVector t = apply_local_unitary(s, 2, Eigen::Matrix2cd::Identity());
    EXPECT_LE((s.amplitudes() - t.amplitudes()).norm(), 1e-15);
}

TEST(LocalUnitary, BitFlipAndHadamard) {
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    const StateVector one = apply_local_unitary(from_terms(1, {{"0", 1.0}}), 1, x);
    EXPECT_EQ(one[1], Complex(1.0));
    const StateVector plus = apply_local_unitary(from_terms(1, {{"0", 1.0}}), 1, hadamard());
    EXPECT_NEAR(std::abs(plus[0] - kSqrtHalf), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(plus[1] - kSqrtHalf), 0.0, 1e-15);
}

TEST(LocalUnitary, ActsOnTheNamedQubit) {
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    const StateVector s = apply_local_unitary(from_terms(3, {{"000", 1.0}}), 1, x);
    EXPECT_EQ(s[0b100], Complex(1.0));
    const StateVector t = apply_local_unitary(from_terms(3, {{"000", 1.0}}), 3, x);
    EXPECT_EQ(t[0b001], Complex(1.0));
}

TEST(LocalUnitary, MatchesDenseKronecker) {
    Rng rng(17);
    const StateVector s = random_state(3, 2);
    const Eigen::Matrix2cd u = random_unitary2(rng);
    const oracle::Dense full = oracle::kron(oracle::kron(Eigen::Matrix2cd::Identity(), u), Eigen::Matrix2cd::Identity());
    EXPECT_LE((apply_local_unitary(s, 2, u).amplitudes() - full * s.amplitudes()).norm(), 1e-13);
}

TEST(LocalUnitary, RejectsNonUnitaryAndBadQubit) {
    Eigen::Matrix2cd m;
    m << 1, 1, 0, 1;
    EXPECT_THROW(apply_local_unitary(bell_state(), 1, m), NotUnitaryError);
    EXPECT_THROW(apply_local_unitary(bell_state(), 3, Eigen::Matrix2cd::Identity()), ShapeError);
}

TEST(LocalUnitary, PreservesConcurrenceAndEntropy) {
    Rng rng(99);
    const StateVector s = random_state(4, 12);
    StateVector t = s;
    for (int q = 1; q <= 4; ++q) t = apply_local_unitary(t, q, random_unitary2(rng));
    const Bipartition b = Bipartition::make(4, {1, 3});
    EXPECT_NEAR(concurrence_pure(s, b), concurrence_pure(t, b), 1e-12);
    EXPECT_NEAR(von_neumann_entropy(partial_trace(s, {4})), von_neumann_entropy(partial_trace(t, {4})), 1e-10);
}

TEST(Random, Deterministic) {
    EXPECT_EQ(random_state(3, 7).amplitudes(), random_state(3, 7).amplitudes());
    EXPECT_NE(random_state(3, 7).amplitudes(), random_state(3, 8).amplitudes());
    EXPECT_EQ(random_product_state(3, 7).amplitudes(), random_product_state(3, 7).amplitudes());
}

TEST(Random, NormalizedAndProductSeparable) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        EXPECT_NEAR(random_state(5, seed).amplitudes().norm(), 1.0, 1e-12);
        const StateVector p = random_product_state(4, seed);
        for (const std::vector<int>& a : {std::vector<int>{1}, {2, 3}, {4}})
            EXPECT_NEAR(concurrence_pure(p, Bipartition::make(4, a)), 0.0, 1e-10);
    }
}

TEST(Random, UnitaryIsUnitary) {
    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        const Eigen::Matrix2cd u = random_unitary2(rng);
        EXPECT_LE((u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm(), 1e-14);
    }
}

TEST(Inner, OrthogonalBasisStates) {
    EXPECT_EQ(inner(from_terms(2, {{"01", 1.0}}), from_terms(2, {{"10", 1.0}})), Complex(0.0));
    EXPECT_THROW(inner(from_terms(2, {{"01", 1.0}}), from_terms(1, {{"1", 1.0}})), ShapeError);
}

TEST(Concurrence, MatchesPurityFormula) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const StateVector s = random_state(5, seed);
        for (const std::vector<int>& a : {std::vector<int>{2}, {1, 5}, {1, 2, 3}}) {
            const double purity = oracle::partial_trace(s, a).cwiseAbs2().sum();
            EXPECT_NEAR(concurrence_pure(s, Bipartition::make(5, a)), std::sqrt(2.0 * (1.0 - purity)), 1e-10);
        }
    }
}
