// Copyright 2026 The qcequiv Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qcequiv/equivalence.h"
#include "qcequiv/scenarios.h"
#include "test_util.h"

namespace qcequiv {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ComplexVector ket(std::initializer_list<Complex> amps) {
    ComplexVector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index k = 0;
    for (Complex a : amps) {
        v[k++] = a;
    }
    return v;
}

/// (|0 b⟩ + (-1)^a |1 b̄⟩)/√2.
ComplexVector bell(int a, int b) {
    ComplexVector v = ComplexVector::Zero(4);
    v[b] = kInvSqrt2;
    v[2 + (1 - b)] = (a ? -1.0 : 1.0) * kInvSqrt2;
    return v;
}

bool equal_up_to_phase(const ComplexVector &a, const ComplexVector &b, double tol) {
    return std::abs(std::abs(a.dot(b)) - 1.0) <= tol && std::abs(a.norm() - 1.0) <= tol;
}

/// Amplitudes of the wires outside `fixed` in a state where every wire in
/// `fixed` is known to hold the given bit.
ComplexVector remaining_wires(const StateVector &s, const std::vector<std::pair<Qubit, bool>> &fixed) {
    const std::uint32_t n = s.num_qubits();
    std::vector<std::uint32_t> free;
    for (std::uint32_t q = 0; q < n; ++q) {
        bool is_fixed = false;
        for (const auto &[w, bit] : fixed) {
            is_fixed |= w.index == q;
        }
        if (!is_fixed) {
            free.push_back(q);
        }
    }
    ComplexVector out = ComplexVector::Zero(Eigen::Index{1} << free.size());
    for (std::uint64_t x = 0; x < s.dim(); ++x) {
        bool match = true;
        for (const auto &[w, bit] : fixed) {
            match &= ((x & qubit_mask(n, w)) != 0) == bit;
        }
        if (!match) {
            continue;
        }
        std::uint64_t y = 0;
        for (std::uint32_t q : free) {
            y = (y << 1) | ((x & qubit_mask(n, Qubit{q})) ? 1 : 0);
        }
        out[static_cast<Eigen::Index>(y)] += s[x];
    }
    return out;
}

TEST(ScenarioTest, NamesAndTextAgree) {
    EXPECT_EQ(all_scenarios().size(), 9u);
    for (Scenario s : all_scenarios()) {
        EXPECT_EQ(serialize(make(s)), serialize(parse(scenario_text(s)))) << scenario_name(s);
    }
}

TEST(ScenarioTest, BellGeneratorProducesBellStates) {
    const UnitaryMatrix u = build_unitary(make(Scenario::BellGenerator));
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const ComplexVector out = u.col(2 * a + b);
            EXPECT_LE((out - bell(a, b)).cwiseAbs().maxCoeff(), 1e-12) << a << b;
        }
    }
    EXPECT_LE((u.col(0) - ket({kInvSqrt2, 0, 0, kInvSqrt2})).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ScenarioTest, BellDecoderInvertsGenerator) {
    const UnitaryMatrix g = build_unitary(make(Scenario::BellGenerator));
    const UnitaryMatrix d = build_unitary(make(Scenario::BellDecoder));
    EXPECT_LE((d * g - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ScenarioTest, SwapCircuits) {
    const ComplexMatrix swap = testing::permutation_matrix(2, {0, 2, 1, 3});
    EXPECT_TRUE(build_unitary(make(Scenario::XorSwap)) == swap);
    EXPECT_TRUE(build_unitary(make(Scenario::AltSwap)) == swap);
    auto branches = run(make(Scenario::XorSwap), StateVector::basis(2, 0b10));
    ASSERT_EQ(branches.size(), 1u);
    EXPECT_EQ(branches[0].state[0b01], Complex(1.0));
}

TEST(ScenarioTest, ChiAmplitudes) {
    auto branches = run(make(Scenario::Chi), StateVector::basis(0, 0));
    ASSERT_EQ(branches.size(), 1u);
    const StateVector &chi = branches[0].state;

    // Reference: β00 ⊗ β00 through a Kronecker-built CNOT, on either wire of
    // the second pair.
    const ComplexVector b00 = bell(0, 0);
    const ComplexVector pairs = testing::kron(b00, b00);
    const ComplexVector via_q2 = testing::reference_gate(4, Gate2{Gate2Kind::CNOT, Qubit{1}, Qubit{2}}) * pairs;
    const ComplexVector via_q3 = testing::reference_gate(4, Gate2{Gate2Kind::CNOT, Qubit{1}, Qubit{3}}) * pairs;
    EXPECT_LE((via_q2 - via_q3).cwiseAbs().maxCoeff(), 1e-12);

    for (std::size_t i = 0; i < 16; ++i) {
        const bool in_support = i == 0 || i == 3 || i == 13 || i == 14;
        EXPECT_NEAR(std::abs(chi[i] - Complex(in_support ? 0.5 : 0.0)), 0.0, 1e-12) << i;
        EXPECT_NEAR(std::abs(chi[i] - via_q2[static_cast<Eigen::Index>(i)]), 0.0, 1e-12) << i;
    }
}

TEST(TeleportationTest, ChannelIsIdentity) {
    const Channel ch = extract_channel(make(Scenario::Teleportation));
    EXPECT_TRUE(channel_equal(ch, unitary_channel(ComplexMatrix::Identity(2, 2))));
    EXPECT_TRUE(oracle_equal(make(Scenario::Teleportation), parse("qubits 1\ncbits 0\n")));
}

TEST(TeleportationTest, EveryBranchRecoversInput) {
    const Circuit c = make(Scenario::Teleportation);
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        const StateVector psi = testing::random_state(rng, 1);
        const auto branches = run(c, psi);
        EXPECT_EQ(branches.size(), 4u);
        for (const auto &b : branches) {
            const ComplexVector out =
                remaining_wires(b.state, {{Qubit{0}, *b.outcome[0]}, {Qubit{1}, *b.outcome[1]}});
            EXPECT_GE(testing::fidelity(psi.amplitudes(), out), 1.0 - 1e-9);
            EXPECT_NEAR(b.probability, 0.25, 1e-9);
        }
        const ComplexMatrix rho = extract_channel(c).apply(psi.amplitudes());
        const ComplexMatrix expected = psi.amplitudes() * psi.amplitudes().adjoint();
        EXPECT_LE((rho - expected).cwiseAbs().maxCoeff(), 1e-9);
    }
}

/// The dense-coding circuit followed by a measurement of both carrier wires.
Circuit measured_dense_full() {
    std::string text(scenario_text(Scenario::DenseFull));
    text.replace(text.find("cbits 0"), 7, "cbits 2");
    return parse(text + "\nMEASURE q2 c0\nMEASURE q3 c1\n");
}

TEST(DenseCodingTest, RoundTripAllMessages) {
    const Circuit c = measured_dense_full();
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const auto branches = run(c, StateVector::basis(2, static_cast<std::uint64_t>(2 * a + b)));
            ASSERT_EQ(branches.size(), 1u);
            EXPECT_NEAR(branches[0].probability, 1.0, 1e-9);
            EXPECT_EQ(*branches[0].outcome[0], a == 1);
            EXPECT_EQ(*branches[0].outcome[1], b == 1);
        }
    }
}

TEST(DenseCodingTest, CarrierHoldsBellStates) {
    const Circuit c = make(Scenario::DenseEncode);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const auto branches = run(c, StateVector::basis(2, static_cast<std::uint64_t>(2 * a + b)));
            ASSERT_EQ(branches.size(), 1u);
            const ComplexVector carrier = remaining_wires(branches[0].state, {{Qubit{0}, a == 1}, {Qubit{1}, b == 1}});
            EXPECT_TRUE(equal_up_to_phase(carrier, bell(a, b), 1e-9)) << a << b;
        }
    }
}

TEST(DenseCodingTest, CopyCannotTransferTwoQubits) {
    // Copy onto fresh wires and keep only the copies.
    const Circuit copy = parse(
        "qubits 4\ncbits 0\nPREP q2 0\nPREP q3 0\nDISCARD q0\nDISCARD q1\nCNOT q0 q2\nCNOT q1 q3\n");
    const Circuit transfer = parse("qubits 2\ncbits 0\n");
    EXPECT_FALSE(channel_equal(extract_channel(copy), extract_channel(transfer)));
    const OracleResult r = oracle_compare(copy, transfer);
    EXPECT_FALSE(r.equal);
    EXPECT_EQ(r.probe, "|+0⟩");
}

TEST(GateTeleportationTest, ChannelIsCnot) {
    const Circuit c = make(Scenario::GateTeleportation);
    EXPECT_EQ(c.inputs(), (std::vector<Qubit>{Qubit{0}, Qubit{5}}));
    EXPECT_EQ(c.outputs(), (std::vector<Qubit>{Qubit{2}, Qubit{3}}));
    const UnitaryMatrix cnot = build_unitary(parse("qubits 2\ncbits 0\nCNOT q0 q1\n"));
    EXPECT_TRUE(channel_equal(extract_channel(c), unitary_channel(cnot)));
    EXPECT_TRUE(channel_equal(extract_channel_deferred(c), unitary_channel(cnot)));
    EXPECT_LE(extract_channel(c).completeness_error(), 1e-9);
}

TEST(DerivationTest, NamesRoundTrip) {
    for (Derivation d : all_derivations()) {
        EXPECT_EQ(parse_derivation(derivation_name(d)), d);
    }
    EXPECT_THROW(parse_derivation("Nope"), std::invalid_argument);
}

class DerivationReplayTest : public ::testing::TestWithParam<Derivation> {};

TEST_P(DerivationReplayTest, ReachesTargetWithEveryStepVerified) {
    const Derivation d = GetParam();
    const DerivationTrace t = derive(d);
    EXPECT_FALSE(t.steps.empty());
    EXPECT_TRUE(t.all_verified());
    EXPECT_EQ(t.start, derivation_start(d));
    EXPECT_EQ(t.final_circuit(), make(derivation_target(d)));
    const Channel start = extract_channel(t.start);
    for (const auto &s : t.steps) {
        EXPECT_TRUE(s.verified) << describe(s.match);
        EXPECT_TRUE(channel_equal(start, extract_channel_deferred(s.result))) << describe(s.match);
    }
}

TEST_P(DerivationReplayTest, IsDeterministic) {
    EXPECT_EQ(render_trace(derive(GetParam())), render_trace(derive(GetParam())));
}

INSTANTIATE_TEST_SUITE_P(All, DerivationReplayTest, ::testing::ValuesIn(all_derivations()),
                         [](const auto &info) { return std::string(derivation_name(info.param)); });

TEST(DerivationTest, TeleportStartIsStateTransfer) {
    EXPECT_TRUE(oracle_equal(derivation_start(Derivation::TeleportFromTransfer), parse("qubits 1\ncbits 0\n")));
}

TEST(DerivationTest, DenseCodingStartsFromCopy) {
    EXPECT_TRUE(oracle_equal(derivation_start(Derivation::DenseFromCopy), make(Scenario::DenseFull)));
}

}  // namespace
}  // namespace qcequiv
