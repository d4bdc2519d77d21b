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

#include "qcequiv/scenarios.h"

#include <algorithm>
#include <stdexcept>

namespace qcequiv {

namespace {

constexpr std::string_view kXorSwap = R"(qubits 2
cbits 0
CNOT q0 q1
CNOT q1 q0
CNOT q0 q1)";

constexpr std::string_view kAltSwap = R"(qubits 2
cbits 0
CNOT q1 q0
CNOT q0 q1
CNOT q1 q0)";

constexpr std::string_view kBellGenerator = R"(qubits 2
cbits 0
H q0
CNOT q0 q1)";

constexpr std::string_view kBellDecoder = R"(qubits 2
cbits 0
CNOT q0 q1
H q0)";

constexpr std::string_view kTeleportation = R"(qubits 3
cbits 2
BELL q1 q2
CNOT q0 q1
H q0
MEASURE q0 c0
MEASURE q1 c1
CX c1 q2
CZC c0 q2)";

constexpr std::string_view kDenseEncode = R"(qubits 4
cbits 0
PREP q2 0
PREP q3 0
H q2
CNOT q2 q3
CNOT q1 q2
CZ q0 q2)";

constexpr std::string_view kDenseFull = R"(qubits 4
cbits 0
PREP q2 0
PREP q3 0
H q2
CNOT q2 q3
CNOT q1 q2
CZ q0 q2
CNOT q2 q3
H q2)";

constexpr std::string_view kGateTeleportation = R"(qubits 6
cbits 4
BELL q1 q2
BELL q3 q4
DISCARD q0
DISCARD q1
DISCARD q4
DISCARD q5
CNOT q2 q3
CNOT q0 q1
H q0
CNOT q5 q4
H q5
MEASURE q0 c0
MEASURE q1 c1
MEASURE q5 c2
MEASURE q4 c3
CX c1 q2
CZC c0 q2
CZC c2 q2
CX c1 q3
CX c3 q3
CZC c2 q3)";

constexpr std::string_view kChi = R"(qubits 4
cbits 0
BELL q0 q1
BELL q2 q3
CNOT q1 q2)";

constexpr std::string_view kCopy = R"(qubits 4
cbits 0
PREP q2 0
PREP q3 0
CNOT q0 q2
CNOT q1 q3)";

constexpr std::string_view kTransfer = R"(qubits 2
cbits 0
PREP q1 0
DISCARD q0
CNOT q1 q0
CNOT q0 q1
CNOT q1 q0)";

constexpr std::string_view kTwoTeleportsThenCnot = R"(qubits 6
cbits 0
BELL q1 q2
BELL q3 q4
DISCARD q0
DISCARD q1
DISCARD q4
DISCARD q5
CNOT q0 q1
CNOT q1 q2
CNOT q2 q0
CNOT q5 q4
CNOT q4 q3
CNOT q3 q5
CNOT q2 q3)";

constexpr Direction kFwd = Direction::Forward;
constexpr Direction kBwd = Direction::Backward;

Qubit q(std::uint32_t i) {
    return Qubit{i};
}

/// Moves the instruction at `from` to `to` by adjacent commutations.
void move(Deriver &d, std::size_t from, std::size_t to) {
    while (from > to) {
        d.apply(RuleId::Commute, kFwd, {from - 1, from});
        --from;
    }
    while (from < to) {
        d.apply(RuleId::Commute, kFwd, {from, from + 1});
        ++from;
    }
}

/// Brings the body into the order of `target` by adjacent commutations.
void reorder(Deriver &d, const std::vector<Instruction> &target) {
    for (std::size_t k = 0; k < target.size(); ++k) {
        const auto &body = d.current().body();
        auto it = std::find(body.begin() + static_cast<std::ptrdiff_t>(k), body.end(), target[k]);
        if (it == body.end()) {
            throw std::logic_error("derivation script lost '" + to_string(target[k]) + "'");
        }
        move(d, static_cast<std::size_t>(it - body.begin()), k);
    }
}

void teleport_from_transfer(Deriver &d) {
    d.apply(RuleId::R1_ControlZero, kFwd, {0});
    d.apply(RuleId::IntroduceAncilla, kFwd, {}, {}, 1, 1);
    d.apply(RuleId::R5_DistributeCNOT, kFwd, {0}, Bindings{{{"a", q(1)}}, {}}, 0);
    d.apply(RuleId::R1_TargetPlus, kFwd, {0});
    d.apply(RuleId::FoldBellPrep, kFwd, {0});
    d.apply(RuleId::R2_CNOTviaCZ, kFwd, {2});
    d.apply(RuleId::R2_CZFlip, kFwd, {3});
    d.apply(RuleId::DiscardedWireTail, kFwd, {4});
    move(d, 2, 1);
    d.apply(RuleId::MeasureDiscarded, kFwd, {}, Bindings{{{"w", q(0)}}, {}}, 0, 4);
    d.apply(RuleId::MeasureDiscarded, kFwd, {}, Bindings{{{"w", q(1)}}, {}}, 0, 5);
    d.apply(RuleId::R3_DeferMeasure, kBwd, {3, 4});
    d.apply(RuleId::R3_DeferMeasure, kBwd, {2, 5});
    reorder(d, make(Scenario::Teleportation).body());
}

void dense_from_copy(Deriver &d) {
    d.apply(RuleId::R2_CNOTviaCZ, kFwd, {0});
    d.apply(RuleId::FoldPlusPrep, kFwd, {0});
    d.apply(RuleId::R1_TargetPlus, kBwd, {}, Bindings{{{"c", q(1)}, {"t", q(2)}}, {}}, 0, 0);
    d.apply(RuleId::R7_ParallelToLambda, kFwd, {0, 3});
    move(d, 3, 2);
    d.apply(RuleId::FoldPlusPrep, kBwd, {}, Bindings{{{"w", q(2)}}, {}}, 0, 0);
}

void gate_teleport_from_teleport(Deriver &d) {
    // Push the final CNOT back through the second teleport's correction and
    // then through the first one, leaving it on the two Bell pairs.
    d.apply(RuleId::R6_CNOTMirror, kFwd, {5, 6}, {}, 2);
    move(d, 5, 2);
    d.apply(RuleId::R6_CNOTMirror, kFwd, {1, 2}, {}, 0);
    move(d, 1, 0);

    // Corrections controlled by q0 and q5 become CZs controlled from the
    // sender side.
    d.apply(RuleId::R2_CNOTviaCZ, kFwd, {4});
    d.apply(RuleId::R2_CZFlip, kFwd, {5});
    d.apply(RuleId::DiscardedWireTail, kFwd, {6});
    d.apply(RuleId::R2_CNOTviaCZ, kFwd, {8});
    d.apply(RuleId::R2_CNOTviaCZ, kFwd, {11});
    d.apply(RuleId::R1_InverseCancel, kFwd, {10, 11});
    d.apply(RuleId::DiscardedWireTail, kFwd, {11});
    d.apply(RuleId::R2_CZFlip, kFwd, {9});
    d.apply(RuleId::R2_CZFlip, kFwd, {10});

    for (std::uint32_t w : {0u, 1u, 5u, 4u}) {
        d.apply(RuleId::MeasureDiscarded, kFwd, {}, Bindings{{{"w", q(w)}}, {}}, 0, d.current().body().size());
    }
    d.apply(RuleId::R3_DeferMeasure, kBwd, {5, 11});
    d.apply(RuleId::R3_DeferMeasure, kBwd, {3, 12});
    d.apply(RuleId::R3_DeferMeasure, kBwd, {2, 3});
    d.apply(RuleId::R3_DeferMeasure, kBwd, {12, 13});
    d.apply(RuleId::R3_DeferMeasure, kBwd, {11, 12});
    d.apply(RuleId::R3_DeferMeasure, kBwd, {9, 14});
    reorder(d, make(Scenario::GateTeleportation).body());
}

}  // namespace

const std::vector<Scenario> &all_scenarios() {
    static const std::vector<Scenario> all = {
        Scenario::XorSwap,      Scenario::AltSwap,   Scenario::BellGenerator,
        Scenario::BellDecoder,  Scenario::Teleportation, Scenario::DenseEncode,
        Scenario::DenseFull,    Scenario::GateTeleportation, Scenario::Chi,
    };
    return all;
}

std::string_view scenario_name(Scenario s) {
    switch (s) {
        case Scenario::XorSwap:
            return "XorSwap";
        case Scenario::AltSwap:
            return "AltSwap";
        case Scenario::BellGenerator:
            return "BellGenerator";
        case Scenario::BellDecoder:
            return "BellDecoder";
        case Scenario::Teleportation:
            return "Teleportation";
        case Scenario::DenseEncode:
            return "DenseEncode";
        case Scenario::DenseFull:
            return "DenseFull";
        case Scenario::GateTeleportation:
            return "GateTeleportation";
        case Scenario::Chi:
            return "Chi";
    }
    return "?";
}

std::string_view scenario_text(Scenario s) {
    switch (s) {
        case Scenario::XorSwap:
            return kXorSwap;
        case Scenario::AltSwap:
            return kAltSwap;
        case Scenario::BellGenerator:
            return kBellGenerator;
        case Scenario::BellDecoder:
            return kBellDecoder;
        case Scenario::Teleportation:
            return kTeleportation;
        case Scenario::DenseEncode:
            return kDenseEncode;
        case Scenario::DenseFull:
            return kDenseFull;
        case Scenario::GateTeleportation:
            return kGateTeleportation;
        case Scenario::Chi:
            return kChi;
    }
    return {};
}

Circuit make(Scenario s) {
    return parse(scenario_text(s));
}

const std::vector<Derivation> &all_derivations() {
    static const std::vector<Derivation> all = {
        Derivation::TeleportFromTransfer,
        Derivation::DenseFromCopy,
        Derivation::GateTeleportFromTeleport,
    };
    return all;
}

std::string_view derivation_name(Derivation d) {
    switch (d) {
        case Derivation::TeleportFromTransfer:
            return "TeleportFromTransfer";
        case Derivation::DenseFromCopy:
            return "DenseFromCopy";
        case Derivation::GateTeleportFromTeleport:
            return "GateTeleportFromTeleport";
    }
    return "?";
}

Derivation parse_derivation(std::string_view name) {
    for (Derivation d : all_derivations()) {
        if (derivation_name(d) == name) {
            return d;
        }
    }
    throw std::invalid_argument("unknown derivation '" + std::string(name) + "'");
}

Circuit derivation_start(Derivation d) {
    switch (d) {
        case Derivation::TeleportFromTransfer:
            return parse(kTransfer);
        case Derivation::DenseFromCopy:
            return parse(kCopy);
        case Derivation::GateTeleportFromTeleport:
            return parse(kTwoTeleportsThenCnot);
    }
    throw std::invalid_argument("unknown derivation");
}

Scenario derivation_target(Derivation d) {
    switch (d) {
        case Derivation::TeleportFromTransfer:
            return Scenario::Teleportation;
        case Derivation::DenseFromCopy:
            return Scenario::DenseFull;
        case Derivation::GateTeleportFromTeleport:
            return Scenario::GateTeleportation;
    }
    throw std::invalid_argument("unknown derivation");
}

DerivationTrace derive(Derivation d, bool verify) {
    Deriver deriver(derivation_start(d), verify);
    switch (d) {
        case Derivation::TeleportFromTransfer:
            teleport_from_transfer(deriver);
            break;
        case Derivation::DenseFromCopy:
            dense_from_copy(deriver);
            break;
        case Derivation::GateTeleportFromTeleport:
            gate_teleport_from_teleport(deriver);
            break;
    }
    return deriver.trace();
}

}  // namespace qcequiv
