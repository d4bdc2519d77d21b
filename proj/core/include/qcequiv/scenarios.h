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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qcequiv/circuit.h"
#include "qcequiv/engine.h"

namespace qcequiv {

/// Named protocol circuits.
///
/// Wire layouts:
///   XorSwap, AltSwap      q0, q1 swapped by three CNOTs.
///   BellGenerator/Decoder |a b⟩ <-> β_ab on q0, q1.
///   Teleportation         q0 sender input, q1-q2 Bell pair, q2 output.
///   DenseEncode           q0, q1 classical bits a, b; q2-q3 carry β_ab.
///   DenseFull             DenseEncode followed by the Bell decoder on q2-q3.
///   GateTeleportation     q0 control input, q5 target input, q1-q2 and
///                         q3-q4 Bell pairs; q2, q3 receive CNOT(q0, q5).
///   Chi                   β00 ⊗ β00 on q0..q3 followed by CNOT q1 q2.
enum class Scenario {
    XorSwap,
    AltSwap,
    BellGenerator,
    BellDecoder,
    Teleportation,
    DenseEncode,
    DenseFull,
    GateTeleportation,
    Chi,
};

const std::vector<Scenario> &all_scenarios();
std::string_view scenario_name(Scenario s);
/// The circuit in the text format.
std::string_view scenario_text(Scenario s);
Circuit make(Scenario s);

enum class Derivation {
    TeleportFromTransfer,
    DenseFromCopy,
    GateTeleportFromTeleport,
};

const std::vector<Derivation> &all_derivations();
std::string_view derivation_name(Derivation d);
/// Throws std::invalid_argument for unknown names.
Derivation parse_derivation(std::string_view name);

/// Circuit each derivation starts from.
Circuit derivation_start(Derivation d);
/// Scenario each derivation ends at.
Scenario derivation_target(Derivation d);

/// Replays the derivation as a sequence of rewrites, each checked against
/// the starting circuit's channel when `verify` is set.
DerivationTrace derive(Derivation d, bool verify = true);

}  // namespace qcequiv
