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

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcequiv/circuit.h"

namespace qcequiv {

/// The twelve catalog rules, followed by the structural rules the engine uses
/// to glue derivations together.
enum class RuleId {
    R1_InverseCancel,
    R1_TargetPlus,
    R1_ControlZero,
    R2_CZFlip,
    R2_CNOTviaCZ,
    R2_CNOTReversal,
    R2_HMirror,
    R3_DeferMeasure,
    R4_XorSubstitute,
    R5_DistributeCNOT,
    R6_CNOTMirror,
    R7_ParallelToLambda,
    // Swap two adjacent instructions that commute.
    Commute,
    // Drop a single-qubit gate that is the last use of a discarded wire.
    DiscardedWireTail,
    // Measure a discarded wire after its last use into a fresh classical wire.
    MeasureDiscarded,
    // Add a fresh discarded wire prepared in |0⟩ or |+⟩.
    IntroduceAncilla,
    // CNOT from a fresh |+⟩ wire onto a fresh |0⟩ wire becomes a Bell pair.
    FoldBellPrep,
    // H on a fresh |0⟩ wire becomes a |+⟩ preparation.
    FoldPlusPrep,
};

enum class Direction { Forward, Backward };

class RuleError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

std::string_view rule_name(RuleId id);
/// Throws RuleError for unknown names.
RuleId parse_rule_id(std::string_view name);
std::string_view direction_name(Direction d);
Direction reverse(Direction d);

/// The twelve catalog rules in declaration order.
const std::vector<RuleId> &catalog_rules();
const std::vector<RuleId> &all_rules();
bool is_catalog_rule(RuleId id);

enum class TKind { H, X, Z, CNOT, CZ, Measure, CX, CZC, Xor };

/// One instruction of a rule template. Quantum operands come first in
/// instruction order (control before target); classical operands likewise
/// (for XOR: a, b, out).
struct TOp {
    TKind kind;
    std::vector<std::string> qvars;
    std::vector<std::string> cvars;
};

struct RuleVariant {
    std::string name;
    std::vector<TOp> lhs;
    std::vector<TOp> rhs;
};

/// Template variants of a rule. Empty for Commute and IntroduceAncilla, which
/// the engine handles structurally.
const std::vector<RuleVariant> &rule_variants(RuleId id);

/// Variable names appearing on either side of a variant.
std::vector<std::string> quantum_vars(const RuleVariant &v);
std::vector<std::string> classical_vars(const RuleVariant &v);

struct Bindings {
    std::map<std::string, Qubit> qubits;
    std::map<std::string, Cbit> cbits;
    bool operator==(const Bindings &) const = default;
};

/// "a=q1 c=q0 r=c2".
std::string to_string(const Bindings &b);

struct Instantiation {
    std::vector<Instruction> pattern;
    std::vector<Instruction> replacement;
};

/// Concrete pattern and replacement for one direction of a variant. Throws
/// RuleError when a variable is unbound (including fresh wires the
/// replacement introduces) or when two quantum variables share a wire.
Instantiation instantiate(RuleId id, Direction direction, std::size_t variant, const Bindings &bindings);

/// Unifies a template operation with a concrete instruction, extending
/// `bindings`. Returns false (leaving `bindings` untouched) on mismatch or
/// when unification would bind two variables to one quantum wire.
bool unify(const TOp &op, const Instruction &instr, Bindings &bindings);

}  // namespace qcequiv
