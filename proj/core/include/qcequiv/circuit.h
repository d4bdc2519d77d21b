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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qcequiv {

struct Qubit {
    std::uint32_t index = 0;
    auto operator<=>(const Qubit &) const = default;
};

struct Cbit {
    std::uint32_t index = 0;
    auto operator<=>(const Cbit &) const = default;
};

enum class WireKind { Quantum, Classical };

struct WireRef {
    WireKind kind = WireKind::Quantum;
    std::uint32_t index = 0;
    auto operator<=>(const WireRef &) const = default;
};

inline WireRef wire(Qubit q) { return {WireKind::Quantum, q.index}; }
inline WireRef wire(Cbit c) { return {WireKind::Classical, c.index}; }

enum class Gate1Kind { H, X, Z };
enum class Gate2Kind { CNOT, CZ };
/// Gate applied by a classically controlled instruction (cX or cZ).
enum class CtrlKind { X, Z };

struct Gate1 {
    Gate1Kind kind;
    Qubit target;
    bool operator==(const Gate1 &) const = default;
};

struct Gate2 {
    Gate2Kind kind;
    Qubit control;
    Qubit target;
    bool operator==(const Gate2 &) const = default;
};

/// Projective, non-destructive computational-basis measurement.
struct Measure {
    Qubit target;
    Cbit result;
    bool operator==(const Measure &) const = default;
};

struct ClassicalCtrl {
    CtrlKind kind;
    Cbit control;
    Qubit target;
    bool operator==(const ClassicalCtrl &) const = default;
};

/// out = a XOR b.
struct ClassicalXor {
    Cbit a;
    Cbit b;
    Cbit out;
    bool operator==(const ClassicalXor &) const = default;
};

using Instruction = std::variant<Gate1, Gate2, Measure, ClassicalCtrl, ClassicalXor>;

/// True for H/X/Z/CNOT/CZ, the instructions with a unitary matrix.
bool is_unitary_gate(const Instruction &instr);
bool is_quantum_gate(const Instruction &instr);
bool is_classically_controlled(const Instruction &instr);

std::vector<Qubit> touched_qubits(const Instruction &instr);
std::vector<Cbit> touched_cbits(const Instruction &instr);
/// Classical wires read (not written) by the instruction.
std::vector<Cbit> read_cbits(const Instruction &instr);
std::optional<Cbit> written_cbit(const Instruction &instr);
std::vector<WireRef> support(const Instruction &instr);
bool touches(const Instruction &instr, Qubit q);
bool touches(const Instruction &instr, Cbit c);

/// True iff the two instructions share no quantum or classical wire.
/// Instructions with disjoint support commute.
bool supports_disjoint(const Instruction &a, const Instruction &b);

/// Text form of one body line, e.g. "CNOT q0 q1".
std::string to_string(const Instruction &instr);

enum class PrepKind { Zero, Plus, Bell };

struct Prep {
    PrepKind kind = PrepKind::Zero;
    Qubit partner{};  // meaningful only for Bell
    bool operator==(const Prep &) const = default;
};

/// What happens to a quantum wire at the end of the circuit.
enum class WireRole { Output, Discard };
enum class CbitRole { Scratch, Report };

class CircuitError : public std::invalid_argument {
   public:
    explicit CircuitError(const std::string &what, std::optional<std::size_t> instruction = std::nullopt)
        : std::invalid_argument(what), instruction_(instruction) {
    }
    /// Offending body index, when the error is tied to one instruction.
    std::optional<std::size_t> instruction() const {
        return instruction_;
    }

   private:
    std::optional<std::size_t> instruction_;
};

/// An ordered instruction list over declared quantum and classical wires.
///
/// Wires without a preparation directive are the circuit's inputs. Every
/// quantum wire ends as an output or is discarded; unless set explicitly the
/// role defaults to Discard for measured wires and Output otherwise.
/// Equality compares effective roles, so a circuit and its reparsed
/// serialization compare equal.
class Circuit {
   public:
    Circuit() = default;
    Circuit(std::uint32_t num_qubits, std::uint32_t num_cbits);

    std::uint32_t num_qubits() const {
        return num_qubits_;
    }
    std::uint32_t num_cbits() const {
        return num_cbits_;
    }
    const std::vector<Instruction> &body() const {
        return body_;
    }
    const std::optional<Prep> &prep(Qubit q) const;
    bool is_input(Qubit q) const {
        return !prep(q).has_value();
    }
    bool is_measured(Qubit q) const;
    WireRole role(Qubit q) const;
    bool has_explicit_role(Qubit q) const;
    CbitRole cbit_role(Cbit c) const;

    std::vector<Qubit> inputs() const;
    std::vector<Qubit> outputs() const;
    std::vector<Qubit> discards() const;

    void append(Instruction instr);
    void set_body(std::vector<Instruction> body);
    void set_prep(Qubit q, PrepKind kind);
    void set_bell(Qubit a, Qubit b);
    void clear_prep(Qubit q);
    void set_role(Qubit q, WireRole role);
    void set_cbit_role(Cbit c, CbitRole role);
    /// Freezes every effective role as an explicit one.
    void pin_roles();

    /// Inserts a fresh quantum wire at `index`, renumbering wires at or above it.
    Qubit insert_qubit(std::uint32_t index);
    /// Removes an untouched quantum wire, renumbering wires above it.
    void erase_qubit(std::uint32_t index);
    Cbit add_cbit();
    /// Removes the highest classical wire; it must be unused.
    void erase_last_cbit();

    /// Throws CircuitError when an invariant is broken: wire references in
    /// range, CNOT/CZ control != target, classical single assignment, reads
    /// only after assignment, consistent preparation directives.
    void validate() const;

    friend bool operator==(const Circuit &a, const Circuit &b);

   private:
    std::uint32_t num_qubits_ = 0;
    std::uint32_t num_cbits_ = 0;
    std::vector<std::optional<Prep>> preps_;
    std::vector<std::optional<WireRole>> roles_;
    std::vector<CbitRole> cbit_roles_;
    std::vector<Instruction> body_;
};

class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, const std::string &message);
    std::size_t line() const {
        return line_;
    }

   private:
    std::size_t line_;
};

/// Parses the line-oriented circuit text format. Throws ParseError (with a
/// 1-based line number) on syntax or validation failures.
Circuit parse(std::string_view text);

/// Canonical text: header, preparations, non-default roles, report bits, body.
/// No trailing newline.
std::string serialize(const Circuit &c);

}  // namespace qcequiv
