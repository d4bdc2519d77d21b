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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcequiv/circuit.h"

namespace qcequiv {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
/// 2^n x 2^n matrix; unitary by construction when returned by build_unitary.
using UnitaryMatrix = Eigen::MatrixXcd;

inline constexpr double kEqualityTolerance = 1e-9;
inline constexpr double kPruneThreshold = 1e-12;

class SimulationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Amplitudes over the computational basis of n qubits. Qubit 0 is the most
/// significant bit of the basis index: |q0 q1> sits at index 2*q0 + q1.
class StateVector {
   public:
    StateVector() = default;
    StateVector(std::uint32_t num_qubits, ComplexVector amplitudes);

    static StateVector basis(std::uint32_t num_qubits, std::uint64_t index);

    std::uint32_t num_qubits() const {
        return num_qubits_;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(amplitudes_.size());
    }
    const ComplexVector &amplitudes() const {
        return amplitudes_;
    }
    Complex operator[](std::size_t i) const {
        return amplitudes_[static_cast<Eigen::Index>(i)];
    }
    double norm() const {
        return amplitudes_.norm();
    }

   private:
    std::uint32_t num_qubits_ = 0;
    ComplexVector amplitudes_;
};

/// Bit mask of qubit q inside an n-qubit basis index.
inline std::uint64_t qubit_mask(std::uint32_t num_qubits, Qubit q) {
    return std::uint64_t{1} << (num_qubits - 1 - q.index);
}

/// Applies H, X, Z, CNOT or CZ in place. Other instruction kinds are rejected.
void apply_gate_inplace(ComplexVector &amplitudes, std::uint32_t num_qubits, const Instruction &instr);
StateVector apply_gate(const StateVector &state, const Instruction &instr);

/// One measurement history. `outcome[j]` is the value of classical wire j,
/// or empty when the wire was never assigned on this path.
struct Branch {
    std::vector<std::optional<bool>> outcome;
    double probability = 1.0;
    StateVector state;
};

/// Outcome bits rendered as "c0=1 c2=0", or "-" when nothing was assigned.
std::string outcome_label(const std::vector<std::optional<bool>> &outcome);

/// Tensor product of `input` (over the circuit's input wires, ascending) with
/// the preparation directives of the remaining wires.
StateVector initial_state(const Circuit &c, const StateVector &input);

/// Executes the circuit exactly, splitting on every measurement. Branches
/// with probability below kPruneThreshold are dropped; surviving states are
/// renormalized.
std::vector<Branch> run(const Circuit &c, const StateVector &input);

/// Product of the gate matrices in application order. The circuit must hold
/// only H/X/Z/CNOT/CZ and no preparation directives.
UnitaryMatrix build_unitary(const Circuit &c);

/// A quantum channel from the input wires to the output wires.
class Channel {
   public:
    Channel(std::size_t input_dim, std::size_t output_dim, std::vector<ComplexMatrix> kraus);

    std::size_t input_dim() const {
        return input_dim_;
    }
    std::size_t output_dim() const {
        return output_dim_;
    }
    const std::vector<ComplexMatrix> &kraus() const {
        return kraus_;
    }
    /// Sum over Kraus operators of vec(K) vec(K)^dagger, where vec stacks
    /// entry (o, i) at row o * input_dim + i.
    ComplexMatrix choi() const;
    /// Columns vec(K), one per Kraus operator.
    ComplexMatrix choi_factor() const;
    /// max |sum K^dagger K - I|.
    double completeness_error() const;

    /// Applies the channel to a pure input state, returning the output
    /// density matrix.
    ComplexMatrix apply(const ComplexVector &input) const;

   private:
    std::size_t input_dim_;
    std::size_t output_dim_;
    std::vector<ComplexMatrix> kraus_;
};

/// Report classical wires are part of the output. Row index of a Kraus
/// operator is r * 2^|outputs| + o, where r packs the report bits (lowest
/// report wire most significant, unassigned reads as 0) and o the output wires.
/// Kraus operators by branch enumeration: each input basis state is run
/// through the circuit and every (outcome, discarded-wire basis index) pair
/// contributes one column. All-zero operators are omitted.
Channel extract_channel(const Circuit &c);

/// Rewrites measure-then-classically-control into quantum control followed by
/// terminal measurements. Classical XOR results become parities of measured
/// qubits. Throws SimulationError when a measured qubit is later used in a
/// way that does not commute with its measurement.
Circuit defer_measurements(const Circuit &c);

/// Independent channel route: defers all measurements, builds the unitary of
/// the remaining gate sequence column by column, then projects onto terminal
/// measurement outcomes. Never enumerates branches.
Channel extract_channel_deferred(const Circuit &c);

}  // namespace qcequiv
