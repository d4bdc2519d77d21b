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

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qcequiv/circuit.h"
#include "qcequiv/simulator.h"

namespace qcequiv {

/// Lets gtest print circuits as text.
void PrintTo(const Circuit &c, std::ostream *os);

}  // namespace qcequiv

namespace qcequiv::testing {

/// Kronecker product a ⊗ b.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Full 2^n matrix of one gate, assembled from 2x2 blocks and projectors.
/// Independent of the simulator's index arithmetic.
ComplexMatrix reference_gate(std::uint32_t num_qubits, const Instruction &instr);

/// Product of reference_gate over a gate-only body.
ComplexMatrix reference_unitary(const Circuit &c);

/// Unitary acting on a basis state by permuting bits: column x holds
/// e_{f(x)}.
ComplexMatrix permutation_matrix(std::uint32_t num_qubits, const std::vector<std::uint64_t> &image);

struct RandomCircuitOptions {
    std::uint32_t max_qubits = 6;
    std::size_t max_instructions = 20;
    std::size_t max_measurements = 4;
    bool allow_preps = true;
    bool allow_classical = true;
    double repeat_bias = 0.3;
};

Circuit random_circuit(std::mt19937_64 &rng, const RandomCircuitOptions &opts = {});
/// Random unitary gate on the given wires.
Instruction random_gate(std::mt19937_64 &rng, std::uint32_t num_qubits);
StateVector random_state(std::mt19937_64 &rng, std::uint32_t num_qubits);

double fidelity(const ComplexVector &a, const ComplexVector &b);

/// Directory holding the .qc fixtures.
std::string data_path(const std::string &name);

}  // namespace qcequiv::testing
