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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcequiv/circuit.h"
#include "qcequiv/simulator.h"

namespace qcequiv {

inline constexpr double kOracleTolerance = 1e-8;
inline constexpr std::uint64_t kOracleSeed = 20260101;
inline constexpr int kOracleRandomStates = 20;

class EquivalenceError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Entrywise comparison within `tol`. With `up_to_phase`, b is first rotated
/// by the phase that aligns its largest-magnitude entry with a.
bool unitary_equal(const UnitaryMatrix &a, const UnitaryMatrix &b, bool up_to_phase,
                   double tol = kEqualityTolerance);

/// Index of the first computational basis column on which a and b differ,
/// or nothing when they agree. Uses the same phase convention as
/// unitary_equal.
std::optional<std::uint64_t> first_differing_column(const UnitaryMatrix &a, const UnitaryMatrix &b, bool up_to_phase,
                                                    double tol = kEqualityTolerance);

/// Unitary channel rho -> U rho U^dagger.
Channel unitary_channel(const UnitaryMatrix &u);

/// Compares Choi matrices entrywise within `tol`. For large Choi matrices
/// the comparison runs in the joint range of both Kraus sets, checking the
/// Frobenius norm of the difference (which bounds every entry).
bool channel_equal(const Channel &a, const Channel &b, double tol = kEqualityTolerance);

/// Renders a basis index over `width` wires as "|01⟩".
std::string basis_label(std::uint64_t index, std::size_t width);

struct OracleResult {
    bool equal = true;
    /// Label of the first input on which the circuits differ.
    std::string probe;
    /// Largest entrywise deviation over the probes that were run. The
    /// comparison stops at the first distinguishing probe.
    double max_deviation = 0.0;
};

/// Brute-force comparison by simulation. Probes every computational basis
/// input, then |+⟩, |−⟩ and |i⟩ = (|0⟩+i|1⟩)/√2 on each input wire with the
/// others at |0⟩, then kOracleRandomStates seeded random states. For each
/// probe the output-wire density matrices of all branches are summed,
/// grouped by the values of report classical wires. Throws EquivalenceError
/// when the circuits disagree on the number of inputs, outputs or report
/// wires.
OracleResult oracle_compare(const Circuit &c1, const Circuit &c2, double tol = kOracleTolerance);
bool oracle_equal(const Circuit &c1, const Circuit &c2, double tol = kOracleTolerance);

}  // namespace qcequiv
