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

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qcequiv/simulator.h"

namespace qcequiv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitVerification = 3;
inline constexpr int kExitNotEquivalent = 4;

/// "a+bi" with 12 significant digits; parts below 1e-12 print as 0.
std::string format_complex(Complex z);

/// Parses "|01+-⟩" / "|01>" basis labels or comma-separated complex
/// amplitudes ("0.5, 0.5i, -0.5+0.5i, 1"). Amplitudes are normalized.
/// Throws std::invalid_argument on malformed input or a zero vector.
StateVector parse_ket(std::string_view spec);

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qcequiv::cli
